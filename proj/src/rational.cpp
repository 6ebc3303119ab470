#include "catsys/rational.hpp"

namespace catsys {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim surrounding whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s.erase(s.begin());
    }

    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        out = make_rational(Integer(num), Integer(den));
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        Integer scale(1);
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        Integer whole(ip);
        Integer frac = fp.empty() ? Integer(0) : Integer(fp);
        out = make_rational(whole * scale + frac, scale);
    } else {
        if (!all_digits(s)) throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
        out = Rational(Integer(s));
    }
    return neg ? Rational(-out) : out;
}

std::string rational_str(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace catsys
