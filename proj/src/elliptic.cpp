#include "catsys/elliptic.hpp"

#include <array>

namespace catsys {

namespace {

using Vec2 = std::array<Integer, 2>;  // (d, r)

struct Form2 {
    // [[a, b], [b, c]] on coordinates (d, r)
    Rational a, b, c;
    Rational q(const Vec2& v) const {
        Rational d(v[0]), r(v[1]);
        return a * d * d + 2 * b * d * r + c * r * r;
    }
    Rational pair(const Vec2& v, const Vec2& w) const {
        Rational d1(v[0]), r1(v[1]), d2(w[0]), r2(w[1]);
        return a * d1 * d2 + b * (d1 * r2 + d2 * r1) + c * r1 * r2;
    }
};

Vec2 sub_mul(const Vec2& x, const Integer& m, const Vec2& y) {
    return {x[0] - m * y[0], x[1] - m * y[1]};
}

// Lagrange-Gauss reduction; returns (b1, b2) with Q(b1) <= Q(b2) and
// 2|B(b1,b2)| <= Q(b1), so b1 is a shortest vector.
std::pair<Vec2, Vec2> reduce(const Form2& f) {
    Vec2 b1{Integer(1), Integer(0)}, b2{Integer(0), Integer(1)};
    if (f.q(b2) < f.q(b1)) std::swap(b1, b2);
    for (;;) {
        Integer mu = round_half_up(f.pair(b1, b2) / f.q(b1));
        b2 = sub_mul(b2, mu, b1);
        if (f.q(b2) < f.q(b1))
            std::swap(b1, b2);
        else
            break;
    }
    return {b1, b2};
}

bool lex_rd_less(const Vec2& x, const Vec2& y) {
    int c = cmp(x[1], y[1]);  // r first
    if (c != 0) return c < 0;
    return x[0] < y[0];
}

Vec2 sign_normalize_rd(const Vec2& v) {
    // first nonzero of (r, d) positive
    if (v[1] != 0 ? v[1] < 0 : v[0] < 0) return {-v[0], -v[1]};
    return v;
}

}  // namespace

Lambda1Result lambda1_form(const Rational& beta, const Rational& omega_sq) {
    if (omega_sq <= 0) throw std::invalid_argument("lambda1_form: need omega^2 > 0");
    Form2 f{Rational(1), -beta, beta * beta + omega_sq};
    auto [b1, b2] = reduce(f);
    Rational min = f.q(b1);

    // Every minimizer lies in {+-b1, +-b2, +-(b2-b1), +-(b2+b1)} for a
    // reduced basis; normalize signs and take the lex-least on (r, d).
    std::vector<Vec2> cand{b1, b2, sub_mul(b2, Integer(1), b1), sub_mul(b2, Integer(-1), b1)};
    std::optional<Vec2> pick;
    for (const auto& v : cand) {
        if (f.q(v) != min) continue;
        Vec2 w = sign_normalize_rd(v);
        if (!pick || lex_rd_less(w, *pick)) pick = w;
    }
    return {min, (*pick)[0], (*pick)[1]};
}

Lambda1Result lambda1(const TauPoint& tau) {
    if (tau.omega <= 0) throw std::invalid_argument("lambda1: need Im tau > 0");
    return lambda1_form(tau.beta, tau.omega * tau.omega);
}

Rational elliptic_ratio(const TauPoint& tau) {
    return lambda1(tau).length_sq / (2 * tau.omega);
}

Rational hermite_omega_floor(const Rational& beta, long scale) {
    if (scale < 1) throw std::invalid_argument("hermite_omega_floor: scale must be positive");
    if (abs(beta) > 1) throw std::invalid_argument("hermite_omega_floor: |beta| > 1");
    const Integer S(scale);
    // smallest k with (k/S)^2 >= 1 - beta^2, so the point stays inside the
    // fundamental domain
    Rational target = (1 - beta * beta) * Rational(S * S);
    Integer k = isqrt_floor(target);
    if (Rational(k * k) < target) k += 1;
    return make_rational(k, S);
}

HermiteScanResult hermite_scan(const HermiteGrid& grid) {
    if (grid.beta_steps < 2 || grid.omega_steps < 2)
        throw std::invalid_argument("hermite_scan: need at least 2 steps per axis");
    if (grid.boundary_scale < 1)
        throw std::invalid_argument("hermite_scan: boundary_scale must be positive");

    HermiteScanResult res;
    res.max_ratio = Rational(-1);
    for (int i = 0; i < grid.beta_steps; ++i) {
        Rational beta = make_rational(Integer(2 * i - (grid.beta_steps - 1)),
                                      Integer(2 * (grid.beta_steps - 1)));
        Rational omega_lo = hermite_omega_floor(beta, grid.boundary_scale);
        if (grid.omega_max <= omega_lo)
            throw std::invalid_argument("hermite_scan: omega_max inside the unit circle");
        Rational step = (grid.omega_max - omega_lo) / (grid.omega_steps - 1);
        for (int j = 0; j < grid.omega_steps; ++j) {
            TauPoint tau{beta, omega_lo + step * j};
            Rational ratio = elliptic_ratio(tau);
            ++res.points;
            if (ratio > res.max_ratio) {
                res.max_ratio = ratio;
                res.argmax = tau;
            }
        }
    }
    return res;
}

}  // namespace catsys
