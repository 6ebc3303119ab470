#include "catsys/lattice.hpp"

namespace catsys {

NSLattice::NSLattice(std::vector<IVec> gram) : gram_(std::move(gram)) {
    const std::size_t n = gram_.size();
    if (n == 0) throw std::invalid_argument("NSLattice: empty Gram matrix");
    for (const auto& row : gram_)
        if (row.size() != n) throw std::invalid_argument("NSLattice: Gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw std::invalid_argument("NSLattice: Gram matrix not symmetric");
    rank_ = static_cast<int>(n);

    Inertia in = qmat_inertia(qmat_from_integers(gram_));
    if (in.pos != 1 || in.neg != rank_ - 1 || in.zero != 0)
        throw std::invalid_argument("NSLattice: signature is not (1, rho-1)");

    Rational d = qmat_det(qmat_from_integers(gram_));
    disc_ = d.get_num();  // integer Gram, integer det
}

NSLattice NSLattice::rank_one(long n) {
    if (n < 1) throw std::invalid_argument("NSLattice::rank_one: need n >= 1");
    return NSLattice({{Integer(2 * n)}});
}

Integer NSLattice::ns_pairing(const IVec& a, const IVec& b) const {
    if (static_cast<int>(a.size()) != rank_ || static_cast<int>(b.size()) != rank_)
        throw std::invalid_argument("ns_pairing: coordinate length != rank");
    Integer s(0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
    return s;
}

Rational NSLattice::ns_pairing(const QVec& a, const QVec& b) const {
    if (static_cast<int>(a.size()) != rank_ || static_cast<int>(b.size()) != rank_)
        throw std::invalid_argument("ns_pairing: coordinate length != rank");
    Rational s(0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += a[i] * Rational(gram_[i][j]) * b[j];
    return s;
}

Rational NSLattice::ns_pairing(const QVec& a, const IVec& b) const {
    QVec bq(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bq[i] = Rational(b[i]);
    return ns_pairing(a, bq);
}

std::vector<IVec> NSLattice::mukai_gram() const {
    const int m = rank_ + 2;
    std::vector<IVec> g(m, IVec(m, Integer(0)));
    g[0][m - 1] = -1;
    g[m - 1][0] = -1;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) g[1 + i][1 + j] = gram_[i][j];
    return g;
}

bool MukaiVector::is_zero() const {
    if (r != 0 || s != 0) return false;
    for (const auto& d : D)
        if (d != 0) return false;
    return true;
}

IVec MukaiVector::coords() const {
    IVec c;
    c.reserve(D.size() + 2);
    c.push_back(r);
    for (const auto& d : D) c.push_back(d);
    c.push_back(s);
    return c;
}

MukaiVector MukaiVector::from_coords(const IVec& c) {
    if (c.size() < 3) throw std::invalid_argument("MukaiVector::from_coords: need >= 3 coords");
    MukaiVector v;
    v.r = c.front();
    v.D.assign(c.begin() + 1, c.end() - 1);
    v.s = c.back();
    return v;
}

Integer mukai_pairing(const NSLattice& L, const MukaiVector& v, const MukaiVector& w) {
    return L.ns_pairing(v.D, w.D) - v.r * w.s - w.r * v.s;
}

Integer mukai_square(const NSLattice& L, const MukaiVector& v) {
    return mukai_pairing(L, v, v);
}

bool mukai_lex_less(const MukaiVector& a, const MukaiVector& b) {
    IVec ca = a.coords(), cb = b.coords();
    if (ca.size() != cb.size())
        throw std::invalid_argument("mukai_lex_less: rank mismatch");
    for (std::size_t i = 0; i < ca.size(); ++i) {
        int c = cmp(ca[i], cb[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

MukaiVector mukai_sign_normalize(const MukaiVector& v) {
    IVec c = v.coords();
    for (const auto& x : c) {
        if (x > 0) return v;
        if (x < 0) {
            MukaiVector w = v;
            w.r = -w.r;
            w.s = -w.s;
            for (auto& d : w.D) d = -d;
            return w;
        }
    }
    return v;  // zero vector
}

}  // namespace catsys
