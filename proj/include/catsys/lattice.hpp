#pragma once

#include "catsys/qmat.hpp"

namespace catsys {

// Neron-Severi lattice of a K3 surface: an integral symmetric bilinear form
// of signature (1, rho-1).  The constructor rejects anything else.
class NSLattice {
public:
    explicit NSLattice(std::vector<IVec> gram);

    // Picard rank one with intersection form (2n), n >= 1.
    static NSLattice rank_one(long n);

    int rank() const { return rank_; }
    const Integer& gram(int i, int j) const { return gram_[i][j]; }
    const std::vector<IVec>& gram() const { return gram_; }

    // det of the Gram matrix; nonzero by the signature check.
    const Integer& discriminant() const { return disc_; }

    Integer ns_pairing(const IVec& a, const IVec& b) const;
    Rational ns_pairing(const QVec& a, const QVec& b) const;
    Rational ns_pairing(const QVec& a, const IVec& b) const;

    // Gram of the extended Mukai lattice H^0 + NS + H^4 in coordinate order
    // (r, D_1..D_rho, s): pairing (v,w) = D.D' - r s' - r' s, signature (2, rho).
    std::vector<IVec> mukai_gram() const;

private:
    std::vector<IVec> gram_;
    int rank_;
    Integer disc_;
};

// Mukai vector (r, D, s); D in NS coordinates.  The zero vector is valid
// input for pairings but excluded from systole minimization by callers.
struct MukaiVector {
    Integer r;
    IVec D;
    Integer s;

    static MukaiVector zero(int rho) { return {Integer(0), IVec(rho, Integer(0)), Integer(0)}; }
    bool is_zero() const;
    // flat coordinates (r, D..., s)
    IVec coords() const;
    static MukaiVector from_coords(const IVec& c);

    bool operator==(const MukaiVector& o) const { return r == o.r && D == o.D && s == o.s; }
};

Integer mukai_pairing(const NSLattice& L, const MukaiVector& v, const MukaiVector& w);
Integer mukai_square(const NSLattice& L, const MukaiVector& v);

// Orders vectors by (r, D..., s); used for deterministic tie-breaking.
bool mukai_lex_less(const MukaiVector& a, const MukaiVector& b);

// Flips sign so the first nonzero coordinate of (r, D..., s) is positive.
MukaiVector mukai_sign_normalize(const MukaiVector& v);

}  // namespace catsys
