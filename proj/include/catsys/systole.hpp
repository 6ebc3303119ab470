#pragma once

#include "catsys/charge.hpp"

namespace catsys {

// Positive definite auxiliary form used to make the systole search finite:
//   Q(v) = 2 |Z(v)|^2 / omega^2 - v^2.
// Positivity: Re Omega, Im Omega span a positive 2-plane P on which the
// Mukai form restricts to |Z|^2-compatible lengths; subtracting v^2 flips
// the negative definite complement.  Key consequence: v^2 >= -2 and
// |Z(v)|^2 <= b imply Q(v) <= 2b/omega^2 + 2, so closed Q-balls certify
// completeness of the search.
class QSigmaForm {
public:
    static QSigmaForm from_point(const StabilityPoint& p);

    int dim() const { return static_cast<int>(gram_.size()); }
    const QMat& gram() const { return gram_; }
    Rational value(const MukaiVector& v) const;
    Rational value(const IVec& coords) const;

    // Unit-lower-triangular LDL^T data of the Gram matrix.
    const LDL& ldl() const { return ldl_; }

    // Per-coordinate radius of the box containing { Q <= bound }:
    // |v_i| <= sqrt(bound * (Q^{-1})_ii), computed exactly then floored.
    IVec ball_box(const Rational& bound) const;

private:
    QSigmaForm() = default;

    QMat gram_;
    LDL ldl_;
    QMat inverse_;
};

QSigmaForm q_sigma(const StabilityPoint& p);

// All nonzero integral v with v^2 >= -2 and |Z(v)|^2 <= bound_sq, as an
// exact finite set (both signs, sorted by (r, D, s)).
std::vector<MukaiVector> enumerate_constrained(const StabilityPoint& p, const Rational& bound_sq);

struct SystoleCertificate {
    Rational sys_sq;               // min |Z(v)|^2 over v != 0, v^2 >= -2
    MukaiVector argmin;            // sign-normalized, lex-least among minimizers
    Rational q_bound;              // radius of the verified closed Q-ball
    unsigned long long candidates_scanned = 0;  // vectors visited in the final pass
};

// Certified systole: branch-and-bound over shrinking Q-balls seeded by the
// skyscraper class (0,...,0,1), then a deterministic full re-enumeration at
// the final radius.  Throws std::domain_error if some admissible class has
// Z(v) = 0 (degenerate point, not a stability condition).
SystoleCertificate systole(const StabilityPoint& p);

// Independent oracle: exhaustive scan of the coordinate box, no lattice
// reduction or pruning shared with systole().  Throws if the box is empty.
Rational systole_bruteforce(const StabilityPoint& p, const IVec& box_radii);

// Lower bound for the spherical systole on a rank-one slice: minimizes
// |Z(v)|^2 / (4 n omega^2) over v = (r,d,s) with n d^2 - r s = -1.  The
// structure sheaf class (1,0,1) always qualifies and seeds the search;
// a caller-supplied cap on |Z(v)|^2 may exclude everything (-> nullopt).
std::optional<Rational> spherical_systole_rank_one(long n, const Rational& beta,
                                                   const Rational& omega,
                                                   const std::optional<Rational>& search_bound = {});

// A2 quiver: sys = min over the stable classes of the chamber.
// Domain: z1, z2 nonzero with arg in (0, pi] (upper half plane or the
// negative real axis).  arg z1 < arg z2: stables are the two simples;
// otherwise the extension class z1 + z2 is stable as well.
double a2_systole(const std::complex<double>& z1, const std::complex<double>& z2);

// Bounded heuristic for membership in the geometric chamber: looks for a
// -2-class delta with r > 0 whose charge falls on the forbidden ray
// (Im Z = 0, Re Z >= 0 in this sign convention) inside the Q-ball of the
// given radius.  Returns the lex-least violator, or nullopt when the search
// is exhausted without one -- which is "inconclusive", not a certificate:
// a violator may exist beyond the radius.
std::optional<MukaiVector> chamber_violator(const StabilityPoint& p, const Rational& q_radius);

}  // namespace catsys
