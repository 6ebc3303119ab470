#pragma once

#include "catsys/charge.hpp"

namespace catsys {

// Output of the pigeonhole construction on a rank-one slice with n omega^2 < 1:
// a class (r, d, s) with 1 <= r <= 1/(sqrt(n) omega), |epsilon| < sqrt(n) omega
// for epsilon = s + 2n beta d + n beta^2 r, and 0 <= n d^2 - s r <= n.
struct DirichletTriple {
    Integer r;
    Integer d;
    Integer s;
    Rational epsilon;
};

DirichletTriple dirichlet_triple(long n, const Rational& beta, const Rational& omega);

// Small-charge class witnessing sys^2/vol < n + 1 on the rank-one slice:
// the skyscraper when n omega^2 >= 1, the Dirichlet class otherwise.
struct RankOneWitness {
    Integer r;
    Integer d;
    Integer s;
    Rational ratio;  // |Z(r,d,s)|^2 / (4 n omega^2), exact
    bool skyscraper;
};

RankOneWitness rank_one_witness(long n, const Rational& beta, const Rational& omega);

// Orthonormal basis (floating point) of the orthogonal complement of omega
// inside NS otimes R, with respect to minus the intersection form (positive
// definite there by Hodge index).  Empty for rank one.
std::vector<std::vector<double>> orthonormal_frame(const NSLattice& L, const QVec& omega);

// Symmetric convex body spanned by the Minkowski columns: the cross-polytope
// hull of +-v_1..v_{rho+2}.  det(M)^2 = 2^{rho+1} C^2 / |disc| exactly, so
// |det M| > (rho+2)! iff C^2 exceeds threshold_sq below.
struct MinkowskiBody {
    std::vector<std::vector<double>> columns;  // column k = coords of v_k
    double c = 0;
    Rational c_sq;
    Rational det_sq;
};

Rational minkowski_threshold_sq(int rho, const Integer& disc);

MinkowskiBody minkowski_body(const StabilityPoint& p, const std::optional<Rational>& C = {});

struct MinkowskiWitness {
    MukaiVector v;               // sign-normalized, lex-least admissible point
    std::vector<double> coeffs;  // e with M e = v, sum |e_i| <= 1 + tol
    MinkowskiBody body;
    unsigned long long box_points = 0;
    unsigned long long members = 0;
};

// Enumerates integer points of the body's bounding box, keeps those inside
// the body (float test, tol 1e-9), and verifies the charge bounds exactly:
// (Im Z)^2 <= C^2 omega^2, (Re Z)^2 <= 2 omega^2, v^2 >= -2.
MinkowskiWitness minkowski_witness(const StabilityPoint& p, const std::optional<Rational>& C = {});

// Explicit constants of the two systolic bounds.
struct TheoremConstants {
    Rational k3_general;               // ((rho+2)!)^2 |disc| / 2^rho + 4
    std::optional<Rational> rank_one;  // 4(n+1) when n is given
};

TheoremConstants theorem_constants(int rho, const Integer& disc, std::optional<long> n = {});

}  // namespace catsys
