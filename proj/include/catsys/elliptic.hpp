#pragma once

#include "catsys/rational.hpp"

namespace catsys {

// tau = beta + i omega in the upper half plane, rational coordinates.
struct TauPoint {
    Rational beta;
    Rational omega;
};

// Shortest nonzero vector of the charge lattice Z_tau(r, d) = -d + tau r:
// the quadratic form (d - beta r)^2 + omega^2 r^2 on (d, r) in Z^2.
struct Lambda1Result {
    Rational length_sq;
    Integer d;
    Integer r;  // canonical shortest vector: sign-normalized, lex-least on (r, d)
};

Lambda1Result lambda1(const TauPoint& tau);

// Same computation from the form data (beta, omega^2); admits irrational
// omega with rational square, e.g. the hexagonal point omega^2 = 3/4.
Lambda1Result lambda1_form(const Rational& beta, const Rational& omega_sq);

// sys^2 / vol = lambda1(tau)^2 / (2 omega), exact.
Rational elliptic_ratio(const TauPoint& tau);

struct HermiteGrid {
    int beta_steps = 200;
    int omega_steps = 200;
    Rational omega_max = 2;
    long boundary_scale = 1000000;  // omega snaps to ceil(scale*sqrt(1-beta^2))/scale
};

struct HermiteScanResult {
    Rational max_ratio;   // grid maximum of lambda1^2/(2 omega), exact
    TauPoint argmax;      // first grid point attaining it (row-major)
    long points = 0;
    double max_ratio_d() const { return to_double(max_ratio); }
};

// Smallest omega of the form k/scale with beta^2 + omega^2 >= 1: the grid's
// rational stand-in for the boundary value sqrt(1 - beta^2).
Rational hermite_omega_floor(const Rational& beta, long scale);

// Sweeps the fundamental domain |beta| <= 1/2, |tau| >= 1: beta equispaced
// inclusive of the endpoints, omega from just above the unit-circle boundary
// up to omega_max.  The supremum 1/sqrt(3) = gamma_2/2 is approached at the
// corners beta = +-1/2.
HermiteScanResult hermite_scan(const HermiteGrid& grid);

}  // namespace catsys
