#pragma once

#include "catsys/lattice.hpp"

#include <complex>

namespace catsys {

// A point sigma(beta, omega) of the geometric slice: beta, omega in NS x Q
// with omega^2 > 0.  All derived quantities are exact rationals.
class StabilityPoint {
public:
    StabilityPoint(NSLattice lattice, QVec beta, QVec omega);

    static StabilityPoint rank_one(long n, const Rational& beta_t, const Rational& omega_t);

    const NSLattice& lattice() const { return lattice_; }
    const QVec& beta() const { return beta_; }
    const QVec& omega() const { return omega_; }
    const Rational& beta_sq() const { return beta_sq_; }
    const Rational& omega_sq() const { return omega_sq_; }
    const Rational& beta_omega() const { return beta_omega_; }

    // Z(v) = <exp(beta + i omega), v> expanded over coordinates (r, D, s):
    //   Re Z = s + beta.D + (beta^2 - omega^2)/2 * r
    //   Im Z = omega.D + (omega.beta) * r
    // re_form/im_form are the coefficient vectors of these linear forms.
    const QVec& re_form() const { return re_form_; }
    const QVec& im_form() const { return im_form_; }

private:
    NSLattice lattice_;
    QVec beta_, omega_;
    Rational beta_sq_, omega_sq_, beta_omega_;
    QVec re_form_, im_form_;
};

ComplexRational central_charge(const StabilityPoint& p, const MukaiVector& v);

// Closed form on a rank-one lattice (2n): NS pairings reduce to
// beta.D = 2n*beta*d and beta^2 = 2n*beta^2, giving
//   Z = s + 2n(beta+i omega)d + n(beta+i omega)^2 r.
ComplexRational central_charge_rank_one(long n, const Rational& beta, const Rational& omega,
                                        const Integer& r, const Integer& d, const Integer& s);

// Elliptic curve charge Z_tau(r, d) = -d + tau * r, Im tau > 0.
ComplexRational elliptic_charge(const ComplexRational& tau, const Integer& r, const Integer& d);

// Element of GL+(2,R) with rational entries (row-major a b / c d), det > 0.
struct GLTildeElement {
    Rational a, b, c, d;
    GLTildeElement(Rational a_, Rational b_, Rational c_, Rational d_);
    Rational det() const { return a * d - b * c; }
};

// t1 = ((a+d) + i(c-b))/2, t2 = ((a-d) + i(b+c)) / (2 t1).
// det > 0 forces t1 != 0 and |t2| < 1: |t1|^2 - |t1 t2|^2 = det.
struct TFactors {
    ComplexRational t1;
    ComplexRational t2;
};
TFactors t_factors(const GLTildeElement& g);

// Charge transported along g: Z |-> t1 (Z + t2 conj(Z)).  Component-wise
// this applies the stored matrix to the column (Re Z, Im Z).
ComplexRational act_gl(const GLTildeElement& g, const ComplexRational& Z);

// C-action lift: z = x + iy acts by Z |-> exp(-i pi z) Z.  For integral x
// the phase is exactly (-1)^x and no floating trig enters.
std::complex<double> act_c(const ComplexRational& z, const ComplexRational& Z);

// Exact branch of the above for z = k (integer, y = 0): result is (-1)^k Z.
ComplexRational act_c_integer(const Integer& k, const ComplexRational& Z);

inline std::complex<double> to_complex_double(const ComplexRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace catsys
