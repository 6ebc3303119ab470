#include "catsys/charge.hpp"

#include <cmath>

namespace catsys {

StabilityPoint::StabilityPoint(NSLattice lattice, QVec beta, QVec omega)
    : lattice_(std::move(lattice)), beta_(std::move(beta)), omega_(std::move(omega)) {
    const int rho = lattice_.rank();
    if (static_cast<int>(beta_.size()) != rho || static_cast<int>(omega_.size()) != rho)
        throw std::invalid_argument("StabilityPoint: beta/omega length != rank");
    beta_sq_ = lattice_.ns_pairing(beta_, beta_);
    omega_sq_ = lattice_.ns_pairing(omega_, omega_);
    beta_omega_ = lattice_.ns_pairing(beta_, omega_);
    if (omega_sq_ <= 0) throw std::invalid_argument("StabilityPoint: omega^2 must be positive");

    re_form_.assign(rho + 2, Rational(0));
    im_form_.assign(rho + 2, Rational(0));
    re_form_[0] = (beta_sq_ - omega_sq_) / 2;
    im_form_[0] = beta_omega_;
    for (int i = 0; i < rho; ++i) {
        Rational gb(0), gw(0);
        for (int j = 0; j < rho; ++j) {
            gb += Rational(lattice_.gram(i, j)) * beta_[j];
            gw += Rational(lattice_.gram(i, j)) * omega_[j];
        }
        re_form_[1 + i] = gb;
        im_form_[1 + i] = gw;
    }
    re_form_[rho + 1] = 1;
}

StabilityPoint StabilityPoint::rank_one(long n, const Rational& beta_t, const Rational& omega_t) {
    return StabilityPoint(NSLattice::rank_one(n), QVec{beta_t}, QVec{omega_t});
}

ComplexRational central_charge(const StabilityPoint& p, const MukaiVector& v) {
    IVec c = v.coords();
    if (c.size() != p.re_form().size())
        throw std::invalid_argument("central_charge: vector rank mismatch");
    Rational re(0), im(0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rational ci(c[i]);
        re += p.re_form()[i] * ci;
        im += p.im_form()[i] * ci;
    }
    return {re, im};
}

ComplexRational central_charge_rank_one(long n, const Rational& beta, const Rational& omega,
                                        const Integer& r, const Integer& d, const Integer& s) {
    if (n < 1) throw std::invalid_argument("central_charge_rank_one: need n >= 1");
    Rational nn(n), rr(r), dd(d);
    Rational re = Rational(s) + 2 * nn * beta * dd + nn * (beta * beta - omega * omega) * rr;
    Rational im = 2 * nn * omega * dd + 2 * nn * beta * omega * rr;
    return {re, im};
}

ComplexRational elliptic_charge(const ComplexRational& tau, const Integer& r, const Integer& d) {
    if (tau.im <= 0) throw std::invalid_argument("elliptic_charge: need Im tau > 0");
    Rational rr(r);
    return {Rational(-d) + tau.re * rr, tau.im * rr};
}

GLTildeElement::GLTildeElement(Rational a_, Rational b_, Rational c_, Rational d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (det() <= 0) throw std::invalid_argument("GLTildeElement: determinant must be positive");
}

TFactors t_factors(const GLTildeElement& g) {
    ComplexRational t1{(g.a + g.d) / 2, (g.c - g.b) / 2};
    if (t1.is_zero()) throw std::logic_error("t_factors: t1 vanished on a det>0 element");
    ComplexRational num{(g.a - g.d) / 2, (g.b + g.c) / 2};
    ComplexRational t2 = num / t1;
    if (t2.norm_sq() >= 1) throw std::logic_error("t_factors: |t2| >= 1 on a det>0 element");
    return {t1, t2};
}

ComplexRational act_gl(const GLTildeElement& g, const ComplexRational& Z) {
    TFactors t = t_factors(g);
    return t.t1 * (Z + t.t2 * Z.conj());
}

ComplexRational act_c_integer(const Integer& k, const ComplexRational& Z) {
    return mpz_even_p(k.get_mpz_t()) ? Z : -Z;
}

std::complex<double> act_c(const ComplexRational& z, const ComplexRational& Z) {
    const double pi = 3.14159265358979323846;
    double scale = std::exp(pi * to_double(z.im));
    std::complex<double> Zd = to_complex_double(Z);
    if (z.re.get_den() == 1) {
        ComplexRational flipped = act_c_integer(z.re.get_num(), Z);
        return scale * to_complex_double(flipped);
    }
    double x = to_double(z.re);
    std::complex<double> phase{std::cos(pi * x), -std::sin(pi * x)};
    return scale * phase * Zd;
}

}  // namespace catsys
