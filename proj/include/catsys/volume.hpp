#pragma once

#include "catsys/charge.hpp"

namespace catsys {

// Euler pairing chi on a finite basis of the numerical Grothendieck group,
// given as an integer matrix chi(E_i, E_j).  Must be invertible; the inverse
// (chi^{ij}) is cached exactly.
class EulerForm {
public:
    explicit EulerForm(std::vector<IVec> chi);

    // K3 surface: chi(E, F) = -<v(E), v(F)> in the coordinates (r, D, s).
    static EulerForm k3(const NSLattice& L);

    // Elliptic curve, basis {O_x, O_E}: chi = [[0, -1], [1, 0]].
    static EulerForm elliptic();

    int dim() const { return static_cast<int>(chi_.size()); }
    const Integer& chi(int i, int j) const { return chi_[i][j]; }
    const Rational& inv(int i, int j) const { return inv_[i][j]; }

private:
    std::vector<IVec> chi_;
    QMat inv_;
};

// vol(sigma) = | sum_ij chi^{ij} Z_i conj(Z_j) |.  The sum is exact; its
// magnitude is rational exactly when the sum is purely real or purely
// imaginary (which covers every surface/curve case here).
struct VolumeResult {
    ComplexRational sum;
    Rational mag_sq;
    std::optional<Rational> mag_exact;
    double mag() const;
};

VolumeResult volume_generic(const EulerForm& chi, const std::vector<ComplexRational>& Z);

// Z evaluated on the standard Mukai basis (e_r, e_{D_1}..e_{D_rho}, e_s).
std::vector<ComplexRational> charge_on_basis(const StabilityPoint& p);

// Closed form on the K3 geometric slice: vol = 2 omega^2.
Rational volume_k3_closed(const StabilityPoint& p);

// Scaling of vol under g: vol(sigma g) = |t1|^2 (1 + |t2|^2) vol(sigma),
// exact in rationals.
Rational volume_gl_factor(const GLTildeElement& g);
Rational volume_gl_law(const GLTildeElement& g, const Rational& vol);

// sum_ij chi^{ij} Z_i Z_j without conjugation; vanishes identically for
// charges induced by a surface-type Hodge structure.
ComplexRational holomorphic_nullity(const EulerForm& chi, const std::vector<ComplexRational>& Z);

// A2 quiver with CY3 structure: vol = 2 |Im(z1 conj(z2))|.
double a2_cy3_volume(const std::complex<double>& z1, const std::complex<double>& z2);

}  // namespace catsys
