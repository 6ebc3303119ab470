#include "catsys/volume.hpp"

#include <cmath>

namespace catsys {

EulerForm::EulerForm(std::vector<IVec> chi) : chi_(std::move(chi)) {
    const std::size_t n = chi_.size();
    if (n == 0) throw std::invalid_argument("EulerForm: empty matrix");
    for (const auto& row : chi_)
        if (row.size() != n) throw std::invalid_argument("EulerForm: matrix not square");
    try {
        inv_ = qmat_inverse(qmat_from_integers(chi_));
    } catch (const std::domain_error&) {
        throw std::invalid_argument("EulerForm: pairing matrix is singular");
    }
}

EulerForm EulerForm::k3(const NSLattice& L) {
    auto g = L.mukai_gram();
    for (auto& row : g)
        for (auto& x : row) x = -x;
    return EulerForm(std::move(g));
}

EulerForm EulerForm::elliptic() {
    return EulerForm({{Integer(0), Integer(-1)}, {Integer(1), Integer(0)}});
}

double VolumeResult::mag() const {
    if (mag_exact) return to_double(*mag_exact);
    return std::sqrt(to_double(mag_sq));
}

VolumeResult volume_generic(const EulerForm& chi, const std::vector<ComplexRational>& Z) {
    const int n = chi.dim();
    if (static_cast<int>(Z.size()) != n)
        throw std::invalid_argument("volume_generic: charge vector has wrong length");
    ComplexRational sum;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (chi.inv(i, j) == 0) continue;
            sum = sum + (Z[i] * Z[j].conj()) * chi.inv(i, j);
        }
    VolumeResult res;
    res.sum = sum;
    res.mag_sq = sum.norm_sq();
    if (sum.im == 0)
        res.mag_exact = abs(sum.re);
    else if (sum.re == 0)
        res.mag_exact = abs(sum.im);
    return res;
}

std::vector<ComplexRational> charge_on_basis(const StabilityPoint& p) {
    const int m = p.lattice().rank() + 2;
    std::vector<ComplexRational> Z(m);
    for (int i = 0; i < m; ++i) Z[i] = {p.re_form()[i], p.im_form()[i]};
    return Z;
}

Rational volume_k3_closed(const StabilityPoint& p) { return 2 * p.omega_sq(); }

Rational volume_gl_factor(const GLTildeElement& g) {
    TFactors t = t_factors(g);
    return t.t1.norm_sq() * (1 + t.t2.norm_sq());
}

Rational volume_gl_law(const GLTildeElement& g, const Rational& vol) {
    return volume_gl_factor(g) * vol;
}

ComplexRational holomorphic_nullity(const EulerForm& chi, const std::vector<ComplexRational>& Z) {
    const int n = chi.dim();
    if (static_cast<int>(Z.size()) != n)
        throw std::invalid_argument("holomorphic_nullity: charge vector has wrong length");
    ComplexRational sum;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (chi.inv(i, j) == 0) continue;
            sum = sum + (Z[i] * Z[j]) * chi.inv(i, j);
        }
    return sum;
}

double a2_cy3_volume(const std::complex<double>& z1, const std::complex<double>& z2) {
    return 2.0 * std::abs(std::imag(z1 * std::conj(z2)));
}

}  // namespace catsys
