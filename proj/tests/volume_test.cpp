#include "catsys/volume.hpp"

#include <doctest.h>

#include <random>

using namespace catsys;

namespace {

NSLattice rho2() {
    return NSLattice({{Integer(2), Integer(1)}, {Integer(1), Integer(-2)}});
}

Rational rnd_q(std::mt19937_64& g, long lo, long hi, long den) {
    std::uniform_int_distribution<long> num(lo * den, hi * den);
    return make_rational(num(g), den);
}

std::vector<ComplexRational> transform(const std::vector<std::vector<long>>& U,
                                       const std::vector<ComplexRational>& Z) {
    const std::size_t m = Z.size();
    std::vector<ComplexRational> out(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < m; ++i)
            out[a] = out[a] + Z[i] * Rational(U[i][a]);
    return out;
}

std::vector<IVec> conjugate(const std::vector<std::vector<long>>& U,
                            const std::vector<IVec>& chi) {
    const std::size_t m = chi.size();
    std::vector<IVec> out(m, IVec(m, Integer(0)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    out[a][b] += Integer(U[i][a]) * chi[i][j] * Integer(U[j][b]);
    return out;
}

}  // namespace

TEST_CASE("euler form construction") {
    EulerForm e = EulerForm::elliptic();
    CHECK(e.dim() == 2);
    CHECK(e.chi(0, 1) == -1);
    CHECK(e.chi(1, 0) == 1);
    CHECK(e.inv(0, 1) == 1);
    CHECK(e.inv(1, 0) == -1);

    NSLattice L = NSLattice::rank_one(1);
    EulerForm k = EulerForm::k3(L);
    CHECK(k.dim() == 3);
    auto mg = L.mukai_gram();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(k.chi(i, j) == -mg[i][j]);

    CHECK_THROWS_AS(EulerForm({{Integer(1), Integer(1)}, {Integer(1), Integer(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(EulerForm({}), std::invalid_argument);
}

TEST_CASE("elliptic volume is twice the imaginary part") {
    EulerForm chi = EulerForm::elliptic();
    std::mt19937_64 g(31);
    for (int t = 0; t < 50; ++t) {
        ComplexRational tau(rnd_q(g, -3, 3, 12), rnd_q(g, 1, 4, 12));
        // basis {O_x, O_E}: charges of the point sheaf and the structure sheaf
        std::vector<ComplexRational> Z{elliptic_charge(tau, Integer(0), Integer(1)),
                                       elliptic_charge(tau, Integer(1), Integer(0))};
        VolumeResult v = volume_generic(chi, Z);
        REQUIRE(v.mag_exact.has_value());
        CHECK(*v.mag_exact == 2 * tau.im);
        CHECK(v.sum.re == 0);  // purely imaginary pairing sum
        CHECK(holomorphic_nullity(chi, Z).is_zero());
    }

    std::vector<ComplexRational> zero(2);
    CHECK(volume_generic(chi, zero).mag_sq == 0);
    CHECK_THROWS_AS(volume_generic(chi, std::vector<ComplexRational>(3)),
                    std::invalid_argument);
}

TEST_CASE("k3 volume closed form") {
    StabilityPoint p = StabilityPoint::rank_one(1, Rational(0), Rational(2));
    EulerForm chi = EulerForm::k3(p.lattice());
    VolumeResult v = volume_generic(chi, charge_on_basis(p));
    REQUIRE(v.mag_exact.has_value());
    CHECK(*v.mag_exact == 16);
    CHECK(volume_k3_closed(p) == 16);
    CHECK(v.sum.im == 0);  // purely real here

    std::mt19937_64 g(37);
    std::vector<NSLattice> Ls{NSLattice::rank_one(1), NSLattice::rank_one(2), rho2()};
    for (const auto& L : Ls) {
        EulerForm c = EulerForm::k3(L);
        const int rho = L.rank();
        for (int t = 0; t < 40; ++t) {
            QVec beta(rho), omega(rho, Rational(0));
            for (int i = 0; i < rho; ++i) beta[i] = rnd_q(g, -2, 2, 9);
            omega[0] = rnd_q(g, 1, 3, 8);
            if (rho == 2) omega[1] = rnd_q(g, 0, 1, 8) * make_rational(1, 4);
            StabilityPoint pt(L, beta, omega);
            VolumeResult res = volume_generic(c, charge_on_basis(pt));
            REQUIRE(res.mag_exact.has_value());
            CHECK(*res.mag_exact == 2 * pt.omega_sq());
            CHECK(*res.mag_exact == volume_k3_closed(pt));
            CHECK(holomorphic_nullity(c, charge_on_basis(pt)).is_zero());
        }
    }
}

TEST_CASE("volume is basis change invariant") {
    // unimodular change of basis: chi -> U^T chi U, Z -> U^T Z
    StabilityPoint p = StabilityPoint::rank_one(2, make_rational(-1, 3), make_rational(5, 4));
    NSLattice L = p.lattice();
    std::vector<IVec> chi_mat;
    {
        EulerForm c = EulerForm::k3(L);
        for (int i = 0; i < 3; ++i) {
            IVec row;
            for (int j = 0; j < 3; ++j) row.push_back(c.chi(i, j));
            chi_mat.push_back(row);
        }
    }
    std::vector<std::vector<long>> U{{1, 2, 0}, {0, 1, -1}, {0, 0, 1}};  // det 1
    EulerForm chi0(chi_mat), chi1(conjugate(U, chi_mat));
    auto Z0 = charge_on_basis(p);
    auto Z1 = transform(U, Z0);
    VolumeResult v0 = volume_generic(chi0, Z0), v1 = volume_generic(chi1, Z1);
    CHECK(v0.sum == v1.sum);
    CHECK(v0.mag_sq == v1.mag_sq);
    CHECK(holomorphic_nullity(chi1, Z1).is_zero());
}

TEST_CASE("gl scaling of the volume") {
    GLTildeElement g12(Rational(1), Rational(0), Rational(0), Rational(2));
    CHECK(volume_gl_factor(g12) == make_rational(5, 2));
    GLTildeElement id(Rational(1), Rational(0), Rational(0), Rational(1));
    CHECK(volume_gl_factor(id) == 1);
    CHECK(volume_gl_law(g12, Rational(16)) == 40);

    // transforming every basis charge reproduces the law exactly
    std::mt19937_64 g(43);
    StabilityPoint p = StabilityPoint::rank_one(1, make_rational(2, 7), make_rational(9, 8));
    EulerForm chi = EulerForm::k3(p.lattice());
    auto Z = charge_on_basis(p);
    Rational vol = *volume_generic(chi, Z).mag_exact;
    int done = 0;
    while (done < 60) {
        Rational a = rnd_q(g, -3, 3, 6), b = rnd_q(g, -3, 3, 6);
        Rational c = rnd_q(g, -3, 3, 6), d = rnd_q(g, -3, 3, 6);
        if (a * d - b * c <= 0) continue;
        GLTildeElement el(a, b, c, d);
        std::vector<ComplexRational> W;
        for (const auto& z : Z) W.push_back(act_gl(el, z));
        VolumeResult res = volume_generic(chi, W);
        REQUIRE(res.mag_exact.has_value());
        CHECK(*res.mag_exact == volume_gl_law(el, vol));
        ++done;
    }
}

TEST_CASE("a2 cy3 volume") {
    std::complex<double> i(0, 1), one_i(1, 1);
    CHECK(a2_cy3_volume(i, one_i) == doctest::Approx(2.0));
    CHECK(a2_cy3_volume(one_i, {2, 2}) == doctest::Approx(0.0));  // collinear: wall
    CHECK(a2_cy3_volume(i, i) == doctest::Approx(0.0));
}
