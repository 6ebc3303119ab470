#include "catsys/charge.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace catsys;

namespace {

MukaiVector mk(long r, std::vector<long> D, long s) {
    MukaiVector v;
    v.r = r;
    for (long x : D) v.D.push_back(Integer(x));
    v.s = s;
    return v;
}

Rational rnd_q(std::mt19937_64& g, long lo, long hi, long den) {
    std::uniform_int_distribution<long> num(lo * den, hi * den);
    return make_rational(num(g), den);
}

// |Z + t2 conj Z|^2 <= (1 + |t2|)^2 |Z|^2 without leaving the rationals:
// move the cross term to one side and square once more.
bool magnitude_within(const Rational& attained_sq, const Rational& z_sq,
                      const Rational& t2_sq, bool upper) {
    Rational base = z_sq * (1 + t2_sq);
    Rational lhs = upper ? attained_sq - base : base - attained_sq;
    if (lhs <= 0) return true;
    return lhs * lhs <= 4 * z_sq * z_sq * t2_sq;
}

}  // namespace

TEST_CASE("stability point construction") {
    NSLattice L = NSLattice::rank_one(1);
    StabilityPoint p(L, QVec{Rational(0)}, QVec{Rational(2)});
    CHECK(p.omega_sq() == 8);  // 2 n omega^2 with omega-vector 2H
    CHECK(p.beta_sq() == 0);
    CHECK(p.beta_omega() == 0);

    CHECK_THROWS_AS(StabilityPoint(L, QVec{Rational(0)}, QVec{Rational(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StabilityPoint(L, QVec{Rational(0), Rational(0)}, QVec{Rational(1)}),
                    std::invalid_argument);

    NSLattice L2({{Integer(2), Integer(1)}, {Integer(1), Integer(-2)}});
    // omega = (0,1) has omega^2 = -2 < 0: rejected
    CHECK_THROWS_AS(StabilityPoint(L2, QVec{Rational(0), Rational(0)},
                                   QVec{Rational(0), Rational(1)}),
                    std::invalid_argument);
    CHECK_NOTHROW(StabilityPoint(L2, QVec{Rational(1), Rational(-1)},
                                 QVec{Rational(1), Rational(0)}));
}

TEST_CASE("central charge values") {
    StabilityPoint p = StabilityPoint::rank_one(1, Rational(0), Rational(2));
    CHECK(central_charge(p, mk(0, {0}, 1)) == ComplexRational(Rational(1), Rational(0)));
    CHECK(central_charge(p, mk(1, {0}, 0)) == ComplexRational(Rational(-4), Rational(0)));
    CHECK(central_charge(p, MukaiVector::zero(1)).is_zero());
    CHECK(central_charge(p, mk(0, {1}, 0)) == ComplexRational(Rational(0), Rational(4)));

    // additivity
    std::mt19937_64 g(3);
    std::uniform_int_distribution<long> u(-8, 8);
    NSLattice L2({{Integer(2), Integer(1)}, {Integer(1), Integer(-2)}});
    StabilityPoint q(L2, QVec{make_rational(1, 3), Rational(-1)},
                     QVec{Rational(1), make_rational(1, 2)});
    for (int t = 0; t < 50; ++t) {
        MukaiVector a = mk(u(g), {u(g), u(g)}, u(g));
        MukaiVector b = mk(u(g), {u(g), u(g)}, u(g));
        MukaiVector ab{a.r + b.r, {a.D[0] + b.D[0], a.D[1] + b.D[1]}, a.s + b.s};
        CHECK(central_charge(q, ab) == central_charge(q, a) + central_charge(q, b));
    }
}

TEST_CASE("rank one closed form agrees with the generic charge") {
    // n=1, beta=0, omega=2: Z(r,d,s) = (s - 4r) + 4d i
    for (long r = -2; r <= 2; ++r)
        for (long d = -2; d <= 2; ++d)
            for (long s = -2; s <= 2; ++s) {
                ComplexRational z =
                    central_charge_rank_one(1, Rational(0), Rational(2), Integer(r), Integer(d),
                                            Integer(s));
                CHECK(z == ComplexRational(Rational(s - 4 * r), Rational(4 * d)));
            }

    CHECK(central_charge_rank_one(2, Rational(1), Rational(1), Integer(1), Integer(0),
                                  Integer(0)) == ComplexRational(Rational(0), Rational(4)));
    CHECK(central_charge_rank_one(5, make_rational(1, 3), make_rational(7, 2), Integer(0),
                                  Integer(0), Integer(1)) ==
          ComplexRational(Rational(1), Rational(0)));

    std::mt19937_64 g(17);
    std::uniform_int_distribution<long> u(-10, 10);
    for (int t = 0; t < 100; ++t) {
        long n = 1 + (t % 3) * 2;  // 1, 3, 5
        Rational beta = rnd_q(g, -3, 3, 7);
        Rational omega = rnd_q(g, 1, 4, 5);
        MukaiVector v = mk(u(g), {u(g)}, u(g));
        StabilityPoint p = StabilityPoint::rank_one(n, beta, omega);
        CHECK(central_charge(p, v) ==
              central_charge_rank_one(n, beta, omega, v.r, v.D[0], v.s));
    }
    CHECK_THROWS_AS(central_charge_rank_one(0, Rational(0), Rational(1), Integer(1),
                                            Integer(0), Integer(0)),
                    std::invalid_argument);
}

TEST_CASE("elliptic charge") {
    ComplexRational i(Rational(0), Rational(1));
    CHECK(elliptic_charge(i, Integer(1), Integer(0)) == i);
    CHECK(elliptic_charge(i, Integer(0), Integer(1)) ==
          ComplexRational(Rational(-1), Rational(0)));
    ComplexRational tau(make_rational(1, 2), make_rational(13, 15));
    CHECK(elliptic_charge(tau, Integer(1), Integer(1)) ==
          tau - ComplexRational(Rational(1), Rational(0)));
    CHECK_THROWS_AS(elliptic_charge(ComplexRational(Rational(1), Rational(0)), Integer(1),
                                    Integer(0)),
                    std::invalid_argument);
}

TEST_CASE("t factors") {
    auto tf = t_factors(GLTildeElement(Rational(1), Rational(0), Rational(0), Rational(1)));
    CHECK(tf.t1 == ComplexRational(Rational(1), Rational(0)));
    CHECK(tf.t2.is_zero());

    tf = t_factors(GLTildeElement(Rational(2), Rational(0), Rational(0), Rational(2)));
    CHECK(tf.t1 == ComplexRational(Rational(2), Rational(0)));
    CHECK(tf.t2.is_zero());

    tf = t_factors(GLTildeElement(Rational(1), Rational(0), Rational(0), Rational(2)));
    CHECK(tf.t1 == ComplexRational(make_rational(3, 2), Rational(0)));
    CHECK(tf.t2 == ComplexRational(make_rational(-1, 3), Rational(0)));

    CHECK_THROWS_AS(GLTildeElement(Rational(1), Rational(0), Rational(0), Rational(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(GLTildeElement(Rational(0), Rational(1), Rational(1), Rational(0)),
                    std::invalid_argument);

    std::mt19937_64 g(23);
    int done = 0;
    while (done < 200) {
        Rational a = rnd_q(g, -3, 3, 9), b = rnd_q(g, -3, 3, 9);
        Rational c = rnd_q(g, -3, 3, 9), d = rnd_q(g, -3, 3, 9);
        if (a * d - b * c <= 0) continue;
        GLTildeElement el(a, b, c, d);
        auto t = t_factors(el);
        CHECK(t.t2.norm_sq() < 1);  // exact
        // |t1|^2 (1 - |t2|^2) = det
        CHECK(t.t1.norm_sq() * (1 - t.t2.norm_sq()) == el.det());
        ++done;
    }
}

TEST_CASE("gl action on charges") {
    ComplexRational i(Rational(0), Rational(1));
    GLTildeElement id(Rational(1), Rational(0), Rational(0), Rational(1));
    ComplexRational z(make_rational(3, 7), make_rational(-2, 5));
    CHECK(act_gl(id, z) == z);

    GLTildeElement twice(Rational(2), Rational(0), Rational(0), Rational(2));
    CHECK(act_gl(twice, z) == z * Rational(2));

    GLTildeElement g12(Rational(1), Rational(0), Rational(0), Rational(2));
    CHECK(act_gl(g12, i) == ComplexRational(Rational(0), Rational(2)));

    // component identity: the action is the stored matrix on (Re, Im)
    std::mt19937_64 g(29);
    int done = 0;
    while (done < 200) {
        Rational a = rnd_q(g, -3, 3, 8), b = rnd_q(g, -3, 3, 8);
        Rational c = rnd_q(g, -3, 3, 8), d = rnd_q(g, -3, 3, 8);
        if (a * d - b * c <= 0) continue;
        GLTildeElement el(a, b, c, d);
        ComplexRational Z(rnd_q(g, -5, 5, 11), rnd_q(g, -5, 5, 11));
        ComplexRational W = act_gl(el, Z);
        CHECK(W.re == a * Z.re + b * Z.im);
        CHECK(W.im == c * Z.re + d * Z.im);

        auto t = t_factors(el);
        // sandwich |t1|^2 (1 - |t2|)^2 |Z|^2 <= |W|^2 <= |t1|^2 (1 + |t2|)^2 |Z|^2
        CHECK(magnitude_within(W.norm_sq() / t.t1.norm_sq(), Z.norm_sq(), t.t2.norm_sq(),
                               true));
        CHECK(magnitude_within(W.norm_sq() / t.t1.norm_sq(), Z.norm_sq(), t.t2.norm_sq(),
                               false));
        ++done;
    }
}

TEST_CASE("c action") {
    ComplexRational z(make_rational(3, 4), make_rational(-1, 3));
    CHECK(act_c_integer(Integer(0), z) == z);
    CHECK(act_c_integer(Integer(1), z) == -z);
    CHECK(act_c_integer(Integer(-3), z) == -z);
    CHECK(act_c_integer(Integer(4), z) == z);

    // integer x goes through the exact branch
    auto w = act_c(ComplexRational(Rational(2), Rational(0)), z);
    CHECK(w.real() == doctest::Approx(to_double(z.re)).epsilon(1e-15));
    CHECK(w.imag() == doctest::Approx(to_double(z.im)).epsilon(1e-15));

    // purely imaginary z scales the magnitude by e^{pi y}
    for (double y : {-0.5, -0.1, 0.3, 1.0}) {
        Rational yq = make_rational(static_cast<long>(y * 10), 10);
        auto s = act_c(ComplexRational(Rational(0), yq), z);
        double expect = std::exp(M_PI * to_double(yq)) * std::sqrt(to_double(z.norm_sq()));
        CHECK(std::abs(s) == doctest::Approx(expect).epsilon(1e-10));
    }

    // generic z: magnitude law again, phase from -pi x
    ComplexRational zc(make_rational(1, 3), make_rational(1, 5));
    auto s = act_c(zc, z);
    double mag = std::exp(M_PI / 5.0) * std::sqrt(to_double(z.norm_sq()));
    CHECK(std::abs(s) == doctest::Approx(mag).epsilon(1e-10));
    double want_arg = std::arg(to_complex_double(z)) - M_PI / 3.0;
    double got_arg = std::arg(s);
    double diff = std::remainder(got_arg - want_arg, 2 * M_PI);
    CHECK(std::abs(diff) < 1e-10);
}
