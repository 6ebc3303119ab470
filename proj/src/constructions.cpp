#include "catsys/constructions.hpp"

#include <algorithm>
#include <cmath>

namespace catsys {

namespace {

Rational frac_part(const Rational& x) { return x - Rational(floor_q(x)); }

// Nearest integer to x; on a half tie prefer the candidate of smaller
// absolute value (keeps |s| minimal, any fixed rule would do).
Integer round_nearest_small(const Rational& x) {
    Integer fl = floor_q(x);
    Rational fr = x - Rational(fl);
    Rational half(1, 2);
    if (fr < half) return fl;
    if (fr > half) return fl + 1;
    Integer a = fl, b = fl + 1;
    return (abs(a) <= abs(b)) ? a : b;
}

Integer factorial(long m) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return f;
}

}  // namespace

DirichletTriple dirichlet_triple(long n, const Rational& beta, const Rational& omega) {
    if (n < 1) throw std::invalid_argument("dirichlet_triple: need n >= 1");
    if (omega <= 0) throw std::invalid_argument("dirichlet_triple: need omega > 0");
    Rational nw2 = Rational(n) * omega * omega;
    if (nw2 >= 1) throw std::invalid_argument("dirichlet_triple: need n omega^2 < 1");

    // l = floor(1/(sqrt(n) omega)) + 1 > 1/(sqrt(n) omega), computed without
    // leaving the rationals.
    Integer l = isqrt_floor(Rational(1) / nw2) + 1;
    long lc = static_cast<long>(l.get_si());

    // d_j is the nearest integer to -j beta (|j beta + d_j| <= 1/2); the
    // tracked residue is t_j = 2 n beta d_j + n beta^2 j mod 1.
    struct Entry {
        Rational residue;
        Rational t;
        Integer d;
        long j;
    };
    std::vector<Entry> entries;
    entries.reserve(lc);
    Rational half(1, 2);
    for (long j = 1; j <= lc; ++j) {
        Integer dj = floor_q(half - Rational(j) * beta);
        Rational t = 2 * Rational(n) * beta * Rational(dj) + Rational(n) * beta * beta * Rational(j);
        entries.push_back({frac_part(t), t, dj, j});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.residue < b.residue; });

    // Two of the l residues sit within 1/l of each other on the circle; take
    // the first adjacent pair (wraparound included) achieving the minimum gap.
    long best_a = 0, best_b = 1;
    Rational best_gap = entries[1].residue - entries[0].residue;
    for (long i = 1; i + 1 < lc; ++i) {
        Rational gap = entries[i + 1].residue - entries[i].residue;
        if (gap < best_gap) {
            best_gap = gap;
            best_a = i;
            best_b = i + 1;
        }
    }
    {
        Rational wrap = 1 - entries[lc - 1].residue + entries[0].residue;
        if (wrap < best_gap) {
            best_gap = wrap;
            best_a = lc - 1;
            best_b = 0;
        }
    }

    const Entry* hi = &entries[best_a];
    const Entry* lo = &entries[best_b];
    if (hi->j < lo->j) std::swap(hi, lo);

    DirichletTriple out;
    out.r = hi->j - lo->j;
    out.d = hi->d - lo->d;
    Rational t = hi->t - lo->t;  // = 2 n beta d + n beta^2 r
    out.s = round_nearest_small(-t);
    out.epsilon = Rational(out.s) + t;

    // Everything below is guaranteed by the construction; a failure would be
    // a programming error, not bad input.
    Rational rr(out.r);
    if (out.r < 1 || rr * rr * nw2 > 1)
        throw std::logic_error("dirichlet_triple: r out of range");
    if (out.epsilon * out.epsilon >= nw2)
        throw std::logic_error("dirichlet_triple: epsilon too large");
    Integer disc_val = Integer(n) * out.d * out.d - out.s * out.r;
    if (disc_val < 0 || disc_val > n)
        throw std::logic_error("dirichlet_triple: n d^2 - s r out of [0, n]");
    return out;
}

RankOneWitness rank_one_witness(long n, const Rational& beta, const Rational& omega) {
    if (n < 1) throw std::invalid_argument("rank_one_witness: need n >= 1");
    if (omega <= 0) throw std::invalid_argument("rank_one_witness: need omega > 0");
    Rational nw2 = Rational(n) * omega * omega;
    Rational vol = 4 * nw2;

    RankOneWitness w;
    if (nw2 >= 1) {
        w.r = 0;
        w.d = 0;
        w.s = 1;
        w.skyscraper = true;
    } else {
        DirichletTriple t = dirichlet_triple(n, beta, omega);
        w.r = t.r;
        w.d = t.d;
        w.s = t.s;
        w.skyscraper = false;
    }
    Rational zsq = central_charge_rank_one(n, beta, omega, w.r, w.d, w.s).norm_sq();
    w.ratio = zsq / vol;

    if (zsq >= vol * Rational(n + 1))
        throw std::logic_error("rank_one_witness: |Z|^2 >= 4 n omega^2 (n+1)");
    if (Integer(n) * w.d * w.d - w.r * w.s < -1)
        throw std::logic_error("rank_one_witness: class is not admissible");
    return w;
}

std::vector<std::vector<double>> orthonormal_frame(const NSLattice& L, const QVec& omega) {
    const int rho = L.rank();
    if (static_cast<int>(omega.size()) != rho)
        throw std::invalid_argument("orthonormal_frame: omega length != rank");
    if (L.ns_pairing(omega, omega) <= 0)
        throw std::invalid_argument("orthonormal_frame: omega^2 must be positive");
    if (rho == 1) return {};

    std::vector<std::vector<double>> gd(rho, std::vector<double>(rho));
    for (int i = 0; i < rho; ++i)
        for (int j = 0; j < rho; ++j) gd[i][j] = Integer(L.gram(i, j)).get_d();

    // minus the intersection form, positive definite on omega-perp
    auto inner = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (int i = 0; i < rho; ++i)
            for (int j = 0; j < rho; ++j) s -= x[i] * gd[i][j] * y[j];
        return s;
    };

    // kernel basis of { x : (G omega) . x = 0 }
    QVec w(rho, Rational(0));
    for (int i = 0; i < rho; ++i)
        for (int j = 0; j < rho; ++j) w[i] += Rational(L.gram(i, j)) * omega[j];
    int pivot = -1;
    for (int i = 0; i < rho; ++i)
        if (w[i] != 0) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw std::logic_error("orthonormal_frame: G omega vanished");

    std::vector<std::vector<double>> basis;
    for (int i = 0; i < rho; ++i) {
        if (i == pivot) continue;
        std::vector<double> u(rho, 0.0);
        u[i] = to_double(w[pivot]);
        u[pivot] = -to_double(w[i]);
        basis.push_back(std::move(u));
    }

    std::vector<std::vector<double>> frame;
    for (auto& u : basis) {
        for (const auto& f : frame) {
            double c = inner(u, f);
            for (int i = 0; i < rho; ++i) u[i] -= c * f[i];
        }
        double nrm = inner(u, u);
        if (nrm < 1e-12)
            throw std::domain_error("orthonormal_frame: restriction nearly degenerate");
        double inv = 1.0 / std::sqrt(nrm);
        for (int i = 0; i < rho; ++i) u[i] *= inv;
        frame.push_back(u);
    }

    for (std::size_t a = 0; a < frame.size(); ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            double expect = (a == b) ? 1.0 : 0.0;
            if (std::abs(inner(frame[a], frame[b]) - expect) > 1e-9)
                throw std::logic_error("orthonormal_frame: frame failed verification");
        }
        double wd = 0;
        for (int i = 0; i < rho; ++i) wd += to_double(w[i]) * frame[a][i];
        if (std::abs(wd) / std::sqrt(to_double(L.ns_pairing(omega, omega))) > 1e-9)
            throw std::logic_error("orthonormal_frame: frame not orthogonal to omega");
    }
    return frame;
}

Rational minkowski_threshold_sq(int rho, const Integer& disc) {
    if (rho < 1) throw std::invalid_argument("minkowski_threshold_sq: need rho >= 1");
    if (disc == 0) throw std::invalid_argument("minkowski_threshold_sq: need disc != 0");
    Integer f = factorial(rho + 2);
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(rho + 1));
    return make_rational(f * f * abs(disc), pow2);
}

MinkowskiBody minkowski_body(const StabilityPoint& p, const std::optional<Rational>& C) {
    const NSLattice& L = p.lattice();
    const int rho = L.rank();
    const int m = rho + 2;

    Rational threshold = minkowski_threshold_sq(rho, L.discriminant());
    MinkowskiBody body;
    if (C) {
        if (*C <= 0) throw std::invalid_argument("minkowski_body: C must be positive");
        body.c_sq = (*C) * (*C);
        if (body.c_sq <= threshold)
            throw std::invalid_argument("minkowski_body: C below the determinant threshold");
        body.c = to_double(*C);
    } else {
        // 0.1% above the threshold keeps the determinant condition strict.
        body.c_sq = threshold * make_rational(Integer(1001 * 1001), Integer(1000 * 1000));
        body.c = std::sqrt(to_double(body.c_sq));
    }
    {
        Integer pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(rho + 1));
        body.det_sq = Rational(pow2) * body.c_sq / Rational(abs(L.discriminant()));
    }

    const double sqrt2 = std::sqrt(2.0);
    const double wsq = to_double(p.omega_sq());
    const double wlen = std::sqrt(wsq);

    std::vector<double> beta_d(rho), omega_d(rho);
    for (int i = 0; i < rho; ++i) {
        beta_d[i] = to_double(p.beta()[i]);
        omega_d[i] = to_double(p.omega()[i]);
    }
    auto ns_dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (int i = 0; i < rho; ++i)
            for (int j = 0; j < rho; ++j) s += x[i] * Integer(L.gram(i, j)).get_d() * y[j];
        return s;
    };

    auto frame = orthonormal_frame(L, p.omega());
    body.columns.assign(m, std::vector<double>(m, 0.0));
    // columns 0..rho-2: sqrt2 (0, D_i, -beta.D_i)
    for (int k = 0; k + 1 < rho; ++k) {
        for (int i = 0; i < rho; ++i) body.columns[k][1 + i] = sqrt2 * frame[k][i];
        body.columns[k][m - 1] = -sqrt2 * ns_dot(beta_d, frame[k]);
    }
    // column rho-1: sqrt2 (1, -beta, (beta^2 + omega^2)/2) / sqrt(omega^2)
    {
        auto& col = body.columns[rho - 1];
        col[0] = sqrt2 / wlen;
        for (int i = 0; i < rho; ++i) col[1 + i] = -sqrt2 * beta_d[i] / wlen;
        col[m - 1] = sqrt2 * (to_double(p.beta_sq()) + wsq) / (2 * wlen);
    }
    // column rho: C (0, omega, -beta.omega) / sqrt(omega^2)
    {
        auto& col = body.columns[rho];
        for (int i = 0; i < rho; ++i) col[1 + i] = body.c * omega_d[i] / wlen;
        col[m - 1] = -body.c * to_double(p.beta_omega()) / wlen;
    }
    // column rho+1: sqrt2 (0, 0, sqrt(omega^2))
    body.columns[rho + 1][m - 1] = sqrt2 * wlen;
    return body;
}

namespace {

// Plain Gauss with partial pivoting; m <= rho + 2 stays tiny.
std::vector<std::vector<double>> dmat_inverse(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (std::abs(a[piv][k]) < 1e-14)
            throw std::logic_error("minkowski_witness: body matrix numerically singular");
        std::swap(a[piv], a[k]);
        std::swap(inv[piv], inv[k]);
        double d = a[k][k];
        for (int j = 0; j < n; ++j) {
            a[k][j] /= d;
            inv[k][j] /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            double f = a[i][k];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

}  // namespace

MinkowskiWitness minkowski_witness(const StabilityPoint& p, const std::optional<Rational>& C) {
    const NSLattice& L = p.lattice();
    const int m = L.rank() + 2;
    MinkowskiWitness out;
    out.body = minkowski_body(p, C);

    // rows of the matrix M whose columns we stored
    std::vector<std::vector<double>> M(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) M[i][k] = out.body.columns[k][i];
    auto Minv = dmat_inverse(M);

    // bounding box of the cross-polytope: |x_i| <= max_k |(v_k)_i|
    IVec radii(m);
    for (int i = 0; i < m; ++i) {
        double r = 0;
        for (int k = 0; k < m; ++k) r = std::max(r, std::abs(out.body.columns[k][i]));
        radii[i] = Integer(static_cast<long>(std::floor(r + 1e-9)));
    }

    const auto mg = L.mukai_gram();
    const Rational& wsq = p.omega_sq();
    Rational im_cap = out.body.c_sq * wsq;
    Rational re_cap = 2 * wsq;

    std::optional<MukaiVector> best;
    std::vector<double> best_coeffs;
    IVec v(m);
    for (int i = 0; i < m; ++i) v[i] = -radii[i];
    for (;;) {
        ++out.box_points;
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) {
                zero = false;
                break;
            }
        if (!zero) {
            std::vector<double> e(m, 0.0);
            double l1 = 0;
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) e[i] += Minv[i][j] * Integer(v[j]).get_d();
                l1 += std::abs(e[i]);
            }
            if (l1 <= 1 + 1e-9) {
                ++out.members;
                Rational re(0), im(0);
                for (int i = 0; i < m; ++i) {
                    if (v[i] == 0) continue;
                    re += p.re_form()[i] * Rational(v[i]);
                    im += p.im_form()[i] * Rational(v[i]);
                }
                Integer sq(0);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) sq += mg[i][j] * v[i] * v[j];
                if (im * im <= im_cap && re * re <= re_cap && sq >= -2) {
                    MukaiVector cand = mukai_sign_normalize(MukaiVector::from_coords(v));
                    if (!best || mukai_lex_less(cand, *best)) {
                        best = cand;
                        best_coeffs = e;
                        if (cand.coords() != v)  // sign was flipped
                            for (auto& x : best_coeffs) x = -x;
                    }
                }
            }
        }
        int k = m - 1;
        while (k >= 0) {
            ++v[k];
            if (v[k] <= radii[k]) break;
            v[k] = -radii[k];
            --k;
        }
        if (k < 0) break;
    }
    if (!best)
        throw std::logic_error("minkowski_witness: no admissible lattice point found in body");
    out.v = *best;
    out.coeffs = best_coeffs;
    return out;
}

TheoremConstants theorem_constants(int rho, const Integer& disc, std::optional<long> n) {
    if (rho < 1) throw std::invalid_argument("theorem_constants: need rho >= 1");
    if (disc == 0) throw std::invalid_argument("theorem_constants: need disc != 0");
    TheoremConstants out;
    Integer f = factorial(rho + 2);
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(rho));
    out.k3_general = make_rational(f * f * abs(disc), pow2) + 4;
    if (n) {
        if (*n < 1) throw std::invalid_argument("theorem_constants: need n >= 1");
        out.rank_one = Rational(4 * (*n + 1));
    }
    return out;
}

}  // namespace catsys
