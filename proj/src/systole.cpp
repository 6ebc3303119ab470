#include "catsys/systole.hpp"

#include <algorithm>
#include <functional>

namespace catsys {

namespace {

// Fincke-Pohst descent through the LDL factorization, innermost coordinate
// last.  Directions are walked outward from the real center, so a budget
// violation kills the direction for good; the shared bound may shrink while
// we enumerate (branch-and-bound), which only prunes harder.
struct Enumerator {
    const LDL& ldl;
    int n;
    const Rational* bound;
    const std::function<void(const IVec&, const Rational&)>* visit;
    IVec v;

    Enumerator(const LDL& l, const Rational* b,
               const std::function<void(const IVec&, const Rational&)>* f)
        : ldl(l), n(static_cast<int>(l.diag.size())), bound(b), visit(f),
          v(l.diag.size(), Integer(0)) {}

    void run() {
        if (*bound < 0) return;
        descend(n - 1, Rational(0));
    }

    void descend(int level, const Rational& used) {
        Rational c(0);
        for (int j = level + 1; j < n; ++j)
            if (ldl.lower[j][level] != 0) c += ldl.lower[j][level] * Rational(v[j]);
        const Rational& d = ldl.diag[level];

        Integer m0 = round_half_up(-c);
        Integer mu = m0, md = m0 - 1;
        bool up = true, down = true;
        while (up || down) {
            if (up) {
                if (!step(level, used, c, d, mu)) up = false;
                ++mu;
            }
            if (down) {
                if (!step(level, used, c, d, md)) down = false;
                --md;
            }
        }
    }

    bool step(int level, const Rational& used, const Rational& c, const Rational& d,
              const Integer& m) {
        Rational t = Rational(m) + c;
        Rational total = used + d * t * t;
        if (total > *bound) return false;
        v[level] = m;
        if (level == 0) {
            bool zero = true;
            for (const auto& x : v)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (!zero) (*visit)(v, total);
        } else {
            descend(level - 1, total);
        }
        return true;
    }
};

void enumerate_ball(const LDL& ldl, const Rational& bound,
                    const std::function<void(const IVec&, const Rational&)>& visit) {
    Enumerator e(ldl, &bound, &visit);
    e.run();
}

Rational eval_form(const QVec& form, const IVec& v) {
    Rational s(0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) s += form[i] * Rational(v[i]);
    return s;
}

Rational charge_norm_sq(const StabilityPoint& p, const IVec& v) {
    Rational re = eval_form(p.re_form(), v);
    Rational im = eval_form(p.im_form(), v);
    return re * re + im * im;
}

Integer int_form_value(const std::vector<IVec>& gram, const IVec& v) {
    Integer s(0);
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (v[j] == 0) continue;
            s += gram[i][j] * v[i] * v[j];
        }
    }
    return s;
}

}  // namespace

QSigmaForm QSigmaForm::from_point(const StabilityPoint& p) {
    const int m = p.lattice().rank() + 2;
    const QVec& a = p.re_form();
    const QVec& b = p.im_form();
    Rational scale = Rational(2) / p.omega_sq();

    QMat g = qmat_from_integers(p.lattice().mukai_gram());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g[i][j] = scale * (a[i] * a[j] + b[i] * b[j]) - g[i][j];

    QSigmaForm q;
    q.gram_ = std::move(g);
    auto ldl = qmat_ldl(q.gram_);
    if (!ldl) throw std::logic_error("QSigmaForm: form is not positive definite");
    q.ldl_ = std::move(*ldl);
    q.inverse_ = qmat_inverse(q.gram_);
    return q;
}

Rational QSigmaForm::value(const IVec& coords) const {
    if (static_cast<int>(coords.size()) != dim())
        throw std::invalid_argument("QSigmaForm::value: dimension mismatch");
    Rational s(0);
    for (int i = 0; i < dim(); ++i) {
        if (coords[i] == 0) continue;
        for (int j = 0; j < dim(); ++j) {
            if (coords[j] == 0) continue;
            s += gram_[i][j] * Rational(coords[i]) * Rational(coords[j]);
        }
    }
    return s;
}

Rational QSigmaForm::value(const MukaiVector& v) const { return value(v.coords()); }

IVec QSigmaForm::ball_box(const Rational& bound) const {
    if (bound < 0) return IVec(dim(), Integer(0));
    IVec radii(dim());
    for (int i = 0; i < dim(); ++i) radii[i] = isqrt_floor(bound * inverse_[i][i]);
    return radii;
}

QSigmaForm q_sigma(const StabilityPoint& p) { return QSigmaForm::from_point(p); }

std::vector<MukaiVector> enumerate_constrained(const StabilityPoint& p, const Rational& bound_sq) {
    if (bound_sq < 0) throw std::invalid_argument("enumerate_constrained: negative bound");
    QSigmaForm q = QSigmaForm::from_point(p);
    const auto mg = p.lattice().mukai_gram();
    Rational ball = 2 * bound_sq / p.omega_sq() + 2;

    std::vector<MukaiVector> out;
    std::function<void(const IVec&, const Rational&)> visit =
        [&](const IVec& v, const Rational&) {
            if (int_form_value(mg, v) < -2) return;
            if (charge_norm_sq(p, v) > bound_sq) return;
            out.push_back(MukaiVector::from_coords(v));
        };
    enumerate_ball(q.ldl(), ball, visit);
    std::sort(out.begin(), out.end(), mukai_lex_less);
    return out;
}

SystoleCertificate systole(const StabilityPoint& p) {
    QSigmaForm q = QSigmaForm::from_point(p);
    const auto mg = p.lattice().mukai_gram();
    const int m = p.lattice().rank() + 2;
    const Rational& wsq = p.omega_sq();

    // Skyscraper class (0,...,0,1): Z = 1 exactly.
    Rational best(1);

    // On rank one a line bundle twist (1, d, s) with d, s rounded against
    // beta usually beats the skyscraper once omega is small; seeding with it
    // keeps the first ball tiny.
    if (p.lattice().rank() == 1) {
        const Rational& beta = p.beta()[0];
        Rational n2 = Rational(p.lattice().gram(0, 0));  // 2n
        Integer d0 = round_half_up(-beta);
        Rational re_partial = n2 * beta * Rational(d0) +
                              (p.beta_sq() - wsq) / 2;
        Integer s0 = round_half_up(-re_partial);
        IVec probe{Integer(1), d0, s0};
        if (int_form_value(mg, probe) >= -2) {
            Rational z = charge_norm_sq(p, probe);
            if (z < best) best = z;
        }
    }

    Rational ball = 2 * best / wsq + 2;
    std::function<void(const IVec&, const Rational&)> shrink =
        [&](const IVec& v, const Rational&) {
            if (int_form_value(mg, v) < -2) return;
            Rational z = charge_norm_sq(p, v);
            if (z < best) {
                if (z == 0)
                    throw std::domain_error(
                        "systole: central charge vanishes on an admissible class "
                        "(degenerate point)");
                best = z;
                ball = 2 * best / wsq + 2;
            }
        };
    enumerate_ball(q.ldl(), ball, shrink);

    // Deterministic verification pass at the final radius.
    SystoleCertificate cert;
    cert.sys_sq = best;
    cert.q_bound = 2 * best / wsq + 2;
    std::vector<MukaiVector> minimizers;
    std::function<void(const IVec&, const Rational&)> verify =
        [&](const IVec& v, const Rational&) {
            ++cert.candidates_scanned;
            if (int_form_value(mg, v) < -2) return;
            Rational z = charge_norm_sq(p, v);
            if (z < best)
                throw std::logic_error("systole: verification pass found a smaller value");
            if (z == best) minimizers.push_back(mukai_sign_normalize(MukaiVector::from_coords(v)));
        };
    enumerate_ball(q.ldl(), cert.q_bound, verify);
    if (minimizers.empty()) throw std::logic_error("systole: minimizer lost in verification pass");
    cert.argmin = *std::min_element(minimizers.begin(), minimizers.end(), mukai_lex_less);

    // Re-check the certificate through the public pairing/charge interfaces
    // rather than the enumerator's cached forms.
    if (static_cast<int>(cert.argmin.coords().size()) != m)
        throw std::logic_error("systole: certificate rank mismatch");
    if (mukai_square(p.lattice(), cert.argmin) < -2)
        throw std::logic_error("systole: argmin violates v^2 >= -2");
    if (central_charge(p, cert.argmin).norm_sq() != cert.sys_sq)
        throw std::logic_error("systole: argmin does not realize sys_sq");
    return cert;
}

Rational systole_bruteforce(const StabilityPoint& p, const IVec& box_radii) {
    const int m = p.lattice().rank() + 2;
    if (static_cast<int>(box_radii.size()) != m)
        throw std::invalid_argument("systole_bruteforce: box has wrong dimension");
    bool empty = true;
    for (const auto& r : box_radii) {
        if (r < 0) throw std::invalid_argument("systole_bruteforce: negative radius");
        if (r > 0) empty = false;
    }
    if (empty) throw std::invalid_argument("systole_bruteforce: box contains only the zero vector");

    const auto mg = p.lattice().mukai_gram();
    std::optional<Rational> best;
    IVec v(m);
    for (int i = 0; i < m; ++i) v[i] = -box_radii[i];
    for (;;) {
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) {
                zero = false;
                break;
            }
        if (!zero && int_form_value(mg, v) >= -2) {
            Rational z = charge_norm_sq(p, v);
            if (!best || z < *best) best = z;
        }
        int k = m - 1;
        while (k >= 0) {
            ++v[k];
            if (v[k] <= box_radii[k]) break;
            v[k] = -box_radii[k];
            --k;
        }
        if (k < 0) break;
    }
    if (!best) throw std::logic_error("systole_bruteforce: no admissible vector in box");
    return *best;
}

std::optional<Rational> spherical_systole_rank_one(long n, const Rational& beta,
                                                   const Rational& omega,
                                                   const std::optional<Rational>& search_bound) {
    if (n < 1) throw std::invalid_argument("spherical_systole_rank_one: need n >= 1");
    if (omega <= 0) throw std::invalid_argument("spherical_systole_rank_one: need omega > 0");
    StabilityPoint p = StabilityPoint::rank_one(n, beta, omega);
    QSigmaForm q = QSigmaForm::from_point(p);
    const Rational& wsq = p.omega_sq();           // 2 n omega^2
    Rational vol = 2 * wsq;                       // 4 n omega^2

    // n d^2 - r s = -1, i.e. v^2 = -2 exactly.
    auto spherical = [&](const IVec& v) {
        Integer nd2 = Integer(n) * v[1] * v[1];
        return nd2 - v[0] * v[2] == -1;
    };

    // The structure sheaf (1, 0, 1) is always spherical and seeds the search
    // unless the caller's cap excludes it.
    std::optional<Rational> best;
    Rational cap_zsq(0);
    bool have_cap = search_bound.has_value();
    if (have_cap) {
        if (*search_bound < 0)
            throw std::invalid_argument("spherical_systole_rank_one: negative search bound");
        cap_zsq = *search_bound * vol;
    }
    {
        IVec oo{Integer(1), Integer(0), Integer(1)};
        Rational z = charge_norm_sq(p, oo);
        if (!have_cap || z <= cap_zsq) best = z;
    }

    Rational ceiling = best ? *best : cap_zsq;
    Rational ball = 2 * ceiling / wsq + 2;
    std::function<void(const IVec&, const Rational&)> shrink =
        [&](const IVec& v, const Rational&) {
            if (!spherical(v)) return;
            Rational z = charge_norm_sq(p, v);
            if (have_cap && z > cap_zsq) return;
            if (!best || z < *best) {
                best = z;
                ball = 2 * *best / wsq + 2;
            }
        };
    enumerate_ball(q.ldl(), ball, shrink);
    if (!best) return std::nullopt;

    // Verification pass, same contract as systole().
    Rational final_ball = 2 * *best / wsq + 2;
    std::function<void(const IVec&, const Rational&)> verify =
        [&](const IVec& v, const Rational&) {
            if (!spherical(v)) return;
            if (charge_norm_sq(p, v) < *best)
                throw std::logic_error("spherical_systole_rank_one: verification found smaller");
        };
    enumerate_ball(q.ldl(), final_ball, verify);
    return *best / vol;
}

std::optional<MukaiVector> chamber_violator(const StabilityPoint& p, const Rational& q_radius) {
    if (q_radius < 0) throw std::invalid_argument("chamber_violator: negative radius");
    QSigmaForm q = QSigmaForm::from_point(p);
    const auto mg = p.lattice().mukai_gram();
    std::optional<MukaiVector> hit;
    std::function<void(const IVec&, const Rational&)> visit =
        [&](const IVec& v, const Rational&) {
            if (v[0] <= 0) return;  // the chamber condition only constrains r > 0
            if (int_form_value(mg, v) != -2) return;
            if (eval_form(p.im_form(), v) != 0) return;
            if (eval_form(p.re_form(), v) < 0) return;
            MukaiVector d = MukaiVector::from_coords(v);
            if (!hit || mukai_lex_less(d, *hit)) hit = d;
        };
    enumerate_ball(q.ldl(), q_radius, visit);
    return hit;
}

double a2_systole(const std::complex<double>& z1, const std::complex<double>& z2) {
    auto check = [](const std::complex<double>& z) {
        if (z.imag() > 0) return;
        if (z.imag() == 0 && z.real() < 0) return;
        throw std::invalid_argument("a2_systole: charge not in upper half plane "
                                    "or negative real axis");
    };
    check(z1);
    check(z2);
    double m = std::min(std::abs(z1), std::abs(z2));
    // arg z1 > arg z2: the extension class is stable too.  On the wall
    // (equal phases) only the simples count.
    if (std::arg(z1) > std::arg(z2)) m = std::min(m, std::abs(z1 + z2));
    return m;
}

}  // namespace catsys
