#include "catsys/qmat.hpp"

namespace catsys {

QMat qmat_identity(std::size_t n) {
    QMat a(n, QVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

QMat qmat_from_integers(const std::vector<IVec>& a) {
    QMat q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        q[i].reserve(a[i].size());
        for (const auto& x : a[i]) q[i].emplace_back(x);
    }
    return q;
}

Rational qmat_det(QMat a) {
    const std::size_t n = a.size();
    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

QMat qmat_inverse(const QMat& a) {
    const std::size_t n = a.size();
    QMat m = a;
    QMat inv = qmat_identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) throw std::domain_error("qmat_inverse: singular matrix");
        if (piv != k) {
            std::swap(m[piv], m[k]);
            std::swap(inv[piv], inv[k]);
        }
        Rational p = m[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] /= p;
            inv[k][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rational f = m[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

Inertia qmat_inertia(QMat a) {
    const std::size_t n = a.size();
    Inertia res;
    for (std::size_t k = 0; k < n; ++k) {
        // Pick a nonzero diagonal pivot at or below k, creating one from an
        // off-diagonal entry if needed (row/col add keeps congruence class).
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i) {
            if (a[i][i] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == n) {
            std::size_t oi = n, oj = n;
            for (std::size_t i = k; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi == n) {
                res.zero += static_cast<int>(n - k);
                return res;
            }
            for (std::size_t t = 0; t < n; ++t) a[oi][t] += a[oj][t];
            for (std::size_t t = 0; t < n; ++t) a[t][oi] += a[t][oj];
            piv = oi;
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            for (std::size_t t = 0; t < n; ++t) std::swap(a[t][piv], a[t][k]);
        }
        Rational p = a[k][k];
        if (p > 0)
            ++res.pos;
        else
            ++res.neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / p;
            for (std::size_t t = 0; t < n; ++t) a[i][t] -= f * a[k][t];
            for (std::size_t t = 0; t < n; ++t) a[t][i] -= f * a[t][k];
        }
    }
    return res;
}

std::optional<LDL> qmat_ldl(const QMat& a) {
    const std::size_t n = a.size();
    LDL out;
    out.diag.assign(n, Rational(0));
    out.lower = qmat_identity(n);
    QMat m = a;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] <= 0) return std::nullopt;
        out.diag[k] = m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = m[i][k] / m[k][k];
            out.lower[i][k] = f;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return out;
}

Rational qvec_dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("qvec_dot: length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec qmat_apply(const QMat& a, const QVec& x) {
    QVec y(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("qmat_apply: shape mismatch");
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

}  // namespace catsys
