#pragma once

#include "catsys/rational.hpp"

namespace catsys {

// Dense rational matrices.  Everything here works on tiny dimensions
// (rank + 2 <= a handful), so plain Gauss is fine and exact.
using QMat = std::vector<QVec>;

QMat qmat_identity(std::size_t n);
QMat qmat_from_integers(const std::vector<IVec>& a);

Rational qmat_det(QMat a);

// Throws std::domain_error on a singular input.
QMat qmat_inverse(const QMat& a);

struct Inertia {
    int pos = 0;
    int neg = 0;
    int zero = 0;
};

// Sylvester inertia of a symmetric matrix via exact congruence
// diagonalization (with the usual off-diagonal rescue when the whole
// diagonal vanishes).
Inertia qmat_inertia(QMat a);

// A = L D L^T with unit lower-triangular L.  Only valid for positive
// definite input; returns nullopt as soon as a pivot fails to be > 0.
struct LDL {
    QVec diag;
    QMat lower;
};
std::optional<LDL> qmat_ldl(const QMat& a);

Rational qvec_dot(const QVec& a, const QVec& b);
QVec qmat_apply(const QMat& a, const QVec& x);

}  // namespace catsys
