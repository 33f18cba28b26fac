#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jcdem {

using Index = Eigen::Index;

template <typename Real>
using BasicComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Real>
using BasicComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using BasicRealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = BasicComplexMatrix<double>;
using ComplexVector = BasicComplexVector<double>;
using RealVector = BasicRealVector<double>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot deliver a valid result
/// (eigensolver non-convergence, negative spectrum in a state).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Factor dimensions of a bipartite space. Joint index = atom_index * field + field_index.
struct Dims {
    Index atom = 0;
    Index field = 0;

    Index joint() const { return atom * field; }
};

enum class Subsystem { Atom, Field };

namespace detail {

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename Derived>
using ComplexMatrixOf = BasicComplexMatrix<RealOf<typename Derived::Scalar>>;

} // namespace detail

/// Kronecker product a ⊗ b; entry (i*b.rows()+k, j*b.cols()+l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
auto tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                       typename DerivedB::Scalar>::ReturnType;
    if (a.size() == 0 || b.size() == 0) {
        throw DimensionError("tensor_product: empty operand");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(
        a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b.template cast<Scalar>();
        }
    }
    return out;
}

/// Traces out one factor of a bipartite operator and returns the operator on `keep`.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& joint, Dims dims, Subsystem keep)
{
    using Scalar = typename Derived::Scalar;
    if (dims.atom <= 0 || dims.field <= 0 || joint.rows() != dims.joint() ||
        joint.cols() != dims.joint()) {
        throw DimensionError("partial_trace: joint dimension " + std::to_string(joint.rows()) +
                             "x" + std::to_string(joint.cols()) + " does not factor as " +
                             std::to_string(dims.atom) + "*" + std::to_string(dims.field));
    }
    const Index dA = dims.atom;
    const Index dF = dims.field;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out;
    if (keep == Subsystem::Atom) {
        out.setZero(dA, dA);
        for (Index i = 0; i < dA; ++i) {
            for (Index j = 0; j < dA; ++j) {
                out(i, j) = joint.block(i * dF, j * dF, dF, dF).trace();
            }
        }
    } else {
        out.setZero(dF, dF);
        for (Index a = 0; a < dA; ++a) {
            out += joint.block(a * dF, a * dF, dF, dF);
        }
    }
    return out;
}

template <typename Derived>
detail::RealOf<typename Derived::Scalar> hermitian_deviation(const Eigen::MatrixBase<Derived>& m)
{
    if (m.rows() != m.cols()) {
        return std::numeric_limits<detail::RealOf<typename Derived::Scalar>>::infinity();
    }
    if (m.size() == 0) {
        return 0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
struct EigenSystem {
    BasicRealVector<Real> eigenvalues;    // ascending
    BasicComplexMatrix<Real> eigenvectors; // columns, orthonormal
};

struct JacobiOptions {
    double tolerance = 1e-12;      // off-diagonal Frobenius norm, relative to ||M||_F
    int max_sweeps = 100;
    double hermitian_tol = 1e-10;  // max |M(i,j) - conj(M(j,i))| accepted before symmetrizing
    bool compute_vectors = true;
};

namespace detail {

template <typename Derived>
ComplexMatrixOf<Derived> symmetrized(const Eigen::MatrixBase<Derived>& m, double hermitian_tol)
{
    if (m.rows() != m.cols()) {
        throw DimensionError("hermitian_eigensystem: matrix is not square");
    }
    using Real = RealOf<typename Derived::Scalar>;
    ComplexMatrixOf<Derived> a = m.template cast<std::complex<Real>>();
    const Real dev = hermitian_deviation(a);
    if (!(dev <= static_cast<Real>(hermitian_tol))) {
        throw NotHermitianError("hermitian_eigensystem: deviation from Hermiticity " +
                                std::to_string(static_cast<double>(dev)));
    }
    ComplexMatrixOf<Derived> h = (a + a.adjoint()) / Real(2);
    return h;
}

template <typename Real>
using WorkMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
Real off_diagonal_norm(const WorkMatrix<Real>& a)
{
    Real sum = 0;
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

// Cyclic Jacobi sweeps on a Hermitian matrix (column-major work copy). Each step
// applies G = diag(e^{i phi}, 1) * [[c, s], [-s, c]] on columns p, q, where
// a(p,q) = |a(p,q)| e^{i phi}; rows p, q follow by Hermiticity. `v` accumulates G
// when non-null.
template <typename Real>
void jacobi_diagonalize(WorkMatrix<Real>& a, WorkMatrix<Real>* v, const JacobiOptions& opts)
{
    using C = std::complex<Real>;
    const Index n = a.rows();
    const Real scale = std::max<Real>(a.norm(), std::numeric_limits<Real>::min());
    const Real target = static_cast<Real>(opts.tolerance) * scale;
    // Entries below this cannot push the off-diagonal norm above target.
    const Real skip = target / static_cast<Real>(std::max<Index>(n, 1));

    for (int sweep = 0;; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            break;
        }
        if (sweep >= opts.max_sweeps) {
            throw NumericalError("hermitian_eigensystem: Jacobi did not converge in " +
                                 std::to_string(opts.max_sweeps) + " sweeps");
        }
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const C apq = a(p, q);
                const Real r = std::abs(apq);
                if (r <= skip) {
                    continue;
                }
                const C e = apq / r;
                const Real app = std::real(a(p, p));
                const Real aqq = std::real(a(q, q));
                const Real tau = (aqq - app) / (2 * r);
                const Real t = (tau >= 0 ? Real(1) : Real(-1)) /
                               (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
                const Real c = Real(1) / std::sqrt(Real(1) + t * t);
                const Real s = t * c;
                const C ec = e * c;
                const C es = e * s;

                C* colp = a.col(p).data();
                C* colq = a.col(q).data();
                for (Index k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const C xp = colp[k];
                    const C xq = colq[k];
                    colp[k] = xp * ec - xq * s;
                    colq[k] = xp * es + xq * c;
                    a(p, k) = std::conj(colp[k]);
                    a(q, k) = std::conj(colq[k]);
                }
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0;
                a(q, p) = 0;

                if (v != nullptr) {
                    C* vp = v->col(p).data();
                    C* vq = v->col(q).data();
                    for (Index k = 0; k < n; ++k) {
                        const C xp = vp[k];
                        const C xq = vq[k];
                        vp[k] = xp * ec - xq * s;
                        vq[k] = xp * es + xq * c;
                    }
                }
            }
        }
    }
}

} // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Inputs within `hermitian_tol` of Hermitian are symmetrized as (M + M^H)/2 first;
/// anything further off raises NotHermitianError.
template <typename Derived>
auto hermitian_eigensystem(const Eigen::MatrixBase<Derived>& m, const JacobiOptions& opts = {})
{
    using Real = detail::RealOf<typename Derived::Scalar>;
    detail::WorkMatrix<Real> a = detail::symmetrized(m, opts.hermitian_tol);
    const Index n = a.rows();

    detail::WorkMatrix<Real> v;
    if (opts.compute_vectors) {
        v.setIdentity(n, n);
    }
    detail::jacobi_diagonalize<Real>(a, opts.compute_vectors ? &v : nullptr, opts);

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&a](Index x, Index y) {
        return std::real(a(x, x)) < std::real(a(y, y));
    });

    EigenSystem<Real> out;
    out.eigenvalues.resize(n);
    if (opts.compute_vectors) {
        out.eigenvectors.resize(n, n);
    }
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = std::real(a(src, src));
        if (opts.compute_vectors) {
            out.eigenvectors.col(k) = v.col(src);
        }
    }
    return out;
}

/// Ascending eigenvalues only; skips eigenvector accumulation.
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m, JacobiOptions opts = {})
{
    opts.compute_vectors = false;
    return hermitian_eigensystem(m, opts).eigenvalues;
}

} // namespace jcdem
