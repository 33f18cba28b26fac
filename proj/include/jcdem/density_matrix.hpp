#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "jcdem/linalg.hpp"

namespace jcdem {

/// Hermitian, unit-trace complex matrix describing a quantum state.
///
/// Hermiticity and trace are checked on construction (deviations up to the
/// tolerances below are symmetrized away). Positivity needs a spectrum, so it is
/// checked wherever one is computed, or explicitly via check_positive().
template <typename Real>
class BasicDensityMatrix {
public:
    using Matrix = BasicComplexMatrix<Real>;

    static constexpr double hermitian_tol = 1e-10;
    static constexpr double trace_tol = 1e-10;
    static constexpr double positivity_tol = 1e-10;

    BasicDensityMatrix() = default;

    template <typename Derived>
    explicit BasicDensityMatrix(const Eigen::MatrixBase<Derived>& m)
        : matrix_(m.template cast<std::complex<Real>>())
    {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
            throw DimensionError("DensityMatrix: matrix must be square and non-empty");
        }
        const Real dev = hermitian_deviation(matrix_);
        if (!(dev <= static_cast<Real>(hermitian_tol))) {
            throw NotHermitianError("DensityMatrix: Hermiticity deviation " +
                                    std::to_string(static_cast<double>(dev)));
        }
        matrix_ = (matrix_ + matrix_.adjoint()).eval() / Real(2);
        const Real tr = std::real(matrix_.trace());
        if (!(std::abs(tr - Real(1)) <= static_cast<Real>(trace_tol))) {
            throw NumericalError("DensityMatrix: trace " + std::to_string(static_cast<double>(tr)) +
                                 " is not 1");
        }
    }

    /// |psi><psi| / <psi|psi>.
    template <typename Derived>
    static BasicDensityMatrix pure(const Eigen::MatrixBase<Derived>& psi)
    {
        BasicComplexVector<Real> v = psi.template cast<std::complex<Real>>();
        const Real nrm = v.norm();
        if (!(nrm > 0)) {
            throw NumericalError("DensityMatrix::pure: zero vector");
        }
        v /= nrm;
        return BasicDensityMatrix(v * v.adjoint());
    }

    static BasicDensityMatrix product(const BasicDensityMatrix& a, const BasicDensityMatrix& b)
    {
        return BasicDensityMatrix(tensor_product(a.matrix_, b.matrix_));
    }

    Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    std::complex<Real> operator()(Index i, Index j) const { return matrix_(i, j); }

    Real trace() const { return std::real(matrix_.trace()); }
    Real purity() const { return std::real((matrix_ * matrix_).trace()); }

    /// Throws NumericalError when the smallest eigenvalue is below -positivity_tol.
    void check_positive() const
    {
        const auto ev = hermitian_eigenvalues(matrix_);
        if (ev.size() > 0 && ev(0) < -static_cast<Real>(positivity_tol)) {
            throw NumericalError("DensityMatrix: negative eigenvalue " +
                                 std::to_string(static_cast<double>(ev(0))));
        }
    }

private:
    Matrix matrix_;
};

using DensityMatrix = BasicDensityMatrix<double>;

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& joint, Dims dims,
                                       Subsystem keep)
{
    return BasicDensityMatrix<Real>(partial_trace(joint.matrix(), dims, keep));
}

} // namespace jcdem
