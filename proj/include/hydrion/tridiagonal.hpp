#pragma once

#include "hydrion/error.hpp"

#include <Eigen/Dense>

#include <string>

namespace hydrion {

/// Symmetric tridiagonal matrix stored as its diagonal and single off-diagonal.
template <class Scalar>
class TridiagonalMatrix {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    TridiagonalMatrix(Vector diagonal, Vector off_diagonal)
        : diagonal_(std::move(diagonal)), off_diagonal_(std::move(off_diagonal)) {
        if (diagonal_.size() < 2) {
            throw InvalidParameter("tridiagonal matrix needs order >= 2");
        }
        if (off_diagonal_.size() != diagonal_.size() - 1) {
            throw InvalidParameter("off-diagonal must have order - 1 entries");
        }
    }

    Eigen::Index order() const noexcept { return diagonal_.size(); }
    const Vector& diagonal() const noexcept { return diagonal_; }
    const Vector& off_diagonal() const noexcept { return off_diagonal_; }

    TridiagonalMatrix operator-() const { return {-diagonal_, -off_diagonal_}; }

    /// Dense copy, for oracles and debugging.
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
        const Eigen::Index n = order();
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
        m.diagonal() = diagonal_;
        m.diagonal(1) = off_diagonal_;
        m.diagonal(-1) = off_diagonal_;
        return m;
    }

private:
    Vector diagonal_;
    Vector off_diagonal_;
};

/// All eigenvalues in ascending order (implicit-shift QL via Eigen's tridiagonal solver).
/// Throws NonConvergence if the iteration fails.
template <class Scalar>
typename TridiagonalMatrix<Scalar>::Vector symmetric_tridiagonal_eigenvalues(
    const TridiagonalMatrix<Scalar>& m) {
    using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::SelfAdjointEigenSolver<Dense> solver;
    solver.computeFromTridiagonal(m.diagonal(), m.off_diagonal(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NonConvergence("tridiagonal eigenvalue iteration did not converge (order " +
                             std::to_string(m.order()) + ")");
    }
    return solver.eigenvalues();
}

}  // namespace hydrion
