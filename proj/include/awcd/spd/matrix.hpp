// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Value types for the manifold of symmetric positive-definite matrices and
// its tangent space of symmetric matrices.

#ifndef AWCD_SPD_MATRIX_HPP_
#define AWCD_SPD_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "awcd/error.hpp"
#include "awcd/text.hpp"

namespace awcd::spd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative eigenvalue floor: eps = kRelativeFloor * trace(A) / n.
inline constexpr double kRelativeFloor = 1e-12;
/// Absolute lower bound on eps so a zero-spread covariance stays representable.
inline constexpr double kAbsoluteFloor = 1e-300;

inline double eigenvalue_floor(double trace, Eigen::Index n) {
    const double rel = kRelativeFloor * trace / static_cast<double>(n);
    return std::max(rel, kAbsoluteFloor);
}

/// Row-major decimal text with 17 significant digits, one row per line.
inline std::string debug_text(const Matrix& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ' ';
            out += text::format_17(m(r, c));
        }
        out += '\n';
    }
    return out;
}

/// Symmetric matrix, a tangent vector at any point of SPD(n).
class SymMatrix {
public:
    SymMatrix() = default;

    /// Accepts entries symmetric within 1e-12 * max|entry| and stores the
    /// exactly symmetrized average; rejects anything else.
    explicit SymMatrix(const Matrix& entries) {
        if (entries.rows() != entries.cols() || entries.rows() == 0)
            throw DomainError("SymMatrix: entries must be a nonempty square matrix");
        if (!entries.allFinite()) throw DomainError("SymMatrix: non-finite entry");
        const double scale = entries.cwiseAbs().maxCoeff();
        const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * scale)
            throw DomainError("SymMatrix: entries are not symmetric (max |A_ij - A_ji| = " +
                              text::format_17(asym) + ")");
        m_ = 0.5 * (entries + entries.transpose());
    }

    static SymMatrix zero(Eigen::Index n) { return SymMatrix(Matrix::Zero(n, n)); }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

/// A = basis * diag(eigenvalues) * basis^T with eigenvalues ascending.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix basis;

    Matrix reconstruct() const { return basis * eigenvalues.asDiagonal() * basis.transpose(); }
};

/// Symmetric eigendecomposition of an already-symmetric matrix.
inline SpectralDecomposition decompose_symmetric(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite())
        throw NumericalError("eigen-solver failed to converge on matrix:\n" + debug_text(sym));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Symmetric positive-definite matrix with its cached spectrum.
///
/// Construction symmetrizes the input, rejects non-finite or clearly
/// indefinite matrices, and clamps eigenvalues below the floor
/// eps = max(1e-12 * trace / n, 1e-300) up to eps. When clamping happens the
/// stored entries are rebuilt from the clamped spectrum.
class SpdMatrix {
public:
    explicit SpdMatrix(const Matrix& entries) {
        if (entries.rows() != entries.cols() || entries.rows() == 0)
            throw DomainError("SpdMatrix: entries must be a nonempty square matrix");
        if (!entries.allFinite()) throw DomainError("SpdMatrix: non-finite entry");

        m_ = 0.5 * (entries + entries.transpose());
        spectrum_ = decompose_symmetric(m_);

        const Vector& lambda = spectrum_.eigenvalues;
        const double largest = lambda.cwiseAbs().maxCoeff();
        if (lambda(0) < -1e-10 * largest)
            throw DomainError("SpdMatrix: matrix is indefinite (smallest eigenvalue " +
                              text::format_17(lambda(0)) + ")");

        floor_ = spd::eigenvalue_floor(std::max(m_.trace(), 0.0), dim());
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            if (spectrum_.eigenvalues(i) < floor_) {
                spectrum_.eigenvalues(i) = floor_;
                ++clamped_;
            }
        }
        if (clamped_ > 0) {
            m_ = spectrum_.reconstruct();
            m_ = 0.5 * (m_ + m_.transpose()).eval();
        }
    }

    static SpdMatrix identity(Eigen::Index n) { return SpdMatrix(Matrix::Identity(n, n)); }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    /// The eps used at construction.
    double eigenvalue_floor() const { return floor_; }
    /// How many eigenvalues were raised to the floor.
    std::size_t clamped_count() const { return clamped_; }

private:
    Matrix m_;
    SpectralDecomposition spectrum_;
    double floor_ = 0.0;
    std::size_t clamped_ = 0;
};

inline std::string debug_text(const SpdMatrix& a) { return debug_text(a.matrix()); }

/// Copy of the cached decomposition; Lambda and U of the curvature formula
/// are always built from this same instance.
inline SpectralDecomposition spectral_decompose(const SpdMatrix& a) { return a.spectrum(); }

struct GaussianModel {
    Vector mean;
    SpdMatrix covariance;

    GaussianModel(Vector mu, SpdMatrix sigma) : mean(std::move(mu)), covariance(std::move(sigma)) {
        if (mean.size() != covariance.dim())
            throw DomainError("GaussianModel: mean and covariance dimensions differ");
    }
};

} // namespace awcd::spd

#endif // AWCD_SPD_MATRIX_HPP_
