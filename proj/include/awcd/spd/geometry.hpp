// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Wasserstein (Bures) geometry of SPD(n): Sylvester solves, the metric,
// Gaussian distance, the curvature tensor and the closed-form scalar
// curvature with its eigenvalue bound.

#ifndef AWCD_SPD_GEOMETRY_HPP_
#define AWCD_SPD_GEOMETRY_HPP_

#include <cmath>
#include <limits>

#include "awcd/spd/matrix.hpp"

namespace awcd::spd {

namespace detail {

inline void require_same_dim(const SpdMatrix& a, Eigen::Index n, const char* who) {
    if (a.dim() != n) throw DomainError(std::string(who) + ": dimension mismatch");
}

} // namespace detail

/// Solves A*T + T*A = Y for an arbitrary square right-hand side by working in
/// A's eigenbasis, where the equation decouples into
/// T'_ij = Y'_ij / (lambda_i + lambda_j).
inline Matrix solve_sylvester(const SpdMatrix& a, const Matrix& rhs) {
    detail::require_same_dim(a, rhs.rows(), "solve_sylvester");
    if (rhs.rows() != rhs.cols()) throw DomainError("solve_sylvester: right-hand side is not square");

    const SpectralDecomposition& s = a.spectrum();
    const Eigen::Index n = a.dim();
    Matrix t = s.basis.transpose() * rhs * s.basis;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double denom = s.eigenvalues(i) + s.eigenvalues(j);
            if (!(denom > 0.0) || !std::isfinite(denom))
                throw DegenerateMatrixError("solve_sylvester: eigenvalue sum underflow at (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            t(i, j) /= denom;
        }
    }
    Matrix out = s.basis * t * s.basis.transpose();
    if (!out.allFinite()) throw DegenerateMatrixError("solve_sylvester: non-finite solution");
    return out;
}

/// Gamma_A[Y]: the symmetric T with A*T + T*A = Y.
inline SymMatrix sylvester_solve(const SpdMatrix& a, const SymMatrix& y) {
    Matrix t = solve_sylvester(a, y.matrix());
    return SymMatrix(0.5 * (t + t.transpose()));
}

/// g_W at A: (1/2) tr(Gamma_A[Y] X).
inline double wasserstein_metric(const SpdMatrix& a, const SymMatrix& x, const SymMatrix& y) {
    detail::require_same_dim(a, x.dim(), "wasserstein_metric");
    detail::require_same_dim(a, y.dim(), "wasserstein_metric");
    const Matrix gy = solve_sylvester(a, y.matrix());
    return 0.5 * (gy.cwiseProduct(x.matrix().transpose())).sum();
}

/// Principal square root of an SPD matrix.
inline Matrix sqrt_spd(const SpdMatrix& a) {
    const SpectralDecomposition& s = a.spectrum();
    return s.basis * s.eigenvalues.cwiseSqrt().asDiagonal() * s.basis.transpose();
}

/// tr((S1 S2)^(1/2)) evaluated through the symmetric similar matrix
/// S1^(1/2) S2 S1^(1/2).
inline double trace_sqrt_product(const SpdMatrix& s1, const SpdMatrix& s2) {
    if (s1.dim() != s2.dim()) throw DomainError("trace_sqrt_product: dimension mismatch");
    const Matrix r = sqrt_spd(s1);
    Matrix m = r * s2.matrix() * r;
    m = 0.5 * (m + m.transpose()).eval();
    const SpectralDecomposition d = decompose_symmetric(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) acc += std::sqrt(std::max(d.eigenvalues(i), 0.0));
    return acc;
}

namespace detail {

/// tr(S1 + S2 - 2 (S1 S2)^(1/2)), with round-off below a few ulps of the
/// total trace snapped to zero.
inline double bures_trace_term(const SpdMatrix& s1, const SpdMatrix& s2) {
    const double total = s1.matrix().trace() + s2.matrix().trace();
    const double term = total - 2.0 * trace_sqrt_product(s1, s2);
    if (!std::isfinite(term)) throw NumericalError("gaussian distance: non-finite trace term");
    if (term <= 64.0 * std::numeric_limits<double>::epsilon() * total) return 0.0;
    return term;
}

inline void require_same_gaussian_dim(const GaussianModel& g1, const GaussianModel& g2) {
    if (g1.mean.size() != g2.mean.size()) throw DomainError("gaussian distance: dimension mismatch");
}

} // namespace detail

/// ||mu1 - mu2|| + tr^(1/2)(S1 + S2 - 2 (S1 S2)^(1/2)), the mean gap added
/// outside the root. Not a metric in general; see bures_wasserstein_distance.
inline double gaussian_wasserstein_distance(const GaussianModel& g1, const GaussianModel& g2) {
    detail::require_same_gaussian_dim(g1, g2);
    return (g1.mean - g2.mean).norm() + std::sqrt(detail::bures_trace_term(g1.covariance, g2.covariance));
}

/// Standard 2-Wasserstein distance between Gaussians:
/// sqrt(||mu1 - mu2||^2 + tr(S1 + S2 - 2 (S1 S2)^(1/2))).
inline double bures_wasserstein_distance(const GaussianModel& g1, const GaussianModel& g2) {
    detail::require_same_gaussian_dim(g1, g2);
    return std::sqrt((g1.mean - g2.mean).squaredNorm() + detail::bures_trace_term(g1.covariance, g2.covariance));
}

/// R(X, Y, X, Y) = 3 tr(G[X] A G[G[X]G[Y] - G[Y]G[X]] A G[Y]) with G = Gamma_A.
inline double curvature_tensor(const SpdMatrix& a, const SymMatrix& x, const SymMatrix& y) {
    detail::require_same_dim(a, x.dim(), "curvature_tensor");
    detail::require_same_dim(a, y.dim(), "curvature_tensor");
    const Matrix gx = solve_sylvester(a, x.matrix());
    const Matrix gy = solve_sylvester(a, y.matrix());
    const Matrix commutator = gx * gy - gy * gx;
    const Matrix inner = solve_sylvester(a, commutator);
    const Matrix& am = a.matrix();
    return 3.0 * (gx * am * inner * am * gy).trace();
}

struct ScalarCurvature {
    double value = 0.0;
    /// Two or more eigenvalues sat on the floor; value is the cap 3n/eps.
    bool degenerate = false;
};

/// Closed-form scalar curvature from the ascending spectrum:
///   rho = 3 tr(2 L U U^T + L U^T U + L U (U + U^T) L (U + U^T)),
/// L = diag(lambda), U strictly upper triangular with U_ij = 1/(lambda_i + lambda_j).
inline ScalarCurvature scalar_curvature(const SpdMatrix& a) {
    const Eigen::Index n = a.dim();
    if (a.clamped_count() >= 2)
        return {3.0 * static_cast<double>(n) / a.eigenvalue_floor(), true};
    if (n == 1) return {0.0, false};

    const Vector& lambda = a.spectrum().eigenvalues;
    Matrix u = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) u(i, j) = 1.0 / (lambda(i) + lambda(j));

    const auto l = lambda.asDiagonal();
    const Matrix s = u + u.transpose();
    const double t1 = (l * (u * u.transpose())).trace();
    const double t2 = (l * (u.transpose() * u)).trace();
    const double t3 = (l * u * s * l * s).trace();
    const double rho = 3.0 * (2.0 * t1 + t2 + t3);
    if (!std::isfinite(rho)) throw NumericalError("scalar_curvature: non-finite result");
    return {rho, false};
}

/// Upper bound 3n / lambda_min2(A), lambda_min2 the second-smallest eigenvalue.
inline double scalar_curvature_bound(const SpdMatrix& a) {
    const Eigen::Index n = a.dim();
    if (n < 2) throw DomainError("scalar_curvature_bound: requires n >= 2");
    return 3.0 * static_cast<double>(n) / a.spectrum().eigenvalues(1);
}

} // namespace awcd::spd

#endif // AWCD_SPD_GEOMETRY_HPP_
