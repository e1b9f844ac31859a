// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_SPD_CURVATURE_ORACLE_HPP_
#define AWCD_SPD_CURVATURE_ORACLE_HPP_

#include <span>
#include <vector>

#include "awcd/spd/geometry.hpp"

namespace awcd::spd {

/// Modified Gram-Schmidt under g_W at A. Candidates that are (numerically)
/// dependent on earlier ones are dropped.
inline std::vector<SymMatrix> wasserstein_orthonormalize(const SpdMatrix& a, std::span<const SymMatrix> candidates) {
    std::vector<SymMatrix> basis;
    for (const SymMatrix& c : candidates) {
        Matrix v = c.matrix();
        const double start = std::sqrt(wasserstein_metric(a, c, c));
        for (const SymMatrix& e : basis) {
            const double proj = wasserstein_metric(a, SymMatrix(v), e);
            v -= proj * e.matrix();
        }
        const SymMatrix vs(0.5 * (v + v.transpose()));
        const double len = std::sqrt(std::max(wasserstein_metric(a, vs, vs), 0.0));
        if (len <= 1e-10 * start) continue;
        basis.emplace_back(vs.matrix() / len);
    }
    return basis;
}

/// Canonical spanning set of the tangent space: E_ii and E_ij + E_ji (i < j).
inline std::vector<SymMatrix> canonical_symmetric_basis(Eigen::Index n) {
    std::vector<SymMatrix> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = 1.0;
            e(j, i) = 1.0;
            out.emplace_back(e);
        }
    }
    return out;
}

/// Test oracle: sum of R(e_a, e_b, e_a, e_b) over a g_W-orthonormal basis of
/// the full n(n+1)/2-dimensional tangent space, every term evaluated through
/// curvature_tensor. `seed` replaces the canonical spanning set when given.
inline double scalar_curvature_bruteforce(const SpdMatrix& a, std::span<const SymMatrix> seed = {}) {
    const Eigen::Index n = a.dim();
    if (n > 4) throw DomainError("scalar_curvature_bruteforce: limited to n <= 4");

    const std::vector<SymMatrix> canonical = seed.empty() ? canonical_symmetric_basis(n) : std::vector<SymMatrix>{};
    const std::span<const SymMatrix> spanning = seed.empty() ? std::span<const SymMatrix>(canonical) : seed;
    const std::vector<SymMatrix> basis = wasserstein_orthonormalize(a, spanning);
    if (basis.size() != static_cast<std::size_t>(n * (n + 1) / 2))
        throw DomainError("scalar_curvature_bruteforce: spanning set does not span the tangent space");

    double sum = 0.0;
    for (const SymMatrix& ea : basis)
        for (const SymMatrix& eb : basis) sum += curvature_tensor(a, ea, eb);
    return sum;
}

} // namespace awcd::spd

#endif // AWCD_SPD_CURVATURE_ORACLE_HPP_
