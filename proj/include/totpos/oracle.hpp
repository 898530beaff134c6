#pragma once

#include <utility>
#include <vector>

#include "totpos/solver.hpp"

namespace totpos {

using IndexPair = std::pair<Index, Index>;

/// Gaussian graphical model MLE restricted to an edge set, solved by a damped
/// Newton method on the free entries of K.
struct RestrictedSolve {
    Matrix k;
    Matrix sigma;
    bool converged = false;
    int iterations = 0;
};

RestrictedSolve restricted_mle(const Matrix& s, const std::vector<IndexPair>& edges,
                               double gradient_tol = 1e-12, int max_iterations = 200);

struct ActiveSetSolution {
    std::vector<IndexPair> active_set;  // pairs with Sigma_ij = S_ij
    Matrix sigma;
    Matrix k;
    KktCertificate kkt;
    /// Smallest slack among the strict KKT inequalities: -K_ij on the active
    /// set and Sigma_ij - S_ij off it (correlation scale).
    double margin = 0.0;
    int passing_candidates = 0;
    std::vector<std::vector<IndexPair>> skipped;  // candidates whose restricted solve failed
};

/// Enumerates every candidate active set (p <= 5) and returns the one whose
/// restricted MLE satisfies the full KKT system.
ActiveSetSolution active_set_oracle(const Matrix& s, double sign_tol = 1e-9);

}  // namespace totpos
