#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "totpos/graphs.hpp"

namespace totpos {

enum class Algorithm {
    descent_on_k,      // pair updates of the precision matrix
    descent_on_sigma,  // pair updates of the covariance matrix
};

enum class StartPoint {
    automatic,       // K: diag(S)^{-1}; Sigma: S when positive definite, else single linkage
    single_linkage,  // Sigma only: always start from the rescaled single-linkage matrix
};

/// Snapshot handed to FitConfig::on_update after every pair update. The
/// solver works per MWSF component on correlation scale; `block` lists the
/// component's vertices and `target` is the correlation matrix restricted to
/// it; u and v are block-local indices. `iterate` is the current K
/// (descent_on_k) or Sigma (descent_on_sigma) of the block.
struct PairUpdate {
    std::span<const Index> block;
    Index u;
    Index v;
    const Matrix& target;
    const Matrix& iterate;
};

struct FitConfig {
    double tolerance = 1e-10;  // L1 change per sweep, correlation scale (relative to max K_ii for K)
    int max_sweeps = 10'000;
    Algorithm algorithm = Algorithm::descent_on_sigma;
    StartPoint start = StartPoint::automatic;
    double edge_threshold = 1e-6;  // |K_ij| > threshold * max K_ii, correlation scale
    double kkt_tolerance = 1e-6;
    std::function<void(const PairUpdate&)> on_update;
};

/// Residuals of the optimality system, measured on correlation scale
/// (Sigma and S divided by sqrt(S_ii S_jj), K multiplied by it).
struct KktCertificate {
    double primal_max = 0.0;  // max_{i!=j} K_ij, must be <= 0
    double diag_max = 0.0;    // max_i |Sigma_ii - S_ii|
    double dual_min = 0.0;    // min_{i!=j} Sigma_ij - S_ij, must be >= 0
    double slack_max = 0.0;   // max_{i!=j} |(Sigma_ij - S_ij) K_ij| / max(1, max K_ii)
    double tolerance = 0.0;
    bool passed = false;
};

struct FitResult {
    Matrix sigma_hat;
    Matrix k_hat;
    KktCertificate certificate;
    int sweeps = 0;
    bool converged = false;
    double log_likelihood = 0.0;
    double duality_gap = 0.0;
    WeightedGraph ml_graph;
    std::vector<double> sweep_changes;  // L1 change of each sweep, summed over components
};

/// Raised when the sweep budget runs out; carries the last iterate.
class MaxSweepsExceeded : public Error {
public:
    explicit MaxSweepsExceeded(FitResult best)
        : Error("coordinate descent did not converge within the sweep budget"),
          best_(std::move(best)) {}
    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

/// Sufficient existence condition: S_ij < (1 - 1e-12) sqrt(S_ii S_jj) for all i != j.
bool exists_mle(const Matrix& s);

/// Maximum likelihood estimate under an M-matrix precision constraint.
FitResult fit(const Matrix& s, const FitConfig& cfg = {});

/// -log det Sigma - log det K + tr(S K) - p.
double duality_gap(const Matrix& s, const Matrix& k, const Matrix& sigma);

KktCertificate kkt_certificate(const Matrix& s, const Matrix& sigma_hat, double tol);
KktCertificate kkt_certificate(const Matrix& s, const Matrix& sigma_hat, const Matrix& k_hat,
                               double tol);

/// Graph of entries with |K_ij| > threshold * max K_ii after normalizing K to
/// correlation scale with `scale` (sqrt of the diagonal of S).
WeightedGraph precision_graph(const Matrix& k, const Vector& scale, double threshold);

std::string to_string(Algorithm a);

}  // namespace totpos
