#include "totpos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "totpos/ultra.hpp"

namespace totpos {

namespace {

using Matrix2 = Eigen::Matrix2d;

Matrix2 pair_block(const Matrix& m, Index u, Index v) {
    Matrix2 out;
    out << m(u, u), m(u, v), m(v, u), m(v, v);
    return out;
}

// Adds `delta` to the (u, v) principal 2x2 block of `m` and keeps `inv` equal
// to m^{-1} through the Woodbury identity.
void update_pair(Matrix& m, Matrix& inv, Index u, Index v, const Matrix2& delta) {
    const Index p = m.rows();
    Eigen::Matrix<double, Eigen::Dynamic, 2> cols(p, 2);
    cols.col(0) = inv.col(u);
    cols.col(1) = inv.col(v);
    const Matrix2 inv_aa = pair_block(inv, u, v);
    const Matrix2 core = delta * (Matrix2::Identity() + inv_aa * delta).inverse();
    inv.noalias() -= cols * core * cols.transpose();
    m(u, u) += delta(0, 0);
    m(v, v) += delta(1, 1);
    m(u, v) += delta(0, 1);
    m(v, u) += delta(1, 0);
}

struct BlockSolution {
    Matrix sigma;
    Matrix k;
    int sweeps = 0;
    bool converged = false;
    std::vector<double> changes;
};

class BlockSolver {
public:
    BlockSolver(const Matrix& r, std::span<const Index> block, const FitConfig& cfg)
        : r_(r), block_(block), cfg_(cfg) {}

    BlockSolution solve_sigma(Matrix start) const {
        BlockSolution out;
        out.sigma = std::move(start);
        out.k = inverse_pd(out.sigma);
        const Index q = r_.rows();
        for (int sweep = 1; sweep <= cfg_.max_sweeps; ++sweep) {
            double change = 0.0;
            for (Index u = 0; u < q; ++u)
                for (Index v = u + 1; v < q; ++v) {
                    // Sigma_AA - L = (K_AA)^{-1}, so L_12 = Sigma_uv + K_uv / det(K_AA).
                    const double det = out.k(u, u) * out.k(v, v) - out.k(u, v) * out.k(u, v);
                    const double l12 = out.sigma(u, v) + out.k(u, v) / det;
                    const double next = std::max(r_(u, v), l12);
                    const double step = next - out.sigma(u, v);
                    if (step != 0.0) {
                        Matrix2 delta;
                        delta << 0.0, step, step, 0.0;
                        update_pair(out.sigma, out.k, u, v, delta);
                        out.sigma(u, v) = out.sigma(v, u) = next;
                    }
                    change += 2.0 * std::abs(step);
                    notify(u, v, out.sigma);
                }
            out.k = inverse_pd(out.sigma);
            out.sweeps = sweep;
            out.changes.push_back(change);
            if (change < cfg_.tolerance) {
                out.converged = true;
                break;
            }
        }
        return out;
    }

    BlockSolution solve_k(Matrix start) const {
        BlockSolution out;
        out.k = std::move(start);
        out.sigma = inverse_pd(out.k);
        const Index q = r_.rows();
        for (int sweep = 1; sweep <= cfg_.max_sweeps; ++sweep) {
            double change = 0.0;
            for (Index u = 0; u < q; ++u)
                for (Index v = u + 1; v < q; ++v) {
                    // K_AA - L is the inverse of Sigma_AA.
                    const Matrix2 k_aa = pair_block(out.k, u, v);
                    const Matrix2 l = k_aa - pair_block(out.sigma, u, v).inverse();
                    const double s_uu = r_(u, u);
                    const double s_vv = r_(v, v);
                    const double s_uv = r_(u, v);
                    const double det_s = s_uu * s_vv - s_uv * s_uv;
                    Matrix2 reduced;
                    if (l(0, 1) <= s_uv / det_s) {
                        reduced << s_vv / det_s, -s_uv / det_s, -s_uv / det_s, s_uu / det_s;
                    } else {
                        const double root = std::sqrt(1.0 + 4.0 * s_uu * s_vv * l(0, 1) * l(0, 1));
                        reduced << (1.0 + root) / (2.0 * s_uu), -l(0, 1), -l(0, 1),
                            (1.0 + root) / (2.0 * s_vv);
                    }
                    Matrix2 next = reduced + l;
                    next(1, 0) = next(0, 1);
                    const Matrix2 delta = next - k_aa;
                    update_pair(out.k, out.sigma, u, v, delta);
                    out.k(u, u) = next(0, 0);
                    out.k(v, v) = next(1, 1);
                    out.k(u, v) = out.k(v, u) = next(0, 1);
                    change += delta.cwiseAbs().sum();
                    notify(u, v, out.k);
                }
            out.sigma = inverse_pd(out.k);
            out.sweeps = sweep;
            // Relative to the largest K_ii (>= 1 here): rounding in a large K
            // otherwise floors the absolute change above the tolerance.
            change /= max_diagonal(out.k);
            out.changes.push_back(change);
            if (change < cfg_.tolerance) {
                out.converged = true;
                break;
            }
        }
        return out;
    }

private:
    void notify(Index u, Index v, const Matrix& iterate) const {
        if (cfg_.on_update) cfg_.on_update(PairUpdate{block_, u, v, r_, iterate});
    }

    const Matrix& r_;
    std::span<const Index> block_;
    const FitConfig& cfg_;
};

Matrix symmetrized(const Matrix& s) {
    require_square(s);
    const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DimensionMismatch("matrix is not symmetric");
    return (s + s.transpose()) / 2.0;
}

}  // namespace

std::string to_string(Algorithm a) {
    return a == Algorithm::descent_on_k ? "descent_on_k" : "descent_on_sigma";
}

bool exists_mle(const Matrix& s) {
    require_square(s);
    const Index p = s.rows();
    for (Index i = 0; i < p; ++i)
        if (!(s(i, i) > 0.0)) throw NonPositiveDiagonal(i);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) {
            if (i == j) continue;
            const double bound = std::sqrt(s(i, i) * s(j, j));
            if (!(s(i, j) < bound - 1e-12 * bound)) return false;
        }
    return true;
}

WeightedGraph precision_graph(const Matrix& k, const Vector& scale, double threshold) {
    require_square(k);
    const Matrix kn = k.array() * (scale * scale.transpose()).array();
    const double cutoff = threshold * max_diagonal(kn);
    std::vector<Edge> edges;
    for (Index i = 0; i < kn.rows(); ++i)
        for (Index j = i + 1; j < kn.cols(); ++j)
            if (std::abs(kn(i, j)) > cutoff)
                edges.push_back({i, j, -kn(i, j) / std::sqrt(kn(i, i) * kn(j, j))});
    return WeightedGraph(k.rows(), std::move(edges));
}

KktCertificate kkt_certificate(const Matrix& s, const Matrix& sigma_hat, double tol) {
    return kkt_certificate(s, sigma_hat, inverse_pd(sigma_hat), tol);
}

KktCertificate kkt_certificate(const Matrix& s, const Matrix& sigma_hat, const Matrix& k_hat,
                               double tol) {
    require_square(s);
    if (sigma_hat.rows() != s.rows() || k_hat.rows() != s.rows())
        throw DimensionMismatch("certificate arguments differ in dimension");
    pd_factorize(sigma_hat);
    const Correlation<double> corr = to_correlation(s);
    const Matrix outer = corr.scale * corr.scale.transpose();
    const Matrix sigma = sigma_hat.array() / outer.array();
    const Matrix k = k_hat.array() * outer.array();
    const Matrix& r = corr.r;

    KktCertificate c;
    c.tolerance = tol;
    const Index p = s.rows();
    double primal = -std::numeric_limits<double>::infinity();
    double dual = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < p; ++i) {
        c.diag_max = std::max(c.diag_max, std::abs(sigma(i, i) - r(i, i)));
        for (Index j = 0; j < p; ++j) {
            if (i == j) continue;
            primal = std::max(primal, k(i, j));
            dual = std::min(dual, sigma(i, j) - r(i, j));
            c.slack_max = std::max(c.slack_max, std::abs((sigma(i, j) - r(i, j)) * k(i, j)));
        }
    }
    // K is only known to relative precision, so slackness is measured against
    // its largest diagonal entry (at least 1 on correlation scale).
    c.slack_max /= std::max(1.0, k.diagonal().maxCoeff());
    c.primal_max = p > 1 ? primal : 0.0;
    c.dual_min = p > 1 ? dual : 0.0;
    c.passed = c.primal_max <= tol && c.diag_max <= tol && c.dual_min >= -tol && c.slack_max <= tol;
    return c;
}

double duality_gap(const Matrix& s, const Matrix& k, const Matrix& sigma) {
    require_square(s);
    if (k.rows() != s.rows() || sigma.rows() != s.rows())
        throw DimensionMismatch("duality gap arguments differ in dimension");
    const double log_det_sigma = pd_factorize(sigma).log_det;
    const double log_det_k = pd_factorize(k).log_det;
    const double trace_sk = (s.array() * k.transpose().array()).sum();
    return -log_det_sigma - log_det_k + trace_sk - static_cast<double>(s.rows());
}

FitResult fit(const Matrix& s_in, const FitConfig& cfg) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (cfg.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
    const Matrix s = symmetrized(s_in);
    const Correlation<double> corr = to_correlation(s);
    if (!exists_mle(s)) throw MleDoesNotExist();
    const Matrix& r = corr.r;
    const Index p = r.rows();

    const WeightedForest forest = mwsf(r);
    const bool need_z = cfg.start == StartPoint::single_linkage ||
                        cfg.algorithm == Algorithm::descent_on_sigma;
    const Matrix z = need_z ? single_linkage(r) : Matrix();

    Matrix sigma_r = Matrix::Identity(p, p);
    Matrix k_r = Matrix::Identity(p, p);
    FitResult result;
    result.converged = true;
    for (const std::vector<Index>& block : forest.components()) {
        if (block.size() < 2) continue;
        const Matrix r_block = r(block, block);
        const BlockSolver solver(r_block, block, cfg);
        BlockSolution sol;
        if (cfg.algorithm == Algorithm::descent_on_sigma) {
            Matrix start = z(block, block);
            if (cfg.start == StartPoint::automatic) {
                try {
                    pd_factorize(r_block);
                    start = r_block;
                } catch (const NotPositiveDefinite&) {
                }
            }
            sol = solver.solve_sigma(std::move(start));
        } else {
            const Index q = r_block.rows();
            Matrix start = cfg.start == StartPoint::single_linkage
                               ? inverse_pd(Matrix(z(block, block)))
                               : Matrix(Matrix::Identity(q, q));
            sol = solver.solve_k(std::move(start));
        }
        sigma_r(block, block) = sol.sigma;
        k_r(block, block) = sol.k;
        result.converged = result.converged && sol.converged;
        result.sweeps = std::max(result.sweeps, sol.sweeps);
        if (result.sweep_changes.size() < sol.changes.size())
            result.sweep_changes.resize(sol.changes.size(), 0.0);
        for (std::size_t t = 0; t < sol.changes.size(); ++t) result.sweep_changes[t] += sol.changes[t];
    }

    const Matrix outer = corr.scale * corr.scale.transpose();
    result.sigma_hat = sigma_r.array() * outer.array();
    result.k_hat = k_r.array() / outer.array();
    result.ml_graph = precision_graph(result.k_hat, corr.scale, cfg.edge_threshold);
    result.certificate = kkt_certificate(s, result.sigma_hat, result.k_hat, cfg.kkt_tolerance);
    result.log_likelihood = log_likelihood(result.k_hat, s);
    result.duality_gap = duality_gap(s, result.k_hat, result.sigma_hat);
    if (!result.converged) throw MaxSweepsExceeded(std::move(result));
    return result;
}

}  // namespace totpos
