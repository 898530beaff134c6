#include "totpos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace totpos {

namespace {

// Free parameters: every diagonal entry, then each edge.
struct Parameterization {
    std::vector<IndexPair> entries;

    Parameterization(Index p, const std::vector<IndexPair>& edges) {
        for (Index i = 0; i < p; ++i) entries.emplace_back(i, i);
        entries.insert(entries.end(), edges.begin(), edges.end());
    }

    Index size() const { return static_cast<Index>(entries.size()); }

    void add(Matrix& k, const Vector& step, double t) const {
        for (Index a = 0; a < size(); ++a) {
            const auto [i, j] = entries[a];
            k(i, j) += t * step(a);
            if (i != j) k(j, i) += t * step(a);
        }
    }
};

double objective(const Matrix& k, const Matrix& s, bool& ok) {
    try {
        ok = true;
        return log_likelihood(k, s);
    } catch (const NotPositiveDefinite&) {
        ok = false;
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

RestrictedSolve restricted_mle(const Matrix& s, const std::vector<IndexPair>& edges,
                               double gradient_tol, int max_iterations) {
    require_square(s);
    const Index p = s.rows();
    const Parameterization param(p, edges);
    const Index m = param.size();

    RestrictedSolve out;
    out.k = Matrix::Zero(p, p);
    for (Index i = 0; i < p; ++i) out.k(i, i) = 1.0 / s(i, i);
    bool ok = true;
    double value = objective(out.k, s, ok);

    for (int it = 0; it < max_iterations; ++it) {
        out.sigma = inverse_pd(out.k);
        // d/dK_ij of log det K - tr(SK) along the symmetric basis direction:
        // gradient tr((Sigma - S) E_a), Hessian -tr(Sigma E_a Sigma E_b).
        Vector grad(m);
        Matrix hess(m, m);
        for (Index a = 0; a < m; ++a) {
            const auto [i, j] = param.entries[a];
            grad(a) = (i == j ? 1.0 : 2.0) * (out.sigma(i, j) - s(i, j));
            for (Index b = 0; b <= a; ++b) {
                const auto [k, l] = param.entries[b];
                double h;
                if (i == j && k == l) {
                    h = out.sigma(i, k) * out.sigma(i, k);
                } else if (i == j) {
                    h = 2.0 * out.sigma(i, k) * out.sigma(i, l);
                } else if (k == l) {
                    h = 2.0 * out.sigma(k, i) * out.sigma(k, j);
                } else {
                    h = 2.0 * (out.sigma(i, k) * out.sigma(j, l) + out.sigma(i, l) * out.sigma(j, k));
                }
                hess(a, b) = hess(b, a) = -h;
            }
        }
        out.iterations = it;
        if (grad.cwiseAbs().maxCoeff() < gradient_tol) {
            out.converged = true;
            return out;
        }
        const Eigen::LLT<Matrix> llt(-hess);
        if (llt.info() != Eigen::Success) return out;
        const Vector step = llt.solve(grad);
        const double slope = grad.dot(step);
        double t = 1.0;
        bool accepted = false;
        for (int back = 0; back < 60; ++back, t *= 0.5) {
            Matrix candidate = out.k;
            param.add(candidate, step, t);
            const double next = objective(candidate, s, ok);
            if (ok && next >= value + 1e-4 * t * slope - 1e-14 * std::abs(value)) {
                out.k = std::move(candidate);
                value = next;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    out.sigma = inverse_pd(out.k);
    return out;
}

ActiveSetSolution active_set_oracle(const Matrix& s, double sign_tol) {
    require_square(s);
    const Index p = s.rows();
    if (p > 5) throw std::invalid_argument("active-set oracle supports p <= 5");
    if (!exists_mle(s)) throw MleDoesNotExist();

    std::vector<IndexPair> pairs;
    for (Index i = 0; i < p; ++i)
        for (Index j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
    const std::size_t count = std::size_t(1) << pairs.size();
    const Vector scale = s.diagonal().cwiseSqrt();

    ActiveSetSolution best;
    bool found = false;
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<IndexPair> edges;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u) edges.push_back(pairs[b]);
        RestrictedSolve solve = restricted_mle(s, edges);
        if (!solve.converged) {
            best.skipped.push_back(edges);
            continue;
        }
        double margin = std::numeric_limits<double>::infinity();
        std::size_t e = 0;
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            const auto [i, j] = pairs[b];
            const double unit = scale(i) * scale(j);
            if (e < edges.size() && edges[e] == pairs[b]) {
                margin = std::min(margin, -solve.k(i, j) * unit);
                ++e;
            } else {
                margin = std::min(margin, (solve.sigma(i, j) - s(i, j)) / unit);
            }
        }
        if (!(margin >= -sign_tol)) continue;
        ++best.passing_candidates;
        if (found) continue;
        found = true;
        best.active_set = std::move(edges);
        best.sigma = solve.sigma;
        best.k = solve.k;
        best.margin = pairs.empty() ? 0.0 : margin;
    }
    if (!found) throw NoKktPoint();
    best.kkt = kkt_certificate(s, best.sigma, best.k, 1e-6);
    return best;
}

}  // namespace totpos
