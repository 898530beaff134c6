#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace brute {

namespace {

void extend(const Matrix& r, const std::function<double(double, double)>& combine, Index start,
            Index at, double value, std::vector<bool>& used, Matrix& best) {
    for (Index next = 0; next < r.rows(); ++next) {
        if (used[next] || !(r(at, next) > 0.0)) continue;
        const double v = at == start ? r(at, next) : combine(value, r(at, next));
        best(start, next) = std::max(best(start, next), v);
        used[next] = true;
        extend(r, combine, start, next, v, used, best);
        used[next] = false;
    }
}

bool adjacent(const WeightedGraph& g, Index i, Index j) { return g.has_edge(i, j); }

std::vector<Index> subset(std::uint32_t mask, Index p) {
    std::vector<Index> out;
    for (Index v = 0; v < p; ++v)
        if (mask >> v & 1u) out.push_back(v);
    return out;
}

}  // namespace

Matrix best_path(const Matrix& r, const std::function<double(double, double)>& combine) {
    const Index p = r.rows();
    Matrix best = Matrix::Zero(p, p);
    for (Index s = 0; s < p; ++s) {
        std::vector<bool> used(static_cast<std::size_t>(p), false);
        used[s] = true;
        extend(r, combine, s, s, 1.0, used, best);
        best(s, s) = 1.0;
    }
    return best;
}

Matrix single_linkage(const Matrix& r) {
    return best_path(r, [](double a, double b) { return std::min(a, b); });
}

Matrix max_product(const Matrix& r) {
    return best_path(r, [](double a, double b) { return a * b; });
}

double max_forest_weight(const WeightedGraph& g) {
    const auto& edges = g.edges();
    const std::size_t m = edges.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::vector<Index> parent(static_cast<std::size_t>(g.dim()));
        std::iota(parent.begin(), parent.end(), Index(0));
        auto find = [&](Index v) {
            while (parent[v] != v) v = parent[v];
            return v;
        };
        bool acyclic = true;
        double total = 0.0;
        for (std::size_t e = 0; e < m && acyclic; ++e) {
            if (!(mask >> e & 1u)) continue;
            const Index a = find(edges[e].i);
            const Index b = find(edges[e].j);
            if (a == b) acyclic = false;
            parent[a] = b;
            total += edges[e].weight;
        }
        if (acyclic) best = std::max(best, total);
    }
    return best;
}

bool is_block_graph(const WeightedGraph& g) {
    const Index p = g.dim();
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        const std::vector<Index> vs = subset(mask, p);
        const auto k = static_cast<Index>(vs.size());
        if (k < 4) continue;
        std::vector<int> degree(vs.size(), 0);
        int edges = 0;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                if (adjacent(g, vs[a], vs[b])) {
                    ++degree[a];
                    ++degree[b];
                    ++edges;
                }
        if (k == 4 && edges == 5) return false;  // diamond
        // A chordless cycle: connected and 2-regular.
        if (std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; })) {
            std::vector<bool> seen(vs.size(), false);
            std::vector<std::size_t> stack{0};
            seen[0] = true;
            std::size_t reached = 1;
            while (!stack.empty()) {
                const std::size_t a = stack.back();
                stack.pop_back();
                for (std::size_t b = 0; b < vs.size(); ++b)
                    if (!seen[b] && adjacent(g, vs[a], vs[b])) {
                        seen[b] = true;
                        ++reached;
                        stack.push_back(b);
                    }
            }
            if (reached == vs.size()) return false;
        }
    }
    return true;
}

bool is_balanced(const Matrix& r) {
    const Index p = r.rows();
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        bool ok = true;
        for (Index i = 0; i < p && ok; ++i)
            for (Index j = i + 1; j < p && ok; ++j) {
                const int si = (mask >> i & 1u) ? -1 : 1;
                const int sj = (mask >> j & 1u) ? -1 : 1;
                if (si * sj * r(i, j) < 0.0) ok = false;
            }
        if (ok) return true;
    }
    return false;
}

Index max_clique_size(const WeightedGraph& g) {
    const Index p = g.dim();
    Index best = p > 0 ? 1 : 0;
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
        const std::vector<Index> vs = subset(mask, p);
        if (static_cast<Index>(vs.size()) <= best) continue;
        bool clique = true;
        for (std::size_t a = 0; a < vs.size() && clique; ++a)
            for (std::size_t b = a + 1; b < vs.size() && clique; ++b)
                clique = adjacent(g, vs[a], vs[b]);
        if (clique) best = static_cast<Index>(vs.size());
    }
    return best;
}

Kkt kkt(const Matrix& s, const Matrix& sigma) {
    const Index p = s.rows();
    Matrix rs(p, p), rsig(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) {
            const double unit = std::sqrt(s(i, i) * s(j, j));
            rs(i, j) = s(i, j) / unit;
            rsig(i, j) = sigma(i, j) / unit;
        }
    const Matrix k = rsig.fullPivLu().inverse();
    Kkt out{-std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity(), 0.0};
    for (Index i = 0; i < p; ++i) {
        out.diag_max = std::max(out.diag_max, std::abs(rsig(i, i) - rs(i, i)));
        for (Index j = 0; j < p; ++j) {
            if (i == j) continue;
            out.primal_max = std::max(out.primal_max, k(i, j));
            out.dual_min = std::min(out.dual_min, rsig(i, j) - rs(i, j));
            out.slack_max = std::max(out.slack_max, std::abs((rsig(i, j) - rs(i, j)) * k(i, j)));
        }
    }
    if (p == 1) out.primal_max = out.dual_min = 0.0;
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace brute
