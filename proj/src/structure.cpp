#include "totpos/structure.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

#include "totpos/ultra.hpp"

namespace totpos {

WeightedGraph ml_graph_upper_bound(const Matrix& r) {
    const Matrix w = w_matrix(r);
    const WeightedGraph ec = ec_graph(r);
    std::vector<Edge> edges;
    for (const Edge& e : ec.edges())
        if (r(e.i, e.j) > 0.0 && r(e.i, e.j) >= w(e.i, e.j) - 1e-12) edges.push_back(e);
    return WeightedGraph(r.rows(), std::move(edges));
}

WeightedGraph grw_graph(const Matrix& r, const Matrix& w, double tol) {
    require_square(r);
    if (w.rows() != r.rows() || w.cols() != r.cols())
        throw DimensionMismatch("W and R differ in dimension");
    std::vector<Edge> edges;
    for (Index i = 0; i < r.rows(); ++i)
        for (Index j = i + 1; j < r.cols(); ++j)
            if (w(i, j) > 0.0 && r(i, j) > 0.0 && std::abs(r(i, j) - w(i, j)) <= tol)
                edges.push_back({i, j, r(i, j)});
    return WeightedGraph(r.rows(), std::move(edges));
}

BlockReport is_block_graph(const WeightedGraph& g) {
    const Index p = g.dim();
    const auto adj = g.adjacency();
    std::vector<Index> order(static_cast<std::size_t>(p), -1);
    std::vector<Index> low(static_cast<std::size_t>(p), 0);
    std::vector<std::pair<Index, Index>> edge_stack;
    std::vector<std::vector<Index>> components;
    Index counter = 0;

    // Tarjan's biconnected components over an explicit edge stack.
    std::function<void(Index, Index)> visit = [&](Index v, Index parent) {
        order[v] = low[v] = counter++;
        for (Index w : adj[v]) {
            if (w == parent) continue;
            if (order[w] < 0) {
                edge_stack.emplace_back(v, w);
                visit(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= order[v]) {
                    std::vector<Index> comp;
                    while (true) {
                        const auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        comp.push_back(a);
                        comp.push_back(b);
                        if (a == v && b == w) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
                    components.push_back(std::move(comp));
                }
            } else if (order[w] < order[v]) {
                edge_stack.emplace_back(v, w);
                low[v] = std::min(low[v], order[w]);
            }
        }
    };
    for (Index v = 0; v < p; ++v) {
        if (order[v] >= 0) continue;
        if (adj[v].empty()) {
            order[v] = counter++;
            components.push_back({v});
            continue;
        }
        visit(v, -1);
    }
    std::sort(components.begin(), components.end());

    BlockReport report;
    for (const auto& comp : components) {
        bool complete = true;
        for (std::size_t a = 0; a < comp.size() && complete; ++a)
            for (std::size_t b = a + 1; b < comp.size() && complete; ++b)
                complete = g.has_edge(comp[a], comp[b]);
        if (!complete && !report.offending_component) {
            report.is_block_graph = false;
            report.offending_component = comp;
        }
    }
    report.blocks = std::move(components);
    return report;
}

ClosedForm block_closed_form(const Matrix& r, double tol) {
    ClosedForm out;
    out.w = w_matrix(r);
    out.grw = grw_graph(r, out.w, tol);
    out.blocks = is_block_graph(out.grw);
    if (!out.blocks.is_block_graph) {
        out.failed_condition = "G_R(W) is not a block graph";
        return out;
    }
    for (const auto& block : out.blocks.blocks) {
        if (block.size() < 2) continue;
        const Matrix wb = out.w(block, block);
        Matrix inv;
        try {
            inv = inverse_pd(wb);
        } catch (const NotPositiveDefinite&) {
            out.failed_condition = "a clique block of W is not positive definite";
            return out;
        }
        if (!is_m_matrix(inv, 1e-12)) {
            out.failed_condition = "a clique block of W is not an inverse M-matrix";
            return out;
        }
    }
    out.sigma = out.w;
    return out;
}

Containment mwsf_containment(const Matrix& r, const FitResult& fit) {
    const WeightedForest forest = mwsf(to_correlation(r).r);
    if (fit.ml_graph.dim() != forest.dim())
        throw DimensionMismatch("fit and matrix differ in dimension");
    Containment out;
    for (const Edge& e : forest.edges())
        if (!fit.ml_graph.has_edge(e.i, e.j)) out.missing_edges.push_back(e);
    out.contains = out.missing_edges.empty();
    return out;
}

Matrix threshold_k(const Matrix& k, const WeightedGraph& g) {
    if (!is_m_matrix(k, 1e-12)) throw InputNotMMatrix();
    if (g.dim() != k.rows()) throw DimensionMismatch("graph and matrix differ in dimension");
    Matrix out = Matrix(k.diagonal().asDiagonal());
    for (const Edge& e : g.edges()) out(e.i, e.j) = out(e.j, e.i) = k(e.i, e.j);
    return out;
}

std::vector<Index> max_clique(const WeightedGraph& g) {
    const Index p = g.dim();
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(p),
                                       std::vector<char>(static_cast<std::size_t>(p), 0));
    for (const Edge& e : g.edges()) adj[e.i][e.j] = adj[e.j][e.i] = 1;

    std::vector<Index> best;
    std::vector<Index> current;
    std::function<void(std::vector<Index>, std::vector<Index>)> expand =
        [&](std::vector<Index> cand, std::vector<Index> excluded) {
            if (cand.empty()) {
                if (excluded.empty() && current.size() > best.size()) best = current;
                return;
            }
            if (current.size() + cand.size() <= best.size()) return;
            Index pivot = cand.front();
            std::size_t pivot_degree = 0;
            for (const auto* set : {&cand, &excluded})
                for (Index u : *set) {
                    const auto degree = static_cast<std::size_t>(
                        std::count_if(cand.begin(), cand.end(), [&](Index v) { return adj[u][v]; }));
                    if (degree > pivot_degree) {
                        pivot = u;
                        pivot_degree = degree;
                    }
                }
            const std::vector<Index> branch_on = [&] {
                std::vector<Index> out;
                for (Index v : cand)
                    if (!adj[pivot][v]) out.push_back(v);
                return out;
            }();
            for (Index v : branch_on) {
                std::vector<Index> next_cand;
                std::vector<Index> next_excl;
                for (Index u : cand)
                    if (adj[v][u]) next_cand.push_back(u);
                for (Index u : excluded)
                    if (adj[v][u]) next_excl.push_back(u);
                current.push_back(v);
                expand(std::move(next_cand), std::move(next_excl));
                current.pop_back();
                cand.erase(std::find(cand.begin(), cand.end(), v));
                excluded.push_back(v);
            }
        };
    std::vector<Index> all(static_cast<std::size_t>(p));
    for (Index v = 0; v < p; ++v) all[v] = v;
    expand(all, {});
    std::sort(best.begin(), best.end());
    return best;
}

std::string tiered_dot(const WeightedForest& forest, const WeightedGraph& ml_graph,
                       const WeightedGraph& candidates, const std::vector<std::string>& labels,
                       const std::string& name) {
    auto label = [&](Index v) {
        return labels.empty() ? std::to_string(v + 1) : labels[static_cast<std::size_t>(v)];
    };
    std::ostringstream os;
    char buf[64];
    auto emit = [&](const Edge& e, const char* style) {
        std::snprintf(buf, sizeof buf, "%.6f", e.weight);
        os << "  \"" << label(e.i) << "\" -- \"" << label(e.j) << "\" [weight=\"" << buf << "\", "
           << style << "];\n";
    };
    os << "graph \"" << name << "\" {\n";
    for (Index v = 0; v < forest.dim(); ++v) os << "  \"" << label(v) << "\";\n";
    for (const Edge& e : forest.edges()) emit(e, "color=\"red\", penwidth=3, tier=\"mwsf\"");
    for (const Edge& e : ml_graph.edges())
        if (!forest.graph().has_edge(e.i, e.j)) emit(e, "color=\"blue\", penwidth=1.5, tier=\"ml\"");
    for (const Edge& e : candidates.edges())
        if (!forest.graph().has_edge(e.i, e.j) && !ml_graph.has_edge(e.i, e.j))
            emit(e, "color=\"gray\", penwidth=0.5, tier=\"candidate\"");
    os << "}\n";
    return os.str();
}

}  // namespace totpos
