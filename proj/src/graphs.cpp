#include "totpos/graphs.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace totpos {

namespace {

bool edge_less(const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
}

class DisjointSets {
public:
    explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), Index(0));
    }
    Index find(Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<Index> parent_;
};

}  // namespace

WeightedGraph::WeightedGraph(Index dim, std::vector<Edge> edges) : dim_(dim) {
    for (Edge& e : edges) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i == e.j) throw DimensionMismatch("self-loop in graph");
        if (e.i < 0 || e.j >= dim) throw DimensionMismatch("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end(), edge_less);
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw DimensionMismatch("duplicate edge in graph");
    edges_ = std::move(edges);
}

bool WeightedGraph::has_edge(Index i, Index j) const { return weight(i, j).has_value(); }

std::optional<double> WeightedGraph::weight(Index i, Index j) const {
    if (i > j) std::swap(i, j);
    const Edge probe{i, j, 0.0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_less);
    if (it != edges_.end() && it->i == i && it->j == j) return it->weight;
    return std::nullopt;
}

std::vector<std::vector<Index>> WeightedGraph::adjacency() const {
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(dim_));
    for (const Edge& e : edges_) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

bool WeightedGraph::is_subgraph_of(const WeightedGraph& other) const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return other.has_edge(e.i, e.j); });
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.dim_ == b.dim_ && a.edges_ == b.edges_;
}

WeightedForest::WeightedForest(Index dim, std::vector<Edge> edges)
    : graph_(dim, std::move(edges)),
      adjacency_(static_cast<std::size_t>(dim)),
      component_(static_cast<std::size_t>(dim), -1) {
    DisjointSets sets(dim);
    for (const Edge& e : graph_.edges()) {
        if (!sets.unite(e.i, e.j)) throw DimensionMismatch("forest edges contain a cycle");
        adjacency_[e.i].emplace_back(e.j, e.weight);
        adjacency_[e.j].emplace_back(e.i, e.weight);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
    for (Index v = 0; v < dim; ++v) {
        if (component_[v] >= 0) continue;
        const Index label = component_count_++;
        component_[v] = label;
        walk_from(v, [&](Index, Index child, double) { component_[child] = label; });
    }
}

std::vector<std::vector<Index>> WeightedForest::components() const {
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(component_count_));
    for (Index v = 0; v < dim(); ++v) out[component_[v]].push_back(v);
    return out;
}

void WeightedForest::walk_from(Index root,
                               const std::function<void(Index, Index, double)>& visit) const {
    std::vector<std::pair<Index, Index>> stack{{root, -1}};
    while (!stack.empty()) {
        const auto [v, parent] = stack.back();
        stack.pop_back();
        for (auto it = adjacency_[v].rbegin(); it != adjacency_[v].rend(); ++it) {
            if (it->first == parent) continue;
            visit(v, it->first, it->second);
            stack.emplace_back(it->first, v);
        }
    }
}

WeightedGraph positive_part_graph(const Matrix& r) {
    require_square(r);
    std::vector<Edge> edges;
    for (Index i = 0; i < r.rows(); ++i)
        for (Index j = i + 1; j < r.cols(); ++j)
            if (r(i, j) > 0.0) edges.push_back({i, j, r(i, j)});
    return WeightedGraph(r.rows(), std::move(edges));
}

WeightedForest max_weight_spanning_forest(const WeightedGraph& g) {
    std::vector<Edge> order(g.edges());
    std::stable_sort(order.begin(), order.end(),
                     [](const Edge& a, const Edge& b) { return a.weight > b.weight; });
    DisjointSets sets(g.dim());
    std::vector<Edge> chosen;
    for (const Edge& e : order)
        if (sets.unite(e.i, e.j)) chosen.push_back(e);
    return WeightedForest(g.dim(), std::move(chosen));
}

WeightedForest mwsf(const Matrix& r) { return max_weight_spanning_forest(positive_part_graph(r)); }

std::optional<std::vector<Index>> forest_path_vertices(const WeightedForest& f, Index i, Index j) {
    if (i < 0 || j < 0 || i >= f.dim() || j >= f.dim())
        throw DimensionMismatch("path endpoint out of range");
    if (!f.same_component(i, j)) return std::nullopt;
    std::vector<Index> parent(static_cast<std::size_t>(f.dim()), -1);
    f.walk_from(i, [&](Index p, Index c, double) { parent[c] = p; });
    std::vector<Index> path{j};
    for (Index v = j; v != i; v = parent[v]) path.push_back(parent[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<std::vector<Edge>> forest_path(const WeightedForest& f, Index i, Index j) {
    auto vertices = forest_path_vertices(f, i, j);
    if (!vertices) return std::nullopt;
    std::vector<Edge> out;
    for (std::size_t k = 0; k + 1 < vertices->size(); ++k) {
        Index a = (*vertices)[k];
        Index b = (*vertices)[k + 1];
        const double w = *f.graph().weight(a, b);
        if (a > b) std::swap(a, b);
        out.push_back({a, b, w});
    }
    return out;
}

Matrix fold_forest_paths(const WeightedForest& f, const std::function<double(double, double)>& combine,
                         double diagonal, double disconnected) {
    const Index p = f.dim();
    Matrix out = Matrix::Constant(p, p, disconnected);
    Vector acc(p);
    for (Index root = 0; root < p; ++root) {
        out(root, root) = diagonal;
        f.walk_from(root, [&](Index parent, Index child, double w) {
            acc(child) = parent == root ? w : combine(acc(parent), w);
            out(root, child) = acc(child);
        });
    }
    return out;
}

Matrix tree_mle(const Matrix& r, const WeightedForest& f) {
    require_square(r);
    if (r.rows() != f.dim()) throw DimensionMismatch("forest and matrix differ in dimension");
    const Index p = f.dim();
    Matrix out = Matrix::Zero(p, p);
    Vector acc(p);
    for (Index root = 0; root < p; ++root) {
        out(root, root) = 1.0;
        acc(root) = 1.0;
        f.walk_from(root, [&](Index parent, Index child, double) {
            acc(child) = acc(parent) * r(parent, child);
            out(root, child) = acc(child);
        });
    }
    return out;
}

std::string to_dot(const WeightedGraph& g, const std::vector<std::string>& labels,
                   const std::string& name) {
    auto label = [&](Index v) {
        return labels.empty() ? std::to_string(v + 1) : labels[static_cast<std::size_t>(v)];
    };
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    for (Index v = 0; v < g.dim(); ++v) os << "  \"" << label(v) << "\";\n";
    char buf[64];
    for (const Edge& e : g.edges()) {
        std::snprintf(buf, sizeof buf, "%.6f", e.weight);
        os << "  \"" << label(e.i) << "\" -- \"" << label(e.j) << "\" [weight=\"" << buf
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace totpos
