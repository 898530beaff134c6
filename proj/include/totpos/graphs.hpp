#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "totpos/matcore.hpp"

namespace totpos {

struct Edge {
    Index i{};
    Index j{};
    double weight{};

    friend bool operator==(const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j; }
};

/// Undirected weighted graph on {0, ..., dim-1}. Edges are stored with i < j,
/// sorted lexicographically, without duplicates.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(Index dim) : dim_(dim) {}
    WeightedGraph(Index dim, std::vector<Edge> edges);

    Index dim() const noexcept { return dim_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool has_edge(Index i, Index j) const;
    std::optional<double> weight(Index i, Index j) const;

    /// Adjacency lists, neighbours sorted ascending.
    std::vector<std::vector<Index>> adjacency() const;

    /// True when every edge of this graph is also an edge of `other`.
    bool is_subgraph_of(const WeightedGraph& other) const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

private:
    Index dim_ = 0;
    std::vector<Edge> edges_;
};

/// Acyclic subgraph with per-vertex component labels. Components are numbered
/// in order of their smallest vertex.
class WeightedForest {
public:
    WeightedForest() = default;
    WeightedForest(Index dim, std::vector<Edge> edges);

    Index dim() const noexcept { return graph_.dim(); }
    const std::vector<Edge>& edges() const noexcept { return graph_.edges(); }
    const WeightedGraph& graph() const noexcept { return graph_; }
    const std::vector<Index>& component_label() const noexcept { return component_; }
    Index component_count() const noexcept { return component_count_; }
    bool same_component(Index i, Index j) const { return component_[i] == component_[j]; }

    /// Vertex sets of the components, each ascending.
    std::vector<std::vector<Index>> components() const;

    /// Visit every vertex reachable from `root` in depth-first order, passing
    /// (parent, child, edge weight). The root itself is not reported.
    void walk_from(Index root, const std::function<void(Index, Index, double)>& visit) const;

private:
    WeightedGraph graph_;
    std::vector<std::vector<std::pair<Index, double>>> adjacency_;
    std::vector<Index> component_;
    Index component_count_ = 0;
};

/// Edge (i, j, R_ij) for every off-diagonal R_ij > 0.
WeightedGraph positive_part_graph(const Matrix& r);

/// Maximum-weight spanning forest of a graph by Kruskal's method. Ties are
/// broken by ascending (i, j).
WeightedForest max_weight_spanning_forest(const WeightedGraph& g);

/// Maximum-weight spanning forest of positive_part_graph(r).
WeightedForest mwsf(const Matrix& r);

/// Unique forest path between i and j, or nullopt when they lie in different
/// components. Empty for i == j.
std::optional<std::vector<Edge>> forest_path(const WeightedForest& f, Index i, Index j);

/// Vertex sequence of the forest path from i to j (inclusive).
std::optional<std::vector<Index>> forest_path_vertices(const WeightedForest& f, Index i, Index j);

/// Fold `combine` over the forest-path weights for every connected pair:
/// out(i, j) = combine(...combine(w1, w2)..., wk). Diagonal is `diagonal`,
/// disconnected pairs are `disconnected`.
Matrix fold_forest_paths(const WeightedForest& f, const std::function<double(double, double)>& combine,
                         double diagonal, double disconnected);

/// Gaussian tree-model MLE: products of R along forest paths.
Matrix tree_mle(const Matrix& r, const WeightedForest& f);

/// Graphviz export; edges carry weight="%.6f".
std::string to_dot(const WeightedGraph& g, const std::vector<std::string>& labels = {},
                   const std::string& name = "G");

}  // namespace totpos
