#pragma once

#include <optional>
#include <string>
#include <vector>

#include "totpos/solver.hpp"

namespace totpos {

struct BlockReport {
    bool is_block_graph = true;
    std::vector<std::vector<Index>> blocks;  // biconnected components, isolated vertices as singletons
    std::optional<std::vector<Index>> offending_component;
};

/// Outcome of the closed-form check. `sigma` is set when the max-product
/// matrix is the exact MLE; otherwise `failed_condition` says why not.
struct ClosedForm {
    std::optional<Matrix> sigma;
    std::string failed_condition;
    Matrix w;
    WeightedGraph grw;
    BlockReport blocks;

    bool applicable() const noexcept { return sigma.has_value(); }
};

struct Containment {
    bool contains = true;
    std::vector<Edge> missing_edges;
};

/// Pairs that may be ML-graph edges: R_ij > 0, R_ij >= W_ij - 1e-12, and in ec_graph(r).
WeightedGraph ml_graph_upper_bound(const Matrix& r);

/// Pairs with W_ij > 0, R_ij > 0 and |R_ij - W_ij| <= tol.
WeightedGraph grw_graph(const Matrix& r, const Matrix& w, double tol = 1e-9);

/// Biconnected decomposition; a block graph has only complete blocks.
BlockReport is_block_graph(const WeightedGraph& g);

ClosedForm block_closed_form(const Matrix& r, double tol = 1e-9);

/// Reports the MWSF edges of r that are missing from the fitted ML graph.
Containment mwsf_containment(const Matrix& r, const FitResult& fit);

/// Zeroes the off-diagonal entries of an M-matrix outside g.
Matrix threshold_k(const Matrix& k, const WeightedGraph& g);

/// A maximum clique by branch and bound (Bron-Kerbosch with pivoting).
std::vector<Index> max_clique(const WeightedGraph& g);

/// Graphviz rendering of the three edge tiers: MWSF edges (thick red), other
/// ML-graph edges (blue), other candidate edges (thin gray).
std::string tiered_dot(const WeightedForest& forest, const WeightedGraph& ml_graph,
                       const WeightedGraph& candidates, const std::vector<std::string>& labels = {},
                       const std::string& name = "G");

}  // namespace totpos
