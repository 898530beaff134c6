#pragma once

#include <functional>

#include "totpos/graphs.hpp"

// Exhaustive reference computations for small p. None of these share code
// with the library beyond the graph and matrix containers.
namespace brute {

using totpos::Index;
using totpos::Matrix;
using totpos::WeightedGraph;

/// Best value over all simple paths in the positive-part graph of r, where a
/// path's value folds `combine` over its edge weights. Diagonal 1, 0 when no
/// path exists.
Matrix best_path(const Matrix& r, const std::function<double(double, double)>& combine);

/// Max over paths of the min edge weight.
Matrix single_linkage(const Matrix& r);
/// Max over paths of the product of edge weights.
Matrix max_product(const Matrix& r);

/// Total weight of a maximum-weight spanning forest, by subset enumeration.
double max_forest_weight(const WeightedGraph& g);

/// Chordal and diamond-free, checked on every induced subgraph.
bool is_block_graph(const WeightedGraph& g);

/// Some sign vector makes every nonzero off-diagonal entry nonnegative.
bool is_balanced(const Matrix& r);

/// Size of the largest clique, by subset enumeration.
Index max_clique_size(const WeightedGraph& g);

struct Kkt {
    double primal_max;
    double diag_max;
    double dual_min;
    double slack_max;
    bool passed(double tol) const {
        return primal_max <= tol && diag_max <= tol && dual_min >= -tol && slack_max <= tol;
    }
};

/// KKT residuals on correlation scale, computed with a fresh LU inverse.
Kkt kkt(const Matrix& s, const Matrix& sigma);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace brute
