#pragma once

#include <optional>

#include "totpos/graphs.hpp"

namespace totpos {

struct UltrametricViolation {
    Index i{};
    Index j{};
    Index k{};
    double magnitude{};
};

struct UltrametricReport {
    bool is_ultrametric = true;
    std::optional<UltrametricViolation> worst_violation;
};

/// Throws InvalidCorrelation unless r has a unit diagonal and every
/// off-diagonal entry lies strictly below 1.
void require_correlation(const Matrix& r);

/// Single-linkage matrix: the largest bottleneck (minimum edge weight) over
/// all paths in the positive-part graph, read off the MWSF.
Matrix single_linkage(const Matrix& r);

/// Checks U_ii >= U_ij and U_ij >= min(U_ik, U_jk) for all triples.
UltrametricReport is_ultrametric(const Matrix& u, double tol);

/// Max-product matrix: the largest product of R along any path of the
/// positive-part graph; 0 for disconnected pairs.
Matrix w_matrix(const Matrix& r);

/// Pairs in one MWSF component whose correlation is at least the product
/// along the forest path.
WeightedGraph ec_graph(const Matrix& r);

/// True iff ||w_matrix(r) - r||_max <= tol.
bool is_path_product(const Matrix& r, double tol);

}  // namespace totpos
