#pragma once

#include <string>
#include <vector>

#include "totpos/matcore.hpp"

// Matrices printed in the reference text, transcribed verbatim.
namespace fixtures {

using totpos::Matrix;

/// Sample correlations of six fat/meat thickness measurements.
Matrix carcass_r();
std::vector<std::string> carcass_labels();
/// Fitted correlation matrix, as printed to two decimals.
Matrix carcass_rhat_printed();

/// Four-variable matrix used to illustrate the single-linkage construction.
Matrix linkage_r();
Matrix linkage_z_printed();

/// Inverse M-matrix whose spanning forest is not contained in its graph.
Matrix star_k_printed();
Matrix star_r_printed();

/// Unbalanced four-variable matrix where d_star is not optimal.
Matrix signed_counterexample_r();

/// Matrix literal from rows.
Matrix rows(std::initializer_list<std::initializer_list<double>> values);

}  // namespace fixtures
