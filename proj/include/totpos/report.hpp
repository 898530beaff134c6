#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "totpos/io.hpp"
#include "totpos/signed.hpp"
#include "totpos/structure.hpp"

namespace totpos::report {

using Json = nlohmann::ordered_json;

Json matrix_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Edges as objects {i, j (1-based), u, v (labels), weight}.
Json edges_json(const WeightedGraph& g, const std::vector<std::string>& labels);
Json edges_json(const std::vector<Edge>& edges, const std::vector<std::string>& labels);

Json certificate_json(const KktCertificate& c);
Json config_json(const FitConfig& cfg);

/// Dimension, labels, checksum, and ingestion warnings of an input matrix.
Json input_json(const io::MatrixInput& input);

/// Sigma, K, ML graph, certificate, likelihood, gap, sweeps.
Json fit_json(const FitResult& fit, const std::vector<std::string>& labels);

/// Correlation-scale structure of R: MWSF, EC, G_R(W), upper bound, closed form.
Json structure_json(const Matrix& r, const std::vector<std::string>& labels);

/// Fit against structure: MWSF containment, closed form versus fit, and
/// whether G_R(W) equals the ML graph.
Json comparison_json(const Matrix& s, const FitResult& fit, const std::vector<std::string>& labels);

/// Signs, method, d_star and balance of the correlation matrix r.
Json signed_json(const SignedFitResult& result, const Matrix& r);

}  // namespace totpos::report
