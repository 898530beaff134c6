#include "totpos/report.hpp"

#include "totpos/ultra.hpp"

namespace totpos::report {

namespace {

std::string label_of(const std::vector<std::string>& labels, Index i) {
    if (i < static_cast<Index>(labels.size())) return labels[static_cast<std::size_t>(i)];
    return std::to_string(i + 1);
}

Json vertex_sets_json(const std::vector<std::vector<Index>>& sets) {
    Json out = Json::array();
    for (const auto& set : sets) {
        Json one = Json::array();
        for (Index v : set) one.push_back(v + 1);
        out.push_back(std::move(one));
    }
    return out;
}

}  // namespace

Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Matrix matrix_from_json(const Json& j) {
    const auto rows = static_cast<Index>(j.size());
    const Index cols = rows ? static_cast<Index>(j.front().size()) : 0;
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(j[r].size()) != cols) throw DimensionMismatch("ragged matrix rows");
        for (Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

Json edges_json(const std::vector<Edge>& edges, const std::vector<std::string>& labels) {
    Json out = Json::array();
    for (const Edge& e : edges) {
        Json one;
        one["i"] = e.i + 1;
        one["j"] = e.j + 1;
        one["u"] = label_of(labels, e.i);
        one["v"] = label_of(labels, e.j);
        one["weight"] = e.weight;
        out.push_back(std::move(one));
    }
    return out;
}

Json edges_json(const WeightedGraph& g, const std::vector<std::string>& labels) {
    return edges_json(g.edges(), labels);
}

Json certificate_json(const KktCertificate& c) {
    Json out;
    out["primal_max"] = c.primal_max;
    out["diag_max"] = c.diag_max;
    out["dual_min"] = c.dual_min;
    out["slack_max"] = c.slack_max;
    out["tolerance"] = c.tolerance;
    out["passed"] = c.passed;
    return out;
}

Json config_json(const FitConfig& cfg) {
    Json out;
    out["algorithm"] = to_string(cfg.algorithm);
    out["start"] = cfg.start == StartPoint::single_linkage ? "single-linkage" : "default";
    out["tolerance"] = cfg.tolerance;
    out["max_sweeps"] = cfg.max_sweeps;
    out["edge_threshold"] = cfg.edge_threshold;
    out["kkt_tolerance"] = cfg.kkt_tolerance;
    return out;
}

Json input_json(const io::MatrixInput& input) {
    Json out;
    out["path"] = input.path;
    out["dim"] = input.matrix.dim();
    Json labels = Json::array();
    for (Index i = 0; i < input.matrix.dim(); ++i) labels.push_back(input.matrix.label(i));
    out["labels"] = std::move(labels);
    out["checksum"] = input.checksum;
    out["warnings"] = input.warnings;
    return out;
}

Json fit_json(const FitResult& fit, const std::vector<std::string>& labels) {
    Json out;
    out["converged"] = fit.converged;
    out["sweeps"] = fit.sweeps;
    out["sigma_hat"] = matrix_json(fit.sigma_hat);
    out["k_hat"] = matrix_json(fit.k_hat);
    out["ml_graph"] = edges_json(fit.ml_graph, labels);
    out["certificate"] = certificate_json(fit.certificate);
    out["log_likelihood"] = fit.log_likelihood;
    out["duality_gap"] = fit.duality_gap;
    return out;
}

Json structure_json(const Matrix& r, const std::vector<std::string>& labels) {
    const WeightedForest forest = mwsf(r);
    const ClosedForm closed = block_closed_form(r);

    Json out;
    out["z"] = matrix_json(single_linkage(r));
    out["w"] = matrix_json(closed.w);
    Json m;
    m["edges"] = edges_json(forest.edges(), labels);
    m["components"] = vertex_sets_json(forest.components());
    m["tie_break"] = "descending weight, then ascending (i, j)";
    out["mwsf"] = std::move(m);
    out["ec"] = edges_json(ec_graph(r), labels);
    out["grw"] = edges_json(closed.grw, labels);
    out["upper_bound"] = edges_json(ml_graph_upper_bound(r), labels);

    Json blocks;
    blocks["is_block_graph"] = closed.blocks.is_block_graph;
    blocks["blocks"] = vertex_sets_json(closed.blocks.blocks);
    if (closed.blocks.offending_component)
        blocks["offending_component"] = vertex_sets_json({*closed.blocks.offending_component}).front();
    out["grw_blocks"] = std::move(blocks);

    Json cf;
    cf["applicable"] = closed.applicable();
    if (closed.applicable())
        cf["sigma"] = matrix_json(*closed.sigma);
    else
        cf["failed_condition"] = closed.failed_condition;
    out["block_closed_form"] = std::move(cf);
    return out;
}

Json comparison_json(const Matrix& s, const FitResult& fit, const std::vector<std::string>& labels) {
    const Correlation<double> c = to_correlation(s);
    const Containment contained = mwsf_containment(s, fit);
    const ClosedForm closed = block_closed_form(c.r);

    Json out;
    Json mc;
    mc["contains"] = contained.contains;
    mc["missing_edges"] = edges_json(contained.missing_edges, labels);
    out["mwsf_containment"] = std::move(mc);
    if (closed.applicable()) {
        const Matrix sigma = rescale_solution(*closed.sigma, c.scale);
        out["closed_form_max_difference"] = (sigma - fit.sigma_hat).cwiseAbs().maxCoeff();
    } else {
        out["closed_form_max_difference"] = nullptr;
    }
    out["grw_equals_ml_graph"] = closed.grw == fit.ml_graph;
    return out;
}

Json signed_json(const SignedFitResult& result, const Matrix& r) {
    Json out;
    out["signs"] = result.signs.values();
    out["signs_text"] = result.signs.str();
    out["method"] = to_string(result.method);
    out["heuristic_warning"] = result.heuristic_warning;
    out["d_star"] = d_star(r).values();
    const BalanceReport balance = is_balanced(r);
    out["balanced"] = balance.balanced;
    if (balance.witness_cycle)
        out["witness_cycle"] = vertex_sets_json({*balance.witness_cycle}).front();
    Json table = Json::array();
    for (const auto& [signs, ell] : result.switched_likelihoods) {
        Json row;
        row["signs"] = signs.str();
        row["log_likelihood"] = ell;
        table.push_back(std::move(row));
    }
    out["switched_likelihoods"] = std::move(table);
    return out;
}

}  // namespace totpos::report
