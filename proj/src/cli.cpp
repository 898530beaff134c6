#include "totpos/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "totpos/oracle.hpp"
#include "totpos/report.hpp"
#include "totpos/ultra.hpp"

namespace totpos::cli {

namespace {

using report::Json;

struct Options {
    std::string input;
    bool data = false;
    bool no_center = false;
    std::string algorithm = "sigma";
    std::string start = "default";
    double tol = 1e-10;
    int max_sweeps = 10'000;
    double edge_threshold = 1e-6;
    std::string mode = "mtp2";
    Index exhaustive_limit = 12;
    std::string output;
    std::string dot;
    std::string csv;
    int count = 50;
};

FitConfig make_config(const Options& o) {
    FitConfig cfg;
    cfg.algorithm = o.algorithm == "k" ? Algorithm::descent_on_k : Algorithm::descent_on_sigma;
    cfg.start = o.start == "single-linkage" ? StartPoint::single_linkage : StartPoint::automatic;
    cfg.tolerance = o.tol;
    cfg.max_sweeps = o.max_sweeps;
    cfg.edge_threshold = o.edge_threshold;
    return cfg;
}

io::MatrixInput load(const Options& o) {
    const bool center = !o.no_center;
    if (o.input == "-")
        return o.data ? io::read_observations(std::cin, center) : io::read_matrix(std::cin);
    return o.data ? io::read_observations_file(o.input, center) : io::read_matrix_file(o.input);
}

std::vector<std::string> labels_of(const io::MatrixInput& in) {
    std::vector<std::string> out;
    for (Index i = 0; i < in.matrix.dim(); ++i) out.push_back(in.matrix.label(i));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

void emit(const Options& o, const Json& doc, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (o.output.empty())
        out << text;
    else
        write_text(o.output, text);
}

void write_csv(const Options& o, const Matrix& m, const std::vector<std::string>& labels) {
    if (o.csv.empty()) return;
    std::ofstream f(o.csv, std::ios::binary);
    if (!f) throw Error("cannot write '" + o.csv + "'");
    io::write_matrix_csv(f, m, labels);
}

void write_dot(const Options& o, const Matrix& r, const WeightedGraph& ml,
               const std::vector<std::string>& labels) {
    if (o.dot.empty()) return;
    write_text(o.dot, tiered_dot(mwsf(r), ml, ml_graph_upper_bound(r), labels));
}

Json header(const Options& o, const io::MatrixInput& in, const std::string& mode) {
    Json doc;
    doc["input"] = report::input_json(in);
    doc["mode"] = mode;
    doc["config"] = report::config_json(make_config(o));
    return doc;
}

void merge(Json& doc, const Json& part) {
    for (const auto& [key, value] : part.items()) doc[key] = value;
}

// Flips the fitted objects of a switched fit back to the input orientation.
FitResult unswitch(FitResult fit, const SignVector& d) {
    fit.sigma_hat = apply_signs(fit.sigma_hat, d);
    fit.k_hat = apply_signs(fit.k_hat, d);
    std::vector<Edge> edges = fit.ml_graph.edges();
    for (Edge& e : edges) e.weight *= d[e.i] * d[e.j];
    fit.ml_graph = WeightedGraph(fit.ml_graph.dim(), std::move(edges));
    return fit;
}

int finish_fit(Json& doc, const FitResult& fit, const std::vector<std::string>& labels,
               bool converged) {
    merge(doc, report::fit_json(fit, labels));
    if (!converged) {
        doc["status"] = "max_sweeps_exceeded";
        return exit_not_converged;
    }
    if (!fit.certificate.passed) {
        doc["status"] = "certificate_failed";
        return exit_not_converged;
    }
    doc["status"] = "ok";
    return exit_ok;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    const io::MatrixInput in = load(o);
    for (const auto& w : in.warnings) err << "warning: " << w << '\n';
    const std::vector<std::string> labels = labels_of(in);
    const Matrix& s = in.matrix.values();
    Json doc = header(o, in, "mtp2");
    const bool exists = exists_mle(s);
    doc["exists_mle"] = exists;
    if (!exists) {
        doc["status"] = "mle_does_not_exist";
        emit(o, doc, out);
        err << "error: " << MleDoesNotExist().what() << '\n';
        return exit_no_mle;
    }
    FitResult fit;
    bool converged = true;
    try {
        fit = totpos::fit(s, make_config(o));
    } catch (const MaxSweepsExceeded& e) {
        fit = e.best();
        converged = false;
        err << "error: " << e.what() << '\n';
    }
    const int code = finish_fit(doc, fit, labels, converged);
    const Matrix r = to_correlation(s).r;
    doc["graphs"] = report::structure_json(r, labels);
    doc["comparison"] = report::comparison_json(s, fit, labels);
    emit(o, doc, out);
    write_csv(o, fit.sigma_hat, in.matrix.labels());
    write_dot(o, r, fit.ml_graph, labels);
    return code;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
    const io::MatrixInput in = load(o);
    for (const auto& w : in.warnings) err << "warning: " << w << '\n';
    const std::vector<std::string> labels = labels_of(in);
    const Matrix& s = in.matrix.values();
    Json doc = header(o, in, "analyze");
    doc["exists_mle"] = exists_mle(s);
    const Matrix r = to_correlation(s).r;
    try {
        doc["graphs"] = report::structure_json(r, labels);
    } catch (const InvalidCorrelation& e) {
        doc["status"] = "invalid_correlation";
        emit(o, doc, out);
        err << "error: " << e.what() << '\n';
        return exit_no_mle;
    }
    doc["status"] = "ok";
    emit(o, doc, out);
    const ClosedForm closed = block_closed_form(r);
    write_csv(o, closed.applicable() ? *closed.sigma : w_matrix(r), in.matrix.labels());
    write_dot(o, r, WeightedGraph(r.rows()), labels);
    return exit_ok;
}

int cmd_signed(const Options& o, std::ostream& out, std::ostream& err) {
    const io::MatrixInput in = load(o);
    for (const auto& w : in.warnings) err << "warning: " << w << '\n';
    const std::vector<std::string> labels = labels_of(in);
    const Matrix& s = in.matrix.values();
    Json doc = header(o, in, "signed");
    doc["config"]["exhaustive_limit"] = o.exhaustive_limit;
    const Matrix r = to_correlation(s).r;
    SignedFitResult result;
    try {
        result = fit_signed(s, make_config(o), o.exhaustive_limit);
        doc["exists_mle"] = true;
    } catch (const MleDoesNotExist& e) {
        doc["exists_mle"] = false;
        doc["status"] = "mle_does_not_exist";
        emit(o, doc, out);
        err << "error: " << e.what() << '\n';
        return exit_no_mle;
    } catch (const MaxSweepsExceeded& e) {
        // The failing candidate of an exhaustive search is not identified, so
        // no iterate is reported.
        doc["exists_mle"] = true;
        doc["status"] = "max_sweeps_exceeded";
        emit(o, doc, out);
        err << "error: " << e.what() << '\n';
        return exit_not_converged;
    }
    if (result.heuristic_warning)
        err << "warning: signed graph is unbalanced and p exceeds the exhaustive limit; "
               "d_star switching is a heuristic\n";
    doc["signed"] = report::signed_json(result, r);
    const FitResult fit = unswitch(result.fit, result.signs);
    const int code = finish_fit(doc, fit, labels, true);
    const Matrix switched = apply_signs(r, result.signs);
    doc["graphs"] = report::structure_json(switched, labels);
    emit(o, doc, out);
    write_csv(o, fit.sigma_hat, in.matrix.labels());
    write_dot(o, switched, result.fit.ml_graph, labels);
    return code;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    const io::MatrixInput in = load(o);
    for (const auto& w : in.warnings) err << "warning: " << w << '\n';
    const std::vector<std::string> labels = labels_of(in);
    const Matrix& s = in.matrix.values();
    if (s.rows() > 5) {
        err << "error: the active-set oracle supports at most 5 variables\n";
        return exit_usage;
    }
    Json doc = header(o, in, "oracle");
    doc["exists_mle"] = exists_mle(s);
    if (!doc["exists_mle"].get<bool>()) {
        doc["status"] = "mle_does_not_exist";
        emit(o, doc, out);
        err << "error: " << MleDoesNotExist().what() << '\n';
        return exit_no_mle;
    }
    ActiveSetSolution sol;
    try {
        sol = active_set_oracle(s);
    } catch (const NoKktPoint& e) {
        doc["status"] = "no_kkt_point";
        emit(o, doc, out);
        err << "error: " << e.what() << '\n';
        return exit_not_converged;
    }
    std::vector<Edge> active;
    for (const auto& [i, j] : sol.active_set) active.push_back({i, j, s(i, j)});
    doc["status"] = sol.kkt.passed ? "ok" : "certificate_failed";
    doc["active_set"] = report::edges_json(active, labels);
    doc["sigma_hat"] = report::matrix_json(sol.sigma);
    doc["k_hat"] = report::matrix_json(sol.k);
    doc["certificate"] = report::certificate_json(sol.kkt);
    doc["margin"] = sol.margin;
    doc["passing_candidates"] = sol.passing_candidates;
    doc["skipped_candidates"] = sol.skipped.size();
    emit(o, doc, out);
    write_csv(o, sol.sigma, in.matrix.labels());
    return sol.kkt.passed ? exit_ok : exit_not_converged;
}

Matrix random_correlation(std::mt19937_64& rng, Index p) {
    std::normal_distribution<double> normal;
    const Index n = p + 2;
    Matrix x(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) x(i, j) = normal(rng);
    return to_correlation(sample_covariance(x, true)).r;
}

// Both descent algorithms against the active-set oracle on random inputs.
int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
    std::uint64_t seed = 20260101;
    if (const char* env = std::getenv("TOTPOS_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: TOTPOS_SEED must be a non-negative integer\n";
            return exit_usage;
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 5);
    int failures = 0;
    double worst = 0.0;
    for (int t = 0; t < o.count; ++t) {
        const Matrix r = random_correlation(rng, dim(rng));
        const Matrix reference = active_set_oracle(r).sigma;
        for (Algorithm a : {Algorithm::descent_on_sigma, Algorithm::descent_on_k}) {
            FitConfig cfg = make_config(o);
            cfg.algorithm = a;
            const FitResult f = fit(r, cfg);
            const double diff = (f.sigma_hat - reference).cwiseAbs().maxCoeff();
            worst = std::max(worst, diff);
            if (diff > 1e-6 || !f.certificate.passed) {
                ++failures;
                err << "case " << t << " (" << to_string(a) << "): max difference "
                    << io::format_double(diff) << '\n';
            }
        }
    }
    out << "seed " << seed << ": " << o.count << " cases, " << failures
        << " failures, worst difference " << io::format_double(worst) << '\n';
    return failures == 0 ? exit_ok : exit_not_converged;
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "dense CSV matrix, or '-' for stdin")->required();
    cmd->add_flag("--data", o.data, "input holds observations (rows) rather than a covariance");
    cmd->add_flag("--no-center", o.no_center, "with --data: do not subtract column means");
    cmd->add_option("--output,-o", o.output, "write the result document here instead of stdout");
    cmd->add_option("--csv", o.csv, "write the fitted covariance as CSV");
}

void add_solver(CLI::App* cmd, Options& o) {
    cmd->add_option("--algorithm", o.algorithm, "coordinate descent on K or on Sigma")
        ->check(CLI::IsMember({"k", "sigma"}));
    cmd->add_option("--tol", o.tol, "entrywise L1 change per sweep")->check(CLI::PositiveNumber);
    cmd->add_option("--max-sweeps", o.max_sweeps, "sweep budget")->check(CLI::Range(1, 1 << 30));
    cmd->add_option("--edge-threshold", o.edge_threshold, "relative |K_ij| cutoff for ML-graph edges")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--start", o.start, "starting point")
        ->check(CLI::IsMember({"default", "single-linkage"}));
    cmd->add_option("--dot", o.dot, "write a Graphviz rendering of the edge tiers");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum likelihood estimation under total positivity"};
    app.name("totpos");
    app.require_subcommand(1);
    Options o;

    CLI::App* fit_cmd = app.add_subcommand("fit", "fit an MTP2 Gaussian");
    add_input(fit_cmd, o);
    add_solver(fit_cmd, o);
    fit_cmd->add_option("--mode", o.mode, "mtp2, signed or analyze")
        ->check(CLI::IsMember({"mtp2", "signed", "analyze"}));
    fit_cmd->add_option("--exhaustive-limit", o.exhaustive_limit, "largest p for exhaustive sign search")
        ->check(CLI::Range(1, 20));

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "structure of R without fitting");
    add_input(analyze_cmd, o);
    analyze_cmd->add_option("--dot", o.dot, "write a Graphviz rendering of the edge tiers");

    CLI::App* signed_cmd = app.add_subcommand("signed", "fit a signed MTP2 Gaussian");
    add_input(signed_cmd, o);
    add_solver(signed_cmd, o);
    signed_cmd->add_option("--exhaustive-limit", o.exhaustive_limit, "largest p for exhaustive sign search")
        ->check(CLI::Range(1, 20));

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "active-set enumeration (p <= 5)");
    add_input(oracle_cmd, o);

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "random cross-check against the oracle");
    selftest_cmd->add_option("--count", o.count, "number of random cases")->check(CLI::Range(1, 100000));
    add_solver(selftest_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*fit_cmd) {
            if (o.mode == "signed") return cmd_signed(o, out, err);
            if (o.mode == "analyze") return cmd_analyze(o, out, err);
            return cmd_fit(o, out, err);
        }
        if (*analyze_cmd) return cmd_analyze(o, out, err);
        if (*signed_cmd) return cmd_signed(o, out, err);
        if (*oracle_cmd) return cmd_oracle(o, out, err);
        return cmd_selftest(o, out, err);
    } catch (const ParseError& e) {
        err << o.input << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace totpos::cli
