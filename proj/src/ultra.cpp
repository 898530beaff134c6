#include "totpos/ultra.hpp"

#include <algorithm>

namespace totpos {

void require_correlation(const Matrix& r) {
    require_square(r);
    for (Index i = 0; i < r.rows(); ++i) {
        if (r(i, i) != 1.0)
            throw InvalidCorrelation("diagonal entry " + std::to_string(i) + " is not 1");
        for (Index j = 0; j < r.cols(); ++j)
            if (i != j && !(r(i, j) < 1.0))
                throw InvalidCorrelation("off-diagonal entry (" + std::to_string(i) + ", " +
                                         std::to_string(j) + ") is not below 1");
    }
}

Matrix single_linkage(const Matrix& r) {
    require_correlation(r);
    const WeightedForest forest = mwsf(r);
    return fold_forest_paths(
        forest, [](double a, double b) { return std::min(a, b); }, 1.0, 0.0);
}

UltrametricReport is_ultrametric(const Matrix& u, double tol) {
    require_square(u);
    const Index p = u.rows();
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j)
            if (u(i, j) < -tol) throw NegativeEntry(i, j);

    UltrametricReport report;
    auto consider = [&](Index i, Index j, Index k, double magnitude) {
        if (magnitude > 0.0 &&
            (!report.worst_violation || magnitude > report.worst_violation->magnitude))
            report.worst_violation = UltrametricViolation{i, j, k, magnitude};
    };
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) {
            consider(i, j, j, u(i, j) - u(i, i));
            for (Index k = 0; k < p; ++k) consider(i, j, k, std::min(u(i, k), u(j, k)) - u(i, j));
        }
    report.is_ultrametric = !report.worst_violation || report.worst_violation->magnitude <= tol;
    return report;
}

Matrix w_matrix(const Matrix& r) {
    require_correlation(r);
    const Index p = r.rows();
    Matrix w = Matrix::Zero(p, p);
    // Dijkstra on lengths -log R_uv, carried out multiplicatively: the best
    // product into a settled vertex never improves because every factor is < 1.
    std::vector<char> settled(static_cast<std::size_t>(p));
    for (Index source = 0; source < p; ++source) {
        std::fill(settled.begin(), settled.end(), 0);
        Vector best = Vector::Zero(p);
        best(source) = 1.0;
        for (Index round = 0; round < p; ++round) {
            Index next = -1;
            for (Index v = 0; v < p; ++v)
                if (!settled[v] && best(v) > 0.0 && (next < 0 || best(v) > best(next))) next = v;
            if (next < 0) break;
            settled[next] = 1;
            for (Index v = 0; v < p; ++v)
                if (!settled[v] && r(next, v) > 0.0)
                    best(v) = std::max(best(v), best(next) * r(next, v));
        }
        w.row(source) = best.transpose();
    }
    return (w + w.transpose()) / 2.0;
}

WeightedGraph ec_graph(const Matrix& r) {
    require_correlation(r);
    const WeightedForest forest = mwsf(r);
    const Matrix tree = tree_mle(r, forest);
    std::vector<Edge> edges;
    for (Index i = 0; i < r.rows(); ++i)
        for (Index j = i + 1; j < r.cols(); ++j)
            if (forest.same_component(i, j) && r(i, j) >= tree(i, j) - 1e-12)
                edges.push_back({i, j, r(i, j)});
    return WeightedGraph(r.rows(), std::move(edges));
}

bool is_path_product(const Matrix& r, double tol) {
    require_square(r);
    for (Index i = 0; i < r.rows(); ++i)
        for (Index j = 0; j < r.cols(); ++j)
            if (i != j && r(i, j) < 0.0) throw NegativeEntry(i, j);
    return (w_matrix(r) - r).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace totpos
