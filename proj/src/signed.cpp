#include "totpos/signed.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "totpos/ultra.hpp"

namespace totpos {

namespace {

WeightedForest abs_forest(const Matrix& r) {
    require_square(r);
    return mwsf(r.cwiseAbs());
}

std::size_t worker_count(std::size_t jobs) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    return std::clamp<std::size_t>(hw, 1, std::min<std::size_t>(8, jobs));
}

}  // namespace

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_)
        if (s != 1 && s != -1) throw DimensionMismatch("sign entries must be +1 or -1");
}

SignVector SignVector::anchor() const {
    if (signs_.empty() || signs_.front() == 1) return *this;
    std::vector<int> out(signs_);
    for (int& s : out) s = -s;
    return SignVector(std::move(out));
}

SignVector SignVector::compose(const SignVector& other) const {
    if (other.size() != size()) throw DimensionMismatch("sign vectors differ in length");
    std::vector<int> out(signs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= other.signs_[i];
    return SignVector(std::move(out));
}

std::string SignVector::str() const {
    std::string out;
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (i) out += ',';
        out += signs_[i] > 0 ? '+' : '-';
    }
    return out;
}

std::string to_string(SignMethod m) {
    switch (m) {
        case SignMethod::balanced_exact: return "balanced_exact";
        case SignMethod::exhaustive_exact: return "exhaustive_exact";
        case SignMethod::heuristic: return "heuristic";
    }
    return "unknown";
}

Matrix apply_signs(const Matrix& r, const SignVector& d) {
    require_square(r);
    if (d.size() != r.rows()) throw DimensionMismatch("sign vector does not match dimension");
    Vector v(d.size());
    for (Index i = 0; i < d.size(); ++i) v(i) = d[i];
    return r.array() * (v * v.transpose()).array();
}

SignVector d_star(const Matrix& r) {
    const WeightedForest forest = abs_forest(r);
    std::vector<int> signs(static_cast<std::size_t>(r.rows()), 1);
    for (const auto& component : forest.components()) {
        forest.walk_from(component.front(), [&](Index parent, Index child, double) {
            const double entry = r(parent, child);
            if (entry == 0.0) throw ZeroWeightTreeEdge("zero entry on a spanning forest edge");
            signs[child] = entry > 0.0 ? signs[parent] : -signs[parent];
        });
    }
    return SignVector(std::move(signs));
}

BalanceReport is_balanced(const Matrix& r) {
    const SignVector d = d_star(r);
    BalanceReport report;
    for (Index i = 0; i < r.rows(); ++i)
        for (Index j = i + 1; j < r.cols(); ++j) {
            if (r(i, j) == 0.0 || d[i] * d[j] * r(i, j) > 0.0) continue;
            report.balanced = false;
            report.witness_cycle = forest_path_vertices(abs_forest(r), i, j);
            return report;
        }
    return report;
}

SignedFitResult fit_signed(const Matrix& s, const FitConfig& cfg, Index exhaustive_limit) {
    const Correlation<double> corr = to_correlation(s);
    const Index p = corr.r.rows();
    // Every switch must admit an MLE, so the bound applies to |R|.
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j)
            if (i != j && !(std::abs(corr.r(i, j)) < 1.0 - 1e-12)) throw MleDoesNotExist();

    SignedFitResult out;
    const SignVector star = d_star(corr.r);
    if (is_balanced(corr.r).balanced) {
        out.signs = star;
        out.method = SignMethod::balanced_exact;
        out.fit = fit(apply_signs(s, star), cfg);
        return out;
    }
    if (p > exhaustive_limit) {
        out.signs = star;
        out.method = SignMethod::heuristic;
        out.heuristic_warning = true;
        out.fit = fit(apply_signs(s, star), cfg);
        return out;
    }

    // Anchored vectors in lexicographic order with '+' before '-'.
    const std::size_t count = std::size_t(1) << (p - 1);
    std::vector<SignVector> candidates;
    candidates.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<int> signs(static_cast<std::size_t>(p), 1);
        for (Index k = 1; k < p; ++k)
            if (mask >> (p - 1 - k) & 1u) signs[k] = -1;
        candidates.emplace_back(std::move(signs));
    }

    std::vector<FitResult> fits(count);
    const std::size_t workers = worker_count(count);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < workers; ++t)
        threads.emplace_back([&, t] {
            try {
                for (std::size_t c = t; c < count; c += workers)
                    fits[c] = fit(apply_signs(s, candidates[c]), cfg);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : threads) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t best = 0;
    for (std::size_t c = 1; c < count; ++c) {
        const double lc = fits[c].log_likelihood;
        const double lb = fits[best].log_likelihood;
        const double tie = 1e-10 * std::max(1.0, std::abs(lb));
        if (lc > lb + tie || (lc >= lb - tie && candidates[c] == star && !(candidates[best] == star)))
            best = c;
    }
    out.method = SignMethod::exhaustive_exact;
    out.signs = candidates[best];
    out.fit = fits[best];
    out.switched_likelihoods.reserve(count);
    for (std::size_t c = 0; c < count; ++c)
        out.switched_likelihoods.emplace_back(candidates[c], fits[c].log_likelihood);
    return out;
}

}  // namespace totpos
