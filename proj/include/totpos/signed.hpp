#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "totpos/solver.hpp"

namespace totpos {

/// A +1/-1 assignment per variable.
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::vector<int> signs);
    static SignVector all_positive(Index p) {
        return SignVector(std::vector<int>(static_cast<std::size_t>(p), 1));
    }

    Index size() const noexcept { return static_cast<Index>(signs_.size()); }
    int operator[](Index i) const { return signs_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const noexcept { return signs_; }
    bool anchored() const noexcept { return !signs_.empty() && signs_.front() == 1; }

    /// Same vector with the global sign chosen so the first entry is +1.
    SignVector anchor() const;
    /// Entrywise product.
    SignVector compose(const SignVector& other) const;
    /// "+,+,-,+" text form.
    std::string str() const;

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    std::vector<int> signs_;
};

enum class SignMethod { balanced_exact, exhaustive_exact, heuristic };

struct SignedFitResult {
    SignVector signs;
    FitResult fit;  // fitted on apply_signs(S, signs)
    SignMethod method = SignMethod::heuristic;
    bool heuristic_warning = false;
    std::vector<std::pair<SignVector, double>> switched_likelihoods;  // exhaustive mode only
};

struct BalanceReport {
    bool balanced = true;
    std::optional<std::vector<Index>> witness_cycle;  // closed walk, first vertex not repeated
};

/// D R D with D = diag(signs).
Matrix apply_signs(const Matrix& r, const SignVector& d);

/// Sign switch propagated along the MWSF of |R|, each component rooted at its
/// smallest vertex with sign +1.
SignVector d_star(const Matrix& r);

/// Balance of the signed graph of nonzero off-diagonal entries.
BalanceReport is_balanced(const Matrix& r);

/// Signed MTP2 fit. Balanced inputs are switched by d_star; otherwise all
/// anchored sign vectors are tried when p <= exhaustive_limit, and d_star is
/// used as a flagged heuristic beyond that.
SignedFitResult fit_signed(const Matrix& s, const FitConfig& cfg = {}, Index exhaustive_limit = 12);

std::string to_string(SignMethod m);

}  // namespace totpos
