#pragma once

// Dense symmetric matrix primitives. Everything here is templated on the
// scalar type and accepts arbitrary Eigen expressions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "totpos/errors.hpp"

namespace totpos {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Largest diagonal entry; the reference scale for all relative tolerances.
template <typename Derived>
typename Derived::Scalar max_diagonal(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() == 0) return typename Derived::Scalar(0);
    return m.diagonal().maxCoeff();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("expected a non-empty square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

/// Dense symmetric p x p matrix with optional variable names.
///
/// Construction symmetrizes the input by averaging with its transpose; inputs
/// whose asymmetry exceeds `symmetry_tol` relative to the largest diagonal
/// entry are rejected.
template <typename Scalar>
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(MatrixX<Scalar> values, std::vector<std::string> labels = {},
                       Scalar symmetry_tol = Scalar(1e-12))
        : labels_(std::move(labels)) {
        require_square(values);
        const Scalar scale = std::max(values.cwiseAbs().maxCoeff(), Scalar(1e-300));
        const Scalar asym = (values - values.transpose()).cwiseAbs().maxCoeff();
        if (asym > symmetry_tol * scale) throw DimensionMismatch("matrix is not symmetric");
        values_ = (values + values.transpose()) / Scalar(2);
        if (!labels_.empty()) {
            if (static_cast<Index>(labels_.size()) != values_.rows())
                throw DimensionMismatch("label count does not match dimension");
            std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
            if (seen.size() != labels_.size()) throw DimensionMismatch("labels are not unique");
        }
    }

    Index dim() const noexcept { return values_.rows(); }
    const MatrixX<Scalar>& values() const noexcept { return values_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

    /// Label of variable i, falling back to its 1-based index.
    std::string label(Index i) const {
        return labels_.empty() ? std::to_string(i + 1) : labels_[static_cast<std::size_t>(i)];
    }

    Scalar operator()(Index i, Index j) const { return values_(i, j); }

private:
    MatrixX<Scalar> values_;
    std::vector<std::string> labels_;
};

/// Lower-triangular factor L with L * L^T = matrix.
template <typename Scalar>
struct PdFactor {
    MatrixX<Scalar> matrix;
    MatrixX<Scalar> lower;
    Scalar log_det{};

    template <typename Rhs>
    MatrixX<Scalar> solve(const Eigen::MatrixBase<Rhs>& rhs) const {
        MatrixX<Scalar> x = lower.template triangularView<Eigen::Lower>().solve(rhs);
        lower.transpose().template triangularView<Eigen::Upper>().solveInPlace(x);
        return x;
    }

    MatrixX<Scalar> inverse() const {
        const Index p = lower.rows();
        MatrixX<Scalar> inv = solve(MatrixX<Scalar>::Identity(p, p));
        return (inv + inv.transpose()) / Scalar(2);
    }
};

/// Cholesky factorization reading the lower triangle. A pivot at or below
/// 1e-12 times the largest diagonal entry raises NotPositiveDefinite.
template <typename Derived>
PdFactor<typename Derived::Scalar> pd_factorize(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    require_square(m);
    const Index p = m.rows();
    const Scalar floor = Scalar(1e-12) * std::max(max_diagonal(m), Scalar(0));

    PdFactor<Scalar> out;
    out.matrix = m;
    out.lower = MatrixX<Scalar>::Zero(p, p);
    MatrixX<Scalar>& l = out.lower;
    for (Index j = 0; j < p; ++j) {
        const Scalar pivot = m(j, j) - l.row(j).head(j).squaredNorm();
        if (!(pivot > floor)) throw NotPositiveDefinite(j);
        const Scalar ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (Index i = j + 1; i < p; ++i)
            l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
    out.log_det = Scalar(2) * l.diagonal().array().log().sum();
    return out;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> inverse_pd(const Eigen::MatrixBase<Derived>& m) {
    return pd_factorize(m).inverse();
}

template <typename Derived>
typename Derived::Scalar log_det_pd(const Eigen::MatrixBase<Derived>& m) {
    return pd_factorize(m).log_det;
}

/// M_AA - M_AB M_BB^{-1} M_BA where B is the complement of `a`.
template <typename Derived>
MatrixX<typename Derived::Scalar> schur_complement(const Eigen::MatrixBase<Derived>& m,
                                                   std::span<const Index> a) {
    using Scalar = typename Derived::Scalar;
    require_square(m);
    const Index p = m.rows();
    std::vector<char> in_a(static_cast<std::size_t>(p), 0);
    for (Index i : a) {
        if (i < 0 || i >= p || in_a[static_cast<std::size_t>(i)])
            throw DimensionMismatch("invalid or repeated index in Schur complement set");
        in_a[static_cast<std::size_t>(i)] = 1;
    }
    std::vector<Index> b;
    for (Index i = 0; i < p; ++i)
        if (!in_a[static_cast<std::size_t>(i)]) b.push_back(i);

    const auto ia = Eigen::Map<const Eigen::Matrix<Index, Eigen::Dynamic, 1>>(
        a.data(), static_cast<Index>(a.size()));
    MatrixX<Scalar> m_aa = m(ia, ia);
    if (b.empty()) return m_aa;
    const MatrixX<Scalar> m_ab = m(ia, b);
    const MatrixX<Scalar> m_bb = m(b, b);
    const auto factor = pd_factorize(m_bb);
    MatrixX<Scalar> out = m_aa - m_ab * factor.solve(m_ab.transpose());
    return (out + out.transpose()) / Scalar(2);
}

template <typename Scalar>
struct Correlation {
    MatrixX<Scalar> r;
    VectorX<Scalar> scale;  // sqrt of the input diagonal
};

template <typename Derived>
Correlation<typename Derived::Scalar> to_correlation(const Eigen::MatrixBase<Derived>& s) {
    using Scalar = typename Derived::Scalar;
    require_square(s);
    const Index p = s.rows();
    Correlation<Scalar> out;
    out.scale.resize(p);
    for (Index i = 0; i < p; ++i) {
        if (!(s(i, i) > Scalar(0))) throw NonPositiveDiagonal(i);
        out.scale(i) = std::sqrt(s(i, i));
    }
    out.r = s.array() / (out.scale * out.scale.transpose()).array();
    out.r.diagonal().setOnes();
    return out;
}

/// Entrywise product with scale_i * scale_j, mapping a correlation-scale
/// solution back to the covariance scale.
template <typename Derived, typename VDerived>
MatrixX<typename Derived::Scalar> rescale_solution(const Eigen::MatrixBase<Derived>& sigma,
                                                   const Eigen::MatrixBase<VDerived>& scale) {
    if (sigma.rows() != scale.size() || sigma.cols() != scale.size())
        throw DimensionMismatch("scale vector does not match matrix dimension");
    return sigma.array() * (scale * scale.transpose()).array();
}

/// Positive definite with all off-diagonal entries <= tol * max diagonal.
template <typename Derived>
bool is_m_matrix(const Eigen::MatrixBase<Derived>& k, typename Derived::Scalar tol) {
    if (k.rows() != k.cols() || k.rows() == 0) return false;
    const auto bound = tol * std::abs(max_diagonal(k));
    for (Index j = 0; j < k.cols(); ++j)
        for (Index i = 0; i < k.rows(); ++i)
            if (i != j && k(i, j) > bound) return false;
    try {
        pd_factorize(k);
    } catch (const NotPositiveDefinite&) {
        return false;
    }
    return true;
}

/// log det K - tr(S K).
template <typename DK, typename DS>
typename DK::Scalar log_likelihood(const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DS>& s) {
    if (k.rows() != s.rows() || k.cols() != s.cols())
        throw DimensionMismatch("likelihood arguments differ in dimension");
    const auto factor = pd_factorize(k);
    return factor.log_det - (s.array() * k.transpose().array()).sum();
}

/// Sample covariance X^T X / n of an n x p observation matrix, optionally
/// centering each column first.
template <typename Derived>
MatrixX<typename Derived::Scalar> sample_covariance(const Eigen::MatrixBase<Derived>& x,
                                                    bool center) {
    using Scalar = typename Derived::Scalar;
    if (x.rows() == 0 || x.cols() == 0) throw DimensionMismatch("empty observation matrix");
    MatrixX<Scalar> xc = x;
    if (center) xc.rowwise() -= xc.colwise().mean();
    MatrixX<Scalar> s = xc.transpose() * xc / Scalar(x.rows());
    return (s + s.transpose()) / Scalar(2);
}

}  // namespace totpos
