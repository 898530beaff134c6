#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "random.hpp"
#include "totpos/matcore.hpp"

using namespace totpos;
using testing_support::Rng;

TEST(SymMatrix, SymmetrizesAndKeepsLabels) {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.5 + 1e-14, 2.0;
    const SymMatrix<double> s(m, {"a", "b"});
    EXPECT_EQ(s.dim(), 2);
    EXPECT_EQ(s(0, 1), s(1, 0));
    EXPECT_EQ(s.label(1), "b");
}

TEST(SymMatrix, RejectsAsymmetricAndBadLabels) {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.4, 1.0;
    EXPECT_THROW(SymMatrix<double>{m}, DimensionMismatch);
    const Matrix eye = Matrix::Identity(2, 2);
    EXPECT_THROW((SymMatrix<double>(eye, {"a"})), DimensionMismatch);
    EXPECT_THROW((SymMatrix<double>(eye, {"a", "a"})), DimensionMismatch);
    EXPECT_THROW(SymMatrix<double>{Matrix(2, 3)}, DimensionMismatch);
}

TEST(SymMatrix, UnlabeledFallsBackToOneBasedIndex) {
    const SymMatrix<double> s(Matrix::Identity(3, 3));
    EXPECT_FALSE(s.has_labels());
    EXPECT_EQ(s.label(2), "3");
}

TEST(PdFactorize, Identity) {
    const auto f = pd_factorize(Matrix::Identity(3, 3));
    EXPECT_TRUE(f.lower.isApprox(Matrix::Identity(3, 3)));
    EXPECT_DOUBLE_EQ(f.log_det, 0.0);
}

TEST(PdFactorize, TwoByTwoLogDet) {
    const Matrix m = fixtures::rows({{1.0, 0.5}, {0.5, 1.0}});
    EXPECT_NEAR(pd_factorize(m).log_det, std::log(0.75), 1e-15);
}

TEST(PdFactorize, IndefiniteReportsPivot) {
    const Matrix m = fixtures::rows({{1.0, 2.0}, {2.0, 1.0}});
    try {
        pd_factorize(m);
        FAIL() << "expected NotPositiveDefinite";
    } catch (const NotPositiveDefinite& e) {
        EXPECT_EQ(e.pivot(), 1);
    }
}

TEST(PdFactorize, FactorReconstructsAndLogDetMatchesDiagonal) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const Matrix m = testing_support::random_pd(rng, 6);
        const auto f = pd_factorize(m);
        EXPECT_LE(((f.lower * f.lower.transpose()) - m).cwiseAbs().maxCoeff(), 1e-10 * m.cwiseAbs().maxCoeff());
        EXPECT_NEAR(f.log_det, 2.0 * f.lower.diagonal().array().log().sum(), 1e-12);
        EXPECT_NEAR(f.log_det, std::log(m.determinant()), 1e-9);
    }
}

TEST(InversePd, SimpleCases) {
    EXPECT_TRUE(inverse_pd(Matrix::Identity(4, 4)).isApprox(Matrix::Identity(4, 4)));
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 2.0, 4.0;
    const Matrix inv = inverse_pd(d);
    EXPECT_DOUBLE_EQ(inv(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(inv(1, 1), 0.25);
    EXPECT_DOUBLE_EQ(inv(0, 1), 0.0);
}

TEST(InversePd, RoundTripProperty) {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const Index p = rng.integer(1, 8);
        const Matrix m = testing_support::random_pd(rng, p, 0.1, 10.0);
        const Matrix err = m * inverse_pd(m) - Matrix::Identity(p, p);
        EXPECT_LE(err.cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(InversePd, PropagatesNotPositiveDefinite) {
    EXPECT_THROW(inverse_pd(fixtures::rows({{1.0, 2.0}, {2.0, 1.0}})), NotPositiveDefinite);
}

TEST(SchurComplement, BlockDiagonalUnchanged) {
    Matrix m = Matrix::Zero(4, 4);
    m.topLeftCorner(2, 2) = fixtures::rows({{2.0, 0.3}, {0.3, 1.0}});
    m.bottomRightCorner(2, 2) = fixtures::rows({{3.0, -0.2}, {-0.2, 1.5}});
    const std::vector<Index> a{0, 1};
    EXPECT_TRUE(schur_complement(m, a).isApprox(m.topLeftCorner(2, 2)));
}

TEST(SchurComplement, ScalarFormula) {
    const Matrix m = fixtures::rows({{2.0, 1.0}, {1.0, 2.0}});
    const std::vector<Index> a{0};
    EXPECT_DOUBLE_EQ(schur_complement(m, a)(0, 0), 1.5);
}

TEST(SchurComplement, SingularComplementThrows) {
    const Matrix m = fixtures::rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}});
    const std::vector<Index> a{0};
    EXPECT_THROW(schur_complement(m, a), NotPositiveDefinite);
}

TEST(SchurComplement, MatchesInverseOfInverseBlockProperty) {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const Index p = rng.integer(2, 6);
        const Matrix m = testing_support::random_pd(rng, p);
        const Index size = rng.integer(1, std::min<Index>(3, p - 1));
        std::vector<Index> perm(static_cast<std::size_t>(p));
        for (Index i = 0; i < p; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        std::vector<Index> a(perm.begin(), perm.begin() + size);
        std::sort(a.begin(), a.end());
        const Matrix inv = m.inverse();
        const Matrix expected = Matrix(inv(a, a)).inverse();
        EXPECT_LE((schur_complement(m, a) - expected).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(ToCorrelation, Examples) {
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 4.0, 9.0;
    const auto c = to_correlation(d);
    EXPECT_TRUE(c.r.isApprox(Matrix::Identity(2, 2)));
    EXPECT_DOUBLE_EQ(c.scale(0), 2.0);
    EXPECT_DOUBLE_EQ(c.scale(1), 3.0);

    const auto same = to_correlation(fixtures::carcass_r());
    EXPECT_EQ(same.r, fixtures::carcass_r());
    EXPECT_TRUE(same.scale.isOnes());

    const auto third = to_correlation(fixtures::rows({{4.0, 2.0}, {2.0, 9.0}}));
    EXPECT_DOUBLE_EQ(third.r(0, 1), 1.0 / 3.0);
}

TEST(ToCorrelation, NonPositiveDiagonal) {
    try {
        to_correlation(fixtures::rows({{1.0, 0.0}, {0.0, 0.0}}));
        FAIL();
    } catch (const NonPositiveDiagonal& e) {
        EXPECT_EQ(e.index(), 1);
    }
}

TEST(RescaleSolution, Examples) {
    const Matrix r = fixtures::carcass_r();
    EXPECT_EQ(rescale_solution(r, Vector::Ones(6)), r);
    Vector scale(2);
    scale << 2.0, 3.0;
    const Matrix out = rescale_solution(Matrix::Identity(2, 2), scale);
    EXPECT_DOUBLE_EQ(out(0, 0), 4.0);
    EXPECT_DOUBLE_EQ(out(1, 1), 9.0);
    EXPECT_DOUBLE_EQ(out(0, 1), 0.0);
    EXPECT_THROW(rescale_solution(Matrix::Identity(3, 3), scale), DimensionMismatch);
}

TEST(RescaleSolution, RoundTripProperty) {
    Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        const Index p = rng.integer(1, 7);
        const Matrix s = testing_support::random_pd(rng, p);
        const auto c = to_correlation(s);
        for (Index i = 0; i < p; ++i) EXPECT_EQ(c.r(i, i), 1.0);
        EXPECT_LE((rescale_solution(c.r, c.scale) - s).cwiseAbs().maxCoeff(), 1e-12 * s.cwiseAbs().maxCoeff());
    }
}

TEST(IsMMatrix, Examples) {
    EXPECT_TRUE(is_m_matrix(Matrix::Identity(3, 3), 0.0));
    EXPECT_FALSE(is_m_matrix(fixtures::rows({{1.0, 0.1}, {0.1, 1.0}}), 0.0));
    EXPECT_TRUE(is_m_matrix(fixtures::star_k_printed(), 0.0));
    EXPECT_FALSE(is_m_matrix(fixtures::rows({{1.0, -2.0}, {-2.0, 1.0}}), 0.0));
}

TEST(IsMMatrix, InverseIsNonnegativeProperty) {
    Rng rng(15);
    for (int t = 0; t < 200; ++t) {
        const Index p = rng.integer(1, 8);
        const Matrix k = testing_support::random_m_matrix(rng, p);
        ASSERT_TRUE(is_m_matrix(k, 0.0));
        EXPECT_GE(inverse_pd(k).minCoeff(), -1e-9);
    }
}

TEST(LogLikelihood, Examples) {
    Rng rng(16);
    const Matrix s = testing_support::random_pd(rng, 3);
    EXPECT_NEAR(log_likelihood(s.inverse(), s), -std::log(s.determinant()) - 3.0, 1e-10);
    EXPECT_DOUBLE_EQ(log_likelihood(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), -2.0);
    EXPECT_THROW(log_likelihood(fixtures::rows({{1.0, 2.0}, {2.0, 1.0}}), Matrix::Identity(2, 2)),
                 NotPositiveDefinite);
}

TEST(LogLikelihood, UnconstrainedOptimumDominatesProperty) {
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const Index p = rng.integer(2, 6);
        const Matrix s = testing_support::random_pd(rng, p);
        const double best = log_likelihood(inverse_pd(s), s);
        const Matrix other = testing_support::random_pd(rng, p);
        EXPECT_LE(log_likelihood(other, s), best + 1e-10);
    }
}

TEST(SampleCovariance, CentersWhenAsked) {
    const Matrix x = fixtures::rows({{1.0, 2.0}, {3.0, 6.0}});
    const Matrix c = sample_covariance(x, true);
    EXPECT_DOUBLE_EQ(c(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(c(1, 1), 4.0);
    EXPECT_DOUBLE_EQ(c(0, 1), 2.0);
    const Matrix u = sample_covariance(x, false);
    EXPECT_DOUBLE_EQ(u(0, 0), 5.0);
    EXPECT_DOUBLE_EQ(u(0, 1), 10.0);
}
