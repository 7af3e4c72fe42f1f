#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ladm/rayleigh_ritz.hpp"
#include "oracles.hpp"

using namespace ladm;
using oracle::Gen;

namespace {

Mat complement_of(const Mat& Q)
{
    Eigen::HouseholderQR<Mat> qr(Q);
    const Mat full = qr.householderQ() * Mat::Identity(Q.rows(), Q.rows());
    return full.rightCols(Q.rows() - Q.cols());
}

Vec complement_spectrum(const Mat& A, const Mat& Q)
{
    const Mat C = complement_of(Q);
    return oracle::eigenvalues_desc(C.transpose() * A * C);
}

struct Case {
    oracle::Instance inst;
    Mat Q;
};

// Trial subspace close to the leading r eigenvectors; r is drawn on either side of k.
Case near_invariant_case(Gen& gen, Index n, bool r_below_k, bool allow_j0 = false)
{
    auto inst = oracle::random_instance(gen, n, allow_j0);
    const Index h = inst.env.h, k = inst.env.k;
    const Index r = r_below_k ? gen.integer(static_cast<int>(h), static_cast<int>(k - 1))
                              : gen.integer(static_cast<int>(k), static_cast<int>(std::min(n - 1, k + 4)));
    const double eps = gen.log_uniform(1e-8, 1e-2);
    Mat Q = oracle::perturbed_subspace(inst.model.vectors().leftCols(r), eps, gen);
    return {std::move(inst), std::move(Q)};
}

}  // namespace

TEST(RayleighRitz, MatchesDenseProjectionOracle)
{
    Gen gen(71);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = near_invariant_case(gen, gen.integer(10, 40), trial % 2 == 0, trial % 3 == 0);
        const Index h = c.inst.env.h, j = c.inst.env.j;
        const Mat& A = c.inst.model.matrix();
        const RitzPartition p = rayleigh_ritz(c.inst.model, OrthonormalBasis(c.Q), h, j);
        const Vec ref = oracle::eigenvalues_desc(c.Q.transpose() * A * c.Q);
        EXPECT_TRUE(oracle::all_close(p.ritz_values(), ref, 1e-11)) << trial;
        EXPECT_EQ(p.L11.size(), j);
        EXPECT_EQ(p.L12.size(), h - j);
        EXPECT_EQ(p.L2.size(), c.Q.cols() - h);
        // Residual blocks have the singular values of (I - QQ^T) A X_hat.
        Mat Xhat(c.Q.rows(), c.Q.cols());
        Xhat << p.X1.mat(), p.X2.mat();
        const Mat resid = A * Xhat - Xhat * (Xhat.transpose() * A * Xhat);
        EXPECT_NEAR(oracle::spectral_norm(p.R()), oracle::spectral_norm(resid), 1e-11);
        EXPECT_NEAR(p.R().norm(), resid.norm(), 1e-11);
        EXPECT_NEAR(oracle::spectral_norm(p.R1()), oracle::spectral_norm(resid.leftCols(h)), 1e-11);
        ASSERT_TRUE(p.A3.has_value());
        EXPECT_TRUE(oracle::all_close(oracle::eigenvalues_desc(*p.A3), complement_spectrum(A, c.Q), 1e-10));
    }
}

TEST(RayleighRitz, CompactModeAgreesWithFullMode)
{
    Gen gen(72);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = near_invariant_case(gen, gen.integer(10, 40), trial % 2 == 0, trial % 4 == 0);
        const ClusterEnvelope& env = c.inst.env;
        const OrthonormalBasis Q(c.Q);
        const RitzPartition full = rayleigh_ritz(c.inst.model, Q, env.h, env.j, RitzMode::Full);
        const RitzPartition compact = rayleigh_ritz(c.inst.model, Q, env.h, env.j, RitzMode::Compact);
        EXPECT_FALSE(compact.A3.has_value());
        EXPECT_FALSE(compact.X3.has_value());
        EXPECT_TRUE(oracle::all_close(full.ritz_values(), compact.ritz_values(), 1e-12));
        for (Norm nm : {Norm::Spectral, Norm::Frobenius}) {
            EXPECT_NEAR(oracle::norm(full.R(), nm), oracle::norm(compact.R(), nm), 1e-11);
            EXPECT_NEAR(oracle::norm(full.R2, nm), oracle::norm(compact.R2, nm), 1e-11);
        }
        const Index m = std::min<Index>(env.k, c.Q.rows() - c.Q.cols());
        EXPECT_TRUE(oracle::all_close(complement_top_eigenvalues(full, c.inst.model, m),
                                      complement_top_eigenvalues(compact, c.inst.model, m), 1e-9))
            << trial;

        const GapReport gf = compute_gaps(full, c.inst.model, env);
        const GapReport gc = compute_gaps(compact, c.inst.model, env);
        auto same = [](double a, double b) { return (std::isinf(a) && std::isinf(b)) || std::abs(a - b) <= 1e-9; };
        EXPECT_TRUE(same(gf.gap_j, gc.gap_j)) << gf.gap_j << " " << gc.gap_j;
        EXPECT_TRUE(same(gf.gap_h, gc.gap_h)) << gf.gap_h << " " << gc.gap_h;
        if (env.k <= c.Q.cols())
            EXPECT_TRUE(same(gf.gap_k, gc.gap_k));
        else
            EXPECT_TRUE(std::isnan(gc.gap_k));
        EXPECT_EQ(gf.tilde_gap, gc.tilde_gap);
    }
}

TEST(ComplementCount, InertiaMatchesDenseCount)
{
    Gen gen(73);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = gen.integer(5, 25);
        const Vec lam = oracle::clustered_spectrum(n, 1, 3, 0.01, 0.5);
        const EigenModel m = oracle::model_from(lam, gen);
        const Mat Q = gen.orthonormal(n, gen.integer(1, static_cast<int>(n - 1)));
        const Vec mu_spec = complement_spectrum(m.matrix(), Q);
        const Mat V = m.vectors().transpose() * Q;
        for (int s = 0; s < 5; ++s) {
            const double mu = gen.uniform(lam(n - 1) - 0.5, lam(0) + 0.5);
            const Index ref = (mu_spec.array() > mu).count();
            EXPECT_EQ(complement_count_above(lam, V, mu), ref) << trial << " mu=" << mu;
        }
    }
}

TEST(RayleighRitz, ExactInvariantSubspaceHasZeroResidual)
{
    Gen gen(74);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = oracle::random_instance(gen, gen.integer(10, 30));
        const Index r = inst.env.k;
        const OrthonormalBasis Q(inst.model.vectors().leftCols(r));
        const RitzPartition p = rayleigh_ritz(inst.model, Q, inst.env.h, inst.env.j);
        EXPECT_LT(oracle::spectral_norm(p.R()), 1e-12);
        const AdmissibleClass cls(inst.model, inst.env);
        EXPECT_TRUE(is_member(p.X1, cls));
        const ResidualBoundReport b = admissible_distance_bounds(p, inst.model, inst.env, Norm::Spectral);
        EXPECT_LT(b.bound_X1, 1e-10);
        EXPECT_LT(b.bound_Q, 1e-10);
        EXPECT_TRUE(b.generic);
    }
}

TEST(ResidualEstimates, HoldOnBothBranches)
{
    Gen gen(75);
    int below = 0, above = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const bool r_below = trial % 2 == 0;
        const auto c = near_invariant_case(gen, gen.integer(10, 40), r_below, trial % 5 == 0);
        const ClusterEnvelope& env = c.inst.env;
        for (RitzMode mode : {RitzMode::Full, RitzMode::Compact}) {
            const RitzPartition p = rayleigh_ritz(c.inst.model, OrthonormalBasis(c.Q), env.h, env.j, mode);
            for (Norm nm : {Norm::Spectral, Norm::Frobenius}) {
                const ResidualEstimates e = varias_cotas(p, c.inst.model, env, nm);
                EXPECT_TRUE(e.holds) << trial;
                EXPECT_EQ(e.applicable[3], !r_below);
                EXPECT_EQ(e.applicable[4], r_below);
                // Left-hand sides from the dense oracle.
                const Mat Xk = c.inst.model.vectors().leftCols(env.k);
                EXPECT_NEAR(e.lhs[2], oracle::sin_theta_sym(p.X1.mat(), Xk, nm), 1e-10);
                EXPECT_NEAR(e.lhs[3], oracle::sin_theta_sym(c.Q, Xk, nm), 1e-10);
            }
        }
        (r_below ? below : above) += 1;
    }
    EXPECT_EQ(below, 30);
    EXPECT_EQ(above, 30);
}

TEST(AdmissibleBounds, WitnessDistancesStayBelowBounds)
{
    Gen gen(76);
    for (int trial = 0; trial < 40; ++trial) {
        const bool r_below = trial % 2 == 1;
        const auto c = near_invariant_case(gen, gen.integer(12, 40), r_below, trial % 3 == 0);
        const ClusterEnvelope& env = c.inst.env;
        const AdmissibleClass cls(c.inst.model, env);
        const OrthonormalBasis Q(c.Q);
        const RitzPartition p = rayleigh_ritz(c.inst.model, Q, env.h, env.j, RitzMode::Compact);
        for (Norm nm : {Norm::Spectral, Norm::Frobenius}) {
            const ResidualBoundReport b = admissible_distance_bounds(p, c.inst.model, env, nm);
            EXPECT_EQ(b.q_bound_uses_full_residual, !r_below);
            const double w1 = sin_theta_norm(nearest_admissible(p.X1, cls), p.X1, nm);
            EXPECT_LE(w1, b.bound_X1 + 1e-9) << trial;
            const Index r = Q.dim();
            if (r_below) {
                if (r > env.h) {
                    const AdmissibleClass cr = cls.with_target(r);
                    EXPECT_LE(sin_theta_norm(nearest_admissible(Q, cr), Q, nm), b.bound_Q + 1e-9) << trial;
                }
            } else {
                ASSERT_TRUE(b.generic);
                EXPECT_LE(sin_theta_norm(nearest_admissible(Q, cls), Q, nm), b.bound_Q + 1e-9) << trial;
            }
        }
    }
}

TEST(Nakatsukasa, BoundsLeadingRitzSpace)
{
    Gen gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = near_invariant_case(gen, gen.integer(10, 40), trial % 2 == 0, trial % 3 == 0);
        const ClusterEnvelope& env = c.inst.env;
        const RitzPartition p = rayleigh_ritz(c.inst.model, OrthonormalBasis(c.Q), env.h, env.j);
        const ComparisonBound nb = nakatsukasa_bound(p, c.inst.model, env);
        const Mat Xh = c.inst.model.vectors().leftCols(env.h);
        EXPECT_NEAR(nb.measured, oracle::sin_theta(Xh, p.X1.mat(), Norm::Spectral), 1e-10);
        // Valid only when the computed Ritz values stay on the right side of the complement.
        const GapReport g = compute_gaps(p, c.inst.model, env);
        if (g.gap_h > 0 && std::isfinite(nb.value))
            EXPECT_LE(nb.measured, nb.value + 1e-9) << trial << " " << nb.value;
    }
}

TEST(Nakatsukasa, HandComputedFormula)
{
    // Q = span{e1, (e2 + t e3)/norm} in diag(3, 2, 1) with h = 1, j = 0: R2 is nonzero.
    Vec lam(3);
    lam << 3, 2, 1;
    const EigenModel m = model_from_eigenpairs(Mat::Identity(3, 3), lam);
    const double t = 0.1;
    Mat Q = Mat::Zero(3, 2);
    Q(0, 0) = 1.0;
    Q(1, 1) = 1.0 / std::sqrt(1 + t * t);
    Q(2, 1) = t / std::sqrt(1 + t * t);
    const RitzPartition p = rayleigh_ritz(m, OrthonormalBasis(Q), 1, 0);
    ClusterEnvelope env{0, 1, 2, 1.0, 1.0};
    const ComparisonBound nb = nakatsukasa_bound(p, m, env);
    EXPECT_NEAR(nb.measured, 0.0, 1e-15);
    const double ritz2 = (2 + t * t) / (1 + t * t);
    EXPECT_NEAR(p.L2(0), ritz2, 1e-14);
    // Only the second Ritz vector has a residual; the complement is the remaining direction.
    const double res = t / (1 + t * t);
    const double a3 = (2 * t * t + 1) / (1 + t * t);
    const double ratio2 = res / (3 - ritz2);
    EXPECT_NEAR(nb.value, res / (3 - a3) * std::sqrt(1 + ratio2 * ratio2), 1e-14);
}

TEST(RayleighRitz, RejectsBadIndices)
{
    Gen gen(78);
    const auto inst = oracle::random_instance(gen, 12);
    const OrthonormalBasis Q(gen.orthonormal(12, 4));
    EXPECT_THROW(rayleigh_ritz(inst.model, Q, 5, 1), DimensionError);
    EXPECT_THROW(rayleigh_ritz(inst.model, Q, 2, 2), DimensionError);
    EXPECT_THROW(rayleigh_ritz(inst.model, Q, 0, 0), DimensionError);
    const Mat wrong = Mat::Zero(12, 3);
    EXPECT_THROW(rayleigh_ritz(inst.model, Q, 2, 1, RitzMode::Full, &wrong), DimensionError);
}

TEST(MinSeparation, Cases)
{
    Vec a(2), b(3);
    a << 1.0, 5.0;
    b << 2.5, 7.0, -1.0;
    EXPECT_DOUBLE_EQ(min_separation(a, b), 1.5);
    EXPECT_EQ(min_separation(Vec(), b), std::numeric_limits<double>::infinity());
    EXPECT_EQ(min_separation(a, Vec()), std::numeric_limits<double>::infinity());
}
