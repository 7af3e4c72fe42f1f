#include "ladm/rayleigh_ritz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ladm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

Vec concat(const Vec& a, const Vec& b)
{
    Vec out(a.size() + b.size());
    out << a, b;
    return out;
}

Mat hconcat(const Mat& a, const Mat& b)
{
    Mat out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
    if (a.cols())
        out.leftCols(a.cols()) = a;
    if (b.cols())
        out.rightCols(b.cols()) = b;
    return out;
}

// num / gap with the conventions: empty set (gap = inf) contributes 0, zero gap gives inf.
double ratio(double num, double gap)
{
    if (std::isinf(gap))
        return 0.0;
    if (!(gap > 0.0))
        return kInf;
    return num / gap;
}

double block_norm(const Mat& M, Norm norm)
{
    return M.size() == 0 ? 0.0 : matrix_norm(M, norm);
}

// Eigenvalues of the compression of A to range(Q)^perp, from inertia counts. Each
// eigenvalue mu_i is found once by bisection inside [lambda_{i+r}, lambda_i] and cached.
class ComplementSpectrum {
public:
    ComplementSpectrum(const Vec& lambda, const Mat& V) : lambda_(lambda), V_(V)
    {
        scale_ = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    }

    Index size() const { return lambda_.size() - V_.cols(); }

    Index count_above(double mu) const { return complement_count_above(lambda_, V_, mu); }

    double eigenvalue(Index i)
    {
        auto it = cache_.find(i);
        if (it != cache_.end())
            return it->second;
        const Index r = V_.cols();
        const double pad = 16.0 * kEps * scale_;
        double lo = lambda_(i + r - 1) - pad;
        double hi = lambda_(i - 1) + pad;
        const double tol = 4.0 * kEps * scale_;
        for (int it_count = 0; it_count < 200 && hi - lo > tol; ++it_count) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (count_above(mid) >= i)
                lo = mid;
            else
                hi = mid;
        }
        const double mu = 0.5 * (lo + hi);
        cache_.emplace(i, mu);
        return mu;
    }

    // min over the points of the distance to the spectrum; +inf for an empty set.
    double distance(const Vec& points)
    {
        const Index m = size();
        double best = kInf;
        if (m == 0)
            return best;
        for (Index p = 0; p < points.size(); ++p) {
            const double x = points(p);
            const Index c = std::clamp<Index>(count_above(x), 0, m);
            if (c >= 1)
                best = std::min(best, std::abs(eigenvalue(c) - x));
            if (c + 1 <= m)
                best = std::min(best, std::abs(eigenvalue(c + 1) - x));
        }
        return best;
    }

private:
    const Vec& lambda_;
    const Mat& V_;
    double scale_ = 1.0;
    std::map<Index, double> cache_;
};

Vec dense_complement_spectrum(const RitzPartition& part)
{
    const Mat& A3 = *part.A3;
    if (A3.rows() == 0)
        return Vec();
    return Eigen::SelfAdjointEigenSolver<Mat>(A3, Eigen::EigenvaluesOnly).eigenvalues().reverse();
}

}  // namespace

Vec RitzPartition::ritz_values() const
{
    return concat(concat(L11, L12), L2);
}

Vec RitzPartition::L1() const
{
    return concat(L11, L12);
}

Mat RitzPartition::R1() const
{
    return hconcat(R11, R12);
}

Mat RitzPartition::R() const
{
    return hconcat(R1(), R2);
}

RitzPartition rayleigh_ritz(const EigenModel& model, const OrthonormalBasis& Q, Index h, Index j, RitzMode mode,
                            const Mat* AQ_given)
{
    const Index n = model.size();
    const Index r = Q.dim();
    if (Q.ambient() != n)
        throw DimensionError("rayleigh_ritz: ambient dimension mismatch");
    if (h < 1 || h > r)
        throw DimensionError("rayleigh_ritz: requires 1 <= h <= dim Q");
    if (j < 0 || j >= h)
        throw DimensionError("rayleigh_ritz: requires 0 <= j < h");

    const Mat& A = model.matrix();
    if (AQ_given && (AQ_given->rows() != n || AQ_given->cols() != r))
        throw DimensionError("rayleigh_ritz: precomputed A*Q has the wrong shape");
    const Mat AQ = AQ_given ? *AQ_given : Mat(A * Q.mat());
    Mat C = Q.mat().transpose() * AQ;
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(C);
    const Vec theta = es.eigenvalues().reverse();
    const Mat Omega = es.eigenvectors().rowwise().reverse();
    const Mat Xhat = Q.mat() * Omega;

    RitzPartition part;
    part.mode = mode;
    part.j = j;
    part.h = h;
    part.Q = Q;
    part.X1 = OrthonormalBasis(Xhat.leftCols(h), 1e-10 * std::sqrt(static_cast<double>(h)) + 1e-12);
    part.X2 = OrthonormalBasis(Xhat.rightCols(r - h), 1e-10 * std::sqrt(static_cast<double>(r - h)) + 1e-12);
    part.L11 = theta.head(j);
    part.L12 = theta.segment(j, h - j);
    part.L2 = theta.tail(r - h);

    Mat Rblk;
    if (mode == RitzMode::Full) {
        const OrthonormalBasis X3 = orthogonal_complement(OrthonormalBasis(Xhat, 1e-10 * std::sqrt(double(r)) + 1e-12));
        const Mat AX3 = A * X3.mat();
        Rblk = AX3.transpose() * Xhat;
        Mat A3 = X3.mat().transpose() * AX3;
        part.A3 = 0.5 * (A3 + A3.transpose());
        part.X3 = X3;
    } else {
        // (I - QQ^T) A Q Omega; two projection passes keep the small residuals accurate.
        Mat P = AQ - Q.mat() * C;
        P -= Q.mat() * (Q.mat().transpose() * P);
        Rblk = P * Omega;
        part.eig_coords = model.vectors().transpose() * Q.mat();
    }
    part.R11 = Rblk.leftCols(j);
    part.R12 = Rblk.middleCols(j, h - j);
    part.R2 = Rblk.rightCols(r - h);
    return part;
}

Index complement_count_above(const Vec& lambda, const Mat& V, double mu)
{
    const Index n = lambda.size();
    const Index r = V.cols();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    // Keep mu off the spectrum of A so that (A - mu)^{-1} exists.
    for (int guard = 0; guard < 8; ++guard) {
        const double closest = (lambda.array() - mu).abs().minCoeff();
        if (closest > 2.0 * kEps * scale)
            break;
        mu += 4.0 * kEps * scale;
    }
    Index above = 0;
    Vec inv(n);
    for (Index i = 0; i < n; ++i) {
        if (lambda(i) > mu)
            ++above;
        inv(i) = 1.0 / (lambda(i) - mu);
    }
    if (r == 0)
        return above;
    Mat G = V.transpose() * inv.asDiagonal() * V;
    G = 0.5 * (G + G.transpose()).eval();
    const Vec g = Eigen::SelfAdjointEigenSolver<Mat>(G, Eigen::EigenvaluesOnly).eigenvalues();
    const Index neg = (g.array() < 0.0).count();
    return above + neg - r;
}

Vec complement_top_eigenvalues(const RitzPartition& part, const EigenModel& model, Index m)
{
    const Index size = model.size() - part.r();
    m = std::min(m, size);
    if (m <= 0)
        return Vec();
    if (part.mode == RitzMode::Full)
        return dense_complement_spectrum(part).head(m);
    ComplementSpectrum spec(model.values(), *part.eig_coords);
    Vec out(m);
    for (Index i = 0; i < m; ++i)
        out(i) = spec.eigenvalue(i + 1);
    return out;
}

double min_separation(const Vec& a, const Vec& b)
{
    double best = kInf;
    for (Index i = 0; i < a.size(); ++i)
        for (Index t = 0; t < b.size(); ++t)
            best = std::min(best, std::abs(a(i) - b(t)));
    return best;
}

GapReport compute_gaps(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env)
{
    const Index n = model.size();
    const Index j = env.j;
    const Index h = env.h;
    const Index k = env.k;
    if (part.j != j || part.h != h)
        throw DimensionError("compute_gaps: partition and envelope disagree on j or h");
    const Vec& lam = model.values();
    const Vec tail_j = lam.tail(n - j);
    const Vec tail_k = lam.tail(n - k);

    GapReport g;
    g.tilde_gap = min_separation(part.L11, tail_j);
    g.hat_gap_1 = min_separation(part.L1(), tail_k);
    g.hat_gap_2 = min_separation(part.L2, tail_k);
    g.gap_h_ritz = min_separation(lam.head(h), part.L2);

    if (part.mode == RitzMode::Full) {
        const Vec mu = dense_complement_spectrum(part);
        g.gap_j = min_separation(lam.head(j), mu);
        g.gap_k = min_separation(lam.head(k), mu);
        g.gap_h = min_separation(lam.head(h), mu);
    } else {
        ComplementSpectrum spec(lam, *part.eig_coords);
        g.gap_j = spec.distance(lam.head(j));
        g.gap_h = spec.distance(lam.head(h));
        g.gap_k = k <= part.r() ? spec.distance(lam.head(k)) : std::numeric_limits<double>::quiet_NaN();
    }
    return g;
}

ResidualBoundReport admissible_distance_bounds(const RitzPartition& part, const EigenModel& model,
                                               const ClusterEnvelope& env, Norm norm)
{
    return admissible_distance_bounds(part, model, env, norm, compute_gaps(part, model, env));
}

ResidualBoundReport admissible_distance_bounds(const RitzPartition& part, const EigenModel& model,
                                               const ClusterEnvelope& env, Norm norm, const GapReport& gaps)
{
    const Index r = part.r();
    const Index k = env.k;
    const double nR11 = block_norm(part.R11, norm);
    const double nR1 = block_norm(part.R1(), norm);
    const double nR2 = block_norm(part.R2, norm);
    const double nR = block_norm(part.R(), norm);

    ResidualBoundReport rep;
    rep.bound_X1 = (env.j > 0 ? ratio(nR11, gaps.tilde_gap) : 0.0) + ratio(nR1, gaps.hat_gap_1);
    if (k <= r) {
        rep.q_bound_uses_full_residual = true;
        const Mat xk_xhat = dominant_basis(model, k).mat().transpose() * part.Q.mat();
        const Eigen::JacobiSVD<Mat> svd(xk_xhat);
        const Index rank = (svd.singularValues().array() > 1e-10).count();
        rep.generic = rank >= env.h;
        rep.bound_Q = rep.generic ? ratio(nR, gaps.gap_j) + ratio(nR, gaps.gap_k)
                                  : std::numeric_limits<double>::quiet_NaN();
    } else {
        rep.bound_Q = ratio(nR, gaps.gap_j) + ratio(nR1, gaps.hat_gap_1) +
                      (r > env.h ? ratio(nR2, gaps.hat_gap_2) : 0.0);
    }
    return rep;
}

ResidualEstimates varias_cotas(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                               Norm norm)
{
    return varias_cotas(part, model, env, norm, compute_gaps(part, model, env));
}

ResidualEstimates varias_cotas(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                               Norm norm, const GapReport& gaps)
{
    const Index r = part.r();
    const Index k = env.k;
    const OrthonormalBasis Xj = dominant_basis(model, env.j);
    const OrthonormalBasis Xk = dominant_basis(model, k);
    const double nR11 = block_norm(part.R11, norm);
    const double nR1 = block_norm(part.R1(), norm);
    const double nR2 = block_norm(part.R2, norm);
    const double nR = block_norm(part.R(), norm);

    ResidualEstimates est;
    est.lhs[0] = sin_theta_norm(Xj, part.Q, norm);
    est.rhs[0] = ratio(nR, gaps.gap_j);
    est.lhs[1] = sin_theta_norm(Xj, part.X1, norm);
    est.rhs[1] = ratio(nR11, gaps.tilde_gap);
    est.lhs[2] = sin_theta_norm(Xk, part.X1, norm);
    est.rhs[2] = ratio(nR1, gaps.hat_gap_1);
    const double dkq = sin_theta_norm(Xk, part.Q, norm);
    est.lhs[3] = est.lhs[4] = dkq;
    if (k <= r) {
        est.rhs[3] = ratio(nR, gaps.gap_k);
        est.rhs[4] = std::numeric_limits<double>::quiet_NaN();
    } else {
        est.rhs[3] = std::numeric_limits<double>::quiet_NaN();
        est.rhs[4] = ratio(nR1, gaps.hat_gap_1) + (r > env.h ? ratio(nR2, gaps.hat_gap_2) : 0.0);
    }
    est.applicable = {true, true, true, k <= r, r < k};

    constexpr double slack = 1e-9;
    est.holds = est.lhs[0] <= est.lhs[1] + slack;
    for (int i = 0; i < 5; ++i)
        if (est.applicable[i] && std::isfinite(est.rhs[i]) && est.lhs[i] > est.rhs[i] + slack)
            est.holds = false;
    return est;
}

ComparisonBound nakatsukasa_bound(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env)
{
    return nakatsukasa_bound(part, model, env, compute_gaps(part, model, env));
}

ComparisonBound nakatsukasa_bound(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                                  const GapReport& gaps)
{
    const double nR = block_norm(part.R(), Norm::Spectral);
    const double nR2 = block_norm(part.R2, Norm::Spectral);
    ComparisonBound out;
    const double lead = ratio(nR, gaps.gap_h);
    const double q = ratio(nR2, gaps.gap_h_ritz);
    out.value = lead == 0.0 ? 0.0 : lead * std::sqrt(1.0 + q * q);
    out.measured = sin_theta_max(dominant_basis(model, env.h), part.X1);
    return out;
}

}  // namespace ladm
