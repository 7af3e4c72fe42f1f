#include "ladm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ladm/random.hpp"

namespace ladm {

EigenModel::EigenModel(Mat A, Mat X, Vec lambda, double eig_tol)
    : A_(std::move(A)), X_(std::move(X)), lambda_(std::move(lambda))
{
    const Index n = A_.rows();
    if (A_.cols() != n || X_.rows() != n || X_.cols() != n || lambda_.size() != n)
        throw DimensionError("eigen model: inconsistent shapes");
    for (Index i = 1; i < n; ++i)
        if (lambda_(i) > lambda_(i - 1))
            throw PreconditionError("eigen model: eigenvalues not sorted non-increasingly");
    const double scale = std::max(A_.norm(), 1e-300);
    const double residual = (A_ * X_ - X_ * lambda_.asDiagonal()).norm();
    if (!(residual <= eig_tol * scale))
        throw PreconditionError("eigen model: residual " + std::to_string(residual / scale) + " exceeds tolerance");
}

double EigenModel::eigenvalue(Index i) const
{
    if (i < 1 || i > size())
        throw DimensionError("eigenvalue index " + std::to_string(i) + " out of range");
    return lambda_(i - 1);
}

Index EigenModel::rank(double rank_tol) const
{
    const double top = spectral_norm();
    if (top == 0.0)
        return 0;
    Index r = 0;
    for (Index i = 0; i < size(); ++i)
        if (std::abs(lambda_(i)) > rank_tol * top)
            ++r;
    return r;
}

double EigenModel::spectral_norm() const
{
    if (size() == 0)
        return 0.0;
    return std::max(std::abs(lambda_(0)), std::abs(lambda_(size() - 1)));
}

ClusterEnvelope make_envelope(const EigenModel& model, Index j, Index h, Index k, double gap_tol, double rank_tol)
{
    if (!(0 <= j && j < h && h < k))
        throw DimensionError("envelope requires 0 <= j < h < k");
    if (k > model.rank(rank_tol))
        throw DomainError("envelope requires k <= rank(A)");
    const double tol = gap_tol * std::abs(model.eigenvalue(1));
    ClusterEnvelope env{j, h, k, 0.0, 0.0};
    // With k = n there is no eigenvalue below the cluster and no gap to check.
    const double gap_k = k < model.size() ? model.eigenvalue(k) - model.eigenvalue(k + 1)
                                          : std::numeric_limits<double>::infinity();
    if (!(gap_k > tol))
        throw DomainError("no eigen-gap at k = " + std::to_string(k));
    env.gamma = gap_k;
    if (j > 0) {
        const double gap_j = model.eigenvalue(j) - model.eigenvalue(j + 1);
        if (!(gap_j > tol))
            throw DomainError("no eigen-gap at j = " + std::to_string(j));
        env.gamma = std::min(env.gamma, gap_j);
    }
    env.delta = model.eigenvalue(j + 1) - model.eigenvalue(k);
    return env;
}

double Decay::base(Index i, Index n) const
{
    if (kind == Kind::Exponential)
        return p0 * std::exp(-p1 * static_cast<double>(i));
    if (n <= 1)
        return p0;
    return p0 + (p1 - p0) * static_cast<double>(i - 1) / static_cast<double>(n - 1);
}

namespace {

double lerp_index(double first, double last, Index i, Index i_first, Index i_last)
{
    if (i_last == i_first)
        return first;
    const double t = static_cast<double>(i - i_first) / static_cast<double>(i_last - i_first);
    return first + (last - first) * t;
}

}  // namespace

Vec synth_spectrum(const SpectrumSpec& spec)
{
    const Index n = spec.n;
    const Index j = spec.j;
    const Index k = spec.k;
    if (!(0 <= j && j < spec.h && spec.h < k && k < n))
        throw DomainError("spectrum spec requires 0 <= j < h < k < n");
    if (!(spec.delta >= 0.0))
        throw DomainError("spectrum spec requires delta >= 0");
    if (k - j == 1 && spec.delta > 0.0)
        throw DomainError("a one-element cluster cannot have positive spread");
    if (spec.gap && !(*spec.gap > 0.0))
        throw DomainError("spectrum spec requires gap > 0");

    const Decay& d = spec.decay;
    const double center = spec.center ? *spec.center : 0.5 * (d.base(std::max<Index>(j, 1), n) + d.base(k + 1, n));
    const double top = center + 0.5 * spec.delta;
    const double bottom = center - 0.5 * spec.delta;

    Vec lambda(n);
    for (Index i = j + 1; i <= k; ++i)
        lambda(i - 1) = lerp_index(top, bottom, i, j + 1, k);

    if (!spec.gap) {
        for (Index i = 1; i <= j; ++i)
            lambda(i - 1) = d.base(i, n);
        for (Index i = k + 1; i <= n; ++i)
            lambda(i - 1) = d.base(i, n);
    } else {
        const double upper_end = top + *spec.gap;
        const double lower_start = bottom - *spec.gap;
        if (d.kind == Decay::Kind::Exponential) {
            for (Index i = 1; i <= j; ++i)
                lambda(i - 1) = d.base(i, n) - d.base(j, n) + upper_end;
            if (!(lower_start > 0.0))
                throw DomainError("exponential decay below the cluster must stay positive");
            const double s = lower_start / d.base(k + 1, n);
            for (Index i = k + 1; i <= n; ++i)
                lambda(i - 1) = d.base(i, n) * s;
        } else {
            for (Index i = 1; i <= j; ++i)
                lambda(i - 1) = j == 1 ? upper_end : lerp_index(d.p0, upper_end, i, 1, j);
            for (Index i = k + 1; i <= n; ++i)
                lambda(i - 1) = k + 1 == n ? lower_start : lerp_index(lower_start, d.p1, i, k + 1, n);
        }
    }

    for (Index i = 1; i < n; ++i)
        if (lambda(i) > lambda(i - 1))
            throw DomainError("decay curve crosses the cluster band near index " + std::to_string(i + 1));
    const double tol = 1e-10 * std::abs(lambda(0));
    if (j > 0 && !(lambda(j - 1) - lambda(j) > tol))
        throw DomainError("no eigen-gap at j");
    if (!(lambda(k - 1) - lambda(k) > tol))
        throw DomainError("no eigen-gap at k");
    return lambda;
}

Mat haar_orthogonal(Index n, std::uint64_t seed)
{
    const Mat g = gaussian_matrix(n, n, seed);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat& r = qr.matrixQR();
    for (Index i = 0; i < n; ++i)
        if (r(i, i) < 0)
            q.col(i) *= -1.0;
    return q;
}

EigenModel model_from_eigenpairs(const Mat& X, const Vec& lambda)
{
    const Index n = lambda.size();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return lambda(a) > lambda(b); });
    Mat Xs(n, n);
    Vec ls(n);
    for (Index i = 0; i < n; ++i) {
        Xs.col(i) = X.col(order[static_cast<std::size_t>(i)]);
        ls(i) = lambda(order[static_cast<std::size_t>(i)]);
    }
    Mat A = Xs * ls.asDiagonal() * Xs.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    return EigenModel(std::move(A), std::move(Xs), std::move(ls));
}

std::pair<EigenModel, ClusterEnvelope> synth_model(const SpectrumSpec& spec)
{
    const Vec lambda = synth_spectrum(spec);
    EigenModel model = model_from_eigenpairs(haar_orthogonal(spec.n, spec.seed), lambda);
    ClusterEnvelope env = make_envelope(model, spec.j, spec.h, spec.k);
    return {std::move(model), env};
}

EigenModel eigendecompose(const Mat& A)
{
    if (A.rows() != A.cols())
        throw DimensionError("eigendecompose: matrix is not square");
    const double scale = A.norm();
    if ((A - A.transpose()).norm() > 1e-10 * scale)
        throw PreconditionError("eigendecompose: matrix is not symmetric");
    const Mat sym = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(sym);
    if (es.info() != Eigen::Success)
        throw Error("eigendecompose: solver failed");
    Vec lambda = es.eigenvalues().reverse();
    Mat X = es.eigenvectors().rowwise().reverse();
    return EigenModel(sym, std::move(X), std::move(lambda));
}

OrthonormalBasis dominant_basis(const EigenModel& model, Index ell)
{
    if (ell < 0 || ell > model.size())
        throw DimensionError("dominant basis: index out of range");
    return OrthonormalBasis(model.vectors().leftCols(ell));
}

OrthonormalBasis gaussian_subspace(Index n, Index r, std::uint64_t seed)
{
    if (r > n || r < 0)
        throw DimensionError("gaussian subspace: r must satisfy 0 <= r <= n");
    const Mat g = gaussian_matrix(n, r, seed);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, r);
    const Mat& rr = qr.matrixQR();
    for (Index i = 0; i < r; ++i)
        if (rr(i, i) < 0)
            q.col(i) *= -1.0;
    return OrthonormalBasis(std::move(q));
}

Mat truncated_eigen(const EigenModel& model, Index h)
{
    if (h < 0 || h > model.size())
        throw DimensionError("truncated eigen: index out of range");
    const auto Xh = model.vectors().leftCols(h);
    return Xh * model.values().head(h).asDiagonal() * Xh.transpose();
}

}  // namespace ladm
