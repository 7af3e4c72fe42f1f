#include "ladm/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ladm/random.hpp"

namespace ladm {

namespace {

Vec singular_values(const Mat& M)
{
    if (M.size() == 0)
        return Vec();
    return Eigen::JacobiSVD<Mat>(M).singularValues();
}

}  // namespace

const char* to_string(Norm norm)
{
    return norm == Norm::Spectral ? "spectral" : "frobenius";
}

OrthonormalBasis::OrthonormalBasis(Mat m, double orth_tol) : m_(std::move(m))
{
    const Index d = m_.cols();
    if (d > m_.rows())
        throw DimensionError("basis has more columns than rows");
    if (orth_tol < 0)
        orth_tol = 1e-12 * std::sqrt(static_cast<double>(std::max<Index>(d, 1)));
    if (d > 0) {
        const double defect = (m_.transpose() * m_ - Mat::Identity(d, d)).norm();
        if (!(defect <= orth_tol))
            throw PreconditionError("columns are not orthonormal (Gram defect " + std::to_string(defect) + ")");
    }
}

OrthonormalBasis OrthonormalBasis::empty(Index n)
{
    return OrthonormalBasis(Mat(n, 0));
}

OrthonormalBasis OrthonormalBasis::columns(Index first, Index count) const
{
    if (first < 0 || count < 0 || first + count > dim())
        throw DimensionError("column range outside basis");
    return OrthonormalBasis(m_.middleCols(first, count));
}

double AngleProfile::sin_norm(Norm norm) const
{
    if (sines.size() == 0)
        return 0.0;
    return norm == Norm::Spectral ? sines.maxCoeff() : sines.norm();
}

double matrix_norm(const Mat& M, Norm norm)
{
    if (M.size() == 0)
        return 0.0;
    if (norm == Norm::Frobenius)
        return M.norm();
    return singular_values(M)(0);
}

Index numerical_rank(const Mat& M, double rank_tol)
{
    const Vec sv = singular_values(M);
    if (sv.size() == 0 || sv(0) == 0.0)
        return 0;
    Index r = 0;
    while (r < sv.size() && sv(r) > rank_tol * sv(0))
        ++r;
    return r;
}

OrthonormalBasis orthonormalize(const Mat& M, double rank_tol)
{
    const Index n = M.rows();
    if (M.cols() == 0 || M.size() == 0)
        return OrthonormalBasis::empty(n);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
    const Vec& sv = svd.singularValues();
    if (sv(0) == 0.0)
        return OrthonormalBasis::empty(n);
    Index r = 0;
    while (r < sv.size() && sv(r) > rank_tol * sv(0))
        ++r;
    return OrthonormalBasis(svd.matrixU().leftCols(r));
}

Mat project_out(const OrthonormalBasis& T, const Mat& M)
{
    if (T.dim() == 0)
        return M;
    return M - T.mat() * (T.mat().transpose() * M);
}

AngleProfile principal_angles(const OrthonormalBasis& S, const OrthonormalBasis& T)
{
    if (S.ambient() != T.ambient())
        throw DimensionError("principal angles: ambient dimensions differ");
    AngleProfile out;
    if (S.dim() == 0 || T.dim() == 0) {
        out.angles = Vec::Zero(1);
        out.sines = Vec::Zero(1);
        return out;
    }
    const OrthonormalBasis& small = S.dim() <= T.dim() ? S : T;
    const OrthonormalBasis& large = S.dim() <= T.dim() ? T : S;
    const Index s = small.dim();

    const Vec sin_sv = singular_values(project_out(large, small.mat()));
    const Vec cos_sv = singular_values(small.mat().transpose() * large.mat());

    const double switch_at = std::sqrt(0.5);
    std::vector<std::pair<double, double>> pairs(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) {
        const double sn = std::min(1.0, sin_sv(s - 1 - i));
        const double cs = std::min(1.0, cos_sv(i));
        if (sn <= switch_at) {
            pairs[static_cast<std::size_t>(i)] = {std::asin(sn), sn};
        } else {
            const double a = std::acos(cs);
            pairs[static_cast<std::size_t>(i)] = {a, std::sin(a)};
        }
    }
    std::sort(pairs.begin(), pairs.end());
    out.angles.resize(s);
    out.sines.resize(s);
    for (Index i = 0; i < s; ++i) {
        out.angles(i) = pairs[static_cast<std::size_t>(i)].first;
        out.sines(i) = pairs[static_cast<std::size_t>(i)].second;
    }
    return out;
}

double sin_theta_norm(const OrthonormalBasis& S, const OrthonormalBasis& T, Norm norm)
{
    if (S.ambient() != T.ambient())
        throw DimensionError("sin theta: ambient dimensions differ");
    if (S.dim() == 0 || T.dim() == 0)
        return 0.0;
    const OrthonormalBasis& small = S.dim() <= T.dim() ? S : T;
    const OrthonormalBasis& large = S.dim() <= T.dim() ? T : S;
    // Rounding can push the norm slightly past its ceiling: 1 for the spectral norm, sqrt(dim) for Frobenius.
    const double cap = norm == Norm::Spectral ? 1.0 : std::sqrt(static_cast<double>(small.dim()));
    return std::min(cap, matrix_norm(project_out(large, small.mat()), norm));
}

Mat pseudo_inverse(const Mat& M, double rank_tol)
{
    if (M.size() == 0)
        return Mat::Zero(M.cols(), M.rows());
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec& sv = svd.singularValues();
    Mat out = Mat::Zero(M.cols(), M.rows());
    if (sv(0) == 0.0)
        return out;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= rank_tol * sv(0))
            break;
        out += svd.matrixV().col(i) * (svd.matrixU().col(i).transpose() / sv(i));
    }
    return out;
}

Mat tangent_matrix(const OrthonormalBasis& X, const OrthonormalBasis& X_perp, const OrthonormalBasis& H)
{
    if (X.ambient() != H.ambient() || X_perp.ambient() != H.ambient())
        throw DimensionError("tangent matrix: ambient dimensions differ");
    if (X.dim() + X_perp.dim() != X.ambient())
        throw DimensionError("tangent matrix: [X X_perp] is not square");
    const Mat xh = X.mat().transpose() * H.mat();
    return (X_perp.mat().transpose() * H.mat()) * pseudo_inverse(xh, 1e-14);
}

double tan_theta_norm_bound(const OrthonormalBasis& X, const OrthonormalBasis& X_perp, const Mat& H_raw,
                            Norm norm)
{
    if (X.ambient() != H_raw.rows() || X_perp.ambient() != H_raw.rows())
        throw DimensionError("tangent bound: ambient dimensions differ");
    if (X.dim() + X_perp.dim() != X.ambient())
        throw DimensionError("tangent bound: [X X_perp] is not square");
    if (numerical_rank(H_raw) < X.dim())
        throw PreconditionError("tangent bound: range(H) has smaller dimension than X");
    const Mat xh = X.mat().transpose() * H_raw;
    if (numerical_rank(xh, 1e-13) < X.dim())
        throw PreconditionError("tangent bound: X meets the orthogonal complement of range(H)");
    const Mat t = (X_perp.mat().transpose() * H_raw) * pseudo_inverse(xh, 1e-13);
    return matrix_norm(t, norm);
}

double tan_theta_norm(const OrthonormalBasis& X, const OrthonormalBasis& H, Norm norm)
{
    if (X.ambient() != H.ambient())
        throw DimensionError("tangent: ambient dimensions differ");
    if (X.dim() == 0 || H.dim() == 0)
        return 0.0;
    const Mat xh = X.mat().transpose() * H.mat();
    const Vec sv = singular_values(xh);
    const Index need = std::min(X.dim(), H.dim());
    // Entries of X^T H are cosines, so an absolute threshold identifies angles of pi/2.
    if (sv.size() < need || sv(need - 1) <= 1e-14)
        return std::numeric_limits<double>::infinity();
    const Mat t = project_out(X, H.mat()) * pseudo_inverse(xh, 1e-14 / sv(0));
    return matrix_norm(t, norm);
}

OrthonormalBasis project_subspace(const OrthonormalBasis& T, const OrthonormalBasis& K, double rank_tol)
{
    if (T.ambient() != K.ambient())
        throw DimensionError("projection: ambient dimensions differ");
    if (T.dim() == 0 || K.dim() == 0)
        return OrthonormalBasis::empty(T.ambient());
    const Mat coeff = K.mat().transpose() * T.mat();
    // A subspace orthogonal to K projects to rounding noise only.
    if (coeff.norm() <= 1e-14 * std::sqrt(static_cast<double>(T.dim())))
        return OrthonormalBasis::empty(T.ambient());
    return orthonormalize(K.mat() * coeff, rank_tol);
}

OrthonormalBasis orthogonal_complement(const OrthonormalBasis& X, std::uint64_t seed)
{
    const Index n = X.ambient();
    const Index d = X.dim();
    if (d == n)
        return OrthonormalBasis::empty(n);
    Mat padded(n, n);
    padded.leftCols(d) = X.mat();
    padded.rightCols(n - d) = gaussian_matrix(n, n - d, seed);
    Eigen::HouseholderQR<Mat> qr(padded);
    Mat q = qr.householderQ();
    return OrthonormalBasis(q.rightCols(n - d));
}

OrthonormalBasis subspace_sum(const OrthonormalBasis& S, const OrthonormalBasis& T, double rank_tol)
{
    if (S.ambient() != T.ambient())
        throw DimensionError("sum: ambient dimensions differ");
    Mat both(S.ambient(), S.dim() + T.dim());
    both << S.mat(), T.mat();
    return orthonormalize(both, rank_tol);
}

}  // namespace ladm
