#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ladm/errors.hpp"

namespace ladm {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Norm { Spectral, Frobenius };

inline constexpr double kDefaultRankTol = 1e-12;

const char* to_string(Norm norm);

/// Column-orthonormal n x d matrix standing for a d-dimensional subspace of R^n.
/// d = 0 is allowed and represents the zero subspace.
class OrthonormalBasis {
public:
    OrthonormalBasis() = default;

    /// Validates ||B^T B - I||_F <= orth_tol; orth_tol < 0 selects 1e-12 * sqrt(d).
    explicit OrthonormalBasis(Mat m, double orth_tol = -1.0);

    static OrthonormalBasis empty(Index n);

    const Mat& mat() const { return m_; }
    Index ambient() const { return m_.rows(); }
    Index dim() const { return m_.cols(); }

    /// Basis of the span of `count` consecutive columns starting at `first`.
    OrthonormalBasis columns(Index first, Index count) const;

private:
    Mat m_;
};

/// Principal angles, ascending, with their sines stored separately so that
/// tiny angles keep full relative accuracy.
struct AngleProfile {
    Vec angles;
    Vec sines;

    double max_angle() const { return angles.size() ? angles.maxCoeff() : 0.0; }
    double sin_norm(Norm norm) const;
};

/// Basis of range(M); columns with singular value <= rank_tol * sigma_1 are dropped.
OrthonormalBasis orthonormalize(const Mat& M, double rank_tol = kDefaultRankTol);

/// Numerical rank of M at rank_tol * sigma_1.
Index numerical_rank(const Mat& M, double rank_tol = kDefaultRankTol);

AngleProfile principal_angles(const OrthonormalBasis& S, const OrthonormalBasis& T);

/// ||sin Theta(S,T)|| over the min(dim S, dim T) principal angles.
double sin_theta_norm(const OrthonormalBasis& S, const OrthonormalBasis& T, Norm norm);

/// sin of the largest principal angle; the metric d(S,T) used throughout.
inline double sin_theta_max(const OrthonormalBasis& S, const OrthonormalBasis& T)
{
    return sin_theta_norm(S, T, Norm::Spectral);
}

/// T = X_perp^T H (X^T H)^+. Its positive singular values are the tangents of the
/// principal angles between range(X) and range(H) that lie strictly inside (0, pi/2).
Mat tangent_matrix(const OrthonormalBasis& X, const OrthonormalBasis& X_perp, const OrthonormalBasis& H);

/// ||X_perp^T H' (X^T H')^+|| for an arbitrary spanning matrix H'. Requires
/// rank(X^T H') = dim X; throws PreconditionError otherwise.
double tan_theta_norm_bound(const OrthonormalBasis& X, const OrthonormalBasis& X_perp, const Mat& H_raw,
                            Norm norm);

/// ||tan Theta(X,H)|| computed as ||(I - XX^T) H (X^T H)^+|| without a completion of X.
/// Returns +inf when some principal angle equals pi/2.
double tan_theta_norm(const OrthonormalBasis& X, const OrthonormalBasis& H, Norm norm);

/// Basis of P_K(T) = range(K K^T T).
OrthonormalBasis project_subspace(const OrthonormalBasis& T, const OrthonormalBasis& K,
                                  double rank_tol = kDefaultRankTol);

Mat pseudo_inverse(const Mat& M, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of range(X)^perp, from a Householder QR of [X | Gaussian padding].
OrthonormalBasis orthogonal_complement(const OrthonormalBasis& X, std::uint64_t seed = 0);

/// Basis of range(S) + range(T).
OrthonormalBasis subspace_sum(const OrthonormalBasis& S, const OrthonormalBasis& T,
                              double rank_tol = kDefaultRankTol);

/// (I - P_T) M, computed as M - T (T^T M).
Mat project_out(const OrthonormalBasis& T, const Mat& M);

double matrix_norm(const Mat& M, Norm norm);

}  // namespace ladm
