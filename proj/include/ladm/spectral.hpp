#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ladm/subspace.hpp"

namespace ladm {

/// Symmetric matrix together with its full eigendecomposition A = X diag(lambda) X^T,
/// eigenvalues in non-increasing order.
class EigenModel {
public:
    EigenModel(Mat A, Mat X, Vec lambda, double eig_tol = 1e-10);

    const Mat& matrix() const { return A_; }
    const Mat& vectors() const { return X_; }
    const Vec& values() const { return lambda_; }
    Index size() const { return A_.rows(); }

    /// lambda_i with 1-based i, as in the usual notation lambda_1 >= ... >= lambda_n.
    double eigenvalue(Index i) const;

    /// Number of eigenvalues with |lambda| > rank_tol * max |lambda|.
    Index rank(double rank_tol = kDefaultRankTol) const;

    double spectral_norm() const;

private:
    Mat A_;
    Mat X_;
    Vec lambda_;
};

/// Indices 0 <= j < h < k with strict gaps at j and k. lambda_0 is treated as +infinity,
/// so for j = 0 only the gap at k enters gamma.
struct ClusterEnvelope {
    Index j = 0;
    Index h = 0;
    Index k = 0;
    double delta = 0.0;  // lambda_{j+1} - lambda_k
    double gamma = 0.0;  // min(lambda_j - lambda_{j+1}, lambda_k - lambda_{k+1})
};

/// Validates the indices against the model; gaps must exceed gap_tol * |lambda_1|.
ClusterEnvelope make_envelope(const EigenModel& model, Index j, Index h, Index k, double gap_tol = 1e-10,
                              double rank_tol = kDefaultRankTol);

struct Decay {
    enum class Kind { Exponential, Linear };
    Kind kind = Kind::Exponential;
    double p0 = 10.0;  // Exponential: scale a;   Linear: value at i = 1
    double p1 = 0.01;  // Exponential: rate b;    Linear: value at i = n

    double base(Index i, Index n) const;
};

/// Synthetic spectrum: `decay` outside the cluster j+1..k, cluster values equally spaced
/// over [center - delta/2, center + delta/2].
///
/// Without `gap` the outer eigenvalues follow the decay curve verbatim. With `gap` the
/// outer pieces are moved so that lambda_j - lambda_{j+1} = lambda_k - lambda_{k+1} = gap.
/// `center` defaults to the midpoint of the decay curve at max(j,1) and k+1.
struct SpectrumSpec {
    Index n = 400;
    Index j = 5;
    Index h = 10;
    Index k = 30;
    Decay decay;
    std::optional<double> center;
    double delta = 1e-3;
    std::optional<double> gap;
    std::uint64_t seed = 1;
};

/// Eigenvalues prescribed by `spec`, non-increasing; throws DomainError if infeasible.
Vec synth_spectrum(const SpectrumSpec& spec);

/// A = X diag(lambda) X^T with Haar-random X and the spectrum of `spec`.
std::pair<EigenModel, ClusterEnvelope> synth_model(const SpectrumSpec& spec);

/// Model with the given eigenvalues (sorted internally) and eigenvectors X.
EigenModel model_from_eigenpairs(const Mat& X, const Vec& lambda);

EigenModel eigendecompose(const Mat& A);

/// X_ell, the span of the eigenvectors of the ell largest eigenvalues.
OrthonormalBasis dominant_basis(const EigenModel& model, Index ell);

/// Orthonormal basis of the range of an n x r standard Gaussian matrix.
OrthonormalBasis gaussian_subspace(Index n, Index r, std::uint64_t seed);

/// Haar-distributed orthogonal matrix (QR of a Gaussian with R-diagonal sign fix).
Mat haar_orthogonal(Index n, std::uint64_t seed);

/// A_h = P_{X_h} A P_{X_h}.
Mat truncated_eigen(const EigenModel& model, Index h);

}  // namespace ladm
