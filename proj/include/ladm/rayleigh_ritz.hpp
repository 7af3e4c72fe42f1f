#pragma once

#include <array>
#include <optional>

#include "ladm/admissible.hpp"

namespace ladm {

/// How the complement block A_3 = X3^T A X3 is represented.
///  Full:    X3 and A3 are formed explicitly; residual blocks are (n-r) x m.
///  Compact: X3 and A3 are not formed; residual blocks are stored as (I - QQ^T) A X_hat,
///           which has the same singular values, and the top of spec(A3) is obtained from
///           inertia counts of an r x r matrix in the eigenbasis of A.
enum class RitzMode { Full, Compact };

struct RitzPartition {
    RitzMode mode = RitzMode::Full;
    Index j = 0;
    Index h = 0;
    OrthonormalBasis Q;
    OrthonormalBasis X1;  // top-h Ritz vectors
    OrthonormalBasis X2;  // remaining r-h Ritz vectors
    std::optional<OrthonormalBasis> X3;
    Vec L11;  // Ritz values 1..j
    Vec L12;  // Ritz values j+1..h
    Vec L2;   // Ritz values h+1..r
    Mat R11;  // residual of the first j Ritz vectors
    Mat R12;  // residual of Ritz vectors j+1..h
    Mat R2;   // residual of Ritz vectors h+1..r
    std::optional<Mat> A3;
    std::optional<Mat> eig_coords;  // compact mode: X^T Q in the eigenbasis of A

    Index r() const { return Q.dim(); }
    Vec ritz_values() const;
    Vec L1() const;
    Mat R1() const;
    Mat R() const;
};

/// `AQ`, when given, must equal A * Q (callers that already hold the product skip a multiply).
RitzPartition rayleigh_ritz(const EigenModel& model, const OrthonormalBasis& Q, Index h, Index j,
                            RitzMode mode = RitzMode::Full, const Mat* AQ = nullptr);

/// The m largest eigenvalues of A3 (fewer if n - r < m), descending.
Vec complement_top_eigenvalues(const RitzPartition& part, const EigenModel& model, Index m);

/// Number of eigenvalues of the compression of A to range(Q)^perp that exceed mu, from
/// #{lambda_i > mu} + #neg(Q^T (A - mu)^{-1} Q) - r.
Index complement_count_above(const Vec& lambda, const Mat& V, double mu);

/// Gaps of the residual bounds. +inf stands for a minimum over an empty set.
/// gap_k is NaN in compact mode when r < k (not used there).
struct GapReport {
    double tilde_gap = 0.0;   // min |lambda(L11) - (lambda_{j+1..n})|
    double hat_gap_1 = 0.0;   // min |lambda(L1)  - (lambda_{k+1..n})|
    double hat_gap_2 = 0.0;   // min |lambda(L2)  - (lambda_{k+1..n})|
    double gap_j = 0.0;       // min |lambda_{1..j} - spec(A3)|
    double gap_k = 0.0;       // min |lambda_{1..k} - spec(A3)|
    double gap_h = 0.0;       // min |lambda_{1..h} - spec(A3)|
    double gap_h_ritz = 0.0;  // min |lambda_{1..h} - lambda(L2)|
};

GapReport compute_gaps(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env);

struct ResidualBoundReport {
    double bound_X1 = 0.0;  // bounds d(adm_h, range(X1))
    double bound_Q = 0.0;   // bounds d(adm_h, range(Q)) if k <= r, d(adm_r, range(Q)) if r < k
    bool q_bound_uses_full_residual = false;  // the k <= r branch
    bool generic = true;  // k <= r branch: dim P_{range(Q)}(X_k) >= h; bound_Q is NaN otherwise
};

ResidualBoundReport admissible_distance_bounds(const RitzPartition& part, const EigenModel& model,
                                               const ClusterEnvelope& env, Norm norm);
ResidualBoundReport admissible_distance_bounds(const RitzPartition& part, const EigenModel& model,
                                               const ClusterEnvelope& env, Norm norm, const GapReport& gaps);

/// The five residual estimates for the eigenspace distances:
///  [0] ||sin Theta(X_j, range Q)||   <= ||R|| / Gap_j
///  [1] ||sin Theta(X_j, range X1)||  <= ||R11|| / tilde_gap
///  [2] ||sin Theta(X_k, range X1)||  <= ||R1|| / hat_gap_1
///  [3] ||sin Theta(X_k, range Q)||   <= ||R|| / Gap_k                          (k <= r)
///  [4] ||sin Theta(X_k, range Q)||   <= ||R1||/hat_gap_1 + ||R2||/hat_gap_2    (r < k)
struct ResidualEstimates {
    std::array<double, 5> lhs{};
    std::array<double, 5> rhs{};
    std::array<bool, 5> applicable{};
    bool holds = true;
};

ResidualEstimates varias_cotas(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                               Norm norm);
ResidualEstimates varias_cotas(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                               Norm norm, const GapReport& gaps);

/// Comparison bound (||R||_2 / Gap) sqrt(1 + ||R2||_2^2 / gap^2) for sin theta_max(X_h, range X1),
/// Gap = min|lambda_{1..h} - spec(A3)|, gap = min|lambda_{1..h} - lambda(L2)|.
struct ComparisonBound {
    double value = 0.0;
    double measured = 0.0;  // sin theta_max(X_h, range X1)
};

ComparisonBound nakatsukasa_bound(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env);
ComparisonBound nakatsukasa_bound(const RitzPartition& part, const EigenModel& model, const ClusterEnvelope& env,
                                  const GapReport& gaps);

/// Minimum of |a_i - b_j| over two finite sets; +inf if either is empty.
double min_separation(const Vec& a, const Vec& b);

}  // namespace ladm
