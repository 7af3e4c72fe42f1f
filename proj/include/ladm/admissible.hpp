#pragma once

#include <cstdint>

#include "ladm/spectral.hpp"

namespace ladm {

/// The h-dimensional subspaces S with X_j ⊆ S ⊆ X_k. Holds a reference to the model,
/// which must outlive the class.
class AdmissibleClass {
public:
    AdmissibleClass(const EigenModel& model, const ClusterEnvelope& env);

    const EigenModel& model() const { return *model_; }
    const ClusterEnvelope& envelope() const { return env_; }
    const OrthonormalBasis& Xj() const { return xj_; }
    const OrthonormalBasis& Xk() const { return xk_; }
    Index j() const { return env_.j; }
    Index h() const { return env_.h; }
    Index k() const { return env_.k; }

    /// Same envelope indices j, k with another target dimension (j < h < k).
    AdmissibleClass with_target(Index h) const;

private:
    const EigenModel* model_;
    ClusterEnvelope env_;
    OrthonormalBasis xj_;
    OrthonormalBasis xk_;
};

struct DistanceReport {
    double lower = 0.0;     // max of the two eigenspace distances when dim T = h, else 0
    double upper = 0.0;     // ||sin Theta(X_j,T)|| + ||sin Theta(X_k,T)||
    double measured = 0.0;  // ||sin Theta(witness,T)||
    OrthonormalBasis witness;
    Norm norm = Norm::Spectral;
};

struct RitzValueReport {
    Vec ritz;   // eigenvalues of S^T A S, descending
    Vec lower;  // lambda_{i+k-h} for i > j, lambda_i for i <= j
    Vec upper;  // lambda_i
    double max_violation = 0.0;
    bool holds = true;
};

struct LowRankReport {
    double error = 0.0;  // ||A - P_S A P_S||
    double lower = 0.0;  // ||A - A_h||
    double upper = 0.0;  // lower + ||diag(delta,...,delta)|| with k-j entries
    bool holds = true;
};

struct InvarianceReport {
    double commutator = 0.0;  // ||P_S A - A P_S||_2
    double residual = 0.0;    // ||(I - P_S) A P_S||_2
    bool holds = true;
};

struct CompressionReport {
    double theta_max = 0.0;
    double eig_deviation = 0.0;  // max_i |lambda_i(P_S A P_S) - lambda_i(P_T A P_T)|
    double eig_bound = 0.0;      // tan(theta)(2 delta + sin(theta) ||A||_2)
    double error = 0.0;          // ||A - P_T A P_T||_2
    double error_bound = 0.0;    // ||A - A_h||_2 + delta + 2 sin(theta) ||A||_2
    bool error_applicable = true;  // requires lambda_k >= 0
    bool holds = true;
};

inline constexpr double kMemberTol = 1e-8;

/// Inclusion test X_j ⊆ S ⊆ X_k via ||(I - P_S) X_j||_2 and ||(I - P_{X_k}) S||_2.
bool is_member(const OrthonormalBasis& S, const AdmissibleClass& cls, double tol = kMemberTol);

/// Admissible S with ||sin Theta(S,T)|| <= ||sin Theta(X_j,T)|| + ||sin Theta(X_k,T)|| in every
/// unitarily invariant norm. Requires dim T >= h and no principal angle of pi/2 between X_k and T.
OrthonormalBasis nearest_admissible(const OrthonormalBasis& T, const AdmissibleClass& cls);

DistanceReport distance_bounds(const OrthonormalBasis& T, const AdmissibleClass& cls, Norm norm);

RitzValueReport ritz_value_bounds(const OrthonormalBasis& S, const AdmissibleClass& cls);

LowRankReport lowrank_error_report(const OrthonormalBasis& S, const AdmissibleClass& cls, Norm norm);

InvarianceReport invariance_defects(const OrthonormalBasis& S, const AdmissibleClass& cls);

CompressionReport perturbed_compression_bounds(const OrthonormalBasis& S, const OrthonormalBasis& T,
                                               const AdmissibleClass& cls);

/// X_j ⊕ D with D Haar-random of dimension h - j inside X_k ⊖ X_j.
OrthonormalBasis random_member(const AdmissibleClass& cls, std::uint64_t seed);

}  // namespace ladm
