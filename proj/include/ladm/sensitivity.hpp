#pragma once

#include <cstdint>
#include <optional>

#include "ladm/admissible.hpp"

namespace ladm {

/// Upper bounds for the condition numbers of X_h(A) and of the admissible class of A.
struct ConditionReport {
    double dominant_upper = 0.0;    // 1/(lambda_h - lambda_{h+1}); +inf without a gap at h
    double admissible_upper = 0.0;  // 1/(lambda_j - lambda_{j+1}) + 1/(lambda_k - lambda_{k+1}); first term dropped for j = 0
};

ConditionReport condition_bounds(const EigenModel& model, const ClusterEnvelope& env);

/// ||sin Theta(X_j(A), X_j(B))|| + ||sin Theta(X_k(A), X_k(B))||, an upper bound for the
/// Hausdorff distance between the two admissible classes. Both models need eigen-gaps at j and k.
double hausdorff_upper(const EigenModel& a, const EigenModel& b, const ClusterEnvelope& env, Norm norm);

struct DavisKahanReport {
    double measured = 0.0;      // ||sin Theta(X_ell(A), X_ell(B))||
    double bound = 0.0;         // ||A - B|| / (lambda_ell(A) - lambda_{ell+1}(A) - ||A - B||_2)
    double perturbation = 0.0;  // ||A - B|| in the requested norm
    bool holds = true;
};

/// Requires ||A - B||_2 < (lambda_ell(A) - lambda_{ell+1}(A)) / 2; throws DomainError otherwise.
DavisKahanReport davis_kahan_distance(const EigenModel& a, const EigenModel& b, Index ell, Norm norm);

/// Estimate of the Hausdorff distance between two admissible classes from sampled members:
/// for each random member of one class, the witness distance to the other class. Each
/// one-sided value is a max over samples of an upper estimate of an infimum, so the result is
/// neither a bound from above nor from below in general.
struct HausdorffEstimate {
    double a_to_b = 0.0;
    double b_to_a = 0.0;
    double value = 0.0;
};

HausdorffEstimate sampled_hausdorff_estimate(const AdmissibleClass& a, const AdmissibleClass& b, Norm norm,
                                             int samples = 20, std::uint64_t seed = 0);

/// Pair A = alpha P_X + beta P_Y, B = alpha P_X' + beta P_Y' with dim X = j, dim Y = k - j,
/// Y orthogonal to X', X orthogonal to Y', all angles between X and X' equal to theta_X and
/// all angles between Y and Y' equal to theta_Y. Here d_H and ||A - B||_2 have closed forms.
struct SharpExample {
    EigenModel A;
    EigenModel B;
    ClusterEnvelope env;
    double exact_dH = 0.0;            // max(sin theta_X, sin theta_Y), spectral norm
    double exact_normdiff = 0.0;      // max(alpha sin theta_X, beta sin theta_Y)
    double measured_normdiff = 0.0;   // ||A - B||_2 from the assembled matrices
    double kappa_lower = 0.0;         // 1/beta
    double kappa_upper = 0.0;         // 1/(alpha - beta) + 1/beta
};

/// Requires 2 <= j < h < k, 2k <= n, alpha > beta > 0 and angles in (0, pi/2). With a
/// rotation seed the whole configuration is conjugated by a Haar orthogonal matrix.
SharpExample sharp_example(Index n, Index j, Index h, Index k, double alpha, double beta, double theta_x,
                           double theta_y, std::optional<std::uint64_t> rotation_seed = std::nullopt);

}  // namespace ladm
