#include "ladm/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ladm/random.hpp"

namespace ladm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gap_at(const EigenModel& m, Index i)
{
    if (i == 0 || i >= m.size())
        return kInf;
    return m.eigenvalue(i) - m.eigenvalue(i + 1);
}

void require_gap(const EigenModel& m, Index i, const char* which)
{
    const double tol = 1e-12 * std::max(1.0, m.spectral_norm());
    if (!(gap_at(m, i) > tol))
        throw DomainError(std::string("matrix has no eigen-gap at ") + which);
}

double spectral_norm_sym(const Mat& M)
{
    const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(M, Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

ConditionReport condition_bounds(const EigenModel& model, const ClusterEnvelope& env)
{
    ConditionReport rep;
    const double gh = gap_at(model, env.h);
    rep.dominant_upper = gh > 0.0 ? 1.0 / gh : kInf;
    const double gk = gap_at(model, env.k);
    rep.admissible_upper = (gk > 0.0 ? 1.0 / gk : kInf);
    if (env.j > 0) {
        const double gj = gap_at(model, env.j);
        rep.admissible_upper += gj > 0.0 ? 1.0 / gj : kInf;
    }
    return rep;
}

double hausdorff_upper(const EigenModel& a, const EigenModel& b, const ClusterEnvelope& env, Norm norm)
{
    if (a.size() != b.size())
        throw DimensionError("hausdorff_upper: models of different size");
    for (const EigenModel* m : {&a, &b}) {
        if (env.j > 0)
            require_gap(*m, env.j, "j");
        require_gap(*m, env.k, "k");
    }
    return sin_theta_norm(dominant_basis(a, env.j), dominant_basis(b, env.j), norm) +
           sin_theta_norm(dominant_basis(a, env.k), dominant_basis(b, env.k), norm);
}

DavisKahanReport davis_kahan_distance(const EigenModel& a, const EigenModel& b, Index ell, Norm norm)
{
    if (a.size() != b.size())
        throw DimensionError("davis_kahan_distance: models of different size");
    if (ell < 1 || ell >= a.size())
        throw DimensionError("davis_kahan_distance: requires 1 <= ell < n");
    const double gap = gap_at(a, ell);
    Mat E = a.matrix() - b.matrix();
    E = 0.5 * (E + E.transpose()).eval();
    const double e2 = spectral_norm_sym(E);
    if (!(e2 < 0.5 * gap))
        throw DomainError("davis_kahan_distance: perturbation exceeds half the eigen-gap");

    DavisKahanReport rep;
    rep.perturbation = norm == Norm::Spectral ? e2 : E.norm();
    rep.bound = rep.perturbation / (gap - e2);
    rep.measured = sin_theta_norm(dominant_basis(a, ell), dominant_basis(b, ell), norm);
    rep.holds = rep.measured <= rep.bound + 1e-9;
    return rep;
}

HausdorffEstimate sampled_hausdorff_estimate(const AdmissibleClass& a, const AdmissibleClass& b, Norm norm,
                                             int samples, std::uint64_t seed)
{
    HausdorffEstimate est;
    for (int s = 0; s < samples; ++s) {
        const OrthonormalBasis sa = random_member(a, mix_seed(seed, 2 * s));
        const OrthonormalBasis sb = random_member(b, mix_seed(seed, 2 * s + 1));
        est.a_to_b = std::max(est.a_to_b, sin_theta_norm(nearest_admissible(sa, b), sa, norm));
        est.b_to_a = std::max(est.b_to_a, sin_theta_norm(nearest_admissible(sb, a), sb, norm));
    }
    est.value = std::max(est.a_to_b, est.b_to_a);
    return est;
}

SharpExample sharp_example(Index n, Index j, Index h, Index k, double alpha, double beta, double theta_x,
                           double theta_y, std::optional<std::uint64_t> rotation_seed)
{
    if (!(2 <= j && j < h && h < k && 2 * k <= n))
        throw DimensionError("sharp_example requires 2 <= j < h < k and 2k <= n");
    if (!(alpha > beta && beta > 0.0))
        throw DomainError("sharp_example requires alpha > beta > 0");
    const double half_pi = 2.0 * std::atan(1.0);
    if (!(theta_x > 0.0 && theta_x < half_pi && theta_y > 0.0 && theta_y < half_pi))
        throw DomainError("sharp_example requires angles in (0, pi/2)");

    // Columns 0..k-1 of I span X (first j) and Y; the partners e_{k+i} carry the rotations.
    const double cx = std::cos(theta_x), sx = std::sin(theta_x);
    const double cy = std::cos(theta_y), sy = std::sin(theta_y);
    Mat XB = Mat::Identity(n, n);
    for (Index i = 0; i < k; ++i) {
        const double c = i < j ? cx : cy;
        const double s = i < j ? sx : sy;
        XB(i, i) = c;
        XB(k + i, i) = s;
        XB(i, k + i) = -s;
        XB(k + i, k + i) = c;
    }
    Mat XA = Mat::Identity(n, n);
    if (rotation_seed) {
        const Mat U = haar_orthogonal(n, *rotation_seed);
        XA = U;
        XB = U * XB;
    }
    Vec lambda = Vec::Zero(n);
    lambda.head(j).setConstant(alpha);
    lambda.segment(j, k - j).setConstant(beta);

    SharpExample ex{model_from_eigenpairs(XA, lambda), model_from_eigenpairs(XB, lambda), {}, 0, 0, 0, 0, 0};
    ex.env = ClusterEnvelope{j, h, k, 0.0, std::min(alpha - beta, beta)};
    ex.exact_dH = std::max(sx, sy);
    ex.exact_normdiff = std::max(alpha * sx, beta * sy);
    Mat D = ex.A.matrix() - ex.B.matrix();
    D = 0.5 * (D + D.transpose()).eval();
    ex.measured_normdiff = spectral_norm_sym(D);
    ex.kappa_lower = 1.0 / beta;
    ex.kappa_upper = 1.0 / (alpha - beta) + 1.0 / beta;
    return ex;
}

}  // namespace ladm
