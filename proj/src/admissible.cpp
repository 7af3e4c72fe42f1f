#include "ladm/admissible.hpp"

#include <algorithm>
#include <cmath>

namespace ladm {

namespace {

double max_abs_eigenvalue(const Mat& sym)
{
    if (sym.size() == 0)
        return 0.0;
    const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double symmetric_norm(const Mat& sym, Norm norm)
{
    return norm == Norm::Frobenius ? sym.norm() : max_abs_eigenvalue(sym);
}

Vec ritz_values(const Mat& A, const OrthonormalBasis& S)
{
    const Mat c = S.mat().transpose() * A * S.mat();
    return Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (c + c.transpose()), Eigen::EigenvaluesOnly)
        .eigenvalues()
        .reverse();
}

// ||A - A_h|| from the spectrum: A - A_h has eigenvalues lambda_{h+1..n} and zeros.
double tail_norm(const EigenModel& model, Index h, Norm norm)
{
    const Vec tail = model.values().tail(model.size() - h);
    if (tail.size() == 0)
        return 0.0;
    return norm == Norm::Frobenius ? tail.norm() : tail.cwiseAbs().maxCoeff();
}

void require_member(const OrthonormalBasis& S, const AdmissibleClass& cls)
{
    if (!is_member(S, cls))
        throw PreconditionError("subspace is not admissible for the class");
}

}  // namespace

AdmissibleClass::AdmissibleClass(const EigenModel& model, const ClusterEnvelope& env)
    : model_(&model), env_(env), xj_(dominant_basis(model, env.j)), xk_(dominant_basis(model, env.k))
{
    if (!(0 <= env.j && env.j < env.h && env.h < env.k && env.k <= model.size()))
        throw DimensionError("admissible class requires 0 <= j < h < k <= n");
}

AdmissibleClass AdmissibleClass::with_target(Index h) const
{
    ClusterEnvelope env = env_;
    env.h = h;
    return AdmissibleClass(*model_, env);
}

bool is_member(const OrthonormalBasis& S, const AdmissibleClass& cls, double tol)
{
    if (S.dim() != cls.h())
        throw DimensionError("membership: dim S differs from h");
    if (S.ambient() != cls.model().size())
        throw DimensionError("membership: ambient dimension mismatch");
    const double below = matrix_norm(project_out(S, cls.Xj().mat()), Norm::Spectral);
    const double above = matrix_norm(project_out(cls.Xk(), S.mat()), Norm::Spectral);
    return below <= tol && above <= tol;
}

OrthonormalBasis nearest_admissible(const OrthonormalBasis& T_in, const AdmissibleClass& cls)
{
    const Index h = cls.h();
    const Index j = cls.j();
    const Index k = cls.k();
    const Index n = cls.model().size();
    if (T_in.ambient() != n)
        throw DimensionError("nearest admissible: ambient dimension mismatch");
    if (T_in.dim() < h)
        throw DimensionError("nearest admissible: dim T must be at least h");

    const Mat& Xk = cls.Xk().mat();
    const Mat xkt = Xk.transpose() * T_in.mat();
    const Index need = std::min(T_in.dim(), k);
    if (numerical_rank(xkt) < need)
        throw PreconditionError("nearest admissible: X_k and T have a principal angle of pi/2");

    OrthonormalBasis T = T_in;
    if (T.dim() > k) {
        T = orthonormalize(T.mat() * xkt.transpose());
        if (T.dim() != k)
            throw PreconditionError("nearest admissible: reduction P_T(X_k) lost rank");
    }
    const OrthonormalBasis Q = orthonormalize(Xk * (Xk.transpose() * T.mat()));
    if (Q.dim() != T.dim())
        throw PreconditionError("nearest admissible: projection onto X_k lost rank");

    // Coordinates (in Q) of ker(X_j^T Q), which has dimension dim Q - j.
    Mat K;
    if (j == 0) {
        K = Mat::Identity(Q.dim(), Q.dim());
    } else {
        const Mat m = cls.Xj().mat().transpose() * Q.mat();
        Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
        K = svd.matrixV().rightCols(Q.dim() - j);
    }
    Mat D = Q.mat() * K;
    if (D.cols() > h - j) {
        // Any h - j kernel directions give an admissible S; keep the ones closest to T.
        Eigen::JacobiSVD<Mat> off(project_out(T_in, D), Eigen::ComputeFullV);
        D = D * off.matrixV().rightCols(h - j);
    }
    if (j > 0) {
        // The columns are orthogonal to X_j up to rounding; remove the residue.
        D = project_out(cls.Xj(), D);
        D = orthonormalize(D, 1e-8).mat();
        if (D.cols() != h - j)
            throw PreconditionError("nearest admissible: kernel of X_j^T Q too small");
    }
    Mat S(n, h);
    S << cls.Xj().mat(), D;
    return OrthonormalBasis(std::move(S));
}

DistanceReport distance_bounds(const OrthonormalBasis& T, const AdmissibleClass& cls, Norm norm)
{
    DistanceReport rep;
    rep.norm = norm;
    const double dj = sin_theta_norm(cls.Xj(), T, norm);
    const double dk = sin_theta_norm(cls.Xk(), T, norm);
    rep.upper = dj + dk;
    rep.lower = T.dim() == cls.h() ? std::max(dj, dk) : 0.0;
    rep.witness = nearest_admissible(T, cls);
    rep.measured = sin_theta_norm(rep.witness, T, norm);
    return rep;
}

RitzValueReport ritz_value_bounds(const OrthonormalBasis& S, const AdmissibleClass& cls)
{
    require_member(S, cls);
    const EigenModel& m = cls.model();
    const Index j = cls.j();
    const Index h = cls.h();
    const Index k = cls.k();
    const double delta = cls.envelope().delta;
    const double eq_tol = delta * 1e-6 + 1e-10 * std::max(1.0, m.spectral_norm());
    const double slack = 1e-10 * std::max(1.0, m.spectral_norm());

    RitzValueReport rep;
    rep.ritz = ritz_values(m.matrix(), S);
    rep.lower.resize(h);
    rep.upper.resize(h);
    for (Index i = 1; i <= h; ++i) {
        const double r = rep.ritz(i - 1);
        const double li = m.eigenvalue(i);
        rep.upper(i - 1) = li;
        double v = 0.0;
        if (i <= j) {
            rep.lower(i - 1) = li;
            v = std::max(0.0, std::abs(r - li) - eq_tol);
        } else {
            const double lo = m.eigenvalue(i + k - h);
            rep.lower(i - 1) = lo;
            v = std::max({0.0, lo - r - slack, r - li - slack, (li - r) - delta - slack});
        }
        rep.max_violation = std::max(rep.max_violation, v);
    }
    rep.holds = rep.max_violation == 0.0;
    return rep;
}

LowRankReport lowrank_error_report(const OrthonormalBasis& S, const AdmissibleClass& cls, Norm norm)
{
    require_member(S, cls);
    const EigenModel& m = cls.model();
    if (m.eigenvalue(cls.k()) < 0)
        throw DomainError("low-rank estimate requires lambda_k >= 0");
    const Mat& A = m.matrix();
    const Mat AS = A * S.mat();
    const Mat comp = S.mat() * (S.mat().transpose() * AS) * S.mat().transpose();
    Mat diff = A - comp;
    diff = 0.5 * (diff + diff.transpose()).eval();

    LowRankReport rep;
    rep.error = symmetric_norm(diff, norm);
    rep.lower = tail_norm(m, cls.h(), norm);
    const double delta = cls.envelope().delta;
    rep.upper = rep.lower + (norm == Norm::Spectral
                                 ? delta
                                 : delta * std::sqrt(static_cast<double>(cls.k() - cls.j())));
    rep.holds = rep.lower <= rep.error + 1e-9 && rep.error <= rep.upper + 1e-9;
    return rep;
}

InvarianceReport invariance_defects(const OrthonormalBasis& S, const AdmissibleClass& cls)
{
    require_member(S, cls);
    const Mat AS = cls.model().matrix() * S.mat();
    const Index h = S.dim();

    InvarianceReport rep;
    rep.residual = matrix_norm(project_out(S, AS), Norm::Spectral);

    // P_S A - A P_S = M J M^T with M = [S, AS] and J = [[0, I], [-I, 0]].
    Mat M(S.ambient(), 2 * h);
    M << S.mat(), AS;
    Eigen::HouseholderQR<Mat> qr(M);
    const Mat R = qr.matrixQR().topRows(2 * h).triangularView<Eigen::Upper>();
    Mat J = Mat::Zero(2 * h, 2 * h);
    J.topRightCorner(h, h) = Mat::Identity(h, h);
    J.bottomLeftCorner(h, h) = -Mat::Identity(h, h);
    rep.commutator = matrix_norm(R * J * R.transpose(), Norm::Spectral);

    const double delta = cls.envelope().delta;
    rep.holds = rep.commutator <= delta + 1e-9 && rep.residual <= delta + 1e-9;
    return rep;
}

CompressionReport perturbed_compression_bounds(const OrthonormalBasis& S, const OrthonormalBasis& T,
                                               const AdmissibleClass& cls)
{
    require_member(S, cls);
    if (T.dim() != cls.h())
        throw DimensionError("compression bounds: dim T must equal h");
    const EigenModel& m = cls.model();
    const AngleProfile prof = principal_angles(S, T);
    CompressionReport rep;
    rep.theta_max = prof.max_angle();
    const double c = std::cos(rep.theta_max);
    if (!(c > 1e-14))
        throw PreconditionError("compression bounds: theta_max = pi/2, tangent undefined");
    const double s = prof.sin_norm(Norm::Spectral);
    const double t = s / c;
    const double a2 = m.spectral_norm();
    const double delta = cls.envelope().delta;

    rep.eig_deviation = (ritz_values(m.matrix(), S) - ritz_values(m.matrix(), T)).cwiseAbs().maxCoeff();
    rep.eig_bound = t * (2.0 * delta + s * a2);

    const Mat AT = m.matrix() * T.mat();
    Mat diff = m.matrix() - T.mat() * (T.mat().transpose() * AT) * T.mat().transpose();
    diff = 0.5 * (diff + diff.transpose()).eval();
    rep.error = max_abs_eigenvalue(diff);
    rep.error_applicable = m.eigenvalue(cls.k()) >= 0;
    rep.error_bound = tail_norm(m, cls.h(), Norm::Spectral) + delta + 2.0 * s * a2;

    rep.holds = rep.eig_deviation <= rep.eig_bound + 1e-9 &&
                (!rep.error_applicable || rep.error <= rep.error_bound + 1e-9);
    return rep;
}

OrthonormalBasis random_member(const AdmissibleClass& cls, std::uint64_t seed)
{
    const Index j = cls.j();
    const Index h = cls.h();
    const Index k = cls.k();
    const OrthonormalBasis g = gaussian_subspace(k - j, h - j, seed);
    Mat S(cls.model().size(), h);
    S << cls.Xj().mat(), cls.Xk().mat().middleCols(j, k - j) * g.mat();
    return OrthonormalBasis(std::move(S));
}

}  // namespace ladm
