#include "ladm/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ladm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double chebyshev_recurrence(int ell, double t)
{
    if (ell == 0)
        return 1.0;
    double prev = 1.0;
    double cur = t;
    for (int i = 1; i < ell; ++i) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

double chebyshev_t(int ell, double t)
{
    const double at = std::abs(t);
    if (std::abs(at - 1.0) <= 1e-8)
        return chebyshev_recurrence(ell, t);
    if (at < 1.0)
        return std::cos(ell * std::acos(t));
    const double v = std::cosh(ell * std::acosh(at));
    return (t < 0 && (ell % 2 == 1)) ? -v : v;
}

PolynomialFilter PolynomialFilter::monomial(int q)
{
    if (q < 0)
        throw DimensionError("monomial filter requires q >= 0");
    PolynomialFilter f;
    f.kind_ = Kind::Monomial;
    f.degree_ = q;
    return f;
}

PolynomialFilter PolynomialFilter::chebyshev(int degree, double shift, double scale)
{
    if (degree < 0)
        throw DimensionError("chebyshev filter requires degree >= 0");
    if (!(scale > 0.0))
        throw DomainError("chebyshev filter requires a positive scale");
    PolynomialFilter f;
    f.kind_ = Kind::Chebyshev;
    f.degree_ = degree;
    f.shift_ = shift;
    f.scale_ = scale;
    return f;
}

PolynomialFilter PolynomialFilter::from_coefficients(Vec coefficients)
{
    PolynomialFilter f;
    f.kind_ = Kind::Explicit;
    Index d = coefficients.size() - 1;
    while (d > 0 && coefficients(d) == 0.0)
        --d;
    f.degree_ = static_cast<int>(std::max<Index>(d, 0));
    f.coeffs_ = coefficients.head(std::max<Index>(d + 1, 1));
    if (coefficients.size() == 0)
        f.coeffs_ = Vec::Zero(1);
    return f;
}

double PolynomialFilter::operator()(double x) const
{
    switch (kind_) {
    case Kind::Monomial:
        return std::pow(x, degree_);
    case Kind::Chebyshev:
        return chebyshev_t(degree_, (x - shift_) / scale_);
    case Kind::Explicit: {
        double acc = 0.0;
        for (Index i = coeffs_.size() - 1; i >= 0; --i)
            acc = acc * x + coeffs_(i);
        return acc;
    }
    }
    return 0.0;
}

double PolynomialFilter::log_abs(double x) const
{
    switch (kind_) {
    case Kind::Monomial:
        if (degree_ == 0)
            return 0.0;
        return x == 0.0 ? kNegInf : degree_ * std::log(std::abs(x));
    case Kind::Chebyshev: {
        const double at = std::abs((x - shift_) / scale_);
        if (at > 1.0 + 1e-8) {
            const double a = degree_ * std::acosh(at);
            return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
        }
        const double v = std::abs((*this)(x));
        return v == 0.0 ? kNegInf : std::log(v);
    }
    case Kind::Explicit: {
        const double v = std::abs((*this)(x));
        return v == 0.0 ? kNegInf : std::log(v);
    }
    }
    return kNegInf;
}

OrthonormalBasis sim_iterate(const EigenModel& model, const OrthonormalBasis& W0, int q, Index min_dim)
{
    if (q < 0)
        throw DimensionError("subspace iteration requires q >= 0");
    OrthonormalBasis W = W0;
    for (int i = 0; i < q; ++i) {
        W = orthonormalize(model.matrix() * W.mat());
        if (W.dim() < min_dim)
            throw GenericityError("subspace iteration collapsed below the required dimension");
    }
    return W;
}

BlockKrylov::BlockKrylov(const Mat& A, const OrthonormalBasis& W0, double rank_tol)
    : A_(&A), rank_tol_(rank_tol), basis_(W0.mat()), image_(A * W0.mat()), last_first_(0), last_count_(W0.dim())
{
    if (A.rows() != W0.ambient())
        throw DimensionError("block Krylov: ambient dimension mismatch");
}

Index BlockKrylov::extend()
{
    ++steps_;
    if (last_count_ == 0)
        return 0;
    Mat block = image_.middleCols(last_first_, last_count_);
    const double scale = matrix_norm(block, Norm::Spectral);
    for (int pass = 0; pass < 2; ++pass)
        block -= basis_ * (basis_.transpose() * block);
    if (scale == 0.0) {
        last_count_ = 0;
        return 0;
    }
    Eigen::JacobiSVD<Mat> svd(block, Eigen::ComputeThinU);
    const Vec& sv = svd.singularValues();
    Index keep = 0;
    while (keep < sv.size() && sv(keep) > rank_tol_ * scale)
        ++keep;
    Mat fresh = svd.matrixU().leftCols(keep);
    // One more pass keeps the accumulated basis orthonormal to working precision.
    fresh -= basis_ * (basis_.transpose() * fresh);
    if (keep > 0) {
        Eigen::HouseholderQR<Mat> qr(fresh);
        fresh = qr.householderQ() * Mat::Identity(fresh.rows(), keep);
    }
    const Index old = basis_.cols();
    basis_.conservativeResize(Eigen::NoChange, old + keep);
    basis_.rightCols(keep) = fresh;
    image_.conservativeResize(Eigen::NoChange, old + keep);
    image_.rightCols(keep) = (*A_) * fresh;
    last_first_ = old;
    last_count_ = keep;
    return keep;
}

OrthonormalBasis krylov_subspace(const EigenModel& model, const OrthonormalBasis& W0, int q, double rank_tol)
{
    if (q < 0)
        throw DimensionError("Krylov space requires q >= 0");
    BlockKrylov kr(model.matrix(), W0, rank_tol);
    for (int i = 0; i < q; ++i)
        kr.extend();
    return kr.basis();
}

HpReport construct_Hp_report(const OrthonormalBasis& W, const OversamplingSplit& split, const AdmissibleClass& cls)
{
    const Index r = W.dim();
    const Index j = cls.j();
    const Index h = cls.h();
    const Index k = cls.k();
    const Index p1 = split.p1;
    const Index p2 = split.p2;
    const Mat& X = cls.model().vectors();
    const Index n = X.rows();
    if (W.ambient() != n)
        throw DimensionError("H_p: ambient dimension mismatch");
    if (p1 < 0 || p2 < 0 || p1 + p2 > r - h)
        throw DimensionError("H_p: split must satisfy p1, p2 >= 0 and p1 + p2 <= r - h");
    if (j + p1 > n || k + p2 > n)
        throw DimensionError("H_p: split exceeds the number of eigenvectors");
    if (r > k)
        throw DimensionError("H_p: requires dim W <= k");

    Mat aux(n, p1 + p2);
    aux << X.middleCols(j, p1), X.middleCols(k, p2);

    // Genericity of W: W^perp meets neither X_k nor span{x_1..x_{j+p1}, x_{k+1..k+p2}}.
    if (numerical_rank(cls.Xk().mat().transpose() * W.mat(), 1e-10) < r)
        throw GenericityError("H_p: X_k^T W is rank deficient");
    Mat lead(n, j + p1 + p2);
    lead << X.leftCols(j + p1), X.middleCols(k, p2);
    if (numerical_rank(lead.transpose() * W.mat(), 1e-10) < j + p1 + p2)
        throw GenericityError("H_p: W^perp meets the span of the leading and auxiliary eigenvectors");

    HpReport rep;
    if (p1 + p2 == 0) {
        rep.H = W;
    } else {
        const Mat F = aux.transpose() * W.mat();
        Eigen::JacobiSVD<Mat> svd(F, Eigen::ComputeFullV);
        const Vec& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-10 * sv(0))
            throw GenericityError("H_p: F is rank deficient");
        rep.H = OrthonormalBasis(W.mat() * svd.matrixV().rightCols(r - p1 - p2));
    }

    rep.aux_residual = aux.cols() ? (aux.transpose() * rep.H.mat()).cwiseAbs().maxCoeff() : 0.0;
    auto min_sv = [](const Mat& m) {
        if (m.size() == 0)
            return 1.0;
        const Vec s = Eigen::JacobiSVD<Mat>(m).singularValues();
        return s(s.size() - 1);
    };
    rep.min_sv_j = j > 0 ? min_sv(cls.Xj().mat().transpose() * rep.H.mat()) : 1.0;
    rep.min_sv_k = min_sv(cls.Xk().mat().transpose() * rep.H.mat());
    if (rep.H.dim() != r - p1 - p2)
        throw GenericityError("H_p: unexpected dimension");
    if (rep.aux_residual > 1e-10)
        throw GenericityError("H_p: not orthogonal to the auxiliary eigenvectors");
    if (rep.min_sv_j <= 1e-12)
        throw GenericityError("H_p: orthogonal complement meets X_j");
    if (rep.min_sv_k <= 1e-12)
        throw GenericityError("H_p: meets the orthogonal complement of X_k");
    return rep;
}

FilterCoefficients filter_coefficients(const PolynomialFilter& phi, const OversamplingSplit& split,
                                       const AdmissibleClass& cls)
{
    const EigenModel& m = cls.model();
    const Index n = m.size();
    const Index j = cls.j();
    const Index k = cls.k();

    auto min_log = [&](Index last) {
        double v = std::numeric_limits<double>::infinity();
        for (Index i = 1; i <= last; ++i)
            v = std::min(v, phi.log_abs(m.eigenvalue(i)));
        return v;
    };
    auto max_log = [&](Index first) {
        double v = kNegInf;
        for (Index i = first; i <= n; ++i)
            v = std::max(v, phi.log_abs(m.eigenvalue(i)));
        return v;
    };

    const double inv_k = min_log(k);
    if (inv_k == kNegInf)
        throw DomainError("filter: phi(Lambda_k) is singular");

    FilterCoefficients c;
    c.omit_j = j == 0;
    c.omit_k = k == m.rank() && phi(0.0) == 0.0;
    if (!c.omit_j)
        c.coeff_j = std::exp(max_log(j + split.p1 + 1) - min_log(j));
    if (!c.omit_k)
        c.coeff_k = std::exp(max_log(k + split.p2 + 1) - inv_k);
    return c;
}

std::vector<double> PolynomialFilter::roots() const
{
    std::vector<double> out;
    if (kind_ == Kind::Monomial) {
        out.assign(static_cast<std::size_t>(degree_), 0.0);
    } else if (kind_ == Kind::Chebyshev) {
        const double pi = std::acos(-1.0);
        for (int i = 1; i <= degree_; ++i)
            out.push_back(shift_ + scale_ * std::cos((2.0 * i - 1.0) * pi / (2.0 * degree_)));
    }
    return out;
}

Mat scaled_orthonormal_step(const Vec& d, const Mat& Y)
{
    const Mat Z = d.asDiagonal() * Y;
    Eigen::HouseholderQR<Mat> qr(Z);
    const Index c = Z.cols();
    const Vec diag = qr.matrixQR().diagonal().head(c).cwiseAbs();
    if (c > 0 && diag.minCoeff() <= 1e-14 * diag.maxCoeff())
        return orthonormalize(Z, 1e-14).mat();
    return qr.householderQ() * Mat::Identity(Z.rows(), c);
}

OrthonormalBasis filter_subspace(const EigenModel& model, const PolynomialFilter& phi, const Mat& H)
{
    const Mat& X = model.vectors();
    const Vec& lambda = model.values();
    const Index n = model.size();
    Mat Y = orthonormalize(X.transpose() * H, 0.0).mat();
    if (phi.has_closed_form_roots()) {
        for (double root : phi.roots())
            Y = scaled_orthonormal_step(lambda.array() - root, Y);
    } else {
        Vec logs(n);
        Vec signs(n);
        for (Index i = 0; i < n; ++i) {
            logs(i) = phi.log_abs(lambda(i));
            signs(i) = phi(lambda(i)) < 0 ? -1.0 : 1.0;
        }
        const double top = logs.maxCoeff();
        Vec scale(n);
        for (Index i = 0; i < n; ++i)
            scale(i) = logs(i) == kNegInf ? 0.0 : signs(i) * std::exp(logs(i) - top);
        Y = scaled_orthonormal_step(scale, Y);
    }
    return orthonormalize(X * Y, 1e-14);
}

FilterBoundReport filtered_distance_bound(const OrthonormalBasis& W, const OversamplingSplit& split,
                                          const PolynomialFilter& phi, const AdmissibleClass& cls, Norm norm)
{
    FilterBoundReport rep;
    rep.coeffs = filter_coefficients(phi, split, cls);
    rep.H = construct_Hp(W, split, cls);
    rep.tan_j = rep.coeffs.omit_j ? 0.0 : tan_theta_norm(cls.Xj(), rep.H, norm);
    rep.tan_k = rep.coeffs.omit_k ? 0.0 : tan_theta_norm(cls.Xk(), rep.H, norm);
    rep.bound_j_term = rep.coeffs.omit_j ? 0.0 : rep.coeffs.coeff_j * rep.tan_j;
    rep.bound_k_term = rep.coeffs.omit_k ? 0.0 : rep.coeffs.coeff_k * rep.tan_k;
    rep.total = rep.bound_j_term + rep.bound_k_term;

    const OrthonormalBasis fw = filter_subspace(cls.model(), phi, W.mat());
    const OrthonormalBasis fh = filter_subspace(cls.model(), phi, rep.H.mat());
    rep.measured = sin_theta_norm(nearest_admissible(fh, cls), fw, norm);
    try {
        rep.measured_direct = sin_theta_norm(nearest_admissible(fw, cls), fw, norm);
    } catch (const PreconditionError&) {
        rep.measured_direct = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

PolynomialFilter chebyshev_filter(const AdmissibleClass& cls, Index p2, int degree)
{
    const EigenModel& m = cls.model();
    const Index n = m.size();
    const Index k = cls.k();
    if (p2 < 0 || k + p2 + 1 > n)
        throw DimensionError("chebyshev filter: k + p2 + 1 exceeds n");
    const double lo = m.eigenvalue(n);
    const double anchor = m.eigenvalue(k + p2 + 1);
    const PolynomialFilter phi = PolynomialFilter::chebyshev(degree, lo, anchor - lo);

    if (std::abs(phi(anchor) - 1.0) > 1e-10)
        throw Error("chebyshev filter: phi(lambda_{k+p2+1}) != 1");
    if (degree > 0) {
        const double top = m.eigenvalue(1);
        double prev = phi.log_abs(anchor);
        for (int s = 1; s <= 64; ++s) {
            const double x = anchor + (top - anchor) * s / 64.0;
            const double v = phi.log_abs(x);
            if (!(v > prev) && top > anchor)
                throw Error("chebyshev filter: not increasing above lambda_{k+p2+1}");
            prev = v;
        }
    }
    for (Index i = 1; i <= k; ++i)
        if (phi.log_abs(m.eigenvalue(i)) == kNegInf)
            throw DomainError("chebyshev filter: phi(Lambda_k) is singular");
    return phi;
}

}  // namespace ladm
