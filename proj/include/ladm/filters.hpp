#pragma once

#include <vector>

#include "ladm/admissible.hpp"

namespace ladm {

struct OversamplingSplit {
    Index p1 = 0;
    Index p2 = 0;
};

/// Real polynomial used to filter a trial subspace, W -> phi(A)(W).
class PolynomialFilter {
public:
    enum class Kind { Monomial, Chebyshev, Explicit };

    /// phi(x) = x^q.
    static PolynomialFilter monomial(int q);
    /// phi(x) = T_degree((x - shift) / scale).
    static PolynomialFilter chebyshev(int degree, double shift, double scale);
    /// phi(x) = c_0 + c_1 x + ... + c_d x^d.
    static PolynomialFilter from_coefficients(Vec coefficients);

    /// Real roots when known in closed form (Monomial, Chebyshev); empty otherwise.
    std::vector<double> roots() const;
    bool has_closed_form_roots() const { return kind_ != Kind::Explicit; }

    Kind kind() const { return kind_; }
    int degree() const { return degree_; }
    double operator()(double x) const;
    /// log|phi(x)|; -inf at roots. Avoids overflow for high degrees.
    double log_abs(double x) const;

private:
    Kind kind_ = Kind::Monomial;
    int degree_ = 0;
    double shift_ = 0.0;
    double scale_ = 1.0;
    Vec coeffs_;
};

/// T_ell(t): cos / cosh closed forms away from |t| = 1, three-term recurrence inside a
/// guard band of width 1e-8 around |t| = 1.
double chebyshev_t(int ell, double t);

/// Basis of A^q(W0): q steps of multiplication by A, each followed by re-orthonormalization.
/// Throws GenericityError if the dimension falls below min_dim.
OrthonormalBasis sim_iterate(const EigenModel& model, const OrthonormalBasis& W0, int q, Index min_dim = 0);

/// Incrementally built block Krylov space W + A(W) + ... + A^q(W), orthogonalized by two
/// passes of block classical Gram-Schmidt with rank truncation per block.
class BlockKrylov {
public:
    BlockKrylov(const Mat& A, const OrthonormalBasis& W0, double rank_tol = 1e-10);

    /// Adds A^{q+1}(W) to the space; returns the number of new directions.
    Index extend();

    int steps() const { return steps_; }
    Index dim() const { return basis_.cols(); }
    const Mat& basis_matrix() const { return basis_; }
    OrthonormalBasis basis() const { return OrthonormalBasis(basis_); }
    /// A times the basis, maintained alongside the basis.
    const Mat& image() const { return image_; }

private:
    const Mat* A_;
    double rank_tol_;
    Mat basis_;
    Mat image_;
    Index last_first_ = 0;
    Index last_count_ = 0;
    int steps_ = 0;
};

OrthonormalBasis krylov_subspace(const EigenModel& model, const OrthonormalBasis& W0, int q,
                                 double rank_tol = 1e-10);

struct HpReport {
    OrthonormalBasis H;
    double aux_residual = 0.0;  // max |x_i^T H| over the excluded eigenvectors
    double min_sv_j = 0.0;      // sigma_min(X_j^T H), positive iff H^perp ∩ X_j = {0}
    double min_sv_k = 0.0;      // sigma_min(X_k^T H), positive iff H ∩ X_k^perp = {0}
};

/// H_p ⊆ W orthogonal to x_{j+1..j+p1} and x_{k+1..k+p2}, dim H_p = r - p1 - p2.
/// Verifies the genericity hypotheses and the four defining conditions; throws
/// GenericityError when one fails.
HpReport construct_Hp_report(const OrthonormalBasis& W, const OversamplingSplit& split, const AdmissibleClass& cls);

inline OrthonormalBasis construct_Hp(const OrthonormalBasis& W, const OversamplingSplit& split,
                                     const AdmissibleClass& cls)
{
    return construct_Hp_report(W, split, cls).H;
}

/// The two scalar factors ||phi(Lambda_j)^{-1}|| ||phi(Lambda_{j+p1,perp})|| and
/// ||phi(Lambda_k)^{-1}|| ||phi(Lambda_{k+p2,perp})|| (spectral norms), with the omission
/// rules applied (zero coefficient when a term is dropped).
struct FilterCoefficients {
    double coeff_j = 0.0;
    double coeff_k = 0.0;
    bool omit_j = false;
    bool omit_k = false;
};

FilterCoefficients filter_coefficients(const PolynomialFilter& phi, const OversamplingSplit& split,
                                       const AdmissibleClass& cls);

struct FilterBoundReport {
    double bound_j_term = 0.0;
    double bound_k_term = 0.0;
    double total = 0.0;
    double tan_j = 0.0;  // ||tan Theta(X_j, H_p)||
    double tan_k = 0.0;  // ||tan Theta(X_k, H_p)||
    FilterCoefficients coeffs;
    OrthonormalBasis H;
    /// ||sin Theta(S, phi(A)(W))|| with S = nearest_admissible(phi(A)(H_p)); never exceeds total.
    double measured = 0.0;
    /// ||sin Theta(S', phi(A)(W))|| with S' = nearest_admissible(phi(A)(W)); NaN if undefined.
    double measured_direct = 0.0;
};

FilterBoundReport filtered_distance_bound(const OrthonormalBasis& W, const OversamplingSplit& split,
                                          const PolynomialFilter& phi, const AdmissibleClass& cls, Norm norm);

/// Basis of range(phi(A) H), computed in the eigenbasis. Monomial and Chebyshev filters are
/// applied one linear factor at a time with re-orthonormalization in between, so directions
/// that phi shrinks strongly keep their accuracy.
OrthonormalBasis filter_subspace(const EigenModel& model, const PolynomialFilter& phi, const Mat& H);

/// One filtering step in eigen-coordinates: basis of range(diag(d) Y).
Mat scaled_orthonormal_step(const Vec& d, const Mat& Y);

/// phi_ell(x) = T_ell((x - lambda_n) / (lambda_{k+p2+1} - lambda_n)).
PolynomialFilter chebyshev_filter(const AdmissibleClass& cls, Index p2, int degree);

}  // namespace ladm
