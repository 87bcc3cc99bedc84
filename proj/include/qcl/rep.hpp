#pragma once

// Matrix representations of U_q^hbar(sl2) in the weight basis, the coproduct
// Delta_r, the Casimir C^{r,hbar} and the highest-weight operator Lambda^{r,hbar}.
//
// Basis index i of V(Lambda) carries weight hbar*k with k = -Lambda/hbar + 2i.
// Tensor products use Kronecker ordering: the last factor is the fastest index.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qcl/params.hpp"

namespace qcl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A finite-dimensional representation built from irreducibles through Delta_r.
/// `factors.size() == 1` is an irreducible V(Lambda^hbar).
struct Rep {
    Params params;
    std::vector<HighestWeight> factors;

    /// Represented e^{rH/2}. The algebra generator K^{1/2} = e^{-rH/2} is its inverse.
    /// Identity when r = 0.
    Matrix exp_half;
    Matrix E;
    Matrix F;
    /// Diagonal weight operator H (entries hbar*k).
    Matrix H;

    Eigen::Index dim() const { return E.rows(); }
    bool irreducible() const { return factors.size() == 1; }
    /// Weights as lattice integers k (H = hbar*k), in basis order.
    std::vector<int> weight_steps() const;
};

Rep build_irrep(HighestWeight hw, const Params& p);

/// Max relative residual over [H,E]-2hbar E, [H,F]+2hbar F,
/// EF-FE-hbar sinh(rH)/r (hbar H at r=0) and exp_half - e^{rH/2}.
/// Each residual is divided by max(1, norm of the largest term involved).
double verify_relations(const Rep& rep);

/// C^{r,hbar} on the representation space. Requires r > 0.
Matrix casimir_matrix(const Rep& rep);

/// Scalar by which C^{r,hbar} acts on V(Lambda^hbar). Requires r > 0.
double casimir_constant(double lambda, const Params& p);
inline double casimir_constant(HighestWeight hw, const Params& p) {
    return casimir_constant(hw.value(), p);
}

/// Inverse of casimir_constant: (1/r) Argcosh(sinh(r hbar)/(r hbar) * c) - hbar.
/// Throws std::domain_error when the Argcosh argument is below 1 or the result is
/// below the lattice (Lambda < 0).
double lambda_from_casimir(double c, const Params& p);

/// sqrt(2EF + 2FE + H^2 + hbar^2) - hbar for a representation built at r = 0.
Matrix flat_lambda_matrix(const Rep& rep);

/// Lambda^{r,hbar} as an operator: spectral lambda_from_casimir for r > 0,
/// flat_lambda_matrix for r = 0.
Matrix lambda_matrix(const Rep& rep);

/// Delta_r applied to the pair (a, b): the representation on a (x) b.
Rep coproduct(const Rep& a, const Rep& b);

struct Monomial {
    int a = 0;  // power of E
    int b = 0;  // power of F
    int c = 0;  // power of H
};

/// Tr(e^{rH} E^a F^b H^c) / Tr(e^{rH}). Requires r > 0.
double character_ratio(const Rep& rep, Monomial m);

/// Rescale a representation of the standard presentation U_{q^hbar}(sl2)
/// (K = Q^{H_std}, Q = e^{-r hbar}) into U_q^hbar(sl2). Requires r > 0.
/// Throws std::invalid_argument when the inputs violate the standard relations.
Rep map_from_standard_presentation(const Matrix& std_k, const Matrix& std_e, const Matrix& std_f,
                                   const Params& p);

/// f(M) for a symmetric matrix via eigendecomposition.
Matrix symmetric_function(const Matrix& m, const std::function<double(double)>& f);

/// Largest singular value for small matrices; Frobenius upper bound above 512 rows.
double operator_norm(const Matrix& m);

/// Eigenvalues of a matrix that commutes with the diagonal H, computed block by weight.
Vector block_eigenvalues(const Matrix& m, const Rep& rep);

}  // namespace qcl

namespace qcl::detail {

// sinh(r hbar)/(r hbar) * C - 1 built without cancellation; acts on V(Lambda) as
// cosh(r(Lambda + hbar)) - 1. Used where Lambda must be read off small curvatures.
Matrix casimir_excess_matrix(const Rep& rep);
double lambda_from_excess(double excess, const Params& p);

// 2EF + 2FE + H^2 + hbar^2, acting on flat V(Lambda) as (Lambda + hbar)^2.
Matrix flat_casimir_square(const Rep& rep);

}  // namespace qcl::detail
