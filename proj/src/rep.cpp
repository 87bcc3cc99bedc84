#include "qcl/rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

namespace qcl {

namespace {

void require_curved(const Params& p, const char* what) {
    if (!(p.r > 0.0))
        throw std::invalid_argument(std::string(what) +
                                    " requires r > 0 (use flat_lambda_matrix at r = 0)");
}

// rhbar / sinh(rhbar), with the r -> 0 limit.
double casimir_scale(const Params& p) {
    const double x = p.r * p.hbar;
    return x == 0.0 ? 1.0 : x / std::sinh(x);
}

double relative(double residual, double scale) { return residual / std::max(1.0, scale); }

Vector diag_of(const Matrix& m) { return m.diagonal(); }

// E coefficient on e_{hbar k} -> e_{hbar(k+2)} in V(Lambda), Lambda = hbar*steps.
double raising_coefficient(std::int64_t steps, std::int64_t k, const Params& p) {
    const double lam = p.hbar * static_cast<double>(steps);
    if (p.flat()) {
        const double a = lam + p.hbar;
        const double b = p.hbar * static_cast<double>(k + 1);
        return 0.5 * std::sqrt((a - b) * (a + b));
    }
    const double alpha = (1.0 / (2.0 * p.r)) * std::sqrt(casimir_scale(p));
    const double a = p.r * (lam + p.hbar);
    const double b = p.r * p.hbar * static_cast<double>(k + 1);
    // 2cosh(a) - 2cosh(b) = 4 sinh((a+b)/2) sinh((a-b)/2)
    return alpha * std::sqrt(4.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (a - b)));
}

}  // namespace

std::vector<int> Rep::weight_steps() const {
    std::vector<int> out(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i)
        out[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(H(i, i) / params.hbar));
    return out;
}

Rep build_irrep(HighestWeight hw, const Params& p) {
    const Params checked = Params::make(p.r, p.hbar);
    if (std::abs(hw.hbar() - p.hbar) > 1e-12 * p.hbar)
        throw std::invalid_argument("highest weight lattice does not match params.hbar");
    const std::int64_t n = hw.steps();
    const Eigen::Index d = static_cast<Eigen::Index>(n + 1);

    Rep rep;
    rep.params = checked;
    rep.factors = {hw};
    rep.exp_half = Matrix::Zero(d, d);
    rep.H = Matrix::Zero(d, d);
    rep.E = Matrix::Zero(d, d);
    rep.F = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::int64_t k = -n + 2 * static_cast<std::int64_t>(i);
        rep.H(i, i) = p.hbar * static_cast<double>(k);
        rep.exp_half(i, i) = std::exp(0.5 * p.r * p.hbar * static_cast<double>(k));
        if (i + 1 < d) {
            const double c = raising_coefficient(n, k, p);
            rep.E(i + 1, i) = c;
            rep.F(i, i + 1) = c;
        }
    }
    return rep;
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 512 && m.cols() <= 512) {
        Eigen::BDCSVD<Matrix> svd(m);
        return svd.singularValues()(0);
    }
    return m.norm();
}

double verify_relations(const Rep& rep) {
    const Params& p = rep.params;
    const Vector h = diag_of(rep.H);
    const auto Hd = h.asDiagonal();

    const Matrix he = Hd * rep.E, eh = rep.E * Hd;
    const Matrix hf = Hd * rep.F, fh = rep.F * Hd;
    const double r1 = relative(operator_norm(he - eh - 2.0 * p.hbar * rep.E),
                               std::max(operator_norm(he), operator_norm(eh)));
    const double r2 = relative(operator_norm(hf - fh + 2.0 * p.hbar * rep.F),
                               std::max(operator_norm(hf), operator_norm(fh)));

    Vector bracket(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i)
        bracket(i) = p.flat() ? p.hbar * h(i) : p.hbar * std::sinh(p.r * h(i)) / p.r;
    const Matrix ef = rep.E * rep.F, fe = rep.F * rep.E;
    const Matrix rhs = bracket.asDiagonal();
    const double r3 = relative(operator_norm(ef - fe - rhs),
                               std::max({operator_norm(ef), operator_norm(fe), operator_norm(rhs)}));

    Vector expected(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) expected(i) = std::exp(0.5 * p.r * h(i));
    const Matrix expected_m = expected.asDiagonal();
    const double r4 =
        relative(operator_norm(rep.exp_half - expected_m), operator_norm(expected_m));

    return std::max({r1, r2, r3, r4});
}

Matrix casimir_matrix(const Rep& rep) {
    const Params& p = rep.params;
    require_curved(p, "casimir_matrix");
    const Vector h = diag_of(rep.H);
    Vector diag(h.size());
    // e^{r hbar} K + e^{-r hbar} K^{-1} with K = e^{-rH}
    for (Eigen::Index i = 0; i < h.size(); ++i)
        diag(i) = 2.0 * std::cosh(p.r * (p.hbar - h(i)));
    Matrix c = 2.0 * p.r * p.r * (rep.E * rep.F);
    c.diagonal() += 0.5 * casimir_scale(p) * diag;
    return c;
}

namespace detail {

// sinh(r hbar)/(r hbar) * C - 1, assembled without cancellation. Its eigenvalue on
// V(Lambda) is cosh(r(Lambda + hbar)) - 1.
Matrix casimir_excess_matrix(const Rep& rep) {
    const Params& p = rep.params;
    const Vector h = diag_of(rep.H);
    Matrix c = (2.0 * p.r * p.r / casimir_scale(p)) * (rep.E * rep.F);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double s = std::sinh(0.5 * p.r * (p.hbar - h(i)));
        c(i, i) += 2.0 * s * s;
    }
    return c;
}

double lambda_from_excess(double excess, const Params& p) {
    const double e = std::max(excess, 0.0);
    return std::log1p(e + std::sqrt(e * (2.0 + e))) / p.r - p.hbar;
}

Matrix flat_casimir_square(const Rep& rep) {
    const Params& p = rep.params;
    Matrix inner = 2.0 * (rep.E * rep.F) + 2.0 * (rep.F * rep.E);
    inner.diagonal() += diag_of(rep.H).cwiseAbs2();
    inner.diagonal().array() += p.hbar * p.hbar;
    const double asym = (inner - inner.transpose()).norm();
    if (asym > 1e-12 * std::max(1.0, inner.norm()))
        throw std::logic_error("flat Casimir is not symmetric (residual " + std::to_string(asym) +
                               ")");
    return inner;
}

}  // namespace detail

double casimir_constant(double lambda, const Params& p) {
    require_curved(p, "casimir_constant");
    return casimir_scale(p) * std::cosh(p.r * (lambda + p.hbar));
}

double lambda_from_casimir(double c, const Params& p) {
    require_curved(p, "lambda_from_casimir");
    const double x = c / casimir_scale(p);
    if (!(x >= 1.0))
        throw std::domain_error("lambda_from_casimir: Argcosh argument " + std::to_string(x) +
                                " < 1");
    const double lam = std::acosh(x) / p.r - p.hbar;
    if (lam < -1e-9 * std::max(1.0, p.hbar))
        throw std::domain_error("lambda_from_casimir: value " + std::to_string(lam) +
                                " lies below the weight lattice");
    return std::max(lam, 0.0);
}

Matrix symmetric_function(const Matrix& m, const std::function<double(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    Vector fv = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().transpose();
}

Matrix flat_lambda_matrix(const Rep& rep) {
    if (!rep.params.flat())
        throw std::invalid_argument("flat_lambda_matrix requires a representation built at r = 0");
    const double hbar = rep.params.hbar;
    return symmetric_function(detail::flat_casimir_square(rep),
                              [hbar](double x) { return std::sqrt(std::max(x, 0.0)) - hbar; });
}

Matrix lambda_matrix(const Rep& rep) {
    if (rep.params.flat()) return flat_lambda_matrix(rep);
    const Params p = rep.params;
    return symmetric_function(detail::casimir_excess_matrix(rep),
                              [p](double e) { return detail::lambda_from_excess(e, p); });
}

Rep coproduct(const Rep& a, const Rep& b) {
    if (!(a.params == b.params))
        throw std::invalid_argument("coproduct: parameter mismatch between factors");
    const Eigen::Index da = a.dim(), db = b.dim();
    const Matrix ia = Matrix::Identity(da, da), ib = Matrix::Identity(db, db);
    Matrix a_inv = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) a_inv(i, i) = 1.0 / a.exp_half(i, i);

    Rep out;
    out.params = a.params;
    out.factors = a.factors;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    out.exp_half = Eigen::kroneckerProduct(a.exp_half, b.exp_half);
    out.E = Eigen::kroneckerProduct(a.E, b.exp_half);
    out.E += Eigen::kroneckerProduct(a_inv, b.E);
    out.F = Eigen::kroneckerProduct(a.F, b.exp_half);
    out.F += Eigen::kroneckerProduct(a_inv, b.F);
    out.H = Eigen::kroneckerProduct(a.H, ib);
    out.H += Eigen::kroneckerProduct(ia, b.H);
    return out;
}

double character_ratio(const Rep& rep, Monomial m) {
    const Params& p = rep.params;
    require_curved(p, "character_ratio");
    if (m.a < 0 || m.b < 0 || m.c < 0) throw std::invalid_argument("monomial powers must be >= 0");
    const Vector h = diag_of(rep.H);
    const double hmax = h.maxCoeff();

    using Sparse = Eigen::SparseMatrix<double>;
    const Eigen::Index d = rep.dim();
    Sparse prod(d, d);
    prod.setIdentity();
    const Sparse es = rep.E.sparseView(), fs = rep.F.sparseView();
    for (int i = 0; i < m.a; ++i) prod = Sparse(prod * es);
    for (int i = 0; i < m.b; ++i) prod = Sparse(prod * fs);

    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double w = std::exp(p.r * (h(i) - hmax));
        num += w * prod.coeff(i, i) * std::pow(h(i), m.c);
        den += w;
    }
    return num / den;
}

Rep map_from_standard_presentation(const Matrix& std_k, const Matrix& std_e, const Matrix& std_f,
                                   const Params& p) {
    require_curved(p, "map_from_standard_presentation");
    const Eigen::Index d = std_k.rows();
    if (std_k.cols() != d || std_e.rows() != d || std_e.cols() != d || std_f.rows() != d ||
        std_f.cols() != d)
        throw std::invalid_argument("standard generators must be square of equal size");
    const Vector k = std_k.diagonal();
    if ((std_k - Matrix(k.asDiagonal())).norm() > 0.0 || (k.array() <= 0.0).any())
        throw std::invalid_argument("standard K must be diagonal positive");

    const double Q = std::exp(-p.r * p.hbar);
    const Vector kh = k.cwiseSqrt();
    const Matrix conj_e = kh.asDiagonal() * std_e * kh.cwiseInverse().asDiagonal();
    const Matrix conj_f = kh.asDiagonal() * std_f * kh.cwiseInverse().asDiagonal();
    const Matrix bracket = Matrix((k - k.cwiseInverse()).asDiagonal()) / (Q - 1.0 / Q);
    const Matrix ef = std_e * std_f, fe = std_f * std_e;
    const double res = std::max(
        {relative(operator_norm(conj_e - Q * std_e), operator_norm(std_e)),
         relative(operator_norm(conj_f - std_f / Q), operator_norm(std_f)),
         relative(operator_norm(ef - fe - bracket),
                  std::max({operator_norm(ef), operator_norm(fe), operator_norm(bracket)}))});
    if (res > 1e-10)
        throw std::invalid_argument("standard generators violate U_q(sl2) relations (residual " +
                                    std::to_string(res) + ")");

    const double scale = std::sqrt(p.hbar * (1.0 / Q - Q) / (2.0 * p.r));
    Rep rep;
    rep.params = p;
    rep.H = Matrix::Zero(d, d);
    rep.exp_half = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        rep.H(i, i) = -std::log(k(i)) / p.r;
        rep.exp_half(i, i) = 1.0 / kh(i);
    }
    rep.E = scale * std_e;
    rep.F = scale * std_f;
    const double top = d > 0 ? rep.H.diagonal().maxCoeff() : 0.0;
    rep.factors = {HighestWeight::exact(std::max(top, 0.0), p.hbar)};
    return rep;
}

Vector block_eigenvalues(const Matrix& m, const Rep& rep) {
    std::map<int, std::vector<Eigen::Index>> blocks;
    const auto w = rep.weight_steps();
    for (std::size_t i = 0; i < w.size(); ++i)
        blocks[w[i]].push_back(static_cast<Eigen::Index>(i));
    std::vector<double> all;
    all.reserve(w.size());
    for (const auto& [weight, idx] : blocks) {
        const auto n = static_cast<Eigen::Index>(idx.size());
        Matrix sub(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = m(idx[i], idx[j]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < n; ++i) all.push_back(es.eigenvalues()(i));
    }
    std::sort(all.begin(), all.end());
    return Eigen::Map<Vector>(all.data(), static_cast<Eigen::Index>(all.size()));
}

}  // namespace qcl
