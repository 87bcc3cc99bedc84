#pragma once

// Crystal bases B(Lambda) of sl2 and the Kashiwara tensor-product rule.
// Weights are exact integers in units of hbar.

#include <cstdint>
#include <map>
#include <vector>

#include "qcl/params.hpp"
#include "qcl/polynomial.hpp"

namespace qcl::crystal {

struct Element {
    std::int64_t component;  // highest weight of the component, units of hbar
    std::int64_t wt;         // weight, units of hbar; component - wt is even and >= 0

    friend bool operator==(const Element&, const Element&) = default;
};

struct TensorValue {
    std::int64_t hw;
    std::int64_t wt;

    friend bool operator==(const TensorValue&, const TensorValue&) = default;
};

/// {-Lambda, -Lambda + 2hbar, ..., Lambda} in increasing weight order.
std::vector<Element> basis(HighestWeight hw);

/// hw(b1 (x) b2) = max(Lambda1 + wt(b2), -wt(b1) + Lambda2), wt = wt(b1) + wt(b2).
TensorValue tensor_rule(const Element& b1, const Element& b2);

/// Highest weight (units of hbar) -> number of copies in B(Lambda1) (x) B(Lambda2).
/// Throws std::logic_error if a level set is not a union of whole components.
std::map<std::int64_t, std::int64_t> decompose_tensor(HighestWeight hw1, HighestWeight hw2);

/// Components of B(hbar)^{(x) n}: highest weight -> multiplicity, by iterating the tensor rule.
std::map<std::int64_t, std::int64_t> decompose_power(int n);

/// Normalized sum of phi(hw) psi(wt) over B(Lambda1) (x) B(Lambda2), arguments in real units.
double expectation(HighestWeight hw1, HighestWeight hw2, const Polynomial& phi,
                   const Polynomial& psi);

/// Continuum limit of `expectation`: mu_i uniform on [-Lambda_i, Lambda_i],
/// E phi(max(Lambda1 + mu2, Lambda2 - mu1)) psi(mu1 + mu2), by Gauss-Legendre cut along the kink.
double continuum_expectation(double lambda1, double lambda2, const Polynomial& phi, const Polynomial& psi,
                             int nodes = 24);

/// (1/r) log(e^{ra} + e^{rb}), evaluated as max(a,b) + log1p(exp(-r|a-b|))/r.
double trop_log_sum(double a, double b, double r);

}  // namespace qcl::crystal
