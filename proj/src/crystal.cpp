#include "qcl/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcl/stats.hpp"

namespace qcl::crystal {

std::vector<Element> basis(HighestWeight hw) {
    const std::int64_t n = hw.steps();
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (std::int64_t w = -n; w <= n; w += 2) out.push_back({n, w});
    return out;
}

TensorValue tensor_rule(const Element& b1, const Element& b2) {
    return {std::max(b1.component + b2.wt, -b1.wt + b2.component), b1.wt + b2.wt};
}

std::map<std::int64_t, std::int64_t> decompose_tensor(HighestWeight hw1, HighestWeight hw2) {
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& b1 : basis(hw1))
        for (const auto& b2 : basis(hw2)) ++counts[tensor_rule(b1, b2).hw];

    std::map<std::int64_t, std::int64_t> out;
    for (const auto& [hw, count] : counts) {
        if (count % (hw + 1) != 0)
            throw std::logic_error("crystal level set hw=" + std::to_string(hw) + " has " +
                                   std::to_string(count) + " elements, not a multiple of " +
                                   std::to_string(hw + 1));
        out[hw] = count / (hw + 1);
    }
    return out;
}

std::map<std::int64_t, std::int64_t> decompose_power(int n) {
    if (n < 0) throw std::invalid_argument("decompose_power: n must be >= 0");
    std::map<std::int64_t, std::int64_t> cur{{0, 1}};
    const auto leg = HighestWeight::from_steps(1, 1.0);
    for (int k = 0; k < n; ++k) {
        std::map<std::int64_t, std::int64_t> next;
        for (const auto& [hw, mult] : cur)
            for (const auto& [c, m] : decompose_tensor(HighestWeight::from_steps(hw, 1.0), leg))
                next[c] += mult * m;
        cur = std::move(next);
    }
    return cur;
}

double expectation(HighestWeight hw1, HighestWeight hw2, const Polynomial& phi,
                   const Polynomial& psi) {
    const double hbar = hw1.hbar();
    double acc = 0.0;
    for (const auto& b1 : basis(hw1))
        for (const auto& b2 : basis(hw2)) {
            const auto t = tensor_rule(b1, b2);
            acc += phi(hbar * static_cast<double>(t.hw)) * psi(hbar * static_cast<double>(t.wt));
        }
    return acc / static_cast<double>(hw1.dim() * hw2.dim());
}

double continuum_expectation(double lambda1, double lambda2, const Polynomial& phi, const Polynomial& psi,
                             int nodes) {
    if (!(lambda1 > 0 && lambda2 > 0)) throw std::invalid_argument("continuum_expectation: Lambda must be > 0");
    const auto f = [&](double m1, double m2) {
        return phi(std::max(lambda1 + m2, lambda2 - m1)) * psi(m1 + m2);
    };
    const double area = 4.0 * lambda1 * lambda2;
    return stats::quad2d(f, -lambda1, lambda1, -lambda2, lambda2, nodes, lambda2 - lambda1) / area;
}

double trop_log_sum(double a, double b, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("trop_log_sum requires r > 0");
    return std::max(a, b) + std::log1p(std::exp(-r * std::abs(a - b))) / r;
}

}  // namespace qcl::crystal
