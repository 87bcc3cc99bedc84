#include "qcl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace qcl::stats {

Ecdf::Ecdf(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); }))
        throw std::invalid_argument("Ecdf: sample contains NaN");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    if (sorted_.empty()) return 0.0;
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf) {
    const auto s = e.sorted();
    if (s.empty()) throw std::invalid_argument("ks_distance: empty sample");
    const auto n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size();) {
        // ties: F_n jumps once over the whole run
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        const double f = cdf(s[i]);
        d = std::max({d, static_cast<double>(j) / n - f, f - static_cast<double>(i) / n});
        i = j;
    }
    return d;
}

double ks_two_sample(const Ecdf& a, const Ecdf& b) {
    const auto x = a.sorted(), y = b.sorted();
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    const auto nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double ks_threshold(std::size_t n) { return 1.36 / std::sqrt(static_cast<double>(n)); }

Estimate Accumulator::estimate() const {
    if (n == 0) return {};
    const auto dn = static_cast<double>(n);
    const double mean = sum / dn;
    const double var = n > 1 ? std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0)) : 0.0;
    return {mean, std::sqrt(var / dn), n};
}

Estimate mean_stderr(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean_stderr: empty sample");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const auto n = static_cast<double>(x.size());
    const double var = x.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n), x.size()};
}

Chi2Result chi2_test(std::span<const std::uint64_t> observed, std::span<const double> expected) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi2_test: observed and expected differ in length");
    double total = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] >= 0.0)) throw std::invalid_argument("chi2_test: negative expectation");
        total += static_cast<double>(observed[i]);
        mass += expected[i];
    }
    if (total <= 0.0 || mass <= 0.0) throw std::invalid_argument("chi2_test: empty input");

    std::vector<double> obs, exp;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += static_cast<double>(observed[i]);
        e_acc += expected[i] / mass * total;
        if (e_acc >= 5.0) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp.empty()) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
        } else {
            obs.back() += o_acc;
            exp.back() += e_acc;
        }
    }
    if (obs.size() < 2) throw std::invalid_argument("chi2_test: fewer than two cells after merging");

    Chi2Result res;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double d = obs[i] - exp[i];
        res.statistic += d * d / exp[i];
    }
    res.cells = obs.size();
    res.dof = static_cast<int>(obs.size()) - 1;
    res.p_value = boost::math::gamma_q(0.5 * res.dof, 0.5 * res.statistic);
    return res;
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -z;
        rule.nodes[hi] = z;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

namespace {

double apply_rule(const GaussRule& g, const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(c + h * g.nodes[i]);
    return acc * h;
}

std::vector<double> pieces(double a, double b, std::span<const double> breaks) {
    std::vector<double> cuts{a};
    for (double x : breaks)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

void require_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a <= b))
        throw std::invalid_argument("quadrature: invalid bounds");
}

}  // namespace

double quad1d(const std::function<double(double)>& f, double a, double b, int n_nodes,
              std::span<const double> breaks) {
    require_interval(a, b);
    const GaussRule g = gauss_legendre(n_nodes);
    const auto cuts = pieces(a, b, breaks);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += apply_rule(g, f, cuts[i], cuts[i + 1]);
    return acc;
}

double quad2d(const std::function<double(double, double)>& f, double a1, double b1, double a2,
              double b2, int n_nodes, std::optional<double> kink_sum) {
    require_interval(a1, b1);
    require_interval(a2, b2);
    const GaussRule g = gauss_legendre(n_nodes);
    std::vector<double> outer_breaks;
    if (kink_sum) outer_breaks = {*kink_sum - a2, *kink_sum - b2};
    const auto outer = pieces(a1, b1, outer_breaks);

    auto inner = [&](double x) {
        std::vector<double> cuts{a2, b2};
        if (kink_sum) {
            const double y = *kink_sum - x;
            if (y > a2 && y < b2) cuts.insert(cuts.begin() + 1, y);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            acc += apply_rule(g, [&](double y) { return f(x, y); }, cuts[i], cuts[i + 1]);
        return acc;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) acc += apply_rule(g, inner, outer[i], outer[i + 1]);
    return acc;
}

}  // namespace qcl::stats
