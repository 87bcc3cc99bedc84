#pragma once

// Empirical distributions, Kolmogorov-Smirnov distances, chi-square tests and
// Gauss-Legendre quadrature with kink splitting.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qcl::stats {

/// Right-continuous empirical CDF of a sample.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> sample);

    double operator()(double x) const;
    std::span<const double> sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

/// sup |F_n - F| over both one-sided gaps at the sample points. Throws on an empty sample.
double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf);

/// Two-sample statistic sup |F_n - G_m|.
double ks_two_sample(const Ecdf& a, const Ecdf& b);

/// 5% asymptotic one-sample threshold 1.36/sqrt(n).
double ks_threshold(std::size_t n);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

Estimate mean_stderr(std::span<const double> x);

/// Running sums that merge in a fixed order; used to reduce chunked Monte Carlo.
struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    void merge(const Accumulator& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
    Estimate estimate() const;
};

struct Chi2Result {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::size_t cells = 0;  // after merging
};

/// Pearson chi-square against expected probabilities. Adjacent cells are merged
/// until every expected count is at least 5. Throws when fewer than two cells remain.
Chi2Result chi2_test(std::span<const std::uint64_t> observed, std::span<const double> expected);

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], increasing
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Gauss-Legendre on [a, b], split at the interior breakpoints.
double quad1d(const std::function<double(double)>& f, double a, double b, int n_nodes,
              std::span<const double> breaks = {});

/// Tensor Gauss-Legendre over [a1,b1] x [a2,b2]. With kink_sum = c the rectangle is cut
/// along x + y = c so each piece is smooth.
double quad2d(const std::function<double(double, double)>& f, double a1, double b1, double a2,
              double b2, int n_nodes, std::optional<double> kink_sum = std::nullopt);

}  // namespace qcl::stats
