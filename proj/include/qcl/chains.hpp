#pragma once

// Markov kernels on lattice states: the radial (Pitman) kernel Q, the joint kernels on
// (omega, lambda) for q in [0, 1) and the flat q -> 1 limit, exact evolution and
// simulation. Probability types are double or Rational (exact evolution).

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcl/parallel.hpp"
#include "qcl/rng.hpp"

namespace qcl::chains {

using Rational = boost::multiprecision::cpp_rational;

/// Positions in units of one step; starts at 0 with increments +-1.
using LatticePath = std::vector<std::int64_t>;

/// Lambda_n = X_n - 2 min_{k <= n} X_k. Throws on a path not starting at 0 or with
/// increments other than +-1.
LatticePath pitman_transform(const LatticePath& path);

struct JointState {
    std::int64_t omega = 0;
    std::int64_t lambda = 0;

    friend auto operator<=>(const JointState&, const JointState&) = default;
};

template <class State, class P = double>
using Row = std::vector<std::pair<State, P>>;

template <class State, class P = double>
struct Kernel {
    std::string name;
    std::function<Row<State, P>(const State&)> row;
};

template <class State, class P = double>
using Distribution = std::map<State, P>;

namespace detail {

template <class P>
P power(const P& q, std::int64_t k) {
    // 0^0 = 1
    P out = 1;
    for (std::int64_t i = 0; i < k; ++i) out *= q;
    return out;
}

template <class P>
void require_unit_interval(const P& q) {
    if (!(q >= 0 && q < 1)) throw std::invalid_argument("kernel_joint_q: q must lie in [0, 1)");
}

template <class State, class P>
Row<State, P> positive(std::initializer_list<std::pair<State, P>> entries) {
    Row<State, P> out;
    for (const auto& e : entries)
        if (e.second > 0) out.push_back(e);
    return out;
}

}  // namespace detail

/// Q(l, l+1) = (l+2)/(2(l+1)), Q(l, l-1) = l/(2(l+1)).
template <class P = double>
std::array<P, 2> radial_probabilities(std::int64_t lambda) {
    if (lambda < 0) throw std::invalid_argument("radial state must be >= 0");
    const P den = P(2 * (lambda + 1));
    return {P(lambda + 2) / den, P(lambda) / den};
}

template <class P = double>
Kernel<std::int64_t, P> kernel_radial() {
    return {"radial", [](const std::int64_t& l) {
                const auto p = radial_probabilities<P>(l);
                return detail::positive<std::int64_t, P>({{l + 1, p[0]}, {l - 1, p[1]}});
            }};
}

/// Probabilities of (w+1, l+1), (w-1, l+1), (w+1, l-1), (w-1, l-1) for q in [0, 1).
template <class P = double>
std::array<P, 4> joint_q_probabilities(const P& q, std::int64_t omega, std::int64_t lambda) {
    detail::require_unit_interval(q);
    if (lambda < 0 || omega < -lambda || omega > lambda || (lambda - omega) % 2 != 0)
        throw std::invalid_argument("invalid joint state");
    const std::int64_t d = lambda - omega;
    const P top = detail::power(q, 2 * (lambda + 1));
    const P den = 2 * (P(1) - top);
    return {(detail::power(q, d) - top) / den, (P(1) - detail::power(q, d + 2)) / den,
            (P(1) - detail::power(q, d)) / den, (detail::power(q, d + 2) - top) / den};
}

/// Flat joint kernel, denominator 4(l+1).
template <class P = double>
std::array<P, 4> joint_flat_probabilities(std::int64_t omega, std::int64_t lambda) {
    if (lambda < 0 || omega < -lambda || omega > lambda || (lambda - omega) % 2 != 0)
        throw std::invalid_argument("invalid joint state");
    const P den = P(4 * (lambda + 1));
    return {P(lambda + omega + 2) / den, P(lambda - omega + 2) / den, P(lambda - omega) / den,
            P(lambda + omega) / den};
}

namespace detail {

template <class P>
Row<JointState, P> joint_row(const std::array<P, 4>& p, const JointState& s, bool flip) {
    const std::int64_t sign = flip ? -1 : 1;
    const std::int64_t w = s.omega, l = s.lambda;
    return positive<JointState, P>({{{w + sign, l + 1}, p[0]},
                                    {{w - sign, l + 1}, p[1]},
                                    {{w + sign, l - 1}, p[2]},
                                    {{w - sign, l - 1}, p[3]}});
}

}  // namespace detail

/// With flip_sign the state carries X = -omega, so that lambda = Pitman(X) at q = 0.
template <class P = double>
Kernel<JointState, P> kernel_joint_q(P q, bool flip_sign = false) {
    detail::require_unit_interval(q);
    return {"joint_q", [q, flip_sign](const JointState& s) {
                const std::int64_t omega = flip_sign ? -s.omega : s.omega;
                return detail::joint_row(joint_q_probabilities<P>(q, omega, s.lambda), s, flip_sign);
            }};
}

template <class P = double>
Kernel<JointState, P> kernel_joint_flat() {
    return {"joint_flat", [](const JointState& s) {
                return detail::joint_row(joint_flat_probabilities<P>(s.omega, s.lambda), s, false);
            }};
}

template <class State, class P>
Distribution<State, P> evolve(const Kernel<State, P>& k, const Distribution<State, P>& d0, int n) {
    if (n < 0) throw std::invalid_argument("evolve: n must be >= 0");
    Distribution<State, P> cur = d0;
    for (int step = 0; step < n; ++step) {
        Distribution<State, P> next;
        for (const auto& [s, mass] : cur)
            for (const auto& [t, p] : k.row(s)) next[t] += mass * p;
        cur = std::move(next);
    }
    return cur;
}

template <class State, class P>
P total_mass(const Distribution<State, P>& d) {
    P acc = 0;
    for (const auto& [s, m] : d) acc += m;
    return acc;
}

template <class P>
Distribution<std::int64_t, P> lambda_marginal(const Distribution<JointState, P>& d) {
    Distribution<std::int64_t, P> out;
    for (const auto& [s, m] : d) out[s.lambda] += m;
    return out;
}

template <class P>
Distribution<std::int64_t, P> omega_marginal(const Distribution<JointState, P>& d) {
    Distribution<std::int64_t, P> out;
    for (const auto& [s, m] : d) out[s.omega] += m;
    return out;
}

/// Law of omega given lambda at time n under the flat kernel from (0, 0).
/// Throws when the conditioning event has zero mass.
template <class P = double>
Distribution<std::int64_t, P> conditional_law(int n, std::int64_t lambda) {
    const auto d = evolve(kernel_joint_flat<P>(), Distribution<JointState, P>{{{0, 0}, P(1)}}, n);
    Distribution<std::int64_t, P> out;
    P mass = 0;
    for (const auto& [s, m] : d)
        if (s.lambda == lambda) {
            out[s.omega] += m;
            mass += m;
        }
    if (!(mass > 0)) throw std::domain_error("conditional_law: lambda is not reachable at this time");
    for (auto& [w, m] : out) m /= mass;
    return out;
}

/// One trajectory of length n + 1 (including the start).
template <class State>
std::vector<State> simulate(const Kernel<State, double>& k, const State& start, int n, Rng& rng) {
    std::vector<State> path{start};
    path.reserve(static_cast<std::size_t>(n) + 1);
    State cur = start;
    for (int step = 0; step < n; ++step) {
        const auto row = k.row(cur);
        const double u = uniform01(rng);
        double acc = 0.0;
        cur = row.back().first;
        for (const auto& [t, p] : row) {
            acc += p;
            if (u < acc) {
                cur = t;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

/// n_paths trajectories; path i uses the stream derive_seed(seed, i).
template <class State>
std::vector<std::vector<State>> simulate_paths(const Kernel<State, double>& k, const State& start, int n,
                                               std::size_t n_paths, std::uint64_t seed) {
    std::vector<std::vector<State>> out(n_paths);
    constexpr std::size_t kChunk = 256;
    for_each_chunk(chunk_count(n_paths, kChunk), [&](std::size_t c) {
        const std::size_t end = std::min(n_paths, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            Rng rng = make_stream(seed, i);
            out[i] = simulate(k, start, n, rng);
        }
    });
    return out;
}

/// lambda_n of the radial chain from 0, for n_paths independent paths.
std::vector<std::int64_t> simulate_radial_endpoints(int n, std::size_t n_paths, std::uint64_t seed);

/// CSV rows "n,state...,prob" with 17 significant digits.
void write_distribution_csv(std::ostream& os, int n, const Distribution<std::int64_t, double>& d);
void write_distribution_csv(std::ostream& os, int n, const Distribution<JointState, double>& d);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace qcl::chains
