#include "qcl/chains.hpp"

#include <algorithm>
#include <cstdio>

namespace qcl::chains {

LatticePath pitman_transform(const LatticePath& path) {
    if (path.empty() || path.front() != 0)
        throw std::invalid_argument("pitman_transform: path must start at 0");
    LatticePath out(path.size());
    std::int64_t running_min = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0 && std::abs(path[i] - path[i - 1]) != 1)
            throw std::invalid_argument("pitman_transform: increments must be +-1");
        running_min = std::min(running_min, path[i]);
        out[i] = path[i] - 2 * running_min;
    }
    return out;
}

std::vector<std::int64_t> simulate_radial_endpoints(int n, std::size_t n_paths, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("simulate_radial_endpoints: n must be >= 0");
    std::vector<std::int64_t> out(n_paths);
    constexpr std::size_t kChunk = 1024;
    for_each_chunk(chunk_count(n_paths, kChunk), [&](std::size_t c) {
        const std::size_t end = std::min(n_paths, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            Rng rng = make_stream(seed, i);
            std::int64_t l = 0;
            for (int step = 0; step < n; ++step) {
                const double up = static_cast<double>(l + 2) / static_cast<double>(2 * (l + 1));
                l += uniform01(rng) < up ? 1 : -1;
            }
            out[i] = l;
        }
    });
    return out;
}

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_distribution_csv(std::ostream& os, int n, const Distribution<std::int64_t, double>& d) {
    os << "n,lambda,prob\n";
    for (const auto& [l, p] : d) os << n << ',' << l << ',' << fmt(p) << '\n';
}

void write_distribution_csv(std::ostream& os, int n, const Distribution<JointState, double>& d) {
    os << "n,omega,lambda,prob\n";
    for (const auto& [s, p] : d) os << n << ',' << s.omega << ',' << s.lambda << ',' << fmt(p) << '\n';
}

}  // namespace qcl::chains
