#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace qcl {

using Rng = std::mt19937_64;

/// SplitMix64 mix of (seed, stream); independent streams for chunked parallel work.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(derive_seed(seed, stream));
}

/// Seed from the QCL_SEED environment variable, if set and parseable.
std::optional<std::uint64_t> seed_from_env();

}  // namespace qcl

namespace qcl {

/// Uniform on [0, 1) from the top 53 bits; identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace qcl
