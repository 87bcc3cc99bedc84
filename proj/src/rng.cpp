#include "qcl/rng.hpp"

#include <cstdlib>
#include <string>

namespace qcl {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("QCL_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(raw, &pos, 0);
        if (pos != std::string(raw).size()) return std::nullopt;
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace qcl
