#pragma once

#include <cstdint>

namespace qcl {

/// Curvature r >= 0 and Planck constant hbar > 0. The deformation parameter is q = e^{-r}.
struct Params {
    double r = 1.0;
    double hbar = 1.0;

    /// Validating constructor; throws std::invalid_argument on r < 0 or hbar <= 0.
    static Params make(double r, double hbar);

    double q() const;
    bool flat() const { return r == 0.0; }

    friend bool operator==(const Params&, const Params&) = default;
};

/// A highest weight Lambda^hbar = hbar * steps, stored as an exact lattice index.
class HighestWeight {
public:
    /// Lattice point hbar * steps. Throws on steps < 0 or hbar <= 0.
    static HighestWeight from_steps(std::int64_t steps, double hbar);

    /// Rounds down to the lattice: hbar * floor(value / hbar).
    static HighestWeight floor(double value, double hbar);

    /// Requires value to be a nonnegative multiple of hbar (relative tolerance 1e-9).
    static HighestWeight exact(double value, double hbar);

    std::int64_t steps() const { return steps_; }
    double hbar() const { return hbar_; }
    double value() const { return hbar_ * static_cast<double>(steps_); }
    std::int64_t dim() const { return steps_ + 1; }

    friend bool operator==(const HighestWeight&, const HighestWeight&) = default;

private:
    HighestWeight(std::int64_t steps, double hbar) : steps_(steps), hbar_(hbar) {}

    std::int64_t steps_ = 0;
    double hbar_ = 1.0;
};

}  // namespace qcl
