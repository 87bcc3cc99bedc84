#include "qcl/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcl {

namespace {
// Guards floor(1 / 0.1) = 9 style rounding.
constexpr double kLatticeSlack = 1e-9;

void require_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw std::invalid_argument("hbar must be > 0, got " + std::to_string(hbar));
}
}  // namespace

Params Params::make(double r, double hbar) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("r must be >= 0, got " + std::to_string(r));
    require_hbar(hbar);
    return Params{r, hbar};
}

double Params::q() const { return std::exp(-r); }

HighestWeight HighestWeight::from_steps(std::int64_t steps, double hbar) {
    require_hbar(hbar);
    if (steps < 0) throw std::invalid_argument("highest weight must be >= 0");
    return HighestWeight(steps, hbar);
}

HighestWeight HighestWeight::floor(double value, double hbar) {
    require_hbar(hbar);
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("highest weight must be >= 0");
    const auto steps = static_cast<std::int64_t>(std::floor(value / hbar + kLatticeSlack));
    return HighestWeight(steps, hbar);
}

HighestWeight HighestWeight::exact(double value, double hbar) {
    require_hbar(hbar);
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("highest weight must be >= 0");
    const double ratio = value / hbar;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) > kLatticeSlack * std::max(1.0, ratio))
        throw std::invalid_argument("highest weight " + std::to_string(value) +
                                    " is not a multiple of hbar = " + std::to_string(hbar));
    return HighestWeight(static_cast<std::int64_t>(nearest), hbar);
}

}  // namespace qcl
