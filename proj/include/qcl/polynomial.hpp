#pragma once

#include <vector>

namespace qcl {

/// Dense polynomial, coefficients in increasing degree.
struct Polynomial {
    std::vector<double> coeffs;

    static Polynomial constant(double c) { return {{c}}; }
    static Polynomial identity() { return {{0.0, 1.0}}; }

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }
};

}  // namespace qcl
