#pragma once

// Quantum random walk on U_q^hbar(sl2): measurement operators M_k = (M_{k-1} (x) 1) o Delta_r
// on (C^2)^{(x) n}, the normalized-trace state, and exact trajectory laws of the
// measured pairs (M_k(H), M_k(Lambda)).
//
// Trajectory coordinates are lattice integers: omega_k = M_k(H)/hbar, lambda_k = M_k(Lambda)/hbar.

#include <cstdint>
#include <map>
#include <vector>

#include "qcl/chains.hpp"
#include "qcl/polynomial.hpp"
#include "qcl/rep.hpp"

namespace qcl::qwalk {

inline constexpr int kMaxSteps = 12;

enum class Generator { exp_half, E, F, H };

/// prefix[k-1] is the representation of M_k on the first k legs (dimension 2^k);
/// on the full space M_k(g) acts as prefix[k-1](g) (x) identity.
struct MeasurementFamily {
    int n = 0;
    Params params;
    std::vector<Rep> prefix;
};

/// Throws std::invalid_argument when n < 1 or n > cap.
MeasurementFamily build_measurements(int n, const Params& p, int cap = kMaxSteps);

/// M_k(g) on the full 2^n space.
Matrix embedded(const MeasurementFamily& mf, int k, Generator g);

/// M_k(C^{r,hbar}) on the full 2^n space, k = 1..n. Requires r > 0.
std::vector<Matrix> casimir_family(const MeasurementFamily& mf);

/// Max relative commutator norm over [M_j(C), M_k(C)] and [M_k(C), M_n(H)], evaluated on
/// the smallest tensor factor that carries both operators.
double casimir_commutator_residual(const MeasurementFamily& mf);

/// Eigen-decomposition of M_k(Lambda) restricted to each weight block of the 2^k space.
struct WeightBlock {
    std::vector<Eigen::Index> indices;              // basis indices with this weight
    std::map<std::int64_t, Matrix> eigenspaces;     // lambda -> orthonormal columns (block coords)
};
struct Spectrum {
    std::map<std::int64_t, WeightBlock> blocks;     // omega -> block
    std::vector<std::int64_t> position;             // basis index -> position inside its block
};

/// Snaps Lambda eigenvalues to the lattice; throws std::runtime_error when an
/// eigenvalue is farther than tol (units of hbar) from it.
Spectrum lambda_spectrum(const Rep& rep, double tol = 1e-8);

/// Highest weight (units of hbar) -> number of irreducible copies, read off the spectrum.
std::map<std::int64_t, std::int64_t> isotypic_multiplicities(const Rep& rep, double tol = 1e-8);

/// Tr(phi(Lambda) psi(H)) / dim, arguments in real units.
double trace_functional(const Rep& rep, const Polynomial& phi, const Polynomial& psi, double tol = 1e-8);

using Trajectory = std::vector<chains::JointState>;
using TrajectoryLaw = std::map<Trajectory, double>;
using RadialLaw = std::map<std::vector<std::int64_t>, double>;

/// Law of ((omega_1, lambda_1), ..., (omega_n, lambda_n)): normalized trace of the
/// time-ordered product of the joint eigenprojectors.
TrajectoryLaw joint_trajectory_law(const MeasurementFamily& mf);

/// Law of (lambda_1, ..., lambda_n) by recursive refinement of joint Casimir eigenspaces.
RadialLaw radial_trajectory_law(const MeasurementFamily& mf);

RadialLaw lambda_marginal(const TrajectoryLaw& law);

/// (lambda_n + 1) / 2^n. Throws on a sequence not starting at 1, with steps other
/// than +-1, or going below 0.
chains::Rational lr_trajectory_probability(const std::vector<std::int64_t>& lambdas);

/// Max |P1 - P2| over the union of supports.
double max_deviation(const RadialLaw& a, const RadialLaw& b);

/// max |lambda-law(p1) - lambda-law(p2)| at n steps (p1, p2 share hbar).
double radial_dynamics_r_independence(int n, const Params& p1, const Params& p2);

struct MarkovCheck {
    double max_deviation = 0.0;  // max |P(next | prefix) - kernel(last, next)|
    std::size_t transitions = 0;
    double total_mass = 0.0;
};

/// Compares every conditional transition of the law with the kernel on the states
/// (omega_k, lambda_k).
MarkovCheck markov_check(const TrajectoryLaw& law, const chains::Kernel<chains::JointState, double>& k);

/// Joint kernel predicted for the walk: kernel_joint_q(e^{-r hbar}) with the weight label
/// flipped (X = omega), or the flat kernel at r = 0.
chains::Kernel<chains::JointState, double> predicted_kernel(const Params& p);

}  // namespace qcl::qwalk
