#include "qcl/qwalk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

namespace qcl::qwalk {

namespace {

using Sparse = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

Sparse sparse_identity(Index n) {
    Sparse id(n, n);
    id.setIdentity();
    return id;
}

const Matrix& generator(const Rep& rep, Generator g) {
    switch (g) {
        case Generator::exp_half: return rep.exp_half;
        case Generator::E: return rep.E;
        case Generator::F: return rep.F;
        case Generator::H: return rep.H;
    }
    throw std::invalid_argument("unknown generator");
}

// Operator whose eigenvalue on an irreducible V(Lambda) determines Lambda, with
// the inverse map. Curved: the Casimir excess; flat: (Lambda + hbar)^2.
struct LambdaOperator {
    Sparse op;
    std::function<double(double)> to_lambda;
};

LambdaOperator lambda_operator(const Rep& rep) {
    const Params p = rep.params;
    if (p.flat()) {
        return {detail::flat_casimir_square(rep).sparseView(),
                [p](double x) { return std::sqrt(std::max(x, 0.0)) - p.hbar; }};
    }
    // the excess is assembled from sparse factors to keep large tensor products cheap
    const Sparse e = rep.E.sparseView(), f = rep.F.sparseView();
    const double scale = 2.0 * p.r * p.r * std::sinh(p.r * p.hbar) / (p.r * p.hbar);
    Sparse x = scale * Sparse(e * f);
    const Index d = rep.dim();
    Sparse diag(d, d);
    std::vector<Eigen::Triplet<double>> t;
    for (Index i = 0; i < d; ++i) {
        const double s = std::sinh(0.5 * p.r * (p.hbar - rep.H(i, i)));
        t.emplace_back(i, i, 2.0 * s * s);
    }
    diag.setFromTriplets(t.begin(), t.end());
    x += diag;
    return {x, [p](double e) { return detail::lambda_from_excess(e, p); }};
}

std::int64_t snap(double lambda, double hbar, double tol) {
    const double steps = lambda / hbar;
    const double nearest = std::round(steps);
    if (std::abs(steps - nearest) > tol)
        throw std::runtime_error("Lambda eigenvalue " + std::to_string(steps) +
                                 " (units of hbar) is not within " + std::to_string(tol) +
                                 " of the lattice; eigenvalue clusters cannot be resolved");
    return static_cast<std::int64_t>(nearest);
}

Matrix restrict(const Sparse& m, const std::vector<Index>& idx) {
    const auto n = static_cast<Index>(idx.size());
    Matrix out(n, n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) out(a, b) = m.coeff(idx[a], idx[b]);
    return out;
}

std::vector<Trajectory> prefixes_of(const Trajectory& t) {
    std::vector<Trajectory> out;
    for (std::size_t k = 0; k <= t.size(); ++k) out.emplace_back(t.begin(), t.begin() + static_cast<long>(k));
    return out;
}

}  // namespace

MeasurementFamily build_measurements(int n, const Params& p, int cap) {
    if (n < 1) throw std::invalid_argument("build_measurements: n must be >= 1");
    if (n > cap)
        throw std::invalid_argument("build_measurements: n = " + std::to_string(n) +
                                    " exceeds the cap " + std::to_string(cap));
    MeasurementFamily mf;
    mf.n = n;
    mf.params = Params::make(p.r, p.hbar);
    const Rep leg = build_irrep(HighestWeight::from_steps(1, p.hbar), mf.params);
    mf.prefix.push_back(leg);
    for (int k = 2; k <= n; ++k) mf.prefix.push_back(coproduct(mf.prefix.back(), leg));
    return mf;
}

Matrix embedded(const MeasurementFamily& mf, int k, Generator g) {
    if (k < 1 || k > mf.n) throw std::out_of_range("embedded: k outside 1..n");
    const Index rest = Index(1) << (mf.n - k);
    return Eigen::kroneckerProduct(generator(mf.prefix[static_cast<std::size_t>(k - 1)], g),
                                   Matrix::Identity(rest, rest));
}

std::vector<Matrix> casimir_family(const MeasurementFamily& mf) {
    std::vector<Matrix> out;
    for (int k = 1; k <= mf.n; ++k) {
        const Index rest = Index(1) << (mf.n - k);
        out.push_back(Eigen::kroneckerProduct(casimir_matrix(mf.prefix[static_cast<std::size_t>(k - 1)]),
                                              Matrix::Identity(rest, rest)));
    }
    return out;
}

double casimir_commutator_residual(const MeasurementFamily& mf) {
    std::vector<Sparse> c;
    for (const auto& rep : mf.prefix) c.push_back(casimir_matrix(rep).sparseView());
    double worst = 0.0;
    auto rel = [](const Sparse& ab, const Sparse& ba) {
        return (ab - ba).norm() / std::max({1.0, ab.norm(), ba.norm()});
    };
    for (int k = 1; k <= mf.n; ++k) {
        const Sparse& ck = c[static_cast<std::size_t>(k - 1)];
        const Sparse hk = mf.prefix[static_cast<std::size_t>(k - 1)].H.sparseView();
        // M_n(H) = M_k(H) (x) 1 + 1 (x) (rest), and the second term commutes with M_k(C) (x) 1
        worst = std::max(worst, rel(Sparse(ck * hk), Sparse(hk * ck)));
        for (int j = 1; j < k; ++j) {
            const Sparse cj = Eigen::kroneckerProduct(c[static_cast<std::size_t>(j - 1)],
                                                      sparse_identity(Index(1) << (k - j)));
            worst = std::max(worst, rel(Sparse(cj * ck), Sparse(ck * cj)));
        }
    }
    return worst;
}

Spectrum lambda_spectrum(const Rep& rep, double tol) {
    const Params& p = rep.params;
    const LambdaOperator lop = lambda_operator(rep);
    const auto w = rep.weight_steps();

    Spectrum s;
    s.position.assign(w.size(), -1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto& block = s.blocks[w[i]];
        s.position[i] = static_cast<std::int64_t>(block.indices.size());
        block.indices.push_back(static_cast<Index>(i));
    }
    for (auto& [omega, block] : s.blocks) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(restrict(lop.op, block.indices));
        if (es.info() != Eigen::Success) throw std::runtime_error("lambda_spectrum: eigensolver failed");
        std::map<std::int64_t, std::vector<Index>> groups;
        for (Index i = 0; i < es.eigenvalues().size(); ++i) {
            const std::int64_t l = snap(lop.to_lambda(es.eigenvalues()(i)), p.hbar, tol);
            if (l < std::abs(omega) || (l - omega) % 2 != 0)
                throw std::runtime_error("lambda_spectrum: eigenvalue lambda=" + std::to_string(l) +
                                         " is inconsistent with weight " + std::to_string(omega));
            groups[l].push_back(i);
        }
        for (const auto& [l, cols] : groups) {
            Matrix v(es.eigenvectors().rows(), static_cast<Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c)
                v.col(static_cast<Index>(c)) = es.eigenvectors().col(cols[c]);
            block.eigenspaces.emplace(l, std::move(v));
        }
    }
    return s;
}

std::map<std::int64_t, std::int64_t> isotypic_multiplicities(const Rep& rep, double tol) {
    std::map<std::int64_t, std::int64_t> out;
    for (const auto& [omega, block] : lambda_spectrum(rep, tol).blocks)
        for (const auto& [l, v] : block.eigenspaces)
            if (l == omega) out[l] += v.cols();  // one highest-weight vector per copy
    return out;
}

double trace_functional(const Rep& rep, const Polynomial& phi, const Polynomial& psi, double tol) {
    const double hbar = rep.params.hbar;
    double acc = 0.0;
    for (const auto& [omega, block] : lambda_spectrum(rep, tol).blocks)
        for (const auto& [l, v] : block.eigenspaces)
            acc += static_cast<double>(v.cols()) * phi(hbar * static_cast<double>(l)) *
                   psi(hbar * static_cast<double>(omega));
    return acc / static_cast<double>(rep.dim());
}

TrajectoryLaw joint_trajectory_law(const MeasurementFamily& mf) {
    std::vector<Spectrum> spectra;
    for (const auto& rep : mf.prefix) spectra.push_back(lambda_spectrum(rep));

    TrajectoryLaw law;
    Trajectory traj;
    // a holds the columns of Pi^1 ... Pi^{k-1} that lie in the weight block of omega_{k-1};
    // the probability of a full trajectory is the normalized trace at the last step.
    std::function<void(int, const Matrix&, chains::JointState, const std::vector<std::int64_t>&)> run;
    run = [&](int k, const Matrix& a, chains::JointState prev,
              const std::vector<std::int64_t>& prev_position) {
        const Spectrum& sp = spectra[static_cast<std::size_t>(k - 1)];
        const Index rows = Index(1) << k;
        for (int s : {0, 1}) {
            const std::int64_t omega = prev.omega + (s == 1 ? 1 : -1);
            const auto it = sp.blocks.find(omega);
            if (it == sp.blocks.end()) continue;
            const WeightBlock& block = it->second;
            const auto bsize = static_cast<Index>(block.indices.size());
            Matrix g = Matrix::Zero(rows, bsize);
            for (Index jpos = 0; jpos < bsize; ++jpos) {
                const Index j = block.indices[static_cast<std::size_t>(jpos)];
                if ((j & 1) != s) continue;
                const auto cpos = static_cast<Index>(prev_position[static_cast<std::size_t>(j >> 1)]);
                for (Index i = 0; i < a.rows(); ++i) g(2 * i + s, jpos) = a(i, cpos);
            }
            for (const auto& [lambda, v] : block.eigenspaces) {
                if (std::abs(lambda - prev.lambda) != 1 || lambda < std::abs(omega)) continue;
                const Matrix next = (g * v) * v.transpose();
                traj.push_back({omega, lambda});
                if (k == mf.n) {
                    double tr = 0.0;
                    for (Index jpos = 0; jpos < bsize; ++jpos)
                        tr += next(block.indices[static_cast<std::size_t>(jpos)], jpos);
                    law.emplace(traj, tr / static_cast<double>(rows));
                } else {
                    run(k + 1, next, traj.back(), sp.position);
                }
                traj.pop_back();
            }
        }
    };
    run(1, Matrix::Ones(1, 1), {0, 0}, std::vector<std::int64_t>{0});
    return law;
}

RadialLaw radial_trajectory_law(const MeasurementFamily& mf) {
    std::vector<LambdaOperator> ops;
    for (const auto& rep : mf.prefix) ops.push_back(lambda_operator(rep));
    const double hbar = mf.params.hbar;

    RadialLaw law;
    std::vector<std::int64_t> lambdas;
    std::function<void(int, const Matrix&)> refine = [&](int k, const Matrix& u) {
        // u: orthonormal basis (2^{k-1} x d) of the joint eigenspace of M_1..M_{k-1}(Lambda)
        const Index d = u.cols();
        Matrix up = Matrix::Zero(2 * u.rows(), 2 * d);
        for (Index i = 0; i < u.rows(); ++i)
            for (Index a = 0; a < d; ++a) {
                up(2 * i, 2 * a) = u(i, a);
                up(2 * i + 1, 2 * a + 1) = u(i, a);
            }
        const LambdaOperator& lop = ops[static_cast<std::size_t>(k - 1)];
        const Matrix t = up.transpose() * (lop.op * up);
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (t + t.transpose()));
        if (es.info() != Eigen::Success) throw std::runtime_error("radial law: eigensolver failed");
        std::map<std::int64_t, std::vector<Index>> groups;
        for (Index i = 0; i < es.eigenvalues().size(); ++i)
            groups[snap(lop.to_lambda(es.eigenvalues()(i)), hbar, 1e-8)].push_back(i);
        const std::int64_t prev = lambdas.empty() ? 0 : lambdas.back();
        for (const auto& [l, cols] : groups) {
            if (std::abs(l - prev) != 1 || l < 0)
                throw std::runtime_error("radial law: transition " + std::to_string(prev) + " -> " +
                                         std::to_string(l) + " violates the tensor rule");
            Matrix v(es.eigenvectors().rows(), static_cast<Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c)
                v.col(static_cast<Index>(c)) = es.eigenvectors().col(cols[c]);
            lambdas.push_back(l);
            const Matrix next = up * v;
            if (k == mf.n)
                law.emplace(lambdas, static_cast<double>(next.cols()) / static_cast<double>(next.rows()));
            else
                refine(k + 1, next);
            lambdas.pop_back();
        }
    };
    refine(1, Matrix::Ones(1, 1));
    return law;
}

RadialLaw lambda_marginal(const TrajectoryLaw& law) {
    RadialLaw out;
    for (const auto& [t, p] : law) {
        std::vector<std::int64_t> l;
        l.reserve(t.size());
        for (const auto& s : t) l.push_back(s.lambda);
        out[l] += p;
    }
    return out;
}

chains::Rational lr_trajectory_probability(const std::vector<std::int64_t>& lambdas) {
    if (lambdas.empty() || lambdas.front() != 1)
        throw std::invalid_argument("lr_trajectory_probability: sequence must start at 1");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] < 0) throw std::invalid_argument("lr_trajectory_probability: negative lambda");
        if (i > 0 && std::abs(lambdas[i] - lambdas[i - 1]) != 1)
            throw std::invalid_argument("lr_trajectory_probability: steps must be +-1");
    }
    chains::Rational out(lambdas.back() + 1);
    for (std::size_t i = 0; i < lambdas.size(); ++i) out /= 2;
    return out;
}

double max_deviation(const RadialLaw& a, const RadialLaw& b) {
    double worst = 0.0;
    for (const auto& [k, p] : a) {
        const auto it = b.find(k);
        worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, p] : b)
        if (!a.contains(k)) worst = std::max(worst, std::abs(p));
    return worst;
}

double radial_dynamics_r_independence(int n, const Params& p1, const Params& p2) {
    if (p1.hbar != p2.hbar) throw std::invalid_argument("r-independence compares equal hbar");
    return max_deviation(radial_trajectory_law(build_measurements(n, p1)),
                         radial_trajectory_law(build_measurements(n, p2)));
}

MarkovCheck markov_check(const TrajectoryLaw& law, const chains::Kernel<chains::JointState, double>& k) {
    std::map<Trajectory, double> prefix_mass;
    MarkovCheck out;
    for (const auto& [t, p] : law) {
        out.total_mass += p;
        for (const auto& pre : prefixes_of(t)) prefix_mass[pre] += p;
    }
    for (const auto& [pre, mass] : prefix_mass) {
        if (pre.empty()) continue;
        const Trajectory parent(pre.begin(), pre.end() - 1);
        const chains::JointState from = parent.empty() ? chains::JointState{0, 0} : parent.back();
        double expected = 0.0;
        for (const auto& [to, prob] : k.row(from))
            if (to == pre.back()) expected = prob;
        const double observed = mass / prefix_mass.at(parent);
        out.max_deviation = std::max(out.max_deviation, std::abs(observed - expected));
        ++out.transitions;
    }
    return out;
}

chains::Kernel<chains::JointState, double> predicted_kernel(const Params& p) {
    if (p.flat()) return chains::kernel_joint_flat<double>();
    return chains::kernel_joint_q<double>(std::exp(-p.r * p.hbar), true);
}

}  // namespace qcl::qwalk
