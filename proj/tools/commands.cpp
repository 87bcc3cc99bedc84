#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qcl/chains.hpp"
#include "qcl/crystal.hpp"
#include "qcl/orbit.hpp"
#include "qcl/qwalk.hpp"
#include "qcl/rep.hpp"
#include "qcl/sde.hpp"
#include "qcl/stats.hpp"

namespace qcl::cli {

namespace {

constexpr Eigen::Index kMaxDenseDim = 2048;

Check check_at_most(std::string name, double value, double threshold) {
    return {std::move(name), value <= threshold, value, threshold};
}

Check check_at_least(std::string name, double value, double threshold) {
    return {std::move(name), value >= threshold, value, threshold};
}

qcl::Params model_params(const RunContext& ctx) {
    return qcl::Params::make(ctx.params.nonnegative("r"), ctx.params.positive("hbar"));
}

HighestWeight weight(const RunContext& ctx, const std::string& key, double hbar) {
    return HighestWeight::floor(ctx.params.nonnegative(key), hbar);
}

Polynomial polynomial(const RunContext& ctx, const std::string& key) {
    return Polynomial{ctx.params.reals(key)};
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (double x : xs) out += (out.empty() ? "" : ";") + format_double(x);
    return out;
}

// irrep -----------------------------------------------------------------------

Outcome run_irrep(const RunContext& ctx) {
    const auto p = model_params(ctx);
    const auto hw = weight(ctx, "lambda", p.hbar);
    if (hw.dim() > kMaxDenseDim) throw ConfigError("lambda", "Lambda/hbar too large for dense matrices");
    const double tol = ctx.params.positive("tol");
    const Rep rep = build_irrep(hw, p);

    Outcome out;
    out.table.columns = {"quantity", "value"};
    const double relations = verify_relations(rep);
    const double dagger = (rep.E - rep.F.transpose()).cwiseAbs().maxCoeff();
    const Vector lambdas = block_eigenvalues(lambda_matrix(rep), rep);
    const double lambda_spread = (lambdas.array() - hw.value()).abs().maxCoeff();
    out.table.add({"dim", static_cast<std::int64_t>(rep.dim())});
    out.table.add({"lambda", hw.value()});
    out.table.add({"relation_residual", relations});
    out.table.add({"dagger_residual", dagger});
    out.table.add({"lambda_spread", lambda_spread});
    out.checks.push_back(check_at_most("relation_residual", relations, tol));
    out.checks.push_back(check_at_most("dagger_residual", dagger, 0.0));
    out.checks.push_back(check_at_most("lambda_spread", lambda_spread, 1e-8 * std::max(1.0, hw.value())));
    if (!p.flat()) {
        const double c = casimir_constant(hw, p);
        const Vector eig = block_eigenvalues(casimir_matrix(rep), rep);
        const double spread = (eig.array() - c).abs().maxCoeff() / std::max(1.0, std::abs(c));
        out.table.add({"casimir_constant", c});
        out.table.add({"casimir_spread", spread});
        out.checks.push_back(check_at_most("casimir_spread", spread, tol));
    }
    if (ctx.params.boolean("matrices"))
        out.extra["matrices"] = {{"exp_half", matrix_json(rep.exp_half)},
                                 {"E", matrix_json(rep.E)},
                                 {"F", matrix_json(rep.F)},
                                 {"H", matrix_json(rep.H)}};
    return out;
}

// tensor ----------------------------------------------------------------------

Outcome run_tensor(const RunContext& ctx) {
    const double hbar = ctx.params.positive("hbar");
    const auto power = ctx.params.at_least("n", 0);
    if (power > qwalk::kMaxSteps) throw ConfigError("n", "at most " + std::to_string(qwalk::kMaxSteps));
    const auto r_grid = ctx.params.reals("r-grid");
    for (double r : r_grid)
        if (!(r > 0)) throw ConfigError("r-grid", "entries must be > 0");

    std::map<std::int64_t, std::int64_t> expected;
    HighestWeight hw1 = HighestWeight::from_steps(1, hbar), hw2 = hw1;
    if (power > 0) {
        expected = crystal::decompose_power(static_cast<int>(power));
    } else {
        hw1 = weight(ctx, "lambda1", hbar);
        hw2 = weight(ctx, "lambda2", hbar);
        if (hw1.dim() * hw2.dim() > kMaxDenseDim)
            throw ConfigError("lambda1", "tensor product too large for dense matrices");
        expected = crystal::decompose_tensor(hw1, hw2);
    }

    Outcome out;
    out.table.columns = {"r", "highest_weight", "crystal", "spectrum"};
    std::size_t mismatches = 0;
    for (double r : r_grid) {
        const auto p = qcl::Params::make(r, hbar);
        const Rep rep = power > 0 ? qwalk::build_measurements(static_cast<int>(power), p).prefix.back()
                                  : coproduct(build_irrep(hw1, p), build_irrep(hw2, p));
        const auto found = qwalk::isotypic_multiplicities(rep);
        std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> merged;
        for (const auto& [l, m] : expected) merged[l].first = m;
        for (const auto& [l, m] : found) merged[l].second = m;
        for (const auto& [l, mm] : merged) {
            out.table.add({r, l, mm.first, mm.second});
            if (mm.first != mm.second) ++mismatches;
        }
    }
    out.checks.push_back(check_at_most("multiplicity_mismatches", static_cast<double>(mismatches), 0.0));
    return out;
}

// static-limit ----------------------------------------------------------------

Outcome run_static_limit(const RunContext& ctx) {
    const double r = ctx.params.positive("r");
    const double lambda = ctx.params.positive("lambda");
    const double lambda2 = ctx.params.nonnegative("lambda2");
    const auto hbars = ctx.params.reals("hbar-grid");
    for (double h : hbars)
        if (!(h > 0)) throw ConfigError("hbar-grid", "entries must be > 0");
    const auto a_max = ctx.params.at_least("a-max", 0);
    const auto c_max = ctx.params.at_least("c-max", 0);
    const auto n = static_cast<std::size_t>(ctx.params.at_least("N", 2));
    const double floor_gap = ctx.params.nonnegative("gap-floor");
    const bool two = lambda2 > 0;

    std::vector<Rep> reps;
    for (double h : hbars) {
        const auto p = qcl::Params::make(r, h);
        const auto hw1 = HighestWeight::floor(lambda, h);
        if (two) {
            const auto hw2 = HighestWeight::floor(lambda2, h);
            if (hw1.dim() * hw2.dim() > kMaxDenseDim) throw ConfigError("hbar-grid", "tensor product too large");
            reps.push_back(coproduct(build_irrep(hw1, p), build_irrep(hw2, p)));
        } else {
            if (hw1.dim() > kMaxDenseDim) throw ConfigError("hbar-grid", "representation too large");
            reps.push_back(build_irrep(hw1, p));
        }
    }

    Outcome out;
    out.table.columns = {"a", "b", "c", "hbar", "character_ratio", "mc_mean", "mc_std_error", "gap"};
    const auto o1 = orbit::OrbitParams::make(lambda, r);
    for (int a = 0; a <= a_max; ++a) {
        for (int c = 0; c <= c_max; ++c) {
            if (a == 0 && c == 0) continue;
            const orbit::Observable f = [a, c](const orbit::DualGroupElement& g) {
                return orbit::monomial_value(g, a, a, c);
            };
            const auto mc = two ? orbit::mc_convolution_expectation(o1, orbit::OrbitParams::make(lambda2, r), f, n,
                                                                    ctx.seed)
                                : orbit::mc_orbit_expectation(o1, f, n, ctx.seed);
            std::vector<double> gaps;
            for (std::size_t k = 0; k < hbars.size(); ++k) {
                const double chi = character_ratio(reps[k], {a, a, c});
                gaps.push_back(std::abs(chi - mc.mean.real()));
                out.table.add({a, a, c, hbars[k], chi, mc.mean.real(), mc.std_error, gaps.back()});
            }
            std::ostringstream name;
            name << "monomial(" << a << "," << a << "," << c << ")";
            bool decreasing = true;
            for (std::size_t k = 1; k < gaps.size(); ++k) decreasing = decreasing && gaps[k] < gaps[k - 1];
            out.checks.push_back({name.str() + "_decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0});
            out.checks.push_back(
                check_at_most(name.str() + "_final_gap", gaps.back(), std::max(3.0 * mc.std_error, floor_gap)));
        }
    }
    return out;
}

// crystal-limit ---------------------------------------------------------------

Outcome run_crystal_limit(const RunContext& ctx) {
    const double lambda1 = ctx.params.positive("lambda1");
    const double lambda2 = ctx.params.positive("lambda2");
    const double r = ctx.params.positive("r");
    const double hbar = ctx.params.positive("hbar");
    const double hbar_q = ctx.params.positive("hbar-quantum");
    const double r_q = std::min(r, ctx.params.positive("r-quantum-cap"));
    const auto phi = polynomial(ctx, "phi");
    const auto psi = polynomial(ctx, "psi");
    const auto n = static_cast<std::size_t>(ctx.params.at_least("N", 2));

    const double integral = crystal::continuum_expectation(lambda1, lambda2, phi, psi);
    const double crystal_sum =
        crystal::expectation(HighestWeight::floor(lambda1, hbar), HighestWeight::floor(lambda2, hbar), phi, psi);
    const auto limit = orbit::crystal_limit_functional(orbit::OrbitParams::make(lambda1, r),
                                                       orbit::OrbitParams::make(lambda2, r), phi, psi, n, ctx.seed);
    const auto hq1 = HighestWeight::floor(lambda1, hbar_q), hq2 = HighestWeight::floor(lambda2, hbar_q);
    if (hq1.dim() * hq2.dim() > kMaxDenseDim) throw ConfigError("hbar-quantum", "tensor product too large");
    const auto pq = qcl::Params::make(r_q, hbar_q);
    const double quantum =
        qwalk::trace_functional(coproduct(build_irrep(hq1, pq), build_irrep(hq2, pq)), phi, psi);

    Outcome out;
    out.table.columns = {"corner", "value", "std_error", "hbar", "r"};
    out.table.add({"crystal_sum", crystal_sum, 0.0, hbar, 0.0});
    out.table.add({"continuum_integral", integral, 0.0, 0.0, 0.0});
    out.table.add({"orbit_functional", limit.mean, limit.std_error, 0.0, r});
    out.table.add({"quantum_trace", quantum, 0.0, hbar_q, r_q});
    out.table.add({"orbit_ess", limit.ess, 0.0, 0.0, r});
    out.checks.push_back(check_at_most("orbit_vs_integral", std::abs(limit.mean - integral),
                                       std::max(3.0 * limit.std_error, ctx.params.nonnegative("orbit-tol"))));
    out.checks.push_back(
        check_at_most("crystal_vs_integral", std::abs(crystal_sum - integral), ctx.params.nonnegative("crystal-tol")));
    const double crystal_q = crystal::expectation(hq1, hq2, phi, psi);
    out.checks.push_back(check_at_most("quantum_vs_crystal", std::abs(quantum - crystal_q), 1e-9));
    out.checks.push_back({"orbit_ess_adequate", !limit.low_ess, limit.ess, 100.0});
    return out;
}

// chain -----------------------------------------------------------------------

template <class P>
void add_distribution(Table& t, int step, const chains::Distribution<std::int64_t, P>& d) {
    for (const auto& [l, m] : d) {
        std::vector<json> row{step, l};
        if constexpr (std::is_same_v<P, chains::Rational>) row.push_back(chains::to_double(m)), row.push_back(m.str());
        else row.push_back(m);
        t.add(std::move(row));
    }
}

template <class P>
void add_distribution(Table& t, int step, const chains::Distribution<chains::JointState, P>& d) {
    for (const auto& [s, m] : d) {
        std::vector<json> row{step, s.omega, s.lambda};
        if constexpr (std::is_same_v<P, chains::Rational>) row.push_back(chains::to_double(m)), row.push_back(m.str());
        else row.push_back(m);
        t.add(std::move(row));
    }
}

template <class State, class P>
std::vector<double> evolve_into(Table& t, const chains::Kernel<State, P>& k, State start, int steps) {
    std::vector<double> mass_errors;
    chains::Distribution<State, P> d{{start, P(1)}};
    for (int step = 0; step <= steps; ++step) {
        if (step > 0) d = chains::evolve(k, d, 1);
        add_distribution(t, step, d);
        const P mass = chains::total_mass(d);
        if constexpr (std::is_same_v<P, chains::Rational>) mass_errors.push_back(mass == 1 ? 0.0 : 1.0);
        else mass_errors.push_back(std::abs(mass - 1.0));
    }
    return mass_errors;
}

Outcome run_chain(const RunContext& ctx) {
    const auto mode = ctx.params.choice("mode", {"evolve", "diffusive"});
    Outcome out;
    if (mode == "diffusive") {
        const double hbar = ctx.params.positive("hbar");
        if (hbar > 1) throw ConfigError("hbar", "must be <= 1");
        const auto n = static_cast<std::size_t>(ctx.params.at_least("N", 1));
        const double ks = sde::discrete_pitman_ks(hbar, n, ctx.seed);
        out.table.columns = {"hbar", "steps", "N", "ks"};
        out.table.add({hbar, static_cast<std::int64_t>(std::floor(1.0 / (hbar * hbar))), n, ks});
        out.checks.push_back(check_at_most("ks_vs_maxwell", ks, ctx.params.positive("ks-max")));
        return out;
    }

    const auto kernel = ctx.params.choice("kernel", {"radial", "joint-q", "joint-flat"});
    const int steps = static_cast<int>(ctx.params.at_least("steps", 1));
    const bool exact = ctx.params.boolean("exact");
    const bool flip = ctx.params.boolean("flip-sign");
    const double q = ctx.params.real("q");
    if (kernel == "joint-q" && !(q >= 0 && q < 1)) throw ConfigError("q", "must lie in [0, 1)");
    if (steps > 400) throw ConfigError("steps", "at most 400");

    auto& t = out.table;
    const std::vector<std::string> prob_cols = exact ? std::vector<std::string>{"prob", "prob_exact"}
                                                     : std::vector<std::string>{"prob"};
    std::vector<double> mass_errors;
    if (kernel == "radial") {
        t.columns = {"n", "lambda"};
        t.columns.insert(t.columns.end(), prob_cols.begin(), prob_cols.end());
        mass_errors = exact ? evolve_into(t, chains::kernel_radial<chains::Rational>(), std::int64_t{0}, steps)
                            : evolve_into(t, chains::kernel_radial<double>(), std::int64_t{0}, steps);
    } else {
        t.columns = {"n", "omega", "lambda"};
        t.columns.insert(t.columns.end(), prob_cols.begin(), prob_cols.end());
        const chains::JointState start{0, 0};
        if (kernel == "joint-q")
            mass_errors = exact ? evolve_into(t, chains::kernel_joint_q<chains::Rational>(chains::Rational(q), flip),
                                              start, steps)
                                : evolve_into(t, chains::kernel_joint_q<double>(q, flip), start, steps);
        else
            mass_errors = exact ? evolve_into(t, chains::kernel_joint_flat<chains::Rational>(), start, steps)
                                : evolve_into(t, chains::kernel_joint_flat<double>(), start, steps);
    }
    out.checks.push_back(
        check_at_most("mass_error", *std::max_element(mass_errors.begin(), mass_errors.end()), exact ? 0.0 : 1e-12));
    return out;
}

// qwalk-oracle ----------------------------------------------------------------

Outcome run_qwalk_oracle(const RunContext& ctx) {
    const auto p = model_params(ctx);
    const auto n = ctx.params.at_least("n", 1);
    if (n > 10) throw ConfigError("n", "at most 10 for the joint law");
    const double tol = ctx.params.positive("tol");
    const auto mf = qwalk::build_measurements(static_cast<int>(n), p);

    const auto law = qwalk::joint_trajectory_law(mf);
    const auto markov = qwalk::markov_check(law, qwalk::predicted_kernel(p));
    double lr = 0.0;
    for (const auto& [path, prob] : qwalk::lambda_marginal(law))
        lr = std::max(lr, std::abs(prob - chains::to_double(qwalk::lr_trajectory_probability(path))));
    const double r_indep = p.flat() ? 0.0
                                    : qwalk::radial_dynamics_r_independence(static_cast<int>(n), p,
                                                                            qcl::Params::make(0.0, p.hbar));
    const double commutators = p.flat() ? 0.0 : qwalk::casimir_commutator_residual(mf);

    Outcome out;
    out.table.columns = {"metric", "value"};
    out.table.add({"trajectories", static_cast<std::int64_t>(law.size())});
    out.table.add({"transitions", static_cast<std::int64_t>(markov.transitions)});
    out.table.add({"total_mass", markov.total_mass});
    out.table.add({"markov_max_deviation", markov.max_deviation});
    out.table.add({"lr_max_deviation", lr});
    out.table.add({"radial_vs_flat_deviation", r_indep});
    out.table.add({"casimir_commutator_residual", commutators});
    out.checks.push_back(check_at_most("markov_max_deviation", markov.max_deviation, tol));
    out.checks.push_back(check_at_most("total_mass_error", std::abs(markov.total_mass - 1.0), tol));
    out.checks.push_back(check_at_most("lr_max_deviation", lr, tol));
    out.checks.push_back(check_at_most("radial_vs_flat_deviation", r_indep, tol));
    out.checks.push_back(check_at_most("casimir_commutator_residual", commutators, tol));
    return out;
}

// sde -------------------------------------------------------------------------

Outcome run_sde(const RunContext& ctx) {
    const auto mode = ctx.params.choice("mode", {"ks", "trend"});
    const double T = ctx.params.positive("T");
    const double dt = ctx.params.positive("dt");
    if (dt > T) throw ConfigError("dt", "must not exceed T");
    Outcome out;
    if (mode == "trend") {
        const auto paths = static_cast<std::size_t>(ctx.params.at_least("paths", 1));
        const double min_fraction = ctx.params.nonnegative("min-fraction");
        out.table.columns = {"reference", "r_values", "paths", "monotone", "fraction"};
        for (const auto& [name, ref, key] : {std::tuple{"norm", sde::Reference::norm, "r-norm"},
                                             std::tuple{"pitman", sde::Reference::pitman, "r-pitman"}}) {
            const auto rs = ctx.params.reals(key);
            for (double r : rs)
                if (!(r > 0)) throw ConfigError(key, "entries must be > 0");
            const auto res = sde::pathwise_trend(ref, rs, T, dt, paths, ctx.seed);
            out.table.add({name, join(rs), res.paths, res.monotone, res.fraction()});
            out.checks.push_back(check_at_least(std::string(name) + "_trend_fraction", res.fraction(), min_fraction));
        }
        return out;
    }
    const auto r_grid = ctx.params.reals("r-grid");
    for (double r : r_grid)
        if (!(r >= 0)) throw ConfigError("r-grid", "entries must be >= 0");
    const auto n = static_cast<std::size_t>(ctx.params.at_least("N", 2));
    const double ks_max = ctx.params.positive("ks-max");
    const auto table = sde::r_invariance_experiment(r_grid, T, dt, n, ctx.seed);
    out.table.columns = {"r", "ks", "N", "T", "dt"};
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        out.table.add({r_grid[i], table.ks[i], n, T, dt});
        out.checks.push_back(check_at_most("ks_r=" + format_double(r_grid[i]), table.ks[i], ks_max));
    }
    json pairwise = json::array();
    for (const auto& row : table.pairwise) pairwise.push_back(row);
    out.extra["pairwise_ks"] = std::move(pairwise);
    return out;
}

// r-invariance ----------------------------------------------------------------

Outcome run_r_invariance(const RunContext& ctx) {
    const double hbar = ctx.params.positive("hbar");
    const auto n = ctx.params.at_least("n", 1);
    if (n > qwalk::kMaxSteps) throw ConfigError("n", "at most " + std::to_string(qwalk::kMaxSteps));
    const auto r_grid = ctx.params.reals("r-grid");
    for (double r : r_grid)
        if (!(r >= 0)) throw ConfigError("r-grid", "entries must be >= 0");
    const double tol = ctx.params.positive("tol");

    std::vector<qwalk::RadialLaw> laws;
    for (double r : r_grid)
        laws.push_back(qwalk::radial_trajectory_law(qwalk::build_measurements(static_cast<int>(n),
                                                                              qcl::Params::make(r, hbar))));
    Outcome out;
    out.table.columns = {"r", "paths", "deviation_vs_first", "deviation_vs_lr"};
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double dev = qwalk::max_deviation(laws[i], laws.front());
        double lr = 0.0;
        for (const auto& [path, prob] : laws[i])
            lr = std::max(lr, std::abs(prob - chains::to_double(qwalk::lr_trajectory_probability(path))));
        out.table.add({r_grid[i], static_cast<std::int64_t>(laws[i].size()), dev, lr});
        out.checks.push_back(check_at_most("deviation_r=" + format_double(r_grid[i]), dev, tol));
        out.checks.push_back(check_at_most("lr_r=" + format_double(r_grid[i]), lr, tol));
    }
    return out;
}

// spherical -------------------------------------------------------------------

Outcome run_spherical(const RunContext& ctx) {
    const double lambda = ctx.params.positive("lambda");
    const double r = ctx.params.positive("r");
    const auto n = static_cast<std::size_t>(ctx.params.at_least("N", 2));
    std::vector<orbit::Complex> zs;
    for (const auto& s : ctx.params.texts("z")) {
        try {
            zs.push_back(parse_complex(s));
        } catch (const std::exception&) {
            throw ConfigError("z", "cannot parse complex number '" + s + "'");
        }
    }
    const auto o = orbit::OrbitParams::make(lambda, r);
    Outcome out;
    out.table.columns = {"z_re", "z_im", "closed_re", "closed_im", "rescaled_re", "rescaled_im",
                         "mc_re", "mc_im", "mc_std_error"};
    for (const auto z : zs) {
        const auto closed = orbit::spherical_function(z, lambda, r);
        const auto rescaled = orbit::spherical_function(z, r * lambda, 1.0);
        const auto mc = orbit::mc_orbit_expectation(
            o, [z, r](const orbit::DualGroupElement& g) { return std::exp(r * (z - 1.0) * g.H); }, n, ctx.seed);
        out.table.add({z.real(), z.imag(), closed.real(), closed.imag(), rescaled.real(), rescaled.imag(),
                       mc.mean.real(), mc.mean.imag(), mc.std_error});
        const std::string tag = "z=" + format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
        const double scale = std::max(1.0, std::abs(closed));
        out.checks.push_back(check_at_most("rescaling_" + tag, std::abs(closed - rescaled) / scale, 1e-12));
        out.checks.push_back(
            check_at_most("mc_" + tag, std::abs(mc.mean - closed), std::max(3.0 * mc.std_error, 1e-12 * scale)));
    }
    return out;
}

}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> table{
        {"irrep",
         "Build V(Lambda), verify the defining relations and the Casimir spectrum",
         {{"lambda", Kind::real, 1.0, "highest weight Lambda (rounded down to the hbar lattice)"},
          {"r", Kind::real, 1.0, "curvature r >= 0"},
          {"hbar", Kind::real, 0.25, "Planck constant hbar > 0"},
          {"tol", Kind::real, 1e-10, "relative residual threshold"},
          {"matrices", Kind::boolean, false, "include the generator matrices in JSON output"}},
         run_irrep},
        {"tensor",
         "Casimir-spectrum decomposition against the crystal tensor rule",
         {{"lambda1", Kind::real, 1.0, "first highest weight"},
          {"lambda2", Kind::real, 1.0, "second highest weight"},
          {"hbar", Kind::real, 1.0, "Planck constant"},
          {"n", Kind::integer, 0, "if > 0, decompose V(hbar)^{(x) n} instead of the pair"},
          {"r-grid", Kind::real_list, json::array({0.5, 2.0}), "curvatures (> 0)"}},
         run_tensor},
        {"static-limit",
         "Character ratios against dressing-orbit Monte Carlo as hbar decreases",
         {{"lambda", Kind::real, 1.0, "orbit Lambda"},
          {"lambda2", Kind::real, 0.0, "second orbit Lambda2 (0: single orbit)"},
          {"r", Kind::real, 1.0, "curvature r > 0"},
          {"hbar-grid", Kind::real_list, json::array({0.1, 0.05, 0.025}), "decreasing hbar values"},
          {"a-max", Kind::integer, 2, "monomials E^a F^a H^c with a <= a-max"},
          {"c-max", Kind::integer, 2, "and c <= c-max"},
          {"N", Kind::integer, 1000000, "Monte Carlo samples"},
          {"gap-floor", Kind::real, 0.01, "final gap threshold floor"}},
         run_static_limit},
        {"crystal-limit",
         "The four corners of the crystal-limit diagram for phi(Lambda) psi(H)",
         {{"lambda1", Kind::real, 1.0, "first highest weight"},
          {"lambda2", Kind::real, 1.0, "second highest weight"},
          {"r", Kind::real, 20.0, "curvature of the orbit functional"},
          {"hbar", Kind::real, 0.01, "hbar of the crystal sum"},
          {"hbar-quantum", Kind::real, 0.1, "hbar of the quantum trace"},
          {"r-quantum-cap", Kind::real, 3.0, "the quantum trace is evaluated at min(r, cap)"},
          {"phi", Kind::real_list, json::array({0.0, 1.0}), "coefficients of phi, increasing degree"},
          {"psi", Kind::real_list, json::array({1.0}), "coefficients of psi, increasing degree"},
          {"N", Kind::integer, 200000, "importance samples"},
          {"orbit-tol", Kind::real, 0.05, "orbit functional tolerance floor"},
          {"crystal-tol", Kind::real, 0.02, "crystal sum tolerance"}},
         run_crystal_limit},
        {"chain",
         "Exact evolution of the lattice kernels, or the diffusive radial chain",
         {{"mode", Kind::text, "evolve", "evolve | diffusive"},
          {"kernel", Kind::text, "radial", "radial | joint-q | joint-flat"},
          {"steps", Kind::integer, 10, "number of steps n >= 1"},
          {"q", Kind::real, 0.5, "joint-q parameter in [0, 1)"},
          {"exact", Kind::boolean, false, "rational arithmetic"},
          {"flip-sign", Kind::boolean, false, "carry X = -omega in the joint-q state"},
          {"hbar", Kind::real, 0.02, "diffusive scale (mode=diffusive)"},
          {"N", Kind::integer, 100000, "paths (mode=diffusive)"},
          {"ks-max", Kind::real, 0.02, "KS threshold (mode=diffusive)"}},
         run_chain},
        {"qwalk-oracle",
         "Exact quantum-walk trajectory law against the predicted Markov kernel",
         {{"n", Kind::integer, 6, "steps, 1..10"},
          {"r", Kind::real, 1.0, "curvature r >= 0"},
          {"hbar", Kind::real, 1.0, "Planck constant"},
          {"tol", Kind::real, 1e-10, "deviation threshold"}},
         run_qwalk_oracle},
        {"sde",
         "Radial part of the Brownian motion on the dual group: KS table or pathwise trends",
         {{"mode", Kind::text, "ks", "ks | trend"},
          {"r-grid", Kind::real_list, json::array({0.1, 1.0, 10.0}), "curvatures (mode=ks)"},
          {"T", Kind::real, 1.0, "horizon"},
          {"dt", Kind::real, 1e-3, "time step"},
          {"N", Kind::integer, 20000, "paths (mode=ks)"},
          {"ks-max", Kind::real, 0.015, "KS threshold against the Maxwell law"},
          {"paths", Kind::integer, 200, "paths (mode=trend)"},
          {"r-norm", Kind::real_list, json::array({0.01, 0.1, 1.0}), "r values approaching the norm process"},
          {"r-pitman", Kind::real_list, json::array({80.0, 20.0, 5.0}), "r values approaching the Pitman transform"},
          {"min-fraction", Kind::real, 0.95, "required fraction of monotone paths"}},
         run_sde},
        {"r-invariance",
         "Radial quantum-walk law across curvatures",
         {{"n", Kind::integer, 8, "steps, 1..12"},
          {"hbar", Kind::real, 1.0, "Planck constant"},
          {"r-grid", Kind::real_list, json::array({0.0, 0.3, 1.0, 3.0}), "curvatures (>= 0)"},
          {"tol", Kind::real, 1e-10, "deviation threshold"}},
         run_r_invariance},
        {"spherical",
         "Spherical functions: closed form, rescaling identity and orbit Monte Carlo",
         {{"lambda", Kind::real, 1.0, "orbit Lambda"},
          {"r", Kind::real, 1.0, "curvature r > 0"},
          {"z", Kind::text_list, json::array({"0", "0.5", "1", "2i"}), "complex spectral parameters"},
          {"N", Kind::integer, 200000, "Monte Carlo samples"}},
         run_spherical},
    };
    return table;
}

}  // namespace qcl::cli
