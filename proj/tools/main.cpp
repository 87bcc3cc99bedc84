// qcl: experiment runner. One subcommand per invocation; writes a result table and a
// run manifest. Exit codes: 0 success, 2 invalid configuration, 3 failed --check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "commands.hpp"
#include "qcl/parallel.hpp"
#include "qcl/rng.hpp"
#include "qcl/simd/kernels.hpp"

#ifndef QCL_VERSION
#define QCL_VERSION "0.0.0"
#endif

namespace {

using namespace qcl::cli;

constexpr std::uint64_t kDefaultSeed = 42;

struct Globals {
    std::string config_path;
    std::string seed;
    std::string out;
    std::string manifest;
    std::string format;
    int threads = 0;
    bool check = false;
};

struct Invocation {
    const Command* command = nullptr;
    std::map<std::string, std::string> flag_values;
    std::map<std::string, std::size_t> flag_counts;
    std::map<std::string, bool> bool_flags;
};

std::uint64_t parse_seed(const std::string& key, const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(key, "expected a non-negative integer seed, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ConfigError(key, "seed out of range");
    }
}

json read_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config", "top level must be an object");
    return cfg;
}

struct Resolved {
    json params = json::object();
    std::uint64_t seed = kDefaultSeed;
    std::string seed_source = "default";
    std::string out;
    std::string manifest;
    std::string format = "csv";
    int threads = 0;
    bool check = false;
};

// Defaults, then config file, then flags.
void resolve(const Invocation& inv, const Globals& g, Resolved& res) {
    const Command& cmd = *inv.command;
    const json cfg = read_config(g.config_path);

    for (const auto& spec : cmd.params) res.params[spec.name] = spec.fallback;

    std::optional<std::string> cfg_seed;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "subcommand") {
            if (!value.is_string() || value.get<std::string>() != cmd.name)
                throw ConfigError(key, "config is for a different subcommand");
        } else if (key == "seed") {
            cfg_seed = value.is_string() ? value.get<std::string>() : value.dump();
        } else if (key == "out" || key == "manifest" || key == "format") {
            if (!value.is_string()) throw ConfigError(key, "expected a string");
            (key == "out" ? res.out : key == "manifest" ? res.manifest : res.format) = value.get<std::string>();
        } else if (key == "threads") {
            if (!value.is_number_integer() || value.get<int>() < 0) throw ConfigError(key, "expected an integer >= 0");
            res.threads = value.get<int>();
        } else if (key == "check") {
            if (!value.is_boolean()) throw ConfigError(key, "expected true or false");
            res.check = value.get<bool>();
        } else {
            const auto it = std::find_if(cmd.params.begin(), cmd.params.end(),
                                         [&](const ParamSpec& s) { return s.name == key; });
            if (it == cmd.params.end()) throw ConfigError(key, "unknown key for '" + cmd.name + "'");
            res.params[key] = coerce_config(*it, value);
        }
    }

    for (const auto& spec : cmd.params) {
        if (spec.kind == Kind::boolean) {
            if (inv.bool_flags.at(spec.name)) res.params[spec.name] = true;
        } else if (inv.flag_counts.at(spec.name) > 0) {
            res.params[spec.name] = parse_flag(spec, inv.flag_values.at(spec.name));
        }
    }

    if (!g.seed.empty()) {
        res.seed = parse_seed("seed", g.seed);
        res.seed_source = "flag";
    } else if (cfg_seed) {
        res.seed = parse_seed("seed", *cfg_seed);
        res.seed_source = "config";
    } else if (const auto env = qcl::seed_from_env()) {
        res.seed = *env;
        res.seed_source = "QCL_SEED";
    }
    if (!g.format.empty()) res.format = g.format;
    if (res.format != "csv" && res.format != "json") throw ConfigError("format", "must be csv or json");
    if (!g.out.empty()) res.out = g.out;
    if (res.out.empty()) res.out = cmd.name + "." + res.format;
    if (!g.manifest.empty()) res.manifest = g.manifest;
    if (res.manifest.empty()) {
        std::filesystem::path p = res.out == "-" ? std::filesystem::path(cmd.name) : std::filesystem::path(res.out);
        res.manifest = p.replace_extension(".manifest.json").string();
    }
    if (g.threads < 0) throw ConfigError("threads", "must be >= 0");
    if (g.threads > 0) res.threads = g.threads;
    res.check = res.check || g.check;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcl: experiments on the quantum, crystal and classical limits of U_q(sl2) walks"};
    app.set_version_flag("--version", QCL_VERSION);
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "JSON config file; flags override its values");
    app.add_option("--seed", g.seed, "64-bit seed (falls back to QCL_SEED, then 42)");
    app.add_option("--out", g.out, "result table path, '-' for stdout (default <subcommand>.<format>)");
    app.add_option("--manifest", g.manifest, "manifest path (default: --out with .manifest.json)");
    app.add_option("--format", g.format, "csv | json");
    app.add_option("--threads", g.threads, "worker cap (0: hardware concurrency)");
    app.add_flag("--check", g.check, "exit 3 when an acceptance threshold fails");

    std::vector<Invocation> invocations;
    invocations.reserve(commands().size());
    std::map<CLI::App*, std::size_t> by_app;
    for (const auto& cmd : commands()) {
        auto& inv = invocations.emplace_back();
        inv.command = &cmd;
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        for (const auto& spec : cmd.params) {
            const std::string flag = "--" + spec.name;
            const std::string help = spec.help + " [" + spec.fallback.dump() + "]";
            if (spec.kind == Kind::boolean) {
                sub->add_flag(flag, inv.bool_flags[spec.name], help);
            } else {
                inv.flag_counts[spec.name] = 0;
                sub->add_option(flag, inv.flag_values[spec.name], help);
            }
        }
        by_app[sub] = invocations.size() - 1;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto* sub = app.get_subcommands().front();
    Invocation& inv = invocations[by_app.at(sub)];
    for (auto& [name, count] : inv.flag_counts) count = sub->count("--" + name);

    const auto start = std::chrono::steady_clock::now();
    Resolved res;
    json manifest = {{"tool", "qcl"}, {"version", QCL_VERSION}, {"subcommand", inv.command->name}};
    int exit_code = 0;
    std::string status = "ok";
    std::vector<Check> checks;

    try {
        resolve(inv, g, res);
        qcl::set_max_threads(res.threads);
        const Outcome outcome = inv.command->run({Params(res.params), res.seed});
        checks = outcome.checks;
        write_text(res.out, res.format == "csv" ? to_csv(outcome.table)
                                                : to_json(outcome.table, outcome.extra).dump(2) + "\n");
        const bool all_pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
        if (res.check && !all_pass) {
            exit_code = 3;
            status = "check_failed";
        }
    } catch (const ConfigError& e) {
        std::cerr << "qcl " << inv.command->name << ": " << e.what() << "\n";
        exit_code = 2;
        status = "invalid";
        manifest["error"] = {{"key", e.key()}, {"message", e.what()}};
    } catch (const std::invalid_argument& e) {
        std::cerr << "qcl " << inv.command->name << ": invalid parameters: " << e.what() << "\n";
        exit_code = 2;
        status = "invalid";
        manifest["error"] = {{"message", e.what()}};
    } catch (const std::exception& e) {
        std::cerr << "qcl " << inv.command->name << ": " << e.what() << "\n";
        exit_code = 1;
        status = "error";
        manifest["error"] = {{"message", e.what()}};
    }

    for (const auto& c : checks)
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
                  << " threshold=" << format_double(c.threshold) << "\n";

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["parameters"] = res.params;
    manifest["seed"] = res.seed;
    manifest["seed_source"] = res.seed_source;
    manifest["config"] = g.config_path;
    manifest["out"] = res.out;
    manifest["format"] = res.format;
    manifest["threads"] = res.threads;
    manifest["check"] = res.check;
    manifest["simd_backend"] = std::string(qcl::simd::backend_name(qcl::simd::active().backend));
    json check_list = json::array();
    for (const auto& c : checks)
        check_list.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold}});
    manifest["checks"] = std::move(check_list);
    manifest["status"] = status;
    manifest["exit_code"] = exit_code;
    manifest["wall_time_s"] = wall;
    if (res.manifest.empty()) {
        const bool named = !g.out.empty() && g.out != "-";
        std::filesystem::path p = g.manifest.empty() ? std::filesystem::path(named ? g.out : inv.command->name)
                                                     : std::filesystem::path(g.manifest);
        res.manifest = g.manifest.empty() ? p.replace_extension(".manifest.json").string() : p.string();
    }
    {
        try {
            write_text(res.manifest, manifest.dump(2) + "\n");
        } catch (const std::exception& e) {
            std::cerr << "qcl: " << e.what() << "\n";
            if (exit_code == 0) exit_code = 1;
        }
    }
    return exit_code;
}
