#pragma once

// Parameter declarations, config-file/flag resolution and result tables for the qcl runner.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcl::cli {

using json = nlohmann::ordered_json;

enum class Kind { real, integer, boolean, text, real_list, text_list };

struct ParamSpec {
    std::string name;
    Kind kind;
    json fallback;
    std::string help;
};

/// A configuration problem attributable to one key; the runner exits with code 2.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error("invalid '" + key + "': " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Converts a flag string to the declared kind. Lists are comma-separated.
json parse_flag(const ParamSpec& spec, const std::string& text);

/// Checks a config-file value against the declared kind; lists may also be given as strings.
json coerce_config(const ParamSpec& spec, const json& value);

/// Resolved parameters with typed accessors and range checks that raise ConfigError.
class Params {
public:
    explicit Params(json values) : values_(std::move(values)) {}

    double real(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::string text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<std::string> texts(const std::string& key) const;

    double positive(const std::string& key) const;
    double nonnegative(const std::string& key) const;
    std::int64_t at_least(const std::string& key, std::int64_t lo) const;
    std::string choice(const std::string& key, const std::vector<std::string>& allowed) const;

    const json& values() const { return values_; }

private:
    const json& at(const std::string& key) const;
    json values_;
};

/// "1", "-0.5", "2i", "1-2i", "i".
std::complex<double> parse_complex(const std::string& text);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row);
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct Outcome {
    Table table;
    std::vector<Check> checks;
    json extra = json::object();  // appended to JSON output only
};

/// Comma-separated, header row, doubles with 17 significant digits.
std::string to_csv(const Table& t);
json to_json(const Table& t, const json& extra);

std::string format_double(double x);

}  // namespace qcl::cli
