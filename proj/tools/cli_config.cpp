#include "cli_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qcl::cli {

namespace {

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_real(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + s + "'");
    }
    if (used != s.size()) throw ConfigError(key, "expected a number, got '" + s + "'");
    return v;
}

std::int64_t to_integer(const std::string& key, const std::string& s) {
    const double v = to_real(key, s);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) throw ConfigError(key, "expected an integer, got '" + s + "'");
    return static_cast<std::int64_t>(v);
}

}  // namespace

json parse_flag(const ParamSpec& spec, const std::string& text) {
    switch (spec.kind) {
        case Kind::real: return to_real(spec.name, text);
        case Kind::integer: return to_integer(spec.name, text);
        case Kind::boolean:
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            throw ConfigError(spec.name, "expected true or false");
        case Kind::text: return text;
        case Kind::real_list: {
            json arr = json::array();
            for (const auto& s : split(text)) arr.push_back(to_real(spec.name, s));
            if (arr.empty()) throw ConfigError(spec.name, "empty list");
            return arr;
        }
        case Kind::text_list: {
            json arr = json::array();
            for (const auto& s : split(text)) arr.push_back(s);
            if (arr.empty()) throw ConfigError(spec.name, "empty list");
            return arr;
        }
    }
    throw ConfigError(spec.name, "unsupported kind");
}

json coerce_config(const ParamSpec& spec, const json& value) {
    if (value.is_string() && spec.kind != Kind::text) return parse_flag(spec, value.get<std::string>());
    switch (spec.kind) {
        case Kind::real:
            if (value.is_number()) return value.get<double>();
            break;
        case Kind::integer:
            if (value.is_number_integer()) return value.get<std::int64_t>();
            if (value.is_number_float()) return to_integer(spec.name, format_double(value.get<double>()));
            break;
        case Kind::boolean:
            if (value.is_boolean()) return value;
            break;
        case Kind::text:
            if (value.is_string()) return value;
            break;
        case Kind::real_list:
            if (value.is_array() && !value.empty()) {
                json arr = json::array();
                for (const auto& v : value) {
                    if (!v.is_number()) throw ConfigError(spec.name, "expected a list of numbers");
                    arr.push_back(v.get<double>());
                }
                return arr;
            }
            if (value.is_number()) return json::array({value.get<double>()});
            break;
        case Kind::text_list:
            if (value.is_array() && !value.empty()) {
                json arr = json::array();
                for (const auto& v : value) {
                    if (v.is_string()) arr.push_back(v);
                    else if (v.is_number()) arr.push_back(format_double(v.get<double>()));
                    else throw ConfigError(spec.name, "expected a list of strings");
                }
                return arr;
            }
            break;
    }
    throw ConfigError(spec.name, "wrong type " + std::string(value.type_name()));
}

const json& Params::at(const std::string& key) const {
    if (!values_.contains(key)) throw ConfigError(key, "missing");
    return values_.at(key);
}

double Params::real(const std::string& key) const {
    const double v = at(key).get<double>();
    if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
    return v;
}
std::int64_t Params::integer(const std::string& key) const { return at(key).get<std::int64_t>(); }
bool Params::boolean(const std::string& key) const { return at(key).get<bool>(); }
std::string Params::text(const std::string& key) const { return at(key).get<std::string>(); }

std::vector<double> Params::reals(const std::string& key) const {
    auto v = at(key).get<std::vector<double>>();
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError(key, "entries must be finite");
    return v;
}
std::vector<std::string> Params::texts(const std::string& key) const {
    return at(key).get<std::vector<std::string>>();
}

double Params::positive(const std::string& key) const {
    const double v = real(key);
    if (!(v > 0)) throw ConfigError(key, "must be > 0, got " + format_double(v));
    return v;
}
double Params::nonnegative(const std::string& key) const {
    const double v = real(key);
    if (!(v >= 0)) throw ConfigError(key, "must be >= 0, got " + format_double(v));
    return v;
}
std::int64_t Params::at_least(const std::string& key, std::int64_t lo) const {
    const auto v = integer(key);
    if (v < lo) throw ConfigError(key, "must be >= " + std::to_string(lo) + ", got " + std::to_string(v));
    return v;
}
std::string Params::choice(const std::string& key, const std::vector<std::string>& allowed) const {
    const auto v = text(key);
    for (const auto& a : allowed)
        if (a == v) return v;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
    throw ConfigError(key, "must be one of " + list + ", got '" + v + "'");
}

std::complex<double> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return {std::stod(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not the leading one or part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad imaginary part '" + t + "'");
        return v;
    };
    if (cut == std::string::npos) return {0.0, imag(body)};
    std::size_t used = 0;
    const std::string re = body.substr(0, cut);
    const double real = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument("bad real part '" + re + "'");
    return {real, imag(body.substr(cut))};
}

void Table::add(std::vector<json> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            const auto& v = row[c];
            if (v.is_number_float()) out += format_double(v.get<double>());
            else if (v.is_string()) out += v.get<std::string>();
            else out += v.dump();
        }
        out += '\n';
    }
    return out;
}

json to_json(const Table& t, const json& extra) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    json out = {{"columns", t.columns}, {"rows", std::move(rows)}};
    for (const auto& [k, v] : extra.items()) out[k] = v;
    return out;
}

}  // namespace qcl::cli
