#include "zetadist/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "zetadist/error.hpp"
#include "zetadist/format.hpp"

namespace zetadist {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
    return out;
}

std::string list_text(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt17(v[i]);
    return s;
}

std::int64_t parse_integer(const std::string& v) {
    const double d = parse_double(v);
    if (d != std::floor(d) || std::fabs(d) > 9.007199254740992e15) throw DomainError("not an integer: " + v);
    return static_cast<std::int64_t>(d);
}

std::uint64_t parse_u64(const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw DomainError("not an unsigned integer: " + v);
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw DomainError("not a boolean: " + v);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"sigma", [](RunConfig& c, const std::string& v) { c.sigma = parse_double(v); }},
        {"T", [](RunConfig& c, const std::string& v) { c.T = parse_double(v); }},
        {"count", [](RunConfig& c, const std::string& v) { c.count = parse_integer(v); }},
        {"y", [](RunConfig& c, const std::string& v) { c.y = parse_double(v); }},
        {"k_list", [](RunConfig& c, const std::string& v) { c.k_list = parse_list(v); }},
        {"tau_grid", [](RunConfig& c, const std::string& v) { c.tau_grid = parse_list(v); }},
        {"N", [](RunConfig& c, const std::string& v) { c.N = static_cast<int>(parse_integer(v)); }},
        {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); }},
        {"random_offset", [](RunConfig& c, const std::string& v) { c.random_offset = parse_bool(v); }},
        {"offset", [](RunConfig& c, const std::string& v) { c.offset = parse_double(v); }},
        {"x_grid", [](RunConfig& c, const std::string& v) { c.x_grid = parse_list(v); }},
        {"tol", [](RunConfig& c, const std::string& v) { c.tol = parse_double(v); }},
        {"factor_tol", [](RunConfig& c, const std::string& v) { c.factor_tol = parse_double(v); }},
        {"output_path", [](RunConfig& c, const std::string& v) { c.output_path = v; }},
        {"samples_path", [](RunConfig& c, const std::string& v) { c.samples_path = v; }},
    };
    return table;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig config;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw DomainError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second) throw DomainError("config: key '" + key + "' given twice");
        try {
            it->second(config, value);
        } catch (const std::exception& e) {
            throw DomainError("config key '" + key + "': " + e.what());
        }
    }
    return config;
}

RunConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path);
    return parse_config(in);
}

void write_config(std::ostream& out, const RunConfig& c, const std::string& prefix) {
    out << prefix << "sigma=" << fmt17(c.sigma) << '\n'
        << prefix << "T=" << fmt17(c.T) << '\n'
        << prefix << "count=" << c.count << '\n'
        << prefix << "y=" << fmt17(c.y) << '\n'
        << prefix << "k_list=" << list_text(c.k_list) << '\n'
        << prefix << "tau_grid=" << list_text(c.tau_grid) << '\n'
        << prefix << "N=" << c.N << '\n'
        << prefix << "seed=" << c.seed << '\n'
        << prefix << "random_offset=" << (c.random_offset ? "true" : "false") << '\n'
        << prefix << "offset=" << fmt17(c.offset) << '\n'
        << prefix << "x_grid=" << list_text(c.x_grid) << '\n'
        << prefix << "tol=" << fmt17(c.tol) << '\n'
        << prefix << "factor_tol=" << fmt17(c.factor_tol) << '\n'
        << prefix << "output_path=" << c.output_path << '\n'
        << prefix << "samples_path=" << c.samples_path << '\n';
}

}  // namespace zetadist
