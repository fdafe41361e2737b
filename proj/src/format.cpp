#include "zetadist/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "zetadist/error.hpp"

namespace zetadist {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw DomainError("expected a number, got an empty string");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw DomainError("expected a number, got '" + s + "'");
    return v;
}

}  // namespace zetadist
