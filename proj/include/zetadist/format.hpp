#pragma once

#include <string>
#include <string_view>

namespace zetadist {

/// Shortest-unambiguous-in-practice decimal: 17 significant digits, "inf",
/// "-inf" or "nan" for non-finite values.
std::string fmt17(double v);

/// Strict decimal parse; the whole string must be consumed. Accepts "inf".
double parse_double(std::string_view text);

}  // namespace zetadist
