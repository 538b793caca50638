#include "vi/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "vi/errors.hpp"

namespace vi {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_short(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

double parse_real(std::string_view text, const std::string& context) {
    std::string s(text);
    if (s == "inf" || s == "+inf" || s == "Inf") return INFINITY;
    if (s == "-inf" || s == "-Inf") return -INFINITY;
    if (s.empty()) throw ConfigError(context + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ConfigError(context + ": not a number: '" + s + "'");
    return v;
}

}  // namespace vi
