#pragma once

#include <string>
#include <string_view>

namespace vi {

/// Round-trippable decimal (17 significant digits); `inf`/`-inf`/`nan` spelled out.
std::string format_real(double value);

/// Fixed-width summary formatting (6 significant digits).
std::string format_short(double value);

/// Parses a decimal or `inf`/`-inf`; throws ConfigError naming `context` on failure.
double parse_real(std::string_view text, const std::string& context);

}  // namespace vi
