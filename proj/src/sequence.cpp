#include "vi/sequence.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_args(std::string_view args, std::string_view whole) {
    std::vector<double> out;
    args = trim(args);
    if (args.empty()) return out;
    while (true) {
        auto comma = args.find(',');
        auto tok = trim(args.substr(0, comma));
        out.push_back(parse_real(tok, "sequence '" + std::string(whole) + "'"));
        if (comma == std::string_view::npos) break;
        args.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

Sequence Sequence::parse(std::string_view text) {
    const auto s = trim(text);
    const auto open = s.find('(');
    if (open == std::string_view::npos) {
        return constant(parse_real(s, "sequence"));
    }
    if (s.back() != ')') throw ConfigError("malformed sequence '" + std::string(s) + "'");
    const auto name = trim(s.substr(0, open));
    const auto args = parse_args(s.substr(open + 1, s.size() - open - 2), s);

    auto expect = [&](std::size_t count) {
        if (args.size() != count) {
            throw ConfigError("sequence '" + std::string(name) + "' takes " + std::to_string(count) +
                              " parameter(s), got " + std::to_string(args.size()));
        }
    };
    if (name == "const") {
        expect(1);
        return constant(args[0]);
    }
    if (name == "affine") {
        expect(2);
        return affine(args[0], args[1]);
    }
    if (name == "one_plus_inv_n") {
        expect(0);
        return one_plus_inv_n();
    }
    if (name == "one_plus_inv_pow") {
        expect(1);
        return one_plus_inv_pow(args[0]);
    }
    if (name == "inv_shift_pow") {
        expect(1);
        return inv_shift_pow(args[0]);
    }
    if (name == "inv_pow") {
        expect(1);
        return inv_pow(args[0]);
    }
    throw ConfigError("unknown sequence family '" + std::string(name) + "'");
}

double Sequence::at(long n) const {
    if (n < 1) throw ConfigError("sequence index must be >= 1, got " + std::to_string(n));
    const double x = static_cast<double>(n);
    switch (family_) {
        case Family::constant: return a_;
        case Family::affine: return a_ + b_ / x;
        case Family::one_plus_inv_n: return 1.0 + 1.0 / x;
        case Family::one_plus_inv_pow: return 1.0 + 1.0 / std::pow(x + 1.0, a_);
        case Family::inv_shift_pow: return 1.0 / std::pow(x + 1.0, a_);
        case Family::inv_pow: return 1.0 / std::pow(x, a_);
    }
    return 0.0;
}

std::string Sequence::to_string() const {
    switch (family_) {
        case Family::constant: return "const(" + format_real(a_) + ")";
        case Family::affine: return "affine(" + format_real(a_) + "," + format_real(b_) + ")";
        case Family::one_plus_inv_n: return "one_plus_inv_n()";
        case Family::one_plus_inv_pow: return "one_plus_inv_pow(" + format_real(a_) + ")";
        case Family::inv_shift_pow: return "inv_shift_pow(" + format_real(a_) + ")";
        case Family::inv_pow: return "inv_pow(" + format_real(a_) + ")";
    }
    return {};
}

bool Sequence::nondecreasing() const noexcept {
    switch (family_) {
        case Family::constant: return true;
        case Family::affine: return b_ <= 0.0;
        case Family::one_plus_inv_n: return false;
        case Family::one_plus_inv_pow:
        case Family::inv_shift_pow:
        case Family::inv_pow: return a_ <= 0.0;
    }
    return false;
}

bool Sequence::nonincreasing() const noexcept {
    switch (family_) {
        case Family::constant: return true;
        case Family::affine: return b_ >= 0.0;
        case Family::one_plus_inv_n: return true;
        case Family::one_plus_inv_pow:
        case Family::inv_shift_pow:
        case Family::inv_pow: return a_ >= 0.0;
    }
    return false;
}

double Sequence::limit() const noexcept {
    switch (family_) {
        case Family::constant: return a_;
        case Family::affine: return a_;
        case Family::one_plus_inv_n: return 1.0;
        case Family::one_plus_inv_pow:
            if (a_ > 0.0) return 1.0;
            return a_ == 0.0 ? 2.0 : INFINITY;
        case Family::inv_shift_pow:
        case Family::inv_pow:
            if (a_ > 0.0) return 0.0;
            return a_ == 0.0 ? 1.0 : INFINITY;
    }
    return NAN;
}

bool Sequence::summable_after_offset(double offset) const noexcept {
    switch (family_) {
        case Family::constant: return a_ == offset;
        case Family::affine: return a_ == offset && b_ == 0.0;
        case Family::one_plus_inv_n: return false;
        case Family::one_plus_inv_pow: return offset == 1.0 && a_ > 1.0;
        case Family::inv_shift_pow:
        case Family::inv_pow: return offset == 0.0 && a_ > 1.0;
    }
    return false;
}

}  // namespace vi
