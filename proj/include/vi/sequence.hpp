#pragma once

#include <string>
#include <string_view>

namespace vi {

/// Closed-form parameter sequences indexed by n >= 1.
///
/// Text form is `name(params)`; a bare number is a constant:
///   const(c)                 c
///   affine(a,b)              a + b/n
///   one_plus_inv_n()         1 + 1/n
///   one_plus_inv_pow(p)      1 + 1/(n+1)^p
///   inv_shift_pow(p)         1/(n+1)^p
///   inv_pow(p)               1/n^p
class Sequence {
public:
    enum class Family { constant, affine, one_plus_inv_n, one_plus_inv_pow, inv_shift_pow, inv_pow };

    Sequence() = default;

    static Sequence constant(double c) { return {Family::constant, c, 0.0}; }
    static Sequence affine(double a, double b) { return {Family::affine, a, b}; }
    static Sequence one_plus_inv_n() { return {Family::one_plus_inv_n, 0.0, 0.0}; }
    static Sequence one_plus_inv_pow(double p) { return {Family::one_plus_inv_pow, p, 0.0}; }
    static Sequence inv_shift_pow(double p) { return {Family::inv_shift_pow, p, 0.0}; }
    static Sequence inv_pow(double p) { return {Family::inv_pow, p, 0.0}; }

    /// Throws ConfigError on an unknown family or malformed parameters.
    static Sequence parse(std::string_view text);

    /// n-th term; n must be >= 1.
    double at(long n) const;

    Family family() const noexcept { return family_; }
    std::string to_string() const;

    // Analytic facts used by config validation.
    bool nondecreasing() const noexcept;
    bool nonincreasing() const noexcept;
    double limit() const noexcept;
    /// Whether sum_n (term - offset) converges.
    bool summable_after_offset(double offset) const noexcept;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    Sequence(Family f, double a, double b) : family_(f), a_(a), b_(b) {}

    Family family_ = Family::constant;
    double a_ = 0.0;
    double b_ = 0.0;
};

}  // namespace vi
