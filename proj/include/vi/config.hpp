#pragma once

#include <map>
#include <string>
#include <vector>

#include "vi/sequence.hpp"

namespace vi {

enum class ValidationMode { strict, paper };

/// Scalar parameters and parameter sequences of the double-inertial
/// subgradient extragradient iteration. Defaults are the network-flow
/// experiment settings.
struct SolverConfig {
    double mu = 0.6;
    double lambda1 = 0.6;
    double sigma = 1.5;
    double beta = 0.8;
    double theta_bar = 8.0;

    Sequence alpha_seq = Sequence::constant(0.5);
    Sequence nu_seq = Sequence::constant(1.0);
    Sequence xi_seq = Sequence::constant(0.499);
    Sequence delta_seq = Sequence::one_plus_inv_n();
    Sequence chi_seq = Sequence::one_plus_inv_pow(1.1);
    Sequence zeta_seq = Sequence::inv_shift_pow(1.1);
    double xi_cap = 0.499;

    ValidationMode validation_mode = ValidationMode::paper;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Stopping thresholds; a zero tolerance is inactive.
struct StopRule {
    double residual_tol = 1e-6;  ///< on E_n = ||w_n - y_n||
    double relative_tol = 0.0;   ///< on ||x_{n+1} - x_n|| / ||x_n||
    double operator_tol = 1e-10; ///< on ||F y_n||
    long max_iter = 10000;

    bool active() const noexcept {
        return residual_tol > 0 || relative_tol > 0 || operator_tol > 0 || max_iter > 0;
    }

    friend bool operator==(const StopRule&, const StopRule&) = default;
};

struct Violation {
    enum class Severity { error, warning };
    Severity severity;
    std::string field;
    std::string message;
};

inline constexpr long kDefaultValidationSamples = 1000;

/// Checks scalar ranges and the sequence assumptions on n = 1..samples.
/// Sequence violations are warnings in paper mode and errors in strict mode;
/// scalar-range violations are always errors. Never throws.
std::vector<Violation> validate_config(const SolverConfig& cfg,
                                       long samples = kDefaultValidationSamples);

bool has_errors(const std::vector<Violation>& violations);

/// Upper bound on xi imposed by theta_bar: (theta - sqrt(2 theta)) / theta.
double xi_bound_from_theta(double theta_bar);

/// Flat `key = value` file support. Unknown keys are rejected.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::string& path);

/// Applies recognized solver/stop keys from `kv` onto `cfg`/`stop`; throws
/// ConfigError on an unknown key unless `allow_extra` is set.
void apply_key_values(const KeyValues& kv, SolverConfig& cfg, StopRule& stop, bool allow_extra = false);

std::string to_key_value_text(const SolverConfig& cfg, const StopRule& stop);

std::string to_string(ValidationMode mode);
ValidationMode parse_validation_mode(const std::string& text);

}  // namespace vi
