#include "vi/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

class Collector {
public:
    explicit Collector(ValidationMode mode) : mode_(mode) {}

    void scalar(const std::string& field, const std::string& msg) {
        out_.push_back({Violation::Severity::error, field, msg});
    }
    void sequence(const std::string& field, const std::string& msg) {
        out_.push_back({mode_ == ValidationMode::strict ? Violation::Severity::error
                                                        : Violation::Severity::warning,
                        field, msg});
    }
    std::vector<Violation> take() { return std::move(out_); }

private:
    ValidationMode mode_;
    std::vector<Violation> out_;
};

// First n in [1, samples] where pred(term_n, term_{n+1}) fails, or 0.
long first_failure(const Sequence& s, long samples, const std::function<bool(double, double)>& pred) {
    for (long n = 1; n <= samples; ++n) {
        if (!pred(s.at(n), s.at(n + 1))) return n;
    }
    return 0;
}

std::string at_index(long n, double value) {
    return " (n=" + std::to_string(n) + ", term=" + format_real(value) + ")";
}

}  // namespace

double xi_bound_from_theta(double theta_bar) {
    return (theta_bar - std::sqrt(2.0 * theta_bar)) / theta_bar;
}

std::vector<Violation> validate_config(const SolverConfig& cfg, long samples) {
    Collector c(cfg.validation_mode);

    if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) c.scalar("mu", "mu must lie in (0,1), got " + format_real(cfg.mu));
    if (!(cfg.lambda1 > 0.0)) c.scalar("lambda1", "lambda1 must be positive, got " + format_real(cfg.lambda1));
    if (cfg.mu > 0.0) {
        if (!(cfg.sigma > 0.0 && cfg.sigma < 2.0 / cfg.mu)) {
            c.scalar("sigma", "sigma must lie in (0, 2/mu) = (0, " + format_short(2.0 / cfg.mu) + "), got " +
                                  format_real(cfg.sigma));
        }
        if (!(cfg.beta > cfg.sigma / 2.0 && cfg.beta < 1.0 / cfg.mu)) {
            c.scalar("beta", "beta must lie in (sigma/2, 1/mu) = (" + format_short(cfg.sigma / 2.0) + ", " +
                                 format_short(1.0 / cfg.mu) + "), got " + format_real(cfg.beta));
        }
    }
    if (!(cfg.theta_bar > 2.0)) c.scalar("theta_bar", "theta_bar must exceed 2, got " + format_real(cfg.theta_bar));
    if (!std::isfinite(cfg.xi_cap)) c.scalar("xi_cap", "xi_cap must be finite");

    // inertia: nondecreasing in [0, 1]
    if (long n = first_failure(cfg.nu_seq, samples,
                               [](double a, double b) { return 0.0 <= a && a <= b && b <= 1.0; })) {
        c.sequence("nu_seq", "need 0 <= nu_n <= nu_{n+1} <= 1" + at_index(n, cfg.nu_seq.at(n)));
    }

    // second inertia: nondecreasing, capped by xi_cap
    const double xi_limit = std::min(xi_bound_from_theta(cfg.theta_bar), cfg.nu_seq.at(1));
    if (long n = first_failure(cfg.xi_seq, samples, [&](double a, double b) {
            return 0.0 <= a && a <= b && b <= cfg.xi_cap;
        })) {
        c.sequence("xi_seq", "need 0 <= xi_n <= xi_{n+1} <= xi_cap" + at_index(n, cfg.xi_seq.at(n)));
    }
    if (!(cfg.xi_cap < xi_limit)) {
        c.sequence("xi_cap", "need xi_cap < min{(theta-sqrt(2 theta))/theta, nu_1} = " + format_real(xi_limit) +
                                 ", got " + format_real(cfg.xi_cap));
    }

    // averaging weights
    const double alpha_limit = 1.0 / (1.0 + cfg.theta_bar);
    if (long n = first_failure(cfg.alpha_seq, samples, [&](double a, double b) {
            return 0.0 < a && a <= b && b < alpha_limit;
        })) {
        c.sequence("alpha_seq", "need 0 < alpha_n <= alpha_{n+1} < 1/(1+theta_bar) = " + format_real(alpha_limit) +
                                    at_index(n, cfg.alpha_seq.at(n)));
    }

    // step-size sequences: sampled ranges plus analytic limit/summability facts.
    if (long n = first_failure(cfg.delta_seq, samples, [](double a, double) { return a >= 1.0; })) {
        c.sequence("delta_seq", "need delta_n >= 1" + at_index(n, cfg.delta_seq.at(n)));
    }
    if (cfg.delta_seq.limit() != 1.0) {
        c.sequence("delta_seq", "need delta_n -> 1, limit is " + format_real(cfg.delta_seq.limit()));
    }
    if (long n = first_failure(cfg.chi_seq, samples, [](double a, double) { return a >= 1.0; })) {
        c.sequence("chi_seq", "need chi_n >= 1" + at_index(n, cfg.chi_seq.at(n)));
    }
    if (!cfg.chi_seq.summable_after_offset(1.0)) {
        c.sequence("chi_seq", "need sum (chi_n - 1) < inf for " + cfg.chi_seq.to_string());
    }
    if (long n = first_failure(cfg.zeta_seq, samples, [](double a, double) { return a >= 0.0; })) {
        c.sequence("zeta_seq", "need zeta_n >= 0" + at_index(n, cfg.zeta_seq.at(n)));
    }
    if (!cfg.zeta_seq.summable_after_offset(0.0)) {
        c.sequence("zeta_seq", "need sum zeta_n < inf for " + cfg.zeta_seq.to_string());
    }
    return c.take();
}

bool has_errors(const std::vector<Violation>& violations) {
    for (const auto& v : violations) {
        if (v.severity == Violation::Severity::error) return true;
    }
    return false;
}

std::string to_string(ValidationMode mode) { return mode == ValidationMode::strict ? "strict" : "paper"; }

ValidationMode parse_validation_mode(const std::string& text) {
    if (text == "strict") return ValidationMode::strict;
    if (text == "paper") return ValidationMode::paper;
    throw ConfigError("validation_mode must be 'strict' or 'paper', got '" + text + "'");
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

KeyValues read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "': file not found or unreadable");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

void apply_key_values(const KeyValues& kv, SolverConfig& cfg, StopRule& stop, bool allow_extra) {
    for (const auto& [key, value] : kv) {
        auto real = [&] { return parse_real(value, "key '" + key + "'"); };
        if (key == "mu") cfg.mu = real();
        else if (key == "lambda1") cfg.lambda1 = real();
        else if (key == "sigma") cfg.sigma = real();
        else if (key == "beta") cfg.beta = real();
        else if (key == "theta_bar") cfg.theta_bar = real();
        else if (key == "xi_cap") cfg.xi_cap = real();
        else if (key == "alpha_seq") cfg.alpha_seq = Sequence::parse(value);
        else if (key == "nu_seq") cfg.nu_seq = Sequence::parse(value);
        else if (key == "xi_seq") cfg.xi_seq = Sequence::parse(value);
        else if (key == "delta_seq") cfg.delta_seq = Sequence::parse(value);
        else if (key == "chi_seq") cfg.chi_seq = Sequence::parse(value);
        else if (key == "zeta_seq") cfg.zeta_seq = Sequence::parse(value);
        else if (key == "validation_mode") cfg.validation_mode = parse_validation_mode(value);
        else if (key == "residual_tol") stop.residual_tol = real();
        else if (key == "relative_tol") stop.relative_tol = real();
        else if (key == "operator_tol") stop.operator_tol = real();
        else if (key == "max_iter") {
            const double v = real();
            if (v < 0 || v != std::floor(v)) throw ConfigError("max_iter must be a non-negative integer");
            stop.max_iter = static_cast<long>(v);
        } else if (!allow_extra) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

std::string to_key_value_text(const SolverConfig& cfg, const StopRule& stop) {
    std::ostringstream out;
    out << "mu = " << format_real(cfg.mu) << '\n'
        << "lambda1 = " << format_real(cfg.lambda1) << '\n'
        << "sigma = " << format_real(cfg.sigma) << '\n'
        << "beta = " << format_real(cfg.beta) << '\n'
        << "theta_bar = " << format_real(cfg.theta_bar) << '\n'
        << "alpha_seq = " << cfg.alpha_seq.to_string() << '\n'
        << "nu_seq = " << cfg.nu_seq.to_string() << '\n'
        << "xi_seq = " << cfg.xi_seq.to_string() << '\n'
        << "xi_cap = " << format_real(cfg.xi_cap) << '\n'
        << "delta_seq = " << cfg.delta_seq.to_string() << '\n'
        << "chi_seq = " << cfg.chi_seq.to_string() << '\n'
        << "zeta_seq = " << cfg.zeta_seq.to_string() << '\n'
        << "residual_tol = " << format_real(stop.residual_tol) << '\n'
        << "relative_tol = " << format_real(stop.relative_tol) << '\n'
        << "operator_tol = " << format_real(stop.operator_tol) << '\n'
        << "max_iter = " << stop.max_iter << '\n'
        << "validation_mode = " << to_string(cfg.validation_mode) << '\n';
    return out.str();
}

}  // namespace vi
