#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vi/config.hpp"
#include "vi/operators.hpp"
#include "vi/projections.hpp"

namespace vi {

enum class VariantKind { mdisem, simplified_41a, linear_41b, no_inertia };

/// Fixed step and constant inertia/averaging used by the linear-rate variant.
struct LinearParams {
    double lambda = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
};

struct AlgorithmVariant {
    VariantKind kind = VariantKind::mdisem;
    LinearParams linear{};

    static AlgorithmVariant mdisem() { return {}; }
    static AlgorithmVariant simplified() { return {VariantKind::simplified_41a, {}}; }
    static AlgorithmVariant no_inertia() { return {VariantKind::no_inertia, {}}; }
    static AlgorithmVariant linear_rate(LinearParams p) { return {VariantKind::linear_41b, p}; }
};

std::string to_string(VariantKind kind);
/// Accepts mdisem, simplified_41a, linear_41b, no_inertia.
VariantKind parse_variant(const std::string& name);

/// Contraction constants of the fixed-step variant on a k-strongly monotone,
/// L-Lipschitz operator:
///   t   = 1 - 1/2 min{ (1-lL)^2/(1+lL)^2, 2 l k (1-lL)/(1+lL)^2 }
///   rho = 1 - alpha (1 - t (1 + nu))
struct LinearRate {
    double t;
    double rho;
};

LinearRate linear_rate_constants(double lambda, double L, double k, double nu, double alpha);

/// Errors if the fixed-step variant's conditions fail: lambda in (0, 1/L),
/// 0 <= nu < 1/t - 1, 0 < alpha < 1/3.
std::vector<Violation> validate_linear_params(const LinearParams& p, std::optional<double> L,
                                              std::optional<double> k);

enum class Termination { none, residual_zero, operator_zero, tol_reached, relative_tol_reached, max_iter };

std::string to_string(Termination t);

/// One row of a convergence trace. The six leading fields are the CSV
/// columns; the rest are diagnostics kept in memory.
struct IterationRecord {
    long n = 0;
    double E = 0.0;       ///< ||w_n - y_n||
    double lambda = 0.0;  ///< step size used in this iteration
    std::optional<double> dist_to_pstar;  ///< ||x_{n+1} - p*||
    double step_norm = 0.0;               ///< ||x_{n+1} - x_n||
    double elapsed_ms = 0.0;

    double d = 0.0;                ///< projection-contraction ratio d_n (NaN if not reached)
    double relative_change = 0.0;  ///< ||x_{n+1} - x_n|| / ||x_n||
    double halfspace_slack = 0.0;  ///< <a, u_n> - b for T_n
    std::optional<double> u_dist;  ///< ||u_n - p*||
    std::optional<double> w_dist;  ///< ||w_n - p*||
};

/// Per-iteration vectors and scalars owned by one run.
struct SolverState {
    long n = 1;
    Vector x_curr;
    Vector x_prev;
    double lambda = 0.0;
    Vector w, y, u, v, eta;
    double d = 0.0;
    Termination terminated = Termination::none;

    SolverState(Vector x0, Vector x1, double lambda1);
};

/// Parameter values in effect at iteration n after the variant mapping.
struct IterationParams {
    double mu, beta, sigma;
    double nu, xi, alpha;
    double delta, chi, zeta;
    bool adaptive;
};

IterationParams resolve_parameters(const SolverConfig& cfg, const AlgorithmVariant& variant, long n);

/// The config the variant actually runs with (for validation and reporting).
SolverConfig effective_config(const SolverConfig& cfg, const AlgorithmVariant& variant);

// --- building blocks -----------------------------------------------------------

/// x_curr + coeff (x_curr - x_prev)
Vector inertial_extrapolate(const Vector& x_curr, const Vector& x_prev, double coeff);

/// P_C(w - beta lambda F w)
Vector forward_step(const Vector& w, double lambda, double beta, const Operator& F, const ProjectionOracle& C);

/// T_n with normal a = w - beta_lambda_Fw - y and offset <a, y>.
HalfSpace build_Tn(const Vector& w, const Vector& y, const Vector& beta_lambda_Fw);

/// w - y - beta lambda (Fw - Fy)
Vector compute_eta(const Vector& w, const Vector& y, double beta, double lambda, const Vector& Fw, const Vector& Fy);

inline constexpr double kEtaGuard = 1e-14;

/// <w - y, eta> / ||eta||^2, or nullopt when ||eta|| <= kEtaGuard (1 + ||w||).
std::optional<double> compute_dn(const Vector& w, const Vector& y, const Vector& eta);

/// P_{T_n}(w - sigma lambda d F y)
Vector contraction_step(const Vector& w, double sigma, double lambda, double d, const Vector& Fy, const HalfSpace& Tn);

/// One full pass of the iteration. Updates `state` in place (x, lambda, n)
/// and sets state.terminated when a stopping test fires; the returned record
/// describes this pass. Throws NumericError on non-finite values.
IterationRecord mdisem_iterate(SolverState& state, const SolverConfig& cfg, const AlgorithmVariant& variant,
                               const ProblemInstance& problem, const StopRule& stop);

struct RunResult {
    Vector x;
    Termination reason = Termination::none;
    long iterations = 0;
    std::vector<IterationRecord> trace;
    double wall_ms = 0.0;
};

/// Loops mdisem_iterate until a stopping test fires or max_iter passes run.
/// x1 defaults to x0. Throws ConfigError if the (effective) config has errors.
RunResult run(const ProblemInstance& problem, const SolverConfig& cfg, const AlgorithmVariant& variant,
              const StopRule& stop, const Vector& x0, std::optional<Vector> x1 = std::nullopt);

}  // namespace vi
