#include "vi/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "vi/errors.hpp"
#include "vi/format.hpp"
#include "vi/stepsize.hpp"

namespace vi {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite(const Vector& v, const char* name, long n) {
    if (!v.allFinite()) {
        throw NumericError(std::string("non-finite value in ") + name + " at iteration " + std::to_string(n));
    }
}

std::optional<double> distance(const std::optional<Vector>& p, const Vector& x) {
    if (!p) return std::nullopt;
    return (x - *p).norm();
}

}  // namespace

std::string to_string(VariantKind kind) {
    switch (kind) {
        case VariantKind::mdisem: return "mdisem";
        case VariantKind::simplified_41a: return "simplified_41a";
        case VariantKind::linear_41b: return "linear_41b";
        case VariantKind::no_inertia: return "no_inertia";
    }
    return "?";
}

VariantKind parse_variant(const std::string& name) {
    if (name == "mdisem") return VariantKind::mdisem;
    if (name == "simplified_41a") return VariantKind::simplified_41a;
    if (name == "linear_41b") return VariantKind::linear_41b;
    if (name == "no_inertia") return VariantKind::no_inertia;
    throw ConfigError("unknown variant '" + name + "' (expected mdisem, simplified_41a, linear_41b, no_inertia)");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::none: return "none";
        case Termination::residual_zero: return "residual_zero";
        case Termination::operator_zero: return "operator_zero";
        case Termination::tol_reached: return "tol_reached";
        case Termination::relative_tol_reached: return "relative_tol_reached";
        case Termination::max_iter: return "max_iter";
    }
    return "?";
}

LinearRate linear_rate_constants(double lambda, double L, double k, double nu, double alpha) {
    const double lL = lambda * L;
    const double denom = (1.0 + lL) * (1.0 + lL);
    const double first = (1.0 - lL) * (1.0 - lL) / denom;
    const double second = 2.0 * lambda * k * (1.0 - lL) / denom;
    const double t = 1.0 - 0.5 * std::min(first, second);
    return {t, 1.0 - alpha * (1.0 - t * (1.0 + nu))};
}

std::vector<Violation> validate_linear_params(const LinearParams& p, std::optional<double> L,
                                              std::optional<double> k) {
    std::vector<Violation> out;
    auto error = [&](const char* field, std::string msg) {
        out.push_back({Violation::Severity::error, field, std::move(msg)});
    };
    if (!L || !k) {
        error("problem", "fixed-step variant needs known Lipschitz and strong monotonicity constants");
        return out;
    }
    if (!(p.lambda > 0.0 && p.lambda * *L < 1.0)) {
        error("lambda", "need lambda in (0, 1/L) = (0, " + format_real(1.0 / *L) + "), got " + format_real(p.lambda));
        return out;
    }
    const auto rate = linear_rate_constants(p.lambda, *L, *k, p.nu, p.alpha);
    if (!(p.nu >= 0.0 && p.nu < 1.0 / rate.t - 1.0)) {
        error("nu", "need 0 <= nu < 1/t - 1 = " + format_real(1.0 / rate.t - 1.0) + ", got " + format_real(p.nu));
    }
    if (!(p.alpha > 0.0 && p.alpha < 1.0 / 3.0)) {
        error("alpha", "need alpha in (0, 1/3), got " + format_real(p.alpha));
    }
    return out;
}

SolverState::SolverState(Vector x0, Vector x1, double lambda1)
    : x_curr(std::move(x1)), x_prev(std::move(x0)), lambda(lambda1) {
    if (x_curr.size() != x_prev.size()) throw DimensionError("solvers", "x0 and x1 differ in dimension");
}

IterationParams resolve_parameters(const SolverConfig& cfg, const AlgorithmVariant& variant, long n) {
    IterationParams p{cfg.mu,
                      cfg.beta,
                      cfg.sigma,
                      cfg.nu_seq.at(n),
                      cfg.xi_seq.at(n),
                      cfg.alpha_seq.at(n),
                      cfg.delta_seq.at(n),
                      cfg.chi_seq.at(n),
                      cfg.zeta_seq.at(n),
                      true};
    switch (variant.kind) {
        case VariantKind::mdisem: break;
        case VariantKind::simplified_41a:
            p.nu = 1.0;
            p.xi = 0.0;
            p.delta = p.chi = 1.0;
            p.zeta = 0.0;
            p.sigma = p.beta = 1.0;
            break;
        case VariantKind::linear_41b:
            p.nu = variant.linear.nu;
            p.alpha = variant.linear.alpha;
            p.xi = 0.0;
            p.sigma = p.beta = 1.0;
            p.delta = p.chi = 1.0;
            p.zeta = 0.0;
            p.adaptive = false;
            break;
        case VariantKind::no_inertia:
            p.nu = 0.0;
            p.xi = 0.0;
            break;
    }
    return p;
}

SolverConfig effective_config(const SolverConfig& cfg, const AlgorithmVariant& variant) {
    SolverConfig e = cfg;
    switch (variant.kind) {
        case VariantKind::mdisem: break;
        case VariantKind::simplified_41a:
            e.nu_seq = Sequence::constant(1.0);
            e.xi_seq = Sequence::constant(0.0);
            e.xi_cap = 0.0;
            e.delta_seq = e.chi_seq = Sequence::constant(1.0);
            e.zeta_seq = Sequence::constant(0.0);
            e.sigma = e.beta = 1.0;
            break;
        case VariantKind::linear_41b:
            e.lambda1 = variant.linear.lambda;
            e.nu_seq = Sequence::constant(variant.linear.nu);
            e.alpha_seq = Sequence::constant(variant.linear.alpha);
            e.xi_seq = Sequence::constant(0.0);
            e.xi_cap = 0.0;
            e.delta_seq = e.chi_seq = Sequence::constant(1.0);
            e.zeta_seq = Sequence::constant(0.0);
            e.sigma = e.beta = 1.0;
            break;
        case VariantKind::no_inertia:
            e.nu_seq = Sequence::constant(0.0);
            e.xi_seq = Sequence::constant(0.0);
            e.xi_cap = 0.0;
            break;
    }
    return e;
}

Vector inertial_extrapolate(const Vector& x_curr, const Vector& x_prev, double coeff) {
    if (x_curr.size() != x_prev.size()) throw DimensionError("solvers", "inertial_extrapolate: dimension mismatch");
    return x_curr + coeff * (x_curr - x_prev);
}

Vector forward_step(const Vector& w, double lambda, double beta, const Operator& F, const ProjectionOracle& C) {
    if (!(lambda > 0.0)) throw DomainError("solvers", "forward_step: lambda must be positive");
    return C.project(w - (beta * lambda) * F(w));
}

HalfSpace build_Tn(const Vector& w, const Vector& y, const Vector& beta_lambda_Fw) {
    Vector a = (w - beta_lambda_Fw) - y;
    const double b = a.dot(y);
    return HalfSpace(std::move(a), b);
}

Vector compute_eta(const Vector& w, const Vector& y, double beta, double lambda, const Vector& Fw, const Vector& Fy) {
    return (w - y) - (beta * lambda) * (Fw - Fy);
}

std::optional<double> compute_dn(const Vector& w, const Vector& y, const Vector& eta) {
    const double eta_sq = eta.squaredNorm();
    if (std::sqrt(eta_sq) <= kEtaGuard * (1.0 + w.norm())) return std::nullopt;
    return (w - y).dot(eta) / eta_sq;
}

Vector contraction_step(const Vector& w, double sigma, double lambda, double d, const Vector& Fy, const HalfSpace& Tn) {
    return Tn.project(w - (sigma * lambda * d) * Fy);
}

IterationRecord mdisem_iterate(SolverState& s, const SolverConfig& cfg, const AlgorithmVariant& variant,
                               const ProblemInstance& problem, const StopRule& stop) {
    const long n = s.n;
    const IterationParams p = resolve_parameters(cfg, variant, n);
    const auto& F = problem.op;
    const auto& p_star = problem.known_solution;

    IterationRecord rec;
    rec.n = n;
    rec.lambda = s.lambda;
    rec.d = kNaN;
    rec.relative_change = kNaN;

    // Step 1: inertial point and forward projection.
    s.w = inertial_extrapolate(s.x_curr, s.x_prev, p.nu);
    require_finite(s.w, "w", n);
    const Vector Fw = F(s.w);
    const Vector scaled_Fw = (p.beta * s.lambda) * Fw;
    s.y = problem.feasible.project(s.w - scaled_Fw);
    require_finite(s.y, "y", n);
    const Vector Fy = F(s.y);
    require_finite(Fy, "F(y)", n);

    const double lambda_next =
        p.adaptive ? next_lambda(s.lambda, s.w, s.y, Fw, Fy, {p.mu, p.delta, p.chi, p.zeta}) : s.lambda;

    rec.E = (s.w - s.y).norm();
    rec.w_dist = distance(p_star, s.w);

    auto finish_at_y = [&](Termination why) {
        rec.dist_to_pstar = distance(p_star, s.y);
        rec.step_norm = (s.y - s.x_curr).norm();
        const double xn = s.x_curr.norm();
        rec.relative_change = xn > 0.0 ? rec.step_norm / xn : std::numeric_limits<double>::infinity();
        s.x_prev = s.x_curr;
        s.x_curr = s.y;
        s.lambda = lambda_next;
        s.terminated = why;
        return rec;
    };

    if (rec.E == 0.0) return finish_at_y(Termination::residual_zero);
    if (stop.residual_tol > 0.0 && rec.E <= stop.residual_tol) return finish_at_y(Termination::tol_reached);
    if (stop.operator_tol > 0.0 && Fy.norm() <= stop.operator_tol) return finish_at_y(Termination::operator_zero);

    // Step 2: projection-contraction onto the half-space T_n.
    s.eta = compute_eta(s.w, s.y, p.beta, s.lambda, Fw, Fy);
    const auto d = compute_dn(s.w, s.y, s.eta);
    if (!d) return finish_at_y(Termination::residual_zero);
    s.d = *d;
    rec.d = *d;
    const HalfSpace Tn = build_Tn(s.w, s.y, scaled_Fw);
    s.u = contraction_step(s.w, p.sigma, s.lambda, *d, Fy, Tn);
    require_finite(s.u, "u", n);
    rec.halfspace_slack = Tn.degenerate() ? 0.0 : Tn.slack(s.u);
    rec.u_dist = distance(p_star, s.u);

    // Step 3: second inertial point and averaging.
    s.v = inertial_extrapolate(s.x_curr, s.x_prev, p.xi);
    Vector x_next = (1.0 - p.alpha) * s.v + p.alpha * s.u;
    require_finite(x_next, "x", n);

    rec.step_norm = (x_next - s.x_curr).norm();
    const double xn = s.x_curr.norm();
    rec.relative_change = xn > 0.0 ? rec.step_norm / xn : std::numeric_limits<double>::infinity();
    rec.dist_to_pstar = distance(p_star, x_next);

    s.x_prev = std::move(s.x_curr);
    s.x_curr = std::move(x_next);
    s.lambda = lambda_next;
    ++s.n;

    if (stop.relative_tol > 0.0 && rec.relative_change < stop.relative_tol) {
        s.terminated = Termination::relative_tol_reached;
    }
    return rec;
}

RunResult run(const ProblemInstance& problem, const SolverConfig& cfg, const AlgorithmVariant& variant,
              const StopRule& stop, const Vector& x0, std::optional<Vector> x1) {
    if (!problem.op) throw ConfigError("problem '" + problem.name + "' has no operator");
    if (x0.size() != problem.dimension) {
        throw DimensionError("solvers", "start point has dimension " + std::to_string(x0.size()) + ", problem " +
                                            problem.name + " has " + std::to_string(problem.dimension));
    }
    if (!stop.active()) throw ConfigError("stop rule has no active tolerance and no iteration budget");
    if (stop.max_iter < 0) throw ConfigError("max_iter must be non-negative");

    double lambda1 = cfg.lambda1;
    if (variant.kind == VariantKind::linear_41b) {
        const auto v = validate_linear_params(variant.linear, problem.lipschitz, problem.strong_monotonicity);
        if (has_errors(v)) throw ConfigError("linear_41b: " + v.front().field + ": " + v.front().message);
        lambda1 = variant.linear.lambda;
    } else {
        const auto v = validate_config(effective_config(cfg, variant));
        if (has_errors(v)) {
            for (const auto& e : v) {
                if (e.severity == Violation::Severity::error) throw ConfigError(e.field + ": " + e.message);
            }
        }
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    SolverState state(x0, x1.value_or(x0), lambda1);
    if (state.x_curr.size() != problem.dimension) throw DimensionError("solvers", "x1 has the wrong dimension");

    RunResult result;
    result.reason = Termination::max_iter;
    for (long it = 0; it < stop.max_iter; ++it) {
        IterationRecord rec = mdisem_iterate(state, cfg, variant, problem, stop);
        rec.elapsed_ms = elapsed();
        result.trace.push_back(std::move(rec));
        if (state.terminated != Termination::none) {
            result.reason = state.terminated;
            break;
        }
    }
    result.iterations = static_cast<long>(result.trace.size());
    result.x = state.x_curr;
    result.wall_ms = elapsed();
    return result;
}

}  // namespace vi
