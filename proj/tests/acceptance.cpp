// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "oracles.hpp"
#include "vi/format.hpp"
#include "vi/harness.hpp"

using namespace vi;

namespace {

int failures = 0;

void verdict(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d, %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    if (!ok) ++failures;
}

void info(const std::string& text) { std::printf("       info: %s\n", text.c_str()); }

std::string g(double v) { return format_short(v); }

double seconds(double ms) { return ms / 1000.0; }

void network_equilibrium() {
    const auto res = run_preset("network_51");
    const auto& s = res.summary;
    const bool ok = s.reason == Termination::tol_reached && s.final_E < 1e-6 && s.final_error && *s.final_error <= 2e-3 &&
                    s.iterations <= 3 * 58 && seconds(s.wall_ms) < 10.0;
    verdict(1, "network equilibrium", ok,
            "iterations " + std::to_string(s.iterations) + " (limit 174), E " + g(s.final_E) + ", inf-error " +
                g(s.final_error.value_or(NAN)) + ", " + g(seconds(s.wall_ms)) + " s");
}

void nash_cournot() {
    const auto res = run_preset("nash_52");
    const auto& s = res.summary;
    const auto nash = NashProblem::five_firm_instance();
    const double f_at_pstar = nash_eval(nash, *nash.known_solution()).lpNorm<Eigen::Infinity>();
    const bool ok = s.final_error && *s.final_error <= 5e-2 && s.iterations <= 3 * 80 && f_at_pstar <= 1e-2;
    verdict(2, "Nash-Cournot", ok,
            "iterations " + std::to_string(s.iterations) + " (limit 240), inf-error " + g(s.final_error.value_or(NAN)) +
                ", max |F(p*)| " + g(f_at_pstar));
}

void deblurring() {
    bool ok = true;
    std::string detail;
    for (const auto& [name, thr] : {std::pair{"deblur_gaussian_53", 1e-3}, std::pair{"deblur_motion_53", 1e-2}}) {
        const auto res = run_preset(name);
        const double R = res.run.trace.empty() ? NAN : res.run.trace.back().relative_change;
        const double ratio = res.summary.objective_ratio.value_or(NAN);
        ok = ok && res.run.reason == Termination::relative_tol_reached && R < thr && res.run.iterations <= 2000 &&
             ratio <= 0.01;
        detail += std::string(name) + ": " + std::to_string(res.run.iterations) + " iterations, R " + g(R) +
                  ", objective ratio " + g(ratio) + "; ";
    }
    verdict(3, "deblurring", ok, detail);
}

void linear_rate() {
    const auto preset = make_preset("linear_rate");
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run(preset.problem, preset.config, preset.variant, preset.stop, preset.x0, preset.x1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& lp = preset.variant.linear;
    const auto rate =
        linear_rate_constants(lp.lambda, *preset.problem.lipschitz, *preset.problem.strong_monotonicity, lp.nu, lp.alpha);
    const Vector& p = *preset.problem.known_solution;
    double b = (preset.x1 - p).squaredNorm() + (preset.x1 - preset.x0).squaredNorm();
    long bad = 0;
    double worst = -INFINITY;
    for (const auto& rec : r.trace) {
        const double next = *rec.dist_to_pstar * *rec.dist_to_pstar + rec.step_norm * rec.step_norm;
        worst = std::max(worst, next - rate.rho * b);
        if (next > rate.rho * b + 1e-12) ++bad;
        b = next;
    }
    verdict(4, "linear rate", bad == 0 && secs < 1.0 && !r.trace.empty(),
            std::to_string(r.trace.size()) + " iterations, rho " + g(rate.rho) + ", violations " + std::to_string(bad) +
                ", max b_{n+1} - rho b_n " + g(worst) + ", " + g(secs) + " s");
}

void projection_oracle() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> N(0.0, 2.0);
    double worst = 0.0, worst_idem = 0.0, worst_expand = -INFINITY, worst_vi = -INFINITY;
    int missing = 0;
    const int sets = 60;
    for (int k = 0; k < sets; ++k) {
        const int n = 2 + k % 5;
        const auto P = oracle::random_polyhedron(rng, n);
        PolyhedralSet set(P.T, P.r, P.lo, P.hi);
        const double tol = kDefaultProjectionTol;
        for (int trial = 0; trial < 20; ++trial) {
            const Vector x = Vector::NullaryExpr(n, [&] { return N(rng); });
            const Vector z = Vector::NullaryExpr(n, [&] { return N(rng); });
            const auto want = oracle::active_set_projection(P.T, P.r, P.lo, P.hi, x);
            if (!want) {
                ++missing;
                continue;
            }
            const Vector px = set.project(x, 1e-12, 200000);
            const Vector pz = set.project(z, 1e-12, 200000);
            worst = std::max(worst, (px - *want).lpNorm<Eigen::Infinity>());
            worst_idem = std::max(worst_idem, (set.project(px) - px).norm() / (10 * tol));
            worst_expand = std::max(worst_expand, (px - pz).norm() - (x - z).norm() - 10 * tol);
            worst_vi = std::max(worst_vi, (x - px).dot(pz - px) - tol * (1 + x.norm()) * (1 + pz.norm()));
        }
    }
    const bool ok = missing == 0 && worst <= 1e-6 && worst_idem <= 1.0 && worst_expand <= 0.0 && worst_vi <= 0.0;
    verdict(5, "projection oracle", ok,
            std::to_string(sets) + " sets x 20 points, max inf-gap to active-set oracle " + g(worst) +
                ", idempotence " + g(worst_idem) + " of budget, nonexpansive margin " + g(worst_expand) +
                ", variational margin " + g(worst_vi));
}

void step_floor() {
    bool ok = true;
    std::string detail;
    auto check = [&](const std::string& label, const ExperimentPreset& p, double L) {
        const auto r = run(p.problem, p.config, p.variant, p.stop, p.x0, p.x1);
        double lo = INFINITY;
        for (const auto& rec : r.trace) lo = std::min(lo, rec.lambda);
        const double floor = std::min(p.config.mu / L, p.config.lambda1);
        ok = ok && lo >= floor - 1e-12;
        detail += label + " min lambda " + g(lo) + " vs floor " + g(floor) + "; ";
    };
    check("network", make_preset("network_51"), estimate_lipschitz(NetworkProblem::reference_instance()));
    for (const char* name : {"deblur_gaussian_53", "deblur_motion_53"}) {
        const auto p = make_preset(name);
        check(name, p, estimate_lipschitz(*p.deblur));
    }
    verdict(6, "step-size floor", ok, detail);
}

void fejer() {
    const auto p = make_preset("network_51");
    const auto r = run(p.problem, p.config, p.variant, p.stop, p.x0, p.x1);
    long bad = 0, first_bad = 0;
    double worst = -INFINITY;
    for (const auto& rec : r.trace) {
        if (rec.n < 10 || !rec.u_dist || !rec.w_dist) continue;
        const double gap = *rec.u_dist - *rec.w_dist;
        worst = std::max(worst, gap);
        if (gap > 1e-9) {
            ++bad;
            if (!first_bad) first_bad = rec.n;
        }
    }
    verdict(7, "Fejer inequality for n >= 10", bad == 0,
            std::to_string(bad) + " violations, first at n=" + std::to_string(first_bad) +
                ", max ||u-p*|| - ||w-p*|| " + g(worst));

    // The inequality is only claimed past the index where beta mu delta_n lambda_n / lambda_{n+1} < 1 holds for good.
    long n0 = 1;
    for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
        const long n = r.trace[i].n;
        const double ratio = p.config.beta * p.config.mu * p.config.delta_seq.at(n) * r.trace[i].lambda /
                             r.trace[i + 1].lambda;
        if (ratio >= 1.0) n0 = n + 1;
    }
    long bad_after = 0;
    for (const auto& rec : r.trace)
        if (rec.n >= n0 && rec.u_dist && rec.w_dist && *rec.u_dist > *rec.w_dist + 1e-9) ++bad_after;
    info("last step-ratio crossing gives n0 = " + std::to_string(n0) + " of " + std::to_string(r.iterations) +
         " iterations; violations at n >= n0: " + std::to_string(bad_after));
}

void ablation() {
    const auto p = make_preset("network_51");
    const auto rows =
        compare(p.problem, {AlgorithmVariant::mdisem(), AlgorithmVariant::no_inertia()}, p.config, p.stop, p.x0, p.x1);
    const long a = rows[0].summary.iterations, b = rows[1].summary.iterations;
    verdict(8, "ablation ordering", b >= a && rows[0].run.reason == Termination::tol_reached,
            "mdisem " + std::to_string(a) + ", no_inertia " + std::to_string(b) + " iterations");
}

struct BlockOutcome {
    long cells = 0, converged = 0, rows_ok = 0;
    std::string detail;
};

BlockOutcome sensitivity(const ExperimentPreset& p, const std::vector<SensitivityBlock>& blocks) {
    BlockOutcome out;
    StopRule stop = p.stop;
    stop.max_iter = 5000;
    for (const auto& blk : blocks) {
        const auto cells = sweep(p.problem, {{blk.mu}, blk.betas, {blk.sigma}}, p.config, stop, p.x0, p.x1);
        long best = -1;
        std::string row;
        for (const auto& c : cells) {
            ++out.cells;
            const bool conv = c.status == SweepCell::Status::converged;
            if (conv) {
                ++out.converged;
                if (best < 0 || c.iterations < best) best = c.iterations;
            }
            row += (conv ? std::to_string(c.iterations) : to_string(c.status)) + " ";
        }
        const auto fastest = std::min_element(blk.reported_iterations.begin(), blk.reported_iterations.end()) -
                             blk.reported_iterations.begin();
        const auto& cell = cells[static_cast<std::size_t>(fastest)];
        const bool ok = cell.status == SweepCell::Status::converged && best > 0 && cell.iterations <= 2 * best;
        if (ok) ++out.rows_ok;
        out.detail += "mu=" + g(blk.mu) + " sigma=" + g(blk.sigma) + ": " + row + (ok ? "ok" : "MISS") + "; ";
    }
    return out;
}

void sensitivity_sweep() {
    const auto net = sensitivity(make_preset("network_51"), network_sensitivity_blocks());
    const bool ok = net.converged * 5 >= net.cells * 4 && net.rows_ok == 9;
    verdict(9, "sensitivity sweep", ok,
            std::to_string(net.converged) + "/" + std::to_string(net.cells) + " cells converged, " +
                std::to_string(net.rows_ok) + "/9 rows keep the reference fastest cell within 2x");
    info(net.detail);
    const auto nash = sensitivity(make_preset("nash_52"), nash_sensitivity_blocks());
    info("Nash table (not scored): " + std::to_string(nash.converged) + "/" + std::to_string(nash.cells) +
         " converged, " + std::to_string(nash.rows_ok) + "/9 rows within 2x; " + nash.detail);
}

template <class F>
void guarded(int id, const char* title, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        verdict(id, title, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    guarded(1, "network equilibrium", network_equilibrium);
    guarded(2, "Nash-Cournot", nash_cournot);
    guarded(3, "deblurring", deblurring);
    guarded(4, "linear rate", linear_rate);
    guarded(5, "projection oracle", projection_oracle);
    guarded(6, "step-size floor", step_floor);
    guarded(7, "Fejer inequality for n >= 10", fejer);
    guarded(8, "ablation ordering", ablation);
    guarded(9, "sensitivity sweep", sensitivity_sweep);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
