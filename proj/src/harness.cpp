#include "vi/harness.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {
namespace {

constexpr std::uint64_t kLinearSeed = 20;

ExperimentPreset network_preset() {
    const auto net = NetworkProblem::reference_instance();
    ExperimentPreset p;
    p.name = "network_51";
    p.problem = net.instance();
    p.stop = {1e-6, 0.0, 1e-10, 10000};
    p.x0 = p.x1 = Vector::Ones(net.arcs());
    return p;
}

ExperimentPreset nash_preset() {
    const auto nash = NashProblem::five_firm_instance();
    ExperimentPreset p;
    p.name = "nash_52";
    p.problem = nash.instance();
    p.stop = {1e-6, 0.0, 1e-10, 10000};
    p.x0 = p.x1 = Vector::Ones(nash.firms());
    return p;
}

ExperimentPreset deblur_preset(const std::string& name, Kernel kernel, double relative_tol) {
    const Image img = synthetic_test_image();
    DeblurProblem problem = DeblurProblem::from_original(img.rows, img.cols, std::move(kernel), img.pixels);
    ExperimentPreset p;
    p.name = name;
    p.problem = problem.instance();
    p.config = deblur_config();
    p.stop = {0.0, relative_tol, 1e-10, 2000};
    p.x0 = p.x1 = Vector::Zero(problem.observed().size());
    p.deblur = std::move(problem);
    return p;
}

ExperimentPreset linear_preset() {
    const auto lin = LinearVIProblem::random_spd(20, 10.0, kLinearSeed);
    ExperimentPreset p;
    p.name = "linear_rate";
    p.problem = lin.instance();
    const double L = lin.lipschitz();
    const double lambda = 0.9 / L;
    const double t = linear_rate_constants(lambda, L, lin.strong_monotonicity(), 0.0, 0.3).t;
    p.variant = AlgorithmVariant::linear_rate({lambda, 0.5 * (1.0 / t - 1.0), 0.3});
    p.config.lambda1 = lambda;
    p.stop = {1e-12, 0.0, 1e-12, 5000};
    p.x0 = p.x1 = Vector::Zero(20);
    return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"network_51", "nash_52", "deblur_gaussian_53", "deblur_motion_53",
                                                "linear_rate"};
    return names;
}

ExperimentPreset make_preset(const std::string& name) {
    if (name == "network_51") return network_preset();
    if (name == "nash_52") return nash_preset();
    if (name == "deblur_gaussian_53") return deblur_preset(name, build_gaussian_kernel(5, 1.5), 1e-3);
    if (name == "deblur_motion_53") return deblur_preset(name, build_motion_kernel(5, 60.0), 1e-2);
    if (name == "linear_rate") return linear_preset();
    throw ConfigError("unknown preset '" + name + "'");
}

Image synthetic_test_image(int rows, int cols) {
    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.resize(static_cast<Eigen::Index>(rows) * cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double checker = ((i / 8) + (j / 8)) % 2;
            const double ramp = cols > 1 ? static_cast<double>(j) / (cols - 1) : 0.0;
            img.pixels[static_cast<Eigen::Index>(i) * cols + j] = 0.5 * checker + 0.5 * ramp;
        }
    }
    return img;
}

SolverConfig deblur_config() {
    SolverConfig cfg;
    cfg.beta = 0.76;
    cfg.nu_seq = Sequence::constant(0.4);
    return cfg;
}

RunSummary summarize(const std::string& name, const std::string& variant, const RunResult& r,
                     const ProblemInstance& problem) {
    RunSummary s;
    s.name = name;
    s.variant = variant;
    s.iterations = r.iterations;
    s.wall_ms = r.wall_ms;
    s.reason = r.reason;
    s.final_E = r.trace.empty() ? 0.0 : r.trace.back().E;
    if (problem.known_solution) s.final_error = (r.x - *problem.known_solution).lpNorm<Eigen::Infinity>();
    return s;
}

PresetResult run_preset(const ExperimentPreset& preset) {
    PresetResult out;
    out.run = run(preset.problem, preset.config, preset.variant, preset.stop, preset.x0, preset.x1);
    out.summary = summarize(preset.name, to_string(preset.variant.kind), out.run, preset.problem);
    if (preset.deblur) {
        const double f0 = preset.deblur->objective(preset.x1);
        if (f0 > 0.0) out.summary.objective_ratio = preset.deblur->objective(out.run.x) / f0;
    }
    return out;
}

PresetResult run_preset(const std::string& name) { return run_preset(make_preset(name)); }

void print_summary_table(std::ostream& out, const std::vector<RunSummary>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_short(*v) : std::string("-"); };
    out << std::left << std::setw(20) << "run" << std::setw(16) << "variant" << std::right << std::setw(8) << "iters"
        << std::setw(12) << "time_ms" << std::setw(22) << "reason" << std::setw(14) << "E_final" << std::setw(14)
        << "err_inf" << std::setw(14) << "obj_ratio" << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(20) << r.name << std::setw(16) << r.variant << std::right << std::setw(8)
            << r.iterations << std::setw(12) << format_short(r.wall_ms) << std::setw(22) << to_string(r.reason)
            << std::setw(14) << format_short(r.final_E) << std::setw(14) << opt(r.final_error) << std::setw(14)
            << opt(r.objective_ratio) << '\n';
    }
}

// --- sweeps ----------------------------------------------------------------------

std::string to_string(SweepCell::Status s) {
    switch (s) {
        case SweepCell::Status::converged: return "converged";
        case SweepCell::Status::max_iter: return "max_iter";
        case SweepCell::Status::config_violation: return "config_violation";
        case SweepCell::Status::failed: return "failed";
    }
    return "?";
}

namespace {

std::vector<SweepCell> layout(const SweepGrid& grid) {
    if (grid.mu_values.empty() || grid.beta_values.empty() || grid.sigma_values.empty()) {
        throw ConfigError("sweep grid needs at least one value per axis");
    }
    std::vector<SweepCell> cells;
    for (double mu : grid.mu_values)
        for (double sigma : grid.sigma_values)
            for (double beta : grid.beta_values) {
                SweepCell c;
                c.mu = mu;
                c.beta = beta;
                c.sigma = sigma;
                cells.push_back(c);
            }
    return cells;
}

void run_cell(SweepCell& cell, const ProblemInstance& problem, const SolverConfig& base, const StopRule& stop,
              const Vector& x0, const Vector& x1) {
    SolverConfig cfg = base;
    cfg.mu = cell.mu;
    cfg.beta = cell.beta;
    cfg.sigma = cell.sigma;
    const auto violations = validate_config(cfg);
    if (has_errors(violations)) {
        cell.status = SweepCell::Status::config_violation;
        for (const auto& v : violations) {
            if (v.severity == Violation::Severity::error) {
                cell.detail = v.field + ": " + v.message;
                break;
            }
        }
        return;
    }
    try {
        const RunResult r = run(problem, cfg, AlgorithmVariant::mdisem(), stop, x0, x1);
        cell.iterations = r.iterations;
        cell.status = r.reason == Termination::max_iter ? SweepCell::Status::max_iter : SweepCell::Status::converged;
        cell.detail = to_string(r.reason);
    } catch (const std::exception& e) {
        cell.status = SweepCell::Status::failed;
        cell.detail = e.what();
    }
}

}  // namespace

std::vector<SweepCell> sweep_serial(const ProblemInstance& problem, const SweepGrid& grid, const SolverConfig& base,
                                    const StopRule& stop, const Vector& x0, const Vector& x1) {
    auto cells = layout(grid);
    for (auto& c : cells) run_cell(c, problem, base, stop, x0, x1);
    return cells;
}

std::vector<SweepCell> sweep(const ProblemInstance& problem, const SweepGrid& grid, const SolverConfig& base,
                             const StopRule& stop, const Vector& x0, const Vector& x1) {
    auto cells = layout(grid);
    const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) run_cell(cells[static_cast<std::size_t>(i)], problem, base, stop, x0, x1);
    return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << "mu,sigma,beta,status,iterations,detail\n";
    for (const auto& c : cells) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        out << format_real(c.mu) << ',' << format_real(c.sigma) << ',' << format_real(c.beta) << ','
            << to_string(c.status) << ',' << c.iterations << ',' << detail << '\n';
    }
}

std::vector<SensitivityBlock> network_sensitivity_blocks() {
    return {
        {0.2323, 1.8, {1.4, 2.6, 3.1, 4.6}, {56, 88, 126, 199}},
        {0.2323, 4.9, {2.5, 3.1, 3.9, 4.1}, {74, 65, 87, 189}},
        {0.2323, 5.6, {2.9, 3.3, 3.7, 4.01}, {49, 59, 64, 81}},
        {0.3332, 0.49, {0.30, 1.1, 2.6, 2.8}, {90, 160, 571, 729}},
        {0.3332, 1.21, {0.8, 1.2, 2.2, 2.7}, {56, 70, 141, 232}},
        {0.3332, 2.44, {1.23, 1.4, 2.6, 3.0}, {60, 44, 76, 187}},
        {0.464, 0.5, {0.3, 1.4, 1.9, 2.1}, {76, 217, 413, 624}},
        {0.464, 1.8, {1.0, 1.23, 1.96, 2.04}, {59, 47, 82, 119}},
        {0.464, 2.9, {1.56, 1.72, 1.89, 2.06}, {50, 55, 47, 71}},
    };
}

std::vector<SensitivityBlock> nash_sensitivity_blocks() {
    return {
        {0.2323, 1.8, {1.4, 2.6, 3.1, 4.2}, {83, 76, 76, 67}},
        {0.2323, 4.9, {2.5, 3.1, 3.9, 4.1}, {55, 49, 31, 65}},
        {0.2323, 5.6, {2.9, 3.3, 3.7, 4.01}, {48, 44, 30, 31}},
        {0.3332, 0.49, {0.30, 1.1, 2.6, 2.8}, {241, 182, 96, 97}},
        {0.3332, 1.21, {0.8, 1.2, 2.2, 2.7}, {92, 82, 78, 77}},
        {0.3332, 2.44, {1.23, 1.4, 2.6, 3.0}, {81, 83, 78, 74}},
        {0.464, 0.5, {0.3, 1.4, 1.9, 2.1}, {203, 88, 90, 90}},
        {0.464, 1.8, {1.0, 1.23, 1.96, 2.04}, {146, 116, 90, 91}},
        {0.464, 2.9, {1.56, 1.72, 1.89, 2.06}, {95, 92, 90, 91}},
    };
}

// --- comparison ----------------------------------------------------------------

std::vector<CompareRow> compare(const ProblemInstance& problem, const std::vector<AlgorithmVariant>& variants,
                                const SolverConfig& cfg, const StopRule& stop, const Vector& x0, const Vector& x1) {
    if (variants.size() < 2) throw ConfigError("compare needs at least two variants");
    std::vector<CompareRow> rows;
    for (const auto& v : variants) {
        CompareRow row;
        row.variant = to_string(v.kind);
        row.run = run(problem, cfg, v, stop, x0, x1);
        row.summary = summarize(problem.name, row.variant, row.run, problem);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
    out << "variant,iterations,reason,final_E,final_error\n";
    for (const auto& r : rows) {
        out << r.variant << ',' << r.summary.iterations << ',' << to_string(r.summary.reason) << ','
            << format_real(r.summary.final_E) << ','
            << (r.summary.final_error ? format_real(*r.summary.final_error) : std::string()) << '\n';
    }
}

}  // namespace vi
