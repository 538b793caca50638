// vi_solve: command-line front end for the solver, presets, sweeps and comparisons.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vi/errors.hpp"
#include "vi/format.hpp"
#include "vi/harness.hpp"
#include "vi/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;

struct Common {
    std::string config;
    std::string out = ".";
    long max_iter = -1;
    double tol = -1.0;
    std::string variant = "mdisem";
    bool strict = false;
    bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "key = value config file applied over the defaults");
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_option("--max-iter", c.max_iter, "iteration cap (default: from preset or config)");
    sub->add_option("--tol", c.tol, "stopping tolerance on E_n (deblur: on R_n) (default: from preset or config)");
    sub->add_option("--variant", c.variant, "mdisem | simplified_41a | no_inertia")->capture_default_str();
    sub->add_flag("--strict", c.strict, "treat parameter-sequence violations as errors (default: off)");
    sub->add_flag("--timing", c.timing, "include elapsed_ms in the trace CSV (default: off)");
}

// Defaults, then the config file, then command-line overrides.
void apply_common(const Common& c, vi::SolverConfig& cfg, vi::StopRule& stop, bool tol_is_relative = false) {
    if (!c.config.empty()) vi::apply_key_values(vi::read_key_values(c.config), cfg, stop);
    if (c.max_iter >= 0) stop.max_iter = c.max_iter;
    if (c.tol >= 0) (tol_is_relative ? stop.relative_tol : stop.residual_tol) = c.tol;
    if (c.strict) cfg.validation_mode = vi::ValidationMode::strict;
}

vi::AlgorithmVariant variant_from(const std::string& name) {
    const auto kind = vi::parse_variant(name);
    if (kind == vi::VariantKind::linear_41b) {
        throw vi::ConfigError("variant linear_41b needs fixed parameters; use `preset linear_rate`");
    }
    return {kind, {}};
}

fs::path out_file(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return fs::path(dir) / name;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw vi::IoError("cannot write " + path.string());
    return f;
}

void write_trace(const Common& c, const std::string& name, const vi::RunResult& r) {
    auto f = open_out(out_file(c.out, "trace_" + name + ".csv"));
    vi::write_trace_csv(f, r.trace, c.timing);
}

void report(const vi::RunSummary& s, const vi::RunResult& r) {
    vi::print_summary_table(std::cout, {s});
    std::cout << "x =";
    for (Eigen::Index i = 0; i < r.x.size() && i < 12; ++i) std::cout << ' ' << vi::format_short(r.x[i]);
    if (r.x.size() > 12) std::cout << " ...";
    std::cout << '\n';
}

int run_single(const Common& c, const std::string& name, vi::ExperimentPreset p) {
    apply_common(c, p.config, p.stop);
    p.variant = variant_from(c.variant);
    auto res = vi::run_preset(p);
    write_trace(c, name, res.run);
    report(res.summary, res.run);
    return kOk;
}

std::vector<double> or_default(const std::vector<double>& v, double fallback) {
    return v.empty() ? std::vector<double>{fallback} : v;
}

vi::ExperimentPreset problem_preset(const std::string& problem, const std::string& file) {
    if (problem == "network") {
        auto p = vi::make_preset("network_51");
        if (!file.empty()) {
            const auto net = vi::read_network_problem_file(file);
            p.problem = net.instance();
            p.x0 = p.x1 = vi::Vector::Ones(net.arcs());
        }
        return p;
    }
    if (problem == "nash") {
        auto p = vi::make_preset("nash_52");
        if (!file.empty()) {
            const auto nash = vi::read_nash_problem_file(file);
            p.problem = nash.instance();
            p.x0 = p.x1 = vi::Vector::Ones(nash.firms());
        }
        return p;
    }
    throw vi::ConfigError("unknown problem '" + problem + "' (expected network or nash)");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const vi::NumericError*>(&e) || dynamic_cast<const vi::ProjectionError*>(&e)) return kNumeric;
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inertial subgradient extragradient solver for monotone variational inequalities"};
    app.require_subcommand(1);
    app.allow_extras(false);

    Common common;
    std::string problem_file;

    auto* network = app.add_subcommand("network", "solve the traffic network equilibrium problem");
    add_common(network, common);
    network->add_option("--problem", problem_file, "network problem file (default: built-in 6-node instance)");

    auto* nash = app.add_subcommand("nash", "solve the Nash-Cournot oligopoly problem");
    add_common(nash, common);
    nash->add_option("--problem", problem_file, "Nash problem file (default: built-in five-firm instance)");

    std::string image_path, blur = "gaussian";
    int size = 5, length = 5;
    double blur_sigma = 1.5, angle = 60.0;
    auto* deblur = app.add_subcommand("deblur", "restore a blurred grayscale image");
    add_common(deblur, common);
    deblur->add_option("--image", image_path, "input PGM (P5); blurred with the chosen kernel (default: synthetic 64x64)");
    deblur->add_option("--blur", blur, "gaussian | motion")->capture_default_str()->check(
        CLI::IsMember({"gaussian", "motion"}));
    deblur->add_option("--size", size, "gaussian kernel size")->capture_default_str()->check(CLI::PositiveNumber);
    deblur->add_option("--sigma", blur_sigma, "gaussian standard deviation")->capture_default_str();
    deblur->add_option("--length", length, "motion kernel length")->capture_default_str()->check(CLI::PositiveNumber);
    deblur->add_option("--angle", angle, "motion angle in degrees")->capture_default_str();

    std::string problem = "network";
    std::vector<double> mus, betas, sigmas;
    auto* sweep = app.add_subcommand("sweep", "run the solver over a (mu, beta, sigma) grid");
    add_common(sweep, common);
    sweep->add_option("--problem", problem, "network | nash")->capture_default_str();
    sweep->add_option("--mu", mus, "comma-separated mu values (default: config mu)")->delimiter(',');
    sweep->add_option("--beta", betas, "comma-separated beta values (default: config beta)")->delimiter(',');
    sweep->add_option("--sigma-vals", sigmas, "comma-separated sigma values (default: config sigma)")->delimiter(',');

    std::vector<std::string> variants{"mdisem", "no_inertia"};
    auto* cmp = app.add_subcommand("compare", "run several variants from the same start");
    add_common(cmp, common);
    cmp->add_option("--problem", problem, "network | nash")->capture_default_str();
    cmp->add_option("--variants", variants, "comma-separated variant names")->delimiter(',')->capture_default_str();

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "run a bundled experiment");
    add_common(preset, common);
    preset->add_option("name", preset_name, "network_51 | nash_52 | deblur_gaussian_53 | deblur_motion_53 | linear_rate")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (network->parsed()) return run_single(common, "network", problem_preset("network", problem_file));
        if (nash->parsed()) return run_single(common, "nash", problem_preset("nash", problem_file));

        if (deblur->parsed()) {
            vi::Image original = image_path.empty() ? vi::synthetic_test_image() : vi::read_pgm_file(image_path);
            vi::Kernel k = blur == "gaussian" ? vi::build_gaussian_kernel(size, blur_sigma)
                                              : vi::build_motion_kernel(length, angle);
            auto prob = vi::DeblurProblem::from_original(original.rows, original.cols, std::move(k), original.pixels);
            vi::ExperimentPreset p = vi::make_preset(blur == "gaussian" ? "deblur_gaussian_53" : "deblur_motion_53");
            p.problem = prob.instance();
            p.x0 = p.x1 = vi::Vector::Zero(prob.observed().size());
            p.deblur = prob;
            apply_common(common, p.config, p.stop, true);
            p.variant = variant_from(common.variant);
            auto res = vi::run_preset(p);
            const std::string name = "deblur_" + blur;
            write_trace(common, name, res.run);
            vi::write_pgm_file(out_file(common.out, name + "_observed.pgm").string(),
                               {original.rows, original.cols, prob.observed()});
            vi::write_pgm_file(out_file(common.out, name + "_restored.pgm").string(),
                               {original.rows, original.cols, res.run.x});
            report(res.summary, res.run);
            return kOk;
        }

        if (sweep->parsed()) {
            auto p = problem_preset(problem, "");
            p.stop.max_iter = 5000;
            apply_common(common, p.config, p.stop);
            variant_from(common.variant);
            vi::SweepGrid grid{or_default(mus, p.config.mu), or_default(betas, p.config.beta),
                               or_default(sigmas, p.config.sigma)};
            const auto cells = vi::sweep(p.problem, grid, p.config, p.stop, p.x0, p.x1);
            auto f = open_out(out_file(common.out, "sweep_" + problem + ".csv"));
            vi::write_sweep_csv(f, cells);
            vi::write_sweep_csv(std::cout, cells);
            return kOk;
        }

        if (cmp->parsed()) {
            auto p = problem_preset(problem, "");
            apply_common(common, p.config, p.stop);
            std::vector<vi::AlgorithmVariant> vs;
            for (const auto& v : variants) vs.push_back(variant_from(v));
            const auto rows = vi::compare(p.problem, vs, p.config, p.stop, p.x0, p.x1);
            auto f = open_out(out_file(common.out, "compare_" + problem + ".csv"));
            vi::write_compare_csv(f, rows);
            std::vector<vi::RunSummary> summaries;
            for (const auto& r : rows) summaries.push_back(r.summary);
            vi::print_summary_table(std::cout, summaries);
            return kOk;
        }

        if (preset->parsed()) {
            auto p = vi::make_preset(preset_name);
            const bool is_deblur = p.deblur.has_value();
            apply_common(common, p.config, p.stop, is_deblur);
            if (p.variant.kind != vi::VariantKind::linear_41b) p.variant = variant_from(common.variant);
            auto res = vi::run_preset(p);
            write_trace(common, preset_name, res.run);
            if (is_deblur) {
                vi::write_pgm_file(out_file(common.out, preset_name + "_restored.pgm").string(),
                                   {p.deblur->rows(), p.deblur->cols(), res.run.x});
            }
            report(res.summary, res.run);
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kUsage;
}
