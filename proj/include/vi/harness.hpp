#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vi/config.hpp"
#include "vi/io.hpp"
#include "vi/operators.hpp"
#include "vi/solver.hpp"

namespace vi {

/// A problem bundled with the parameters and stopping rule of one experiment.
struct ExperimentPreset {
    std::string name;
    ProblemInstance problem;
    SolverConfig config;
    StopRule stop;
    AlgorithmVariant variant;
    Vector x0;
    Vector x1;
    std::optional<DeblurProblem> deblur;  ///< set for the deblurring presets
};

/// network_51, nash_52, deblur_gaussian_53, deblur_motion_53, linear_rate
const std::vector<std::string>& preset_names();
/// Throws ConfigError for an unknown name.
ExperimentPreset make_preset(const std::string& name);

/// Checkerboard (8-pixel squares) blended with a horizontal ramp, in [0, 1].
Image synthetic_test_image(int rows = 64, int cols = 64);

/// Deblurring config: the network settings with beta = 0.76 and nu = 0.4.
SolverConfig deblur_config();

struct RunSummary {
    std::string name;
    std::string variant;
    long iterations = 0;
    double wall_ms = 0.0;
    Termination reason = Termination::none;
    double final_E = 0.0;
    std::optional<double> final_error;      ///< infinity-norm distance to the known solution
    std::optional<double> objective_ratio;  ///< deblurring: final / initial objective
};

struct PresetResult {
    RunResult run;
    RunSummary summary;
};

PresetResult run_preset(const ExperimentPreset& preset);
PresetResult run_preset(const std::string& name);

RunSummary summarize(const std::string& name, const std::string& variant, const RunResult& r,
                     const ProblemInstance& problem);

/// Aligned text table with 6 significant digits.
void print_summary_table(std::ostream& out, const std::vector<RunSummary>& rows);

// --- sensitivity sweeps ------------------------------------------------------

struct SweepGrid {
    std::vector<double> mu_values;
    std::vector<double> beta_values;
    std::vector<double> sigma_values;
};

struct SweepCell {
    enum class Status { converged, max_iter, config_violation, failed };

    double mu = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    Status status = Status::failed;
    long iterations = 0;
    std::string detail;
};

std::string to_string(SweepCell::Status s);

/// One run per (mu, beta, sigma) cell, base config overridden by the cell.
/// Cells whose config has errors are recorded, not run. Cells are ordered
/// mu-major, then sigma, then beta. The parallel version runs cells
/// concurrently and returns the same table as the serial one.
std::vector<SweepCell> sweep(const ProblemInstance& problem, const SweepGrid& grid, const SolverConfig& base,
                             const StopRule& stop, const Vector& x0, const Vector& x1);
std::vector<SweepCell> sweep_serial(const ProblemInstance& problem, const SweepGrid& grid, const SolverConfig& base,
                                    const StopRule& stop, const Vector& x0, const Vector& x1);

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

/// One (mu, sigma) block of the reference sensitivity tables with the beta
/// values it lists and the iteration counts reported for them.
struct SensitivityBlock {
    double mu;
    double sigma;
    std::vector<double> betas;
    std::vector<long> reported_iterations;
};

std::vector<SensitivityBlock> network_sensitivity_blocks();
std::vector<SensitivityBlock> nash_sensitivity_blocks();

// --- variant comparison ------------------------------------------------------

struct CompareRow {
    std::string variant;
    RunSummary summary;
    RunResult run;
};

/// Runs each variant from the same start. Needs at least two variants.
std::vector<CompareRow> compare(const ProblemInstance& problem, const std::vector<AlgorithmVariant>& variants,
                                const SolverConfig& cfg, const StopRule& stop, const Vector& x0, const Vector& x1);

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace vi
