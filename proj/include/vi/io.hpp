#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vi/operators.hpp"
#include "vi/solver.hpp"

namespace vi {

/// Grayscale image, row-major, intensities in [0, 1].
struct Image {
    int rows = 0;
    int cols = 0;
    Vector pixels;
};

/// Binary PGM (P5, maxval 255). Bytes are scaled by 1/255.
Image read_pgm(std::istream& in);
Image read_pgm_file(const std::string& path);
/// Values are clamped to [0,1] and rounded to the nearest byte.
void write_pgm(std::ostream& out, const Image& img);
void write_pgm_file(const std::string& path, const Image& img);

/// Text format: `q n`, q rows of T, r, lower, upper (whitespace separated, `inf` allowed).
PolyhedralSet read_polyhedral_set(std::istream& in);
void write_polyhedral_set(std::ostream& out, const PolyhedralSet& set);

/// Polyhedral set format followed by one line of arc costs D; lower bounds must be 0.
NetworkProblem read_network_problem(std::istream& in);
NetworkProblem read_network_problem_file(const std::string& path);
void write_network_problem(std::ostream& out, const NetworkProblem& p);

/// Keys: e, O, r (comma-separated lists), demand_scale, demand_exponent, known_solution (optional).
NashProblem read_nash_problem_file(const std::string& path);

/// Header `n,E_n,lambda_n,dist_to_pstar,step_norm,elapsed_ms`; 17 significant
/// digits. elapsed_ms is left empty unless `with_timing`, so reruns produce
/// identical files.
void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace, bool with_timing = false);
std::vector<IterationRecord> read_trace_csv(std::istream& in);

}  // namespace vi
