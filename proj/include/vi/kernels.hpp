#pragma once

#include <span>
#include <vector>

namespace vi {

/// Small dense blur kernel, row-major, odd dimensions, centred at (rows/2, cols/2).
struct Kernel {
    int rows = 1;
    int cols = 1;
    std::vector<double> weights{1.0};

    double at(int i, int j) const { return weights[static_cast<std::size_t>(i * cols + j)]; }
    double sum() const;
};

namespace kernels {

enum class Direction { forward, adjoint };

// Circular (periodic) 2-D convolution of a row-major rows x cols image.
// forward: out(i,j) = sum_ab K(a,b) x(i - (a - a0), j - (b - b0))
// adjoint: out(i,j) = sum_ab K(a,b) x(i + (a - a0), j + (b - b0))
// Both implementations accumulate in the same order, so they agree bitwise.

namespace serial {
void convolve_circular(std::span<const double> image, int rows, int cols, const Kernel& k, Direction dir,
                       std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace serial

namespace parallel {
void convolve_circular(std::span<const double> image, int rows, int cols, const Kernel& k, Direction dir,
                       std::span<double> out);
/// OpenMP reduction; agrees with serial::dot to rounding, not bitwise.
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace parallel

int max_threads();

}  // namespace kernels
}  // namespace vi
