#include "vi/kernels.hpp"

#include <numeric>

#include <omp.h>

#include "vi/errors.hpp"

namespace vi {

double Kernel::sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

namespace kernels {
namespace {

void check(std::span<const double> image, int rows, int cols, const Kernel& k, std::span<double> out) {
    const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (rows <= 0 || cols <= 0 || image.size() != n || out.size() != n) {
        throw DimensionError("operators", "convolution buffers do not match the image dimensions");
    }
    if (k.rows % 2 == 0 || k.cols % 2 == 0 || k.weights.size() != static_cast<std::size_t>(k.rows * k.cols)) {
        throw DimensionError("operators", "kernel must have odd dimensions matching its weights");
    }
}

inline int wrap(int v, int n) {
    v %= n;
    return v < 0 ? v + n : v;
}

// One output row; shared by both implementations so they agree bitwise.
inline void convolve_row(std::span<const double> image, int rows, int cols, const Kernel& k, int sign, int i,
                         double* out_row) {
    const int a0 = k.rows / 2;
    const int b0 = k.cols / 2;
    for (int j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (int a = 0; a < k.rows; ++a) {
            const int src_i = wrap(i + sign * (a - a0), rows);
            const double* src = image.data() + static_cast<std::size_t>(src_i) * cols;
            for (int b = 0; b < k.cols; ++b) {
                const double w = k.at(a, b);
                if (w == 0.0) continue;
                acc += w * src[wrap(j + sign * (b - b0), cols)];
            }
        }
        out_row[j] = acc;
    }
}

}  // namespace

namespace serial {

void convolve_circular(std::span<const double> image, int rows, int cols, const Kernel& k, Direction dir,
                       std::span<double> out) {
    check(image, rows, cols, k, out);
    const int sign = dir == Direction::forward ? -1 : 1;
    for (int i = 0; i < rows; ++i) {
        convolve_row(image, rows, cols, k, sign, i, out.data() + static_cast<std::size_t>(i) * cols);
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace serial

namespace parallel {

void convolve_circular(std::span<const double> image, int rows, int cols, const Kernel& k, Direction dir,
                       std::span<double> out) {
    check(image, rows, cols, k, out);
    const int sign = dir == Direction::forward ? -1 : 1;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        convolve_row(image, rows, cols, k, sign, i, out.data() + static_cast<std::size_t>(i) * cols);
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<long>(a.size());
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace parallel

int max_threads() { return omp_get_max_threads(); }

}  // namespace kernels
}  // namespace vi
