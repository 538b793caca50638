#pragma once
// Brute-force reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vi/kernels.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Nearest point of {T y = r, lo <= y <= hi} to x. Every coordinate is tried as
// free, at its lower bound or at its upper bound; each face is an equality
// constrained least-squares problem. The nearest feasible face candidate is
// the projection. Exponential in n; meant for n <= 8.
inline std::optional<VectorXd> active_set_projection(const MatrixXd& T, const VectorXd& r, const VectorXd& lo,
                                                     const VectorXd& hi, const VectorXd& x, double feas_tol = 1e-9) {
    const int n = static_cast<int>(x.size());
    std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 free, 1 lower, 2 upper
    std::optional<VectorXd> best;
    double best_dist = std::numeric_limits<double>::infinity();
    while (true) {
        bool valid = true;
        for (int i = 0; i < n && valid; ++i) {
            if (state[i] == 1 && !std::isfinite(lo[i])) valid = false;
            if (state[i] == 2 && !std::isfinite(hi[i])) valid = false;
        }
        if (valid) {
            VectorXd y = x;
            std::vector<int> free_idx;
            for (int i = 0; i < n; ++i) {
                if (state[i] == 1) y[i] = lo[i];
                else if (state[i] == 2) y[i] = hi[i];
                else free_idx.push_back(i);
            }
            VectorXd rhs = r;
            for (int i = 0; i < n; ++i)
                if (state[i] != 0) rhs -= T.col(i) * y[i];
            if (!free_idx.empty() && T.rows() > 0) {
                MatrixXd TF(T.rows(), static_cast<Eigen::Index>(free_idx.size()));
                VectorXd xF(static_cast<Eigen::Index>(free_idx.size()));
                for (std::size_t k = 0; k < free_idx.size(); ++k) {
                    TF.col(static_cast<Eigen::Index>(k)) = T.col(free_idx[k]);
                    xF[static_cast<Eigen::Index>(k)] = x[free_idx[k]];
                }
                Eigen::JacobiSVD<MatrixXd> svd(TF, Eigen::ComputeThinU | Eigen::ComputeThinV);
                const VectorXd yF = xF - svd.solve(TF * xF - rhs);
                for (std::size_t k = 0; k < free_idx.size(); ++k) y[free_idx[k]] = yF[static_cast<Eigen::Index>(k)];
            }
            const double res = T.rows() > 0 ? (T * y - r).norm() : 0.0;
            bool feasible = res <= feas_tol * (1.0 + r.norm());
            for (int i = 0; i < n && feasible; ++i) {
                if (y[i] < lo[i] - feas_tol || y[i] > hi[i] + feas_tol) feasible = false;
            }
            if (feasible) {
                const double dist = (y - x).norm();
                if (dist < best_dist) {
                    best_dist = dist;
                    best = y;
                }
            }
        }
        int i = 0;
        while (i < n && state[i] == 2) state[i++] = 0;
        if (i == n) break;
        ++state[i];
    }
    return best;
}

// Largest |K^(f)|^2 over the rows x cols DFT grid: the spectral norm of
// A^T A for circular convolution with K.
inline double fourier_lipschitz(const vi::Kernel& k, int rows, int cols) {
    const double two_pi = 2.0 * std::acos(-1.0);
    const int a0 = k.rows / 2, b0 = k.cols / 2;
    double best = 0.0;
    for (int u = 0; u < rows; ++u) {
        for (int v = 0; v < cols; ++v) {
            std::complex<double> s = 0.0;
            for (int a = 0; a < k.rows; ++a)
                for (int b = 0; b < k.cols; ++b) {
                    const double phase = -two_pi * (static_cast<double>(u * (a - a0)) / rows +
                                                     static_cast<double>(v * (b - b0)) / cols);
                    s += k.at(a, b) * std::polar(1.0, phase);
                }
            best = std::max(best, std::norm(s));
        }
    }
    return best;
}

// Dense matrix of the circular convolution operator, built column by column
// from shifted copies of the kernel.
inline MatrixXd dense_convolution(const vi::Kernel& k, int rows, int cols) {
    const int N = rows * cols;
    MatrixXd A = MatrixXd::Zero(N, N);
    const int a0 = k.rows / 2, b0 = k.cols / 2;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int a = 0; a < k.rows; ++a)
                for (int b = 0; b < k.cols; ++b) {
                    const int si = ((i - (a - a0)) % rows + rows) % rows;
                    const int sj = ((j - (b - b0)) % cols + cols) % cols;
                    A(i * cols + j, si * cols + sj) += k.at(a, b);
                }
    return A;
}

// Random polyhedral set {T y = r, lo <= y <= hi} of dimension n, guaranteed
// nonempty by building r from an interior point.
struct RandomPolyhedron {
    MatrixXd T;
    VectorXd r, lo, hi;
};

inline RandomPolyhedron random_polyhedron(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> Q(1, std::max(1, n - 1));
    std::bernoulli_distribution unbounded(0.15);
    const int q = Q(rng);
    RandomPolyhedron p;
    p.T = MatrixXd::NullaryExpr(q, n, [&] { return U(rng); });
    p.lo.resize(n);
    p.hi.resize(n);
    VectorXd z(n);
    for (int i = 0; i < n; ++i) {
        const double a = U(rng), w = 0.2 + std::abs(U(rng));
        p.lo[i] = unbounded(rng) ? -std::numeric_limits<double>::infinity() : a;
        p.hi[i] = unbounded(rng) ? std::numeric_limits<double>::infinity() : a + w;
        z[i] = a + 0.5 * w;
    }
    p.r = p.T * z;
    return p;
}

}  // namespace oracle
