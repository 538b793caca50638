#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "vi/kernels.hpp"
#include "vi/projections.hpp"

namespace vi {

using Operator = std::function<Vector(const Vector&)>;

/// Everything the solver needs to know about a VI(C, F).
struct ProblemInstance {
    std::string name;
    Eigen::Index dimension = 0;
    Operator op;
    ProjectionOracle feasible = ProjectionOracle::whole_space();
    std::optional<Vector> known_solution;
    std::optional<double> lipschitz;
    std::optional<double> strong_monotonicity;
};

// ---------------------------------------------------------------------------
// Network equilibrium flow: F x = diag(D) x on {T x = r, 0 <= x <= d}.
// ---------------------------------------------------------------------------

class NetworkProblem {
public:
    NetworkProblem(Vector costs, Matrix incidence, Vector balances, Vector capacities,
                   std::optional<Vector> known_solution = std::nullopt);

    /// Six-node, eight-arc instance with its reference equilibrium flow.
    static NetworkProblem reference_instance();

    const Vector& costs() const noexcept { return D_; }
    const Matrix& incidence() const noexcept { return T_; }
    const Vector& balances() const noexcept { return r_; }
    const Vector& capacities() const noexcept { return d_; }
    const std::optional<Vector>& known_solution() const noexcept { return p_star_; }
    Eigen::Index arcs() const noexcept { return D_.size(); }

    Vector evaluate(const Vector& x) const;
    std::shared_ptr<const PolyhedralSet> feasible_set() const { return set_; }
    ProblemInstance instance() const;

private:
    Vector D_;
    Matrix T_;
    Vector r_;
    Vector d_;
    std::optional<Vector> p_star_;
    std::shared_ptr<const PolyhedralSet> set_;
};

Vector network_eval(const NetworkProblem& p, const Vector& x);

// ---------------------------------------------------------------------------
// Nash-Cournot oligopoly on the nonnegative orthant.
//   g_i'(t) = e_i + O_i^{-1/r_i} t^{1/r_i},   q(R) = s^{1/g} R^{-1/g}
//   F_i(x)  = g_i'(x_i) - q(R) - x_i q'(R),   R = sum_j x_j
// ---------------------------------------------------------------------------

class NashProblem {
public:
    NashProblem(Vector e, Vector O, Vector r, double demand_scale = 5000.0, double demand_exponent = 1.1,
                std::optional<Vector> known_solution = std::nullopt);

    /// Five firms with the reference cost parameters and equilibrium.
    static NashProblem five_firm_instance();

    Eigen::Index firms() const noexcept { return e_.size(); }
    const Vector& e() const noexcept { return e_; }
    const Vector& O() const noexcept { return O_; }
    const Vector& r() const noexcept { return r_; }
    double demand_scale() const noexcept { return scale_; }
    double demand_exponent() const noexcept { return exponent_; }
    const std::optional<Vector>& known_solution() const noexcept { return p_star_; }

    double inverse_demand(double total) const;
    double inverse_demand_derivative(double total) const;

    /// Requires x >= 0 and sum x > 0; throws DomainError otherwise.
    Vector evaluate(const Vector& x) const;
    /// Used inside iterations: negative supplies enter the cost term as 0 and
    /// total supply is clamped to kMinTotalSupply.
    Vector evaluate_guarded(const Vector& x) const;

    ProblemInstance instance() const;

    static constexpr double kMinTotalSupply = 1e-9;

private:
    Vector marginal(const Vector& x, double total) const;

    Vector e_, O_, r_;
    double scale_;
    double exponent_;
    std::optional<Vector> p_star_;
};

Vector nash_eval(const NashProblem& p, const Vector& x);

// ---------------------------------------------------------------------------
// Least-squares deblurring: F = grad 1/2 ||A x - b||^2 = A^T (A x - b), with A
// a circular convolution.
// ---------------------------------------------------------------------------

/// Gaussian weights exp(-(i^2 + j^2) / (2 sigma^2)) on a centred size x size grid, normalized.
Kernel build_gaussian_kernel(int size, double sigma);

/// Line segment of `length` pixels through the centre at `angle_degrees`
/// (counter-clockwise from the +x axis, image rows grow downward). The segment
/// is split into 8 sub-samples per pixel of length; each sub-sample midpoint
/// votes for its nearest pixel. Weights are normalized to sum to 1.
Kernel build_motion_kernel(int length, double angle_degrees);

class DeblurProblem {
public:
    /// `observed` is the row-major blurred image b.
    DeblurProblem(int rows, int cols, Kernel kernel, Vector observed);

    /// Blurs `original` with the kernel (no noise) and uses that as b.
    static DeblurProblem from_original(int rows, int cols, Kernel kernel, const Vector& original);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Kernel& kernel() const noexcept { return kernel_; }
    const Vector& observed() const noexcept { return b_; }
    double lipschitz() const noexcept { return lipschitz_; }

    Vector forward(const Vector& x) const;
    Vector adjoint(const Vector& y) const;
    Vector gradient(const Vector& x) const;
    /// 1/2 ||A x - b||^2
    double objective(const Vector& x) const;

    ProblemInstance instance() const;

private:
    int rows_;
    int cols_;
    Kernel kernel_;
    Vector b_;
    double lipschitz_;
};

Vector deblur_gradient(const DeblurProblem& p, const Vector& x);

// ---------------------------------------------------------------------------
// Affine operator F x = M x + q with symmetric positive-definite M.
// ---------------------------------------------------------------------------

class LinearVIProblem {
public:
    LinearVIProblem(Matrix M, Vector q);

    /// Random orthogonal eigenbasis with eigenvalues spread evenly over
    /// [1, condition]; deterministic in `seed`.
    static LinearVIProblem random_spd(int dim, double condition, std::uint64_t seed);

    const Matrix& matrix() const noexcept { return M_; }
    const Vector& offset() const noexcept { return q_; }
    double strong_monotonicity() const noexcept { return k_; }
    double lipschitz() const noexcept { return L_; }

    Vector evaluate(const Vector& x) const { return M_ * x + q_; }
    /// Unique zero of F on the whole space.
    Vector solution() const;

    ProblemInstance instance() const;

private:
    Matrix M_;
    Vector q_;
    double k_;
    double L_;
};

double estimate_lipschitz(const NetworkProblem& p);
double estimate_lipschitz(const LinearVIProblem& p);
/// Power iteration on A^T A; relative accuracy `tol`.
double estimate_lipschitz(const DeblurProblem& p, double tol = 1e-6);
/// No closed form is available; always throws UnsupportedError.
double estimate_lipschitz(const NashProblem& p);

}  // namespace vi
