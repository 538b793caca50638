#pragma once

#include <cstddef>
#include <deque>

#include <Eigen/Core>

namespace vi {

/// Self-adaptive non-monotone step size:
///   lambda_{n+1} = min{ mu delta_n ||w - y|| / ||Fw - Fy||, chi_n lambda_n + zeta_n }
/// when Fw != Fy (relative guard), otherwise chi_n lambda_n + zeta_n.
struct StepSizeInputs {
    double mu;
    double delta;
    double chi;
    double zeta;
};

inline constexpr double kDenominatorGuard = 1e-14;

double next_lambda(double lambda, double residual_norm, double operator_diff_norm, double fw_norm,
                   const StepSizeInputs& in);

double next_lambda(double lambda, const Eigen::VectorXd& w, const Eigen::VectorXd& y, const Eigen::VectorXd& Fw,
                   const Eigen::VectorXd& Fy, const StepSizeInputs& in);

/// Caller-owned step-size state with an optional diagnostic history.
class StepSizeState {
public:
    explicit StepSizeState(double lambda1, std::size_t history_capacity = 0);

    double lambda() const noexcept { return lambda_; }
    long index() const noexcept { return n_; }
    const std::deque<double>& history() const noexcept { return history_; }

    /// Replaces lambda_n by lambda_{n+1} and advances n.
    void advance(double next);

private:
    double lambda_;
    long n_ = 1;
    std::size_t capacity_;
    std::deque<double> history_;
};

}  // namespace vi
