#include "vi/stepsize.hpp"

#include <algorithm>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {

double next_lambda(double lambda, double residual_norm, double operator_diff_norm, double fw_norm,
                   const StepSizeInputs& in) {
    const double growth = in.chi * lambda + in.zeta;
    if (operator_diff_norm > kDenominatorGuard * (1.0 + fw_norm)) {
        return std::min(in.mu * in.delta * residual_norm / operator_diff_norm, growth);
    }
    return growth;
}

double next_lambda(double lambda, const Eigen::VectorXd& w, const Eigen::VectorXd& y, const Eigen::VectorXd& Fw,
                   const Eigen::VectorXd& Fy, const StepSizeInputs& in) {
    return next_lambda(lambda, (w - y).norm(), (Fw - Fy).norm(), Fw.norm(), in);
}

StepSizeState::StepSizeState(double lambda1, std::size_t history_capacity)
    : lambda_(lambda1), capacity_(history_capacity) {
    if (!(lambda1 > 0.0)) throw ConfigError("initial step size must be positive, got " + format_real(lambda1));
    if (capacity_ > 0) history_.push_back(lambda1);
}

void StepSizeState::advance(double next) {
    if (!(next > 0.0)) throw NumericError("step size became non-positive: " + format_real(next));
    lambda_ = next;
    ++n_;
    if (capacity_ > 0) {
        history_.push_back(next);
        if (history_.size() > capacity_) history_.pop_front();
    }
}

}  // namespace vi
