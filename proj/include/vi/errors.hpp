#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace vi {

/// Base class for every error raised by the toolkit. The module name is
/// prefixed to the message so CLI diagnostics say where things went wrong.
class Error : public std::runtime_error {
public:
    Error(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(module) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

class DimensionError : public Error {
public:
    DimensionError(const std::string& module, const std::string& what) : Error(module, what) {}
};

class DomainError : public Error {
public:
    DomainError(const std::string& module, const std::string& what) : Error(module, what) {}
};

class UnsupportedError : public Error {
public:
    UnsupportedError(const std::string& module, const std::string& what) : Error(module, what) {}
};

/// NaN/Inf encountered inside an iteration.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error("solvers", what) {}
};

/// Projection failures carry the best iterate found and its residuals.
class ProjectionError : public Error {
public:
    ProjectionError(const std::string& what, Eigen::VectorXd best, double affine_residual,
                    double box_residual)
        : Error("projections", what),
          best_(std::move(best)),
          affine_residual_(affine_residual),
          box_residual_(box_residual) {}

    const Eigen::VectorXd& best_iterate() const noexcept { return best_; }
    double affine_residual() const noexcept { return affine_residual_; }
    double box_residual() const noexcept { return box_residual_; }

private:
    Eigen::VectorXd best_;
    double affine_residual_;
    double box_residual_;
};

class InfeasibleSetError : public ProjectionError {
public:
    using ProjectionError::ProjectionError;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace vi
