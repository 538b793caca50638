#pragma once

#include <atomic>
#include <memory>
#include <string_view>
#include <variant>

#include <Eigen/Core>
#include <Eigen/QR>

namespace vi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultProjectionTol = 1e-10;
inline constexpr long kDefaultMaxInner = 20000;

/// {x : <a, x> <= b}. A zero normal with b >= 0 is the whole space.
class HalfSpace {
public:
    HalfSpace(Vector a, double b);

    const Vector& normal() const noexcept { return a_; }
    double offset() const noexcept { return b_; }
    bool degenerate() const noexcept { return degenerate_; }

    /// <a, x> - b; positive outside the set.
    double slack(const Vector& x) const { return a_.dot(x) - b_; }
    Vector project(const Vector& x) const;

private:
    Vector a_;
    double b_;
    double norm_sq_;
    bool degenerate_;
};

Vector project_halfspace(const HalfSpace& h, const Vector& x);

/// Componentwise bounds; entries may be infinite.
struct Box {
    Vector lower;
    Vector upper;

    Box(Vector lo, Vector up);
    static Box nonnegative(Eigen::Index n);

    Vector project(const Vector& x) const;
    /// Largest bound violation (0 when inside).
    double violation(const Vector& x) const;
};

Vector project_box(const Vector& lower, const Vector& upper, const Vector& x);

/// {x : T x = r}; the minimum-norm correction is factored once.
class AffineSubspace {
public:
    AffineSubspace(Matrix T, Vector r, double tol = kDefaultProjectionTol);

    const Matrix& matrix() const noexcept { return T_; }
    const Vector& rhs() const noexcept { return r_; }
    Eigen::Index dimension() const noexcept { return T_.cols(); }

    double residual(const Vector& x) const { return (T_ * x - r_).norm(); }
    /// x - T^+ (T x - r). Throws ProjectionError if the system is inconsistent.
    Vector project(const Vector& x) const;

private:
    Vector project_unchecked(const Vector& x) const { return x - cod_.solve(T_ * x - r_); }

    Matrix T_;
    Vector r_;
    double tol_;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod_;
};

Vector project_affine(const Matrix& T, const Vector& r, const Vector& x);

/// {x : T x = r, lower <= x <= upper}, projected by Dykstra's alternating
/// projections between the affine subspace and the box.
class PolyhedralSet {
public:
    PolyhedralSet(Matrix T, Vector r, Vector lower, Vector upper);
    PolyhedralSet(const PolyhedralSet& other);
    PolyhedralSet& operator=(const PolyhedralSet&) = delete;

    const AffineSubspace& affine() const noexcept { return affine_; }
    const Box& box() const noexcept { return box_; }
    Eigen::Index dimension() const noexcept { return affine_.dimension(); }

    /// Set once a projection has succeeded, i.e. the set is known nonempty.
    bool certified() const noexcept { return certified_.load(std::memory_order_relaxed); }

    /// Throws ProjectionError when the inner budget runs out, InfeasibleSetError
    /// when the corrections diverge.
    Vector project(const Vector& x, double tol = kDefaultProjectionTol, long max_inner = kDefaultMaxInner) const;

private:
    AffineSubspace affine_;
    Box box_;
    mutable std::atomic<bool> certified_{false};
};

Vector project_polyhedron(const PolyhedralSet& set, const Vector& x, double tol = kDefaultProjectionTol,
                          long max_inner = kDefaultMaxInner);

struct WholeSpace {};

/// Metric projection onto one of the supported feasible sets.
class ProjectionOracle {
public:
    using Payload = std::variant<WholeSpace, Box, HalfSpace, AffineSubspace, std::shared_ptr<const PolyhedralSet>>;

    static ProjectionOracle whole_space() { return ProjectionOracle(WholeSpace{}); }
    static ProjectionOracle box(Box b) { return ProjectionOracle(std::move(b)); }
    static ProjectionOracle halfspace(HalfSpace h) { return ProjectionOracle(std::move(h)); }
    static ProjectionOracle affine(AffineSubspace a) { return ProjectionOracle(std::move(a)); }
    static ProjectionOracle polyhedral(std::shared_ptr<const PolyhedralSet> set, double tol = kDefaultProjectionTol,
                                       long max_inner = kDefaultMaxInner);

    Vector project(const Vector& x) const;
    /// Membership up to `slack` (defaults to 10x the oracle tolerance).
    bool contains(const Vector& x, double slack = -1.0) const;

    std::string_view name() const noexcept;
    double tolerance() const noexcept { return tol_; }
    bool is_whole_space() const noexcept { return std::holds_alternative<WholeSpace>(payload_); }
    const Payload& payload() const noexcept { return payload_; }

private:
    explicit ProjectionOracle(Payload p, double tol = kDefaultProjectionTol, long max_inner = kDefaultMaxInner)
        : payload_(std::move(p)), tol_(tol), max_inner_(max_inner) {}

    Payload payload_;
    double tol_;
    long max_inner_;
};

}  // namespace vi
