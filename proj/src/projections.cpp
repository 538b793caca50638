#include "vi/projections.hpp"

#include <cmath>
#include <limits>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {

HalfSpace::HalfSpace(Vector a, double b)
    : a_(std::move(a)), b_(b), norm_sq_(a_.squaredNorm()), degenerate_(norm_sq_ == 0.0) {
    if (degenerate_ && b_ < 0.0) {
        throw DomainError("projections", "half-space with zero normal and negative offset is empty");
    }
}

Vector HalfSpace::project(const Vector& x) const {
    if (x.size() != a_.size()) throw DimensionError("projections", "half-space dimension mismatch");
    if (degenerate_) return x;
    const double excess = a_.dot(x) - b_;
    if (excess <= 0.0) return x;
    return x - (excess / norm_sq_) * a_;
}

Vector project_halfspace(const HalfSpace& h, const Vector& x) { return h.project(x); }

Box::Box(Vector lo, Vector up) : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size()) throw DimensionError("projections", "box bounds differ in length");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i])) {
            throw DomainError("projections", "box lower bound exceeds upper bound at index " + std::to_string(i));
        }
    }
}

Box Box::nonnegative(Eigen::Index n) {
    return Box(Vector::Zero(n), Vector::Constant(n, std::numeric_limits<double>::infinity()));
}

Vector Box::project(const Vector& x) const {
    if (x.size() != lower.size()) throw DimensionError("projections", "box dimension mismatch");
    return x.cwiseMax(lower).cwiseMin(upper);
}

double Box::violation(const Vector& x) const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        v = std::max({v, lower[i] - x[i], x[i] - upper[i]});
    }
    return v;
}

Vector project_box(const Vector& lower, const Vector& upper, const Vector& x) {
    return Box(lower, upper).project(x);
}

AffineSubspace::AffineSubspace(Matrix T, Vector r, double tol)
    : T_(std::move(T)), r_(std::move(r)), tol_(tol), cod_(T_) {
    if (T_.rows() != r_.size()) throw DimensionError("projections", "affine system: rows of T differ from length of r");
}

Vector AffineSubspace::project(const Vector& x) const {
    if (x.size() != T_.cols()) throw DimensionError("projections", "affine dimension mismatch");
    Vector y = project_unchecked(x);
    const double res = residual(y);
    if (res > tol_ * (1.0 + r_.norm()) && res > 1e-9 * (1.0 + r_.norm())) {
        throw ProjectionError("inconsistent affine system T x = r (residual " + format_real(res) + ")", y, res, 0.0);
    }
    return y;
}

Vector project_affine(const Matrix& T, const Vector& r, const Vector& x) {
    return AffineSubspace(T, r).project(x);
}

PolyhedralSet::PolyhedralSet(Matrix T, Vector r, Vector lower, Vector upper)
    : affine_(std::move(T), std::move(r)), box_(std::move(lower), std::move(upper)) {
    if (affine_.dimension() != box_.lower.size()) {
        throw DimensionError("projections", "polyhedral set: T has " + std::to_string(affine_.dimension()) +
                                                " columns but bounds have length " +
                                                std::to_string(box_.lower.size()));
    }
}

PolyhedralSet::PolyhedralSet(const PolyhedralSet& other)
    : affine_(other.affine_), box_(other.box_), certified_(other.certified()) {}

Vector PolyhedralSet::project(const Vector& x, double tol, long max_inner) const {
    if (x.size() != dimension()) throw DimensionError("projections", "polyhedral dimension mismatch");
    const double scale = 1.0 + x.norm();
    Vector y = x;
    Vector p = Vector::Zero(x.size());
    Vector q = Vector::Zero(x.size());
    Vector a(x.size());
    double gap = 0.0;
    for (long k = 0; k < max_inner; ++k) {
        a = affine_.project(y + p);
        p += y - a;
        Vector next = box_.project(a + q);
        q += a - next;
        const double change = (next - y).norm();
        gap = (a - next).norm();
        y.swap(next);
        if (change <= tol && affine_.residual(y) <= tol) {
            certified_.store(true, std::memory_order_relaxed);
            return y;
        }
        if ((k + 1) % 500 == 0 && p.norm() + q.norm() > 1e8 * scale) {
            throw InfeasibleSetError("polyhedral set appears empty: Dykstra corrections diverge (gap " +
                                         format_real(gap) + ")",
                                     y, affine_.residual(y), box_.violation(y));
        }
    }
    const double aff = affine_.residual(y);
    if (gap > 1e-6 * scale) {
        throw InfeasibleSetError("polyhedral set appears empty: affine/box gap " + format_real(gap) +
                                     " after " + std::to_string(max_inner) + " inner iterations",
                                 y, aff, box_.violation(y));
    }
    throw ProjectionError("polyhedral projection did not reach tolerance " + format_real(tol) + " within " +
                              std::to_string(max_inner) + " inner iterations (affine residual " + format_real(aff) +
                              ")",
                          y, aff, box_.violation(y));
}

Vector project_polyhedron(const PolyhedralSet& set, const Vector& x, double tol, long max_inner) {
    return set.project(x, tol, max_inner);
}

ProjectionOracle ProjectionOracle::polyhedral(std::shared_ptr<const PolyhedralSet> set, double tol, long max_inner) {
    if (!set) throw DomainError("projections", "null polyhedral set");
    return ProjectionOracle(std::move(set), tol, max_inner);
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

Vector ProjectionOracle::project(const Vector& x) const {
    return std::visit(overloaded{
                          [&](const WholeSpace&) -> Vector { return x; },
                          [&](const Box& b) -> Vector { return b.project(x); },
                          [&](const HalfSpace& h) -> Vector { return h.project(x); },
                          [&](const AffineSubspace& a) -> Vector { return a.project(x); },
                          [&](const std::shared_ptr<const PolyhedralSet>& s) -> Vector {
                              return s->project(x, tol_, max_inner_);
                          },
                      },
                      payload_);
}

bool ProjectionOracle::contains(const Vector& x, double slack) const {
    if (slack < 0.0) slack = 10.0 * tol_;
    return std::visit(overloaded{
                          [&](const WholeSpace&) { return true; },
                          [&](const Box& b) { return b.violation(x) <= slack; },
                          [&](const HalfSpace& h) { return h.slack(x) <= slack * (1.0 + x.norm()); },
                          [&](const AffineSubspace& a) { return a.residual(x) <= slack * (1.0 + a.rhs().norm()); },
                          [&](const std::shared_ptr<const PolyhedralSet>& s) {
                              return s->affine().residual(x) <= slack && s->box().violation(x) <= slack;
                          },
                      },
                      payload_);
}

std::string_view ProjectionOracle::name() const noexcept {
    switch (payload_.index()) {
        case 0: return "whole_space";
        case 1: return "box";
        case 2: return "halfspace";
        case 3: return "affine";
        default: return "polyhedral";
    }
}

}  // namespace vi
