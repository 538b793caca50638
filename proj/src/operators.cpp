#include "vi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {
namespace {

void require_dim(const Vector& x, Eigen::Index n, const char* what) {
    if (x.size() != n) {
        throw DimensionError("operators", std::string(what) + ": expected dimension " + std::to_string(n) +
                                              ", got " + std::to_string(x.size()));
    }
}

}  // namespace

// --- network ---------------------------------------------------------------

NetworkProblem::NetworkProblem(Vector costs, Matrix incidence, Vector balances, Vector capacities,
                               std::optional<Vector> known_solution)
    : D_(std::move(costs)),
      T_(std::move(incidence)),
      r_(std::move(balances)),
      d_(std::move(capacities)),
      p_star_(std::move(known_solution)) {
    if (T_.cols() != D_.size() || d_.size() != D_.size() || T_.rows() != r_.size()) {
        throw DimensionError("operators", "network: incidence, costs, balances and capacities disagree in size");
    }
    if ((D_.array() < 0.0).any()) throw DomainError("operators", "network: arc costs must be nonnegative");
    for (Eigen::Index j = 0; j < T_.cols(); ++j) {
        int plus = 0, minus = 0, other = 0;
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            const double v = T_(i, j);
            if (v == 1.0) ++plus;
            else if (v == -1.0) ++minus;
            else if (v != 0.0) ++other;
        }
        if (plus != 1 || minus != 1 || other != 0) {
            throw DomainError("operators", "network: column " + std::to_string(j) +
                                               " of the incidence matrix needs exactly one +1 and one -1");
        }
    }
    if (p_star_) require_dim(*p_star_, D_.size(), "network known solution");
    set_ = std::make_shared<const PolyhedralSet>(T_, r_, Vector::Zero(D_.size()), d_);
}

NetworkProblem NetworkProblem::reference_instance() {
    Vector D(8);
    D << 5.5, 1, 2, 3, 4, 50, 3.5, 1.5;
    Matrix T(6, 8);
    T << -1, -1, 0, 0, 0, 0, 0, 0,  //
        1, 0, -1, -1, 0, 0, 0, 0,    //
        0, 1, 0, 0, -1, -1, 0, 0,    //
        0, 0, 1, 0, 1, 0, -1, 0,     //
        0, 0, 0, 1, 0, 1, 0, -1,     //
        0, 0, 0, 0, 0, 0, 1, 1;
    Vector r(6);
    r << -2, 0, 0, 0, 0, 2;
    Vector d(8);
    d << 2, 1, 1, 1, 1, 1, 2, 2;
    Vector p(8);
    p << 1.000, 1.000, 0.1575, 0.8425, 0.885, 0.115, 1.0425, 0.9575;
    return NetworkProblem(D, T, r, d, p);
}

Vector NetworkProblem::evaluate(const Vector& x) const {
    require_dim(x, D_.size(), "network_eval");
    return D_.cwiseProduct(x);
}

ProblemInstance NetworkProblem::instance() const {
    ProblemInstance inst;
    inst.name = "network";
    inst.dimension = D_.size();
    inst.op = [D = D_](const Vector& x) -> Vector {
        require_dim(x, D.size(), "network_eval");
        return D.cwiseProduct(x);
    };
    inst.feasible = ProjectionOracle::polyhedral(set_);
    inst.known_solution = p_star_;
    inst.lipschitz = estimate_lipschitz(*this);
    return inst;
}

Vector network_eval(const NetworkProblem& p, const Vector& x) { return p.evaluate(x); }

// --- Nash-Cournot ----------------------------------------------------------

NashProblem::NashProblem(Vector e, Vector O, Vector r, double demand_scale, double demand_exponent,
                         std::optional<Vector> known_solution)
    : e_(std::move(e)),
      O_(std::move(O)),
      r_(std::move(r)),
      scale_(demand_scale),
      exponent_(demand_exponent),
      p_star_(std::move(known_solution)) {
    if (O_.size() != e_.size() || r_.size() != e_.size() || e_.size() == 0) {
        throw DimensionError("operators", "nash: e, O and r must have the same positive length");
    }
    if ((O_.array() <= 0.0).any() || (r_.array() <= 0.0).any()) {
        throw DomainError("operators", "nash: O and r must be positive");
    }
    if (!(scale_ > 0.0) || !(exponent_ > 0.0)) {
        throw DomainError("operators", "nash: demand scale and exponent must be positive");
    }
    if (p_star_) require_dim(*p_star_, e_.size(), "nash known solution");
}

NashProblem NashProblem::five_firm_instance() {
    Vector e(5), O(5), r(5), p(5);
    e << 10, 8, 6, 4, 2;
    O << 5, 5, 5, 5, 5;
    r << 1.2, 1.1, 1.0, 0.9, 0.8;
    p << 36.912, 41.842, 43.705, 42.665, 39.182;
    return NashProblem(e, O, r, 5000.0, 1.1, p);
}

double NashProblem::inverse_demand(double total) const {
    return std::pow(scale_, 1.0 / exponent_) * std::pow(total, -1.0 / exponent_);
}

double NashProblem::inverse_demand_derivative(double total) const {
    return -(1.0 / exponent_) * std::pow(scale_, 1.0 / exponent_) * std::pow(total, -1.0 / exponent_ - 1.0);
}

Vector NashProblem::marginal(const Vector& x, double total) const {
    const double q = inverse_demand(total);
    const double dq = inverse_demand_derivative(total);
    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double supply = std::max(x[i], 0.0);
        const double cost = e_[i] + std::pow(O_[i], -1.0 / r_[i]) * std::pow(supply, 1.0 / r_[i]);
        out[i] = cost - q - x[i] * dq;
    }
    return out;
}

Vector NashProblem::evaluate(const Vector& x) const {
    require_dim(x, e_.size(), "nash_eval");
    if ((x.array() < 0.0).any()) throw DomainError("operators", "nash_eval: supplies must be nonnegative");
    const double total = x.sum();
    if (!(total > 0.0)) {
        throw DomainError("operators", "nash_eval: total supply must be positive, got " + format_real(total));
    }
    return marginal(x, total);
}

Vector NashProblem::evaluate_guarded(const Vector& x) const {
    require_dim(x, e_.size(), "nash_eval");
    return marginal(x, std::max(x.sum(), kMinTotalSupply));
}

ProblemInstance NashProblem::instance() const {
    ProblemInstance inst;
    inst.name = "nash";
    inst.dimension = e_.size();
    inst.op = [self = *this](const Vector& x) { return self.evaluate_guarded(x); };
    inst.feasible = ProjectionOracle::box(Box::nonnegative(e_.size()));
    inst.known_solution = p_star_;
    return inst;
}

Vector nash_eval(const NashProblem& p, const Vector& x) { return p.evaluate(x); }

// --- kernels -----------------------------------------------------------------

Kernel build_gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0) throw DomainError("operators", "gaussian kernel size must be odd and >= 1");
    if (!(sigma > 0.0)) throw DomainError("operators", "gaussian kernel sigma must be positive");
    Kernel k;
    k.rows = k.cols = size;
    k.weights.assign(static_cast<std::size_t>(size * size), 0.0);
    const int c = size / 2;
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const double di = i - c, dj = j - c;
            const double w = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
            k.weights[static_cast<std::size_t>(i * size + j)] = w;
            total += w;
        }
    }
    for (auto& w : k.weights) w /= total;
    return k;
}

Kernel build_motion_kernel(int length, double angle_degrees) {
    if (length < 1) throw DomainError("operators", "motion kernel length must be >= 1");
    if (length == 1) return Kernel{};

    const double theta = angle_degrees * std::numbers::pi / 180.0;
    const double dx = std::cos(theta);
    const double dy = -std::sin(theta);
    const int samples = 8 * length;
    const double half = 0.5 * length;

    std::map<std::pair<int, int>, int> votes;
    int ext_r = 0, ext_c = 0;
    for (int s = 0; s < samples; ++s) {
        const double t = -half + (s + 0.5) * (static_cast<double>(length) / samples);
        const int row = static_cast<int>(std::round(t * dy));
        const int col = static_cast<int>(std::round(t * dx));
        ++votes[{row, col}];
        ext_r = std::max(ext_r, std::abs(row));
        ext_c = std::max(ext_c, std::abs(col));
    }
    Kernel k;
    k.rows = 2 * ext_r + 1;
    k.cols = 2 * ext_c + 1;
    k.weights.assign(static_cast<std::size_t>(k.rows * k.cols), 0.0);
    for (const auto& [pos, count] : votes) {
        k.weights[static_cast<std::size_t>((pos.first + ext_r) * k.cols + pos.second + ext_c)] =
            static_cast<double>(count) / samples;
    }
    return k;
}

// --- deblurring ----------------------------------------------------------------

DeblurProblem::DeblurProblem(int rows, int cols, Kernel kernel, Vector observed)
    : rows_(rows), cols_(cols), kernel_(std::move(kernel)), b_(std::move(observed)), lipschitz_(0.0) {
    if (rows <= 0 || cols <= 0) throw DimensionError("operators", "deblur: image dimensions must be positive");
    require_dim(b_, static_cast<Eigen::Index>(rows) * cols, "deblur observed image");
    for (double w : kernel_.weights) {
        if (w < 0.0) throw DomainError("operators", "deblur: kernel weights must be nonnegative");
    }
    if (std::abs(kernel_.sum() - 1.0) > 1e-12) throw DomainError("operators", "deblur: kernel must sum to 1");
    if (kernel_.rows > rows || kernel_.cols > cols) {
        throw DimensionError("operators", "deblur: kernel larger than the image");
    }
    lipschitz_ = estimate_lipschitz(*this);
}

DeblurProblem DeblurProblem::from_original(int rows, int cols, Kernel kernel, const Vector& original) {
    require_dim(original, static_cast<Eigen::Index>(rows) * cols, "deblur original image");
    Vector b(original.size());
    kernels::parallel::convolve_circular({original.data(), static_cast<std::size_t>(original.size())}, rows, cols,
                                         kernel, kernels::Direction::forward,
                                         {b.data(), static_cast<std::size_t>(b.size())});
    return DeblurProblem(rows, cols, std::move(kernel), std::move(b));
}

Vector DeblurProblem::forward(const Vector& x) const {
    require_dim(x, b_.size(), "deblur forward");
    Vector out(x.size());
    kernels::parallel::convolve_circular({x.data(), static_cast<std::size_t>(x.size())}, rows_, cols_, kernel_,
                                         kernels::Direction::forward,
                                         {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

Vector DeblurProblem::adjoint(const Vector& y) const {
    require_dim(y, b_.size(), "deblur adjoint");
    Vector out(y.size());
    kernels::parallel::convolve_circular({y.data(), static_cast<std::size_t>(y.size())}, rows_, cols_, kernel_,
                                         kernels::Direction::adjoint,
                                         {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

Vector DeblurProblem::gradient(const Vector& x) const { return adjoint(forward(x) - b_); }

double DeblurProblem::objective(const Vector& x) const { return 0.5 * (forward(x) - b_).squaredNorm(); }

ProblemInstance DeblurProblem::instance() const {
    ProblemInstance inst;
    inst.name = "deblur";
    inst.dimension = b_.size();
    inst.op = [self = std::make_shared<const DeblurProblem>(*this)](const Vector& x) { return self->gradient(x); };
    inst.lipschitz = lipschitz_;
    return inst;
}

Vector deblur_gradient(const DeblurProblem& p, const Vector& x) { return p.gradient(x); }

// --- linear ------------------------------------------------------------------

LinearVIProblem::LinearVIProblem(Matrix M, Vector q) : M_(std::move(M)), q_(std::move(q)) {
    if (M_.rows() != M_.cols() || M_.rows() != q_.size()) {
        throw DimensionError("operators", "linear VI: M must be square and match q");
    }
    if (!M_.isApprox(M_.transpose(), 1e-12)) throw DomainError("operators", "linear VI: M must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M_, Eigen::EigenvaluesOnly);
    k_ = eig.eigenvalues().minCoeff();
    L_ = eig.eigenvalues().maxCoeff();
    if (!(k_ > 0.0)) throw DomainError("operators", "linear VI: M must be positive definite");
}

LinearVIProblem LinearVIProblem::random_spd(int dim, double condition, std::uint64_t seed) {
    if (dim < 1 || !(condition >= 1.0)) throw DomainError("operators", "random_spd: need dim >= 1, condition >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix G(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) G(i, j) = normal(rng);
    const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
    Vector eig(dim);
    for (int i = 0; i < dim; ++i) eig[i] = dim == 1 ? 1.0 : 1.0 + (condition - 1.0) * i / (dim - 1);
    Matrix M = Q * eig.asDiagonal() * Q.transpose();
    M = 0.5 * (M + M.transpose()).eval();
    Vector q(dim);
    for (int i = 0; i < dim; ++i) q[i] = normal(rng);
    return LinearVIProblem(std::move(M), std::move(q));
}

Vector LinearVIProblem::solution() const { return M_.llt().solve(-q_); }

ProblemInstance LinearVIProblem::instance() const {
    ProblemInstance inst;
    inst.name = "linear";
    inst.dimension = q_.size();
    inst.op = [M = M_, q = q_](const Vector& x) -> Vector { return M * x + q; };
    inst.known_solution = solution();
    inst.lipschitz = L_;
    inst.strong_monotonicity = k_;
    return inst;
}

// --- Lipschitz estimates -------------------------------------------------------

double estimate_lipschitz(const NetworkProblem& p) { return p.costs().maxCoeff(); }

double estimate_lipschitz(const LinearVIProblem& p) { return p.lipschitz(); }

double estimate_lipschitz(const DeblurProblem& p, double tol) {
    const Eigen::Index n = p.observed().size();
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(rng);
    v.normalize();
    double estimate = 0.0;
    // The Rayleigh quotient converges geometrically; stopping on a change well
    // below tol keeps the remaining error under tol.
    for (int it = 0; it < 5000; ++it) {
        Vector Av = p.forward(v);
        const double rayleigh = Av.squaredNorm();
        Vector w = p.adjoint(Av);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(rayleigh - estimate) <= 1e-3 * tol * rayleigh) {
            estimate = rayleigh;
            break;
        }
        estimate = rayleigh;
    }
    return estimate;
}

double estimate_lipschitz(const NashProblem&) {
    throw UnsupportedError("operators",
                           "no Lipschitz estimate for the Nash-Cournot operator; supply L or rely on the adaptive step");
}

}  // namespace vi
