#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vi/errors.hpp"
#include "vi/operators.hpp"

using namespace vi;

namespace {
Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
    std::normal_distribution<double> N(0.0, scale);
    return Vector::NullaryExpr(n, [&] { return N(rng); });
}
const Vector kNetworkPstar = (Vector(8) << 1.0, 1.0, 0.1575, 0.8425, 0.885, 0.115, 1.0425, 0.9575).finished();
const Vector kNashPstar = (Vector(5) << 36.912, 41.842, 43.705, 42.665, 39.182).finished();
}  // namespace

TEST_CASE("network operator") {
    const auto net = NetworkProblem::reference_instance();
    Vector D(8);
    D << 5.5, 1, 2, 3, 4, 50, 3.5, 1.5;
    CHECK(network_eval(net, Vector::Ones(8)) == D);
    CHECK(network_eval(net, Vector::Zero(8)).norm() == 0.0);
    Vector hand(8);
    hand << 5.5, 1.0, 0.315, 2.5275, 3.54, 5.75, 3.64875, 1.43625;
    CHECK((network_eval(net, kNetworkPstar) - hand).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK_THROWS_AS(network_eval(net, Vector::Ones(3)), DimensionError);
    CHECK(estimate_lipschitz(net) == 50.0);

    // reference equilibrium balances every node
    CHECK((net.incidence() * kNetworkPstar - net.balances()).norm() < 1e-12);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Vector x = random_vector(rng, 8), y = random_vector(rng, 8);
        CHECK((network_eval(net, x) - network_eval(net, y)).dot(x - y) >= 0.0);
        CHECK((network_eval(net, x) - network_eval(net, y)).norm() <= (50.0 + 1e-6) * (x - y).norm());
    }
}

TEST_CASE("network incidence must be a node-arc matrix") {
    Matrix T(2, 2);
    T << 1, 1, -1, 0;
    CHECK_THROWS_AS(NetworkProblem(Vector::Ones(2), T, Vector::Zero(2), Vector::Ones(2)), DomainError);
    Matrix T2(2, 1);
    T2 << -1, 1;
    CHECK_THROWS_AS(NetworkProblem(-Vector::Ones(1), T2, Vector::Zero(2), Vector::Ones(1)), DomainError);
}

TEST_CASE("Nash operator") {
    const auto nash = NashProblem::five_firm_instance();
    const Vector F = nash_eval(nash, kNashPstar);
    CHECK(F.lpNorm<Eigen::Infinity>() <= 1e-2);

    NashProblem one(Vector::Zero(1), Vector::Ones(1), Vector::Ones(1));
    const double s = std::pow(5000.0, 1.0 / 1.1);
    CHECK(nash_eval(one, Vector::Ones(1))[0] == doctest::Approx(1.0 - s + s / 1.1).epsilon(1e-12));

    NashProblem doubled(nash.e(), nash.O(), nash.r(), 10000.0, 1.1);
    const Vector x = Vector::Constant(5, 20.0);
    CHECK(((nash_eval(doubled, x) - nash_eval(nash, x)).array() < 0.0).all());

    CHECK_THROWS_AS(nash_eval(nash, Vector::Zero(5)), DomainError);
    CHECK_THROWS_AS(nash_eval(nash, -Vector::Ones(5)), DomainError);
    CHECK_THROWS_AS(estimate_lipschitz(nash), UnsupportedError);
    CHECK(nash.evaluate_guarded(Vector::Zero(5)).allFinite());

    // inverse demand derivative against a central difference
    const double R = 200.0, h = 1e-4;
    CHECK(nash.inverse_demand_derivative(R) ==
          doctest::Approx((nash.inverse_demand(R + h) - nash.inverse_demand(R - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("Gaussian kernel") {
    auto k1 = build_gaussian_kernel(1, 1.0);
    CHECK(k1.weights == std::vector<double>{1.0});
    auto flat = build_gaussian_kernel(3, 1e6);
    for (double w : flat.weights) CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
    auto k5 = build_gaussian_kernel(5, 1.5);
    double total = 0.0;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) total += std::exp(-(i * i + j * j) / (2 * 1.5 * 1.5));
    CHECK(k5.at(2, 2) == doctest::Approx(1.0 / total).epsilon(1e-14));
    CHECK(k5.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(build_gaussian_kernel(4, 1.0), DomainError);
}

TEST_CASE("motion kernel") {
    auto k1 = build_motion_kernel(1, 37.0);
    CHECK(k1.weights == std::vector<double>{1.0});
    auto row = build_motion_kernel(5, 0.0);
    CHECK(row.rows == 1);
    CHECK(row.cols == 5);
    for (double w : row.weights) CHECK(w == doctest::Approx(0.2));
    for (int len : {2, 3, 5, 9})
        for (double ang : {0.0, 30.0, 45.0, 60.0, 90.0, 135.0}) {
            auto k = build_motion_kernel(len, ang);
            CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-12));
            for (int i = 0; i < k.rows; ++i)
                for (int j = 0; j < k.cols; ++j) {
                    CHECK(k.at(i, j) >= 0.0);
                    CHECK(k.at(i, j) == doctest::Approx(k.at(k.rows - 1 - i, k.cols - 1 - j)).epsilon(1e-12));
                }
        }
}

TEST_CASE("deblur operator") {
    std::mt19937_64 rng(3);
    const Vector b = random_vector(rng, 64);
    DeblurProblem id(8, 8, build_gaussian_kernel(1, 1.0), b);
    const Vector x = random_vector(rng, 64);
    CHECK((deblur_gradient(id, x) - (x - b)).norm() < 1e-14);
    CHECK(estimate_lipschitz(id) == doctest::Approx(1.0).epsilon(1e-6));

    const Vector orig = random_vector(rng, 64);
    const auto blurred = DeblurProblem::from_original(8, 8, build_gaussian_kernel(5, 1.5), orig);
    CHECK(deblur_gradient(blurred, orig).norm() < 1e-10);
    CHECK_THROWS_AS(deblur_gradient(blurred, Vector::Zero(10)), DimensionError);

    for (const auto& k : {build_gaussian_kernel(5, 1.5), build_motion_kernel(5, 60.0), build_gaussian_kernel(3, 0.7)}) {
        DeblurProblem p(8, 8, k, b);
        for (int t = 0; t < 50; ++t) {
            const Vector u = random_vector(rng, 64), w = random_vector(rng, 64);
            CHECK(std::abs(p.forward(u).dot(w) - u.dot(p.adjoint(w))) < 1e-10);
            const Vector gd = p.gradient(u) - p.gradient(w);
            CHECK(gd.dot(u - w) >= -1e-12);
            CHECK(gd.dot(u - w) == doctest::Approx(p.forward(u - w).squaredNorm()).epsilon(1e-10));
        }
        const Matrix A = oracle::dense_convolution(k, 8, 8);
        const Vector u = random_vector(rng, 64);
        CHECK((p.forward(u) - A * u).norm() < 1e-12);
        CHECK((p.adjoint(u) - A.transpose() * u).norm() < 1e-12);
    }
}

TEST_CASE("deblur Lipschitz estimate agrees with the Fourier oracle") {
    for (const auto& k : {build_gaussian_kernel(5, 1.5), build_motion_kernel(5, 60.0)}) {
        DeblurProblem p(32, 32, k, Vector::Zero(32 * 32));
        const double want = oracle::fourier_lipschitz(k, 32, 32);
        const double got = estimate_lipschitz(p, 1e-6);
        CHECK(got == doctest::Approx(want).epsilon(1e-5));
        CHECK(p.lipschitz() == doctest::Approx(want).epsilon(1e-5));
        std::mt19937_64 rng(5);
        for (int t = 0; t < 50; ++t) {
            const Vector x = random_vector(rng, 1024), y = random_vector(rng, 1024);
            CHECK((p.gradient(x) - p.gradient(y)).norm() <= (got + 1e-6) * (x - y).norm());
        }
    }
}

TEST_CASE("linear VI problem") {
    const auto lin = LinearVIProblem::random_spd(20, 10.0, 42);
    CHECK(lin.strong_monotonicity() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lin.lipschitz() == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(estimate_lipschitz(lin) == lin.lipschitz());
    CHECK(lin.evaluate(lin.solution()).norm() < 1e-10);
    const auto again = LinearVIProblem::random_spd(20, 10.0, 42);
    CHECK(again.matrix() == lin.matrix());
    CHECK(again.offset() == lin.offset());
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        const Vector x = random_vector(rng, 20), y = random_vector(rng, 20);
        CHECK((lin.evaluate(x) - lin.evaluate(y)).dot(x - y) >= (lin.strong_monotonicity() - 1e-9) * (x - y).squaredNorm());
    }
    Matrix M(2, 2);
    M << 1, 0, 0, -1;
    CHECK_THROWS_AS(LinearVIProblem(M, Vector::Zero(2)), DomainError);
}
