#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "lgdot/closed.hpp"
#include "lgdot/lgi.hpp"
#include "lgdot/oracle.hpp"

using namespace lgdot;
using namespace lgdot::lgi;

namespace {

constexpr double pi = std::numbers::pi;
const ReservoirParams L = presets::figure_reservoir(presets::mu_left);
const ReservoirParams R = presets::figure_reservoir(presets::mu_right);

DeviceConfig series(double g) { return make_series_config(g, g, presets::figure_dots(), L, R); }

}  // namespace

TEST(Assemble, CombinesCorrelators) {
    const LgiResult r = assemble(0.5, 0.9, 0.8, 0.6, 0.7, 0.1);
    EXPECT_DOUBLE_EQ(r.C3, 0.9 + 0.8 - 0.6);
    EXPECT_DOUBLE_EQ(r.C4, 0.9 + 0.8 + 0.7 - 0.1);
    EXPECT_TRUE(r.violates_C3);
    EXPECT_TRUE(r.violates_C4);
    const LgiResult edge = assemble(0.5, 1.0, 1.0, 1.0, 1.0, 1.0);
    EXPECT_FALSE(edge.violates_C3);
    EXPECT_FALSE(edge.violates_C4);
}

TEST(QCorrelator, Examples) {
    // Dot 2 always occupied: Q = +1 at both times.
    EXPECT_DOUBLE_EQ(q_correlator(1.0, 1.0, 1.0), 1.0);
    // Always empty: Q = -1 twice.
    EXPECT_DOUBLE_EQ(q_correlator(0.0, 0.0, 0.0), 1.0);
    // Occupied then empty.
    EXPECT_DOUBLE_EQ(q_correlator(0.0, 0.0, 1.0), -1.0);
    EXPECT_DOUBLE_EQ(q_correlator(cplx(0.25, 0.3), 0.5, 0.5), 0.0);
}

TEST(OpenTwoTime, StartsOccupied) {
    const DeviceConfig c = series(0.2);
    const TimeGrid grid = TimeGrid::with_step(0.0, 0.05, 41);
    const std::array t{kernels::tabulate_kernels(c.left(), grid), kernels::tabulate_kernels(c.right(), grid)};
    const auto u = greens::solve_retarded(c, grid, t);
    const auto nc = greens::solve_noise_correlations(c, grid, t, u, {0, 20, 40});
    EXPECT_NEAR(two_time_n2_open(u, nc, std::size_t{0}, std::size_t{0}).real(), 1.0, 1e-15);
    // Equal times: <n2 n2> = <n2>, exact only once u u^dagger + v + vbar = 1,
    // which the quadrature satisfies to O(dt^2).
    for (std::size_t k : {20u, 40u}) {
        const cplx nn = two_time_n2_open(u, nc, k, k);
        EXPECT_NEAR(nn.real(), greens::occupation_n2(u, nc, k), 1e-5);
        EXPECT_NEAR(nn.imag(), 0.0, 1e-12);
    }
    EXPECT_LT(std::abs(two_time_n2_open(u, nc, 1.0, 2.0) - two_time_n2_open(u, nc, std::size_t{20}, std::size_t{40})),
              1e-15);
    EXPECT_THROW(two_time_n2_open(u, nc, std::size_t{40}, std::size_t{20}), ParameterError);
    EXPECT_THROW(two_time_n2_open(u, nc, 0.0, 1.01), ParameterError);
}

TEST(OpenLgi, DecoupledMatchesStateVector) {
    const DeviceConfig c = series(0.0);
    for (double tau : {0.4, 1.0, 2.3}) {
        const LgiResult open = compute_lgi(c, MeasurementSchedule(tau), Pipeline::Open);
        const LgiResult sv = oracle::state_vector_lgi(c.dots(), oracle::dot2_occupied_state(), open.tau);
        EXPECT_NEAR(open.C3, sv.C3, 1e-8) << tau;
        EXPECT_NEAR(open.C4, sv.C4, 1e-8) << tau;
    }
}

TEST(OpenLgi, MatchesFiniteBathCorrelator) {
    const DeviceConfig c = series(0.2);
    const oracle::FiniteBath bath = oracle::build_bath(c, 64);
    const TimeGrid grid = TimeGrid::with_step(0.0, 0.01, 301);
    const std::array t{kernels::tabulate_kernels(c.left(), grid), kernels::tabulate_kernels(c.right(), grid)};
    const auto u = greens::solve_retarded(c, grid, t);
    const auto nc = greens::solve_noise_correlations(c, grid, t, u, {0, 100, 300});
    for (auto [k1, k2] : {std::pair<std::size_t, std::size_t>{0, 100}, {100, 300}, {0, 300}}) {
        const auto ref = oracle::oracle_two_time(c, bath, grid.time(k1), grid.time(k2));
        EXPECT_LT(std::abs(two_time_n2_open(u, nc, k1, k2) - ref.nn), 2e-2);
    }
}

TEST(OpenLgi, CoincidenceLimits) {
    for (const DeviceConfig& c : {series(0.5), make_parallel_config(0.5, 0.5, presets::figure_dots(), L, R)}) {
        LgiOptions opts;
        opts.dt = 0.005;
        const LgiResult r = compute_lgi(c, MeasurementSchedule(0.005), Pipeline::Open, opts);
        EXPECT_NEAR(r.C3, 1.0, 5 * opts.dt);
        EXPECT_NEAR(r.C4, 2.0, 5 * opts.dt);
    }
}

TEST(OpenLgi, EvaluatorMatchesSingleShot) {
    const DeviceConfig c = series(0.4);
    LgiOptions opts;
    opts.dt = 0.02;
    const OpenLgiEvaluator ev(c, 0.02, 50, opts);
    EXPECT_EQ(ev.grid().size(), 151u);
    const LgiResult a = ev.evaluate(35);
    const LgiResult b = compute_lgi(c, MeasurementSchedule(0.7), Pipeline::Open, opts);
    EXPECT_NEAR(a.tau, 0.7, 1e-12);
    EXPECT_NEAR(a.C3, b.C3, 1e-10);
    EXPECT_NEAR(a.C4, b.C4, 1e-10);
    EXPECT_THROW(ev.evaluate(0), ParameterError);
    EXPECT_THROW(ev.evaluate(51), ParameterError);
}

TEST(OpenLgi, SnapsTauToGrid) {
    LgiOptions opts;
    opts.dt = 0.1;
    const LgiResult r = compute_lgi(series(0.2), MeasurementSchedule(0.73), Pipeline::Open, opts);
    EXPECT_NEAR(r.tau, 0.73, 1e-12);
}

TEST(ClosedLgi, CoincidenceAndPeak) {
    const DotHamiltonian h = presets::figure_dots();
    const DeviceConfig c = make_series_config(0.0, 0.0, h, L, R);
    const LgiResult tiny = compute_lgi(c, MeasurementSchedule(1e-4), Pipeline::Closed);
    EXPECT_NEAR(tiny.C3, 1.0, 1e-6);
    EXPECT_NEAR(tiny.C4, 2.0, 1e-6);
    const double tau = pi / 3.0;  // alpha = 1
    const LgiResult peak = compute_lgi(c, MeasurementSchedule(tau), Pipeline::Closed);
    EXPECT_NEAR(peak.C3, 1.5, 1e-12);
    const LgiResult sv = oracle::state_vector_lgi(h, oracle::superposition_state(), tau);
    EXPECT_NEAR(peak.C3, sv.C3, 1e-10);
    EXPECT_NEAR(peak.C4, sv.C4, 1e-10);
    EXPECT_TRUE(peak.violates_C3);
}

TEST(ClosedLgi, PeriodicInTau) {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0), ut(0.05, 5.0);
    for (int i = 0; i < 10; ++i) {
        const DotHamiltonian h(u(rng), u(rng), cplx(u(rng), u(rng)));
        const DeviceConfig c = make_series_config(0.0, 0.0, h, L, R);
        const double T = closed::ClosedPropagator(h).period();
        const double tau = ut(rng);
        const LgiResult a = compute_lgi(c, MeasurementSchedule(tau), Pipeline::Closed);
        const LgiResult b = compute_lgi(c, MeasurementSchedule(tau + T), Pipeline::Closed);
        EXPECT_NEAR(a.C3, b.C3, 1e-6);
        EXPECT_NEAR(a.C4, b.C4, 1e-6);
    }
}

TEST(ClosedLgi, FormulaForDegenerateDots) {
    // C3 = 2 cos(alpha tau) - cos(2 alpha tau) for eps11 = eps22.
    const DeviceConfig c = make_series_config(0.0, 0.0, presets::figure_dots(), L, R);
    for (double tau : {0.3, 1.1, 2.0, 4.4}) {
        const LgiResult r = compute_lgi(c, MeasurementSchedule(tau), Pipeline::Closed);
        EXPECT_NEAR(r.C3, 2 * std::cos(tau) - std::cos(2 * tau), 1e-12);
    }
}

TEST(ClassicalBound, RandomDistributionsRespectBound) {
    std::mt19937 rng(41);
    std::exponential_distribution<double> e(1.0);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 8> p{};
        double s = 0.0;
        for (double& x : p) s += (x = e(rng));
        for (double& x : p) x /= s;
        // Normalise once more so the sum is 1 to rounding.
        s = 0.0;
        for (double x : p) s += x;
        p[0] += 1.0 - s;
        const double c3 = classical_bound_check(p);
        EXPECT_LE(c3, 1.0 + 1e-12);
        EXPECT_GE(c3, -3.0 - 1e-12);
    }
}

TEST(ClassicalBound, ExtremesAndValidation) {
    std::array<double, 8> p{};
    p[0] = 1.0;  // all +1
    EXPECT_NEAR(classical_bound_check(p), 1.0, 1e-15);
    p = {};
    p[0b010] = 1.0;  // Q1 = +1, Q2 = -1, Q3 = +1
    EXPECT_NEAR(classical_bound_check(p), -3.0, 1e-15);
    p = {};
    p[0b101] = 0.5;
    p[0b111] = 0.5;
    EXPECT_NEAR(classical_bound_check(p), -1.0, 1e-15);
    p = {};
    p[1] = 0.6;
    EXPECT_THROW(classical_bound_check(p), ParameterError);
    p[2] = 0.5;
    p[3] = -0.1;
    EXPECT_THROW(classical_bound_check(p), ParameterError);
}

TEST(Pipeline, Names) {
    EXPECT_EQ(to_string(Pipeline::Closed), "closed");
    EXPECT_EQ(to_string(Pipeline::Open), "open");
}
