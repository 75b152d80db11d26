#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "lgdot/lgi.hpp"
#include "lgdot/oracle.hpp"

using namespace lgdot;
using namespace lgdot::oracle;

namespace {

constexpr double pi = std::numbers::pi;
const ReservoirParams L = presets::figure_reservoir(presets::mu_left);
const ReservoirParams R = presets::figure_reservoir(presets::mu_right);

DeviceConfig series(double g) { return make_series_config(g, g, presets::figure_dots(), L, R); }

}  // namespace

TEST(FiniteBath, CouplingsIntegrateSpectralDensity) {
    // Each bin weight against an independent quadrature of gamma J(e) over the bin.
    const DeviceConfig c = series(1.0);
    const FiniteBath bath = build_bath(c, 64);
    ASSERT_EQ(bath.size(), 128u);
    const double width = 2.0 * bath.span / 64;
    auto J = [](double e) { return 1.0 / (2 * pi) / ((e - 5.0) * (e - 5.0) + 1.0); };
    double err = 0.0, total = 0.0;
    for (std::size_t m = 0; m < bath.size(); ++m) {
        if (bath.lead[m] != 0) continue;
        const double lo = bath.energy[m] - 0.5 * width;
        const double ref = boost::math::quadrature::gauss<double, 20>::integrate(J, lo, lo + width);
        err += std::abs(std::norm(bath.coupling[m](0)) - ref);
        total += ref;
    }
    EXPECT_LT(err / total, 1e-10);
    // Truncation: the window holds all but the Lorentzian wings beyond +-span.
    EXPECT_NEAR(total, 1.0 / (2 * pi) * 2.0 * std::atan(20.0), 1e-12);
}

TEST(FiniteBath, SeriesTopologyAndDecoupling) {
    const FiniteBath bath = build_bath(series(0.3), 8);
    for (std::size_t m = 0; m < bath.size(); ++m) {
        if (bath.lead[m] == 0) EXPECT_EQ(bath.coupling[m](1), cplx(0.0));
        else EXPECT_EQ(bath.coupling[m](0), cplx(0.0));
    }
    EXPECT_EQ(build_bath(series(0.0), 1).size(), 0u);
    EXPECT_THROW(build_bath(series(0.3), 0), ParameterError);
    EXPECT_THROW(build_bath(series(0.3), 4, 0.0), ParameterError);
    EXPECT_NEAR(build_bath(series(0.3), 64).validity_time(), 2 * pi * 64 / 40.0, 1e-12);
}

TEST(FiniteBath, ParallelUsesOneChannelPerLead) {
    const DeviceConfig c = make_parallel_config(0.3, 0.3, presets::figure_dots(), L, R);
    const FiniteBath bath = build_bath(c, 16);
    ASSERT_EQ(bath.size(), 32u);
    for (std::size_t m = 0; m < bath.size(); ++m) EXPECT_NEAR(std::abs(bath.coupling[m](0) - bath.coupling[m](1)), 0.0, 1e-15);
}

TEST(SingleParticle, UnitaryAndConservesParticles) {
    const DeviceConfig c = series(0.5);
    const FiniteBath bath = build_bath(c, 32);
    const SingleParticlePropagator prop(c, bath);
    const Eigen::VectorXd n0 = initial_occupations(bath);
    EXPECT_EQ(n0(0), 0.0);
    EXPECT_EQ(n0(1), 1.0);
    for (double t : {0.3, 2.0, 7.5}) {
        const MatX U = prop(t);
        const auto I = MatX::Identity(U.rows(), U.cols());
        EXPECT_LT((U * U.adjoint() - I).cwiseAbs().maxCoeff(), 1e-10);
        const MatX C = U * n0.cast<cplx>().asDiagonal() * U.adjoint();
        EXPECT_NEAR(C.trace().real(), n0.sum(), 1e-9);
        EXPECT_LT((prop.dot_rows(t) - U.topRows(2)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Wick, MatchesFockSpaceSimulation) {
    // Two dots plus two modes per lead: 6 fermionic modes, 64 states.
    const DeviceConfig c = series(0.5);
    const FiniteBath bath = build_bath(c, 2, 3.0);
    const SingleParticlePropagator prop(c, bath);
    const FockSpace fock(prop.hamiltonian());
    ASSERT_EQ(fock.modes(), 6u);
    const MatX rho = fock.product_state(initial_occupations(bath));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    const MatX n2 = fock.number(1);
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> ut(0.0, 6.0);
    for (int i = 0; i < 5; ++i) {
        double t1 = ut(rng), t2 = ut(rng);
        if (t2 < t1) std::swap(t1, t2);
        const TwoTime w = oracle_two_time(prop, bath, t1, t2);
        const cplx direct = fock.correlator(rho, n2, t2, n2, t1);
        EXPECT_LT(std::abs(w.nn - direct), 1e-10) << t1 << ' ' << t2;
        EXPECT_NEAR(w.n2_t1, fock.correlator(rho, n2, t1, MatX::Identity(64, 64), 0.0).real(), 1e-10);
    }
}

TEST(Wick, FockOperatorsAnticommute) {
    const FockSpace fock(MatX::Zero(3, 3));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            const MatX ca = fock.annihilator(a), cb = fock.annihilator(b);
            const MatX anti = ca * cb.adjoint() + cb.adjoint() * ca;
            const MatX expected = MatX::Identity(8, 8) * (a == b ? 1.0 : 0.0);
            EXPECT_LT((anti - expected).cwiseAbs().maxCoeff(), 1e-15);
        }
    EXPECT_THROW(FockSpace(MatX::Zero(11, 11)), ParameterError);
}

TEST(Oracle, DecoupledDotsMatchStateVector) {
    const DeviceConfig c = series(0.0);
    const FiniteBath bath = build_bath(c, 4);
    for (double tau : {0.5, 1.3}) {
        const lgi::LgiResult a = oracle_lgi(c, bath, tau);
        const lgi::LgiResult b = state_vector_lgi(c.dots(), dot2_occupied_state(), tau);
        EXPECT_NEAR(a.C3, b.C3, 1e-10);
        EXPECT_NEAR(a.C4, b.C4, 1e-10);
    }
}

TEST(Oracle, ConvergesInModeCount) {
    const DeviceConfig c = series(0.2);
    const lgi::LgiResult a = oracle_lgi(c, build_bath(c, 32), 1.0);
    const lgi::LgiResult b = oracle_lgi(c, build_bath(c, 64), 1.0);
    EXPECT_LT(std::abs(a.C3 - b.C3), 1e-2);
    EXPECT_LT(std::abs(a.C21 - b.C21), 1e-2);
}

TEST(Oracle, FlagsTimesBeyondRecurrence) {
    const DeviceConfig c = series(0.2);
    const FiniteBath bath = build_bath(c, 8);
    EXPECT_FALSE(oracle_two_time(c, bath, 0.0, 0.5 * bath.validity_time()).beyond_validity);
    EXPECT_TRUE(oracle_two_time(c, bath, 0.0, 1.5 * bath.validity_time()).beyond_validity);
    EXPECT_THROW(oracle_two_time(c, bath, 1.0, 0.5), ParameterError);
}

TEST(Oracle, NoiseIsHermitianAndBounded) {
    const DeviceConfig c = series(0.4);
    const FiniteBath bath = build_bath(c, 32);
    const SingleParticlePropagator prop(c, bath);
    const Mat2 v = oracle_noise_v(prop, bath, 1.0, 2.5);
    EXPECT_LT((v - oracle_noise_v(prop, bath, 2.5, 1.0).adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const Mat2 vd = oracle_noise_v(prop, bath, 3.0, 3.0);
    EXPECT_GE(vd(1, 1).real(), 0.0);
    EXPECT_LE(vd(1, 1).real(), 1.0);
}

TEST(StateVector, ClosedPeakValue) {
    const lgi::LgiResult r = state_vector_lgi(presets::figure_dots(), superposition_state(), pi / 3);
    EXPECT_NEAR(r.C3, 1.5, 1e-12);
    EXPECT_NEAR(superposition_state().norm(), 1.0, 1e-15);
    EXPECT_EQ(dot2_occupied_state()(2), cplx(1.0));
}
