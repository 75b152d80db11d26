#include <gtest/gtest.h>

#include <array>
#include <numbers>
#include <random>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "lgdot/closed.hpp"
#include "lgdot/oracle.hpp"

using namespace lgdot;
using closed::ClosedPropagator;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

DotHamiltonian random_dots(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return DotHamiltonian(u(rng), u(rng), cplx(u(rng), u(rng)));
}

Mat2 expm(const DotHamiltonian& h, double t) { return Mat2((-I * t * h.matrix()).exp()); }

// dw/dt = -i eps w by Dormand-Prince with tight tolerances.
Mat2 integrate(const DotHamiltonian& h, double t_end) {
    using State = std::array<double, 8>;
    const Mat2 eps = h.matrix();
    State y{1, 0, 0, 0, 0, 0, 1, 0};  // column-major re/im of the identity
    auto rhs = [&](const State& s, State& ds, double) {
        Mat2 w = Eigen::Map<const Mat2>(reinterpret_cast<const cplx*>(s.data()));
        Eigen::Map<Mat2>(reinterpret_cast<cplx*>(ds.data())) = -I * eps * w;
    };
    namespace ode = boost::numeric::odeint;
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, y, 0.0,
                            t_end, 1e-3);
    return Eigen::Map<const Mat2>(reinterpret_cast<const cplx*>(y.data()));
}

}  // namespace

TEST(ClosedPropagator, IdentityAtZero) {
    const Mat2 w = closed::closed_propagator(presets::figure_dots(), 0.0);
    EXPECT_LT((w - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ClosedPropagator, FullTransferForDegenerateDots) {
    const DotHamiltonian h = presets::figure_dots();
    const Mat2 w = closed::closed_propagator(h, pi);
    EXPECT_NEAR(std::norm(w(1, 0)), 1.0, 1e-12);
    // Degenerate case: w21 = -i e^{-i beta t / 2} sin(alpha t / 2).
    const cplx expected = -I * std::exp(-I * pi) * std::sin(pi / 2);
    EXPECT_LT(std::abs(w(1, 0) - expected), 1e-12);
    EXPECT_LT((w - expm(h, pi)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ClosedPropagator, ConstantsForFigureDots) {
    const ClosedPropagator p(presets::figure_dots());
    EXPECT_DOUBLE_EQ(p.alpha(), 1.0);
    EXPECT_DOUBLE_EQ(p.beta(), 2.0);
    EXPECT_DOUBLE_EQ(p.gamma_diff(), 0.0);
    EXPECT_DOUBLE_EQ(p.period(), 2 * pi);
    EXPECT_EQ(p.A1(), cplx(0.5));
    EXPECT_EQ(p.A2(), cplx(0.5));
    EXPECT_EQ(p.A3(), cplx(-0.5));
    EXPECT_EQ(p.A4(), cplx(0.5));
}

TEST(ClosedPropagator, UnitaryForRandomHamiltonians) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const DotHamiltonian h = random_dots(rng);
        const Mat2 w = closed::closed_propagator(h, ut(rng));
        EXPECT_LT((w * w.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_NEAR(std::norm(w(1, 0)) + std::norm(w(1, 1)), 1.0, 1e-10);
    }
}

TEST(ClosedPropagator, MatchesOdeIntegration) {
    std::mt19937 rng(3);
    std::vector<DotHamiltonian> cases{presets::figure_dots(), DotHamiltonian(1.0, 0.25, 0.5),
                                      DotHamiltonian(-0.3, 1.2, cplx(0.4, -0.7))};
    for (int i = 0; i < 3; ++i) cases.push_back(random_dots(rng));
    for (const auto& h : cases) {
        for (double t : {0.5, 3.0, 7.7, 13.0, 20.0}) {
            const Mat2 diff = closed::closed_propagator(h, t) - integrate(h, t);
            EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-8) << "t=" << t;
        }
    }
}

TEST(ClosedPropagator, DiagonalFallback) {
    const DotHamiltonian h(0.3, -0.8, 0.0);
    const ClosedPropagator p(h);
    EXPECT_TRUE(p.diagonal_limit());
    const Mat2 w = p(2.5);
    EXPECT_LT(std::abs(w(0, 0) - std::exp(-I * 0.3 * 2.5)), 1e-15);
    EXPECT_LT(std::abs(w(1, 1) - std::exp(I * 0.8 * 2.5)), 1e-15);
    EXPECT_EQ(w(0, 1), cplx(0.0));
    // Just above the threshold the analytic branch stays accurate.
    const DotHamiltonian tiny(0.3, -0.8, 1e-9);
    EXPECT_LT((closed::closed_propagator(tiny, 2.5) - expm(tiny, 2.5)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ClosedPropagator, ModulusPeriodic) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int i = 0; i < 20; ++i) {
        const DotHamiltonian h = random_dots(rng);
        const ClosedPropagator p(h);
        const double t = ut(rng);
        EXPECT_NEAR(std::abs(p(t)(1, 0)), std::abs(p(t + p.period())(1, 0)), 1e-9);
    }
}

TEST(ClosedTwoTime, InitialAndEqualTimes) {
    const DotHamiltonian h = presets::figure_dots();
    EXPECT_NEAR(closed::closed_two_time_n2(h, 0.0, 0.0).real(), 0.5, 1e-15);
    for (double t : {0.3, 1.7, 4.2}) {
        const cplx nn = closed::closed_two_time_n2(h, t, t);
        EXPECT_NEAR(nn.real(), closed::closed_occupation_n2(h, t), 1e-12);
        EXPECT_NEAR(nn.imag(), 0.0, 1e-12);
    }
    EXPECT_THROW(closed::closed_two_time_n2(h, 1.0, 0.5), ParameterError);
}

TEST(ClosedTwoTime, MatchesStateVectorEvolution) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ut(0.0, 8.0);
    std::vector<DotHamiltonian> cases{presets::figure_dots(), DotHamiltonian(1.0, 0.5, 0.5)};
    for (int i = 0; i < 4; ++i) cases.push_back(random_dots(rng));
    const auto psi = oracle::superposition_state();
    for (const auto& h : cases) {
        for (int k = 0; k < 5; ++k) {
            double t1 = ut(rng), t2 = ut(rng);
            if (t2 < t1) std::swap(t1, t2);
            const cplx a = closed::closed_two_time_n2(h, t1, t2);
            const cplx b = oracle::state_vector_n2n2(h, psi, t1, t2);
            EXPECT_LT(std::abs(a - b), 1e-10) << t1 << ' ' << t2;
        }
    }
    const cplx a = closed::closed_two_time_n2(presets::figure_dots(), 0.0, pi);
    EXPECT_LT(std::abs(a - oracle::state_vector_n2n2(presets::figure_dots(), psi, 0.0, pi)), 1e-12);
}

TEST(ClosedQ, CoincidenceAndBounds) {
    const DotHamiltonian h = presets::figure_dots();
    for (double t : {0.0, 0.9, 5.0}) EXPECT_NEAR(closed::closed_Q_correlator(h, t, t).real(), 1.0, 1e-12);
    EXPECT_NEAR(closed::closed_Q_correlator(h, 0.0, 1e-6).real(), 1.0, 1e-9);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    // Q(t2) Q(t1) is a product of two unitaries, and its real part is the
    // symmetrised correlator of the state-vector evolution.
    for (int i = 0; i < 50; ++i) {
        const DotHamiltonian hr(ut(rng) - 5, ut(rng) - 5, ut(rng) / 5);
        double t1 = ut(rng), t2 = ut(rng);
        if (t2 < t1) std::swap(t1, t2);
        const cplx q = closed::closed_Q_correlator(hr, t1, t2);
        EXPECT_LE(std::abs(q), 1.0 + 1e-12);
        EXPECT_NEAR(q.real(), oracle::state_vector_Q(hr, oracle::superposition_state(), t1, t2), 1e-10);
    }
}

TEST(ClosedQ, MatchesStateVectorAtThirdPeriod) {
    const DotHamiltonian h = presets::figure_dots();
    const double t2 = 2 * pi / ClosedPropagator(h).alpha() / 3.0;
    const double a = closed::closed_Q_correlator(h, 0.0, t2).real();
    const double b = oracle::state_vector_Q(h, oracle::superposition_state(), 0.0, t2);
    EXPECT_NEAR(a, b, 1e-12);
}
