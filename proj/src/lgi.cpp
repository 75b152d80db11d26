#include "lgdot/lgi.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lgdot/closed.hpp"

namespace lgdot::lgi {

namespace {

std::size_t steps_for(double tau, double dt) {
    if (!(tau > 0.0)) throw ParameterError("tau must be positive");
    if (!(dt > 0.0)) throw ParameterError("time step must be positive");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(tau / dt)));
}

LgiResult closed_lgi(const DeviceConfig& config, double tau, double tol) {
    const auto& dots = config.dots();
    const auto t = MeasurementSchedule(tau).times();
    auto c = [&](int j, int i) { return closed::closed_Q_correlator(dots, t[i], t[j]).real(); };
    return assemble(tau, c(1, 0), c(2, 1), c(2, 0), c(3, 2), c(3, 0), tol);
}

}  // namespace

LgiResult assemble(double tau, double c21, double c32, double c31, double c43, double c41, double tol) {
    LgiResult r;
    r.tau = tau;
    r.C21 = c21;
    r.C32 = c32;
    r.C31 = c31;
    r.C43 = c43;
    r.C41 = c41;
    r.C3 = c21 + c32 - c31;
    r.C4 = c21 + c32 + c43 - c41;
    r.tol = tol;
    r.violates_C3 = r.C3 > 1.0 + tol;
    r.violates_C4 = r.C4 > 2.0 + tol;
    return r;
}

double q_correlator(cplx nn, double n2_t2, double n2_t1) {
    return 4.0 * nn.real() - 2.0 * n2_t2 - 2.0 * n2_t1 + 1.0;
}

cplx two_time_n2_open(const greens::RetardedGreen& u, const greens::NoiseCorrelation& noise,
                      std::size_t k1, std::size_t k2) {
    if (k2 < k1) throw ParameterError("two-time correlator needs t2 >= t1");
    const Mat2& a = u.at(k1);
    const Mat2& b = u.at(k2);
    const cplx u21_1 = a(1, 0), u22_1 = a(1, 1);
    const cplx u21_2 = b(1, 0), u22_2 = b(1, 1);
    const cplx v11 = noise.v_at(k1, k1)(1, 1);
    const cplx v22 = noise.v_at(k2, k2)(1, 1);
    const cplx v12 = noise.v_at(k1, k2)(1, 1);
    const cplx vb12 = std::conj(noise.vbar_at(k1, k2)(1, 1));

    return std::conj(u22_2) * u22_1 * u21_2 * std::conj(u21_1)
         + std::norm(u22_2) * std::norm(u22_1)
         + std::norm(u22_2) * v11 + std::norm(u22_1) * v22
         + u21_2 * std::conj(u21_1) * v12 + std::conj(u22_2) * u22_1 * vb12
         + v22 * v11 + v12 * vb12;
}

cplx two_time_n2_open(const greens::RetardedGreen& u, const greens::NoiseCorrelation& noise, double t1,
                      double t2) {
    return two_time_n2_open(u, noise, u.grid.node_of(t1), u.grid.node_of(t2));
}

std::string_view to_string(Pipeline p) {
    return p == Pipeline::Closed ? "closed" : "open";
}

LgiResult compute_lgi(const DeviceConfig& config, const MeasurementSchedule& schedule, Pipeline pipeline,
                      const LgiOptions& options) {
    if (pipeline == Pipeline::Closed) return closed_lgi(config, schedule.tau(), options.tol);
    const std::size_t m = steps_for(schedule.tau(), options.dt);
    const OpenLgiEvaluator eval(config, schedule.tau() / static_cast<double>(m), m, options);
    LgiResult r = eval.evaluate(m);
    r.tau = schedule.tau();
    return r;
}

OpenLgiEvaluator::OpenLgiEvaluator(const DeviceConfig& config, double dt, std::size_t max_steps_per_tau,
                                   const LgiOptions& options)
    : config_(config),
      options_(options),
      max_m_(max_steps_per_tau),
      grid_(TimeGrid::with_step(0.0, dt, 3 * std::max<std::size_t>(max_steps_per_tau, 1) + 1)),
      tables_{kernels::tabulate_kernels(config.left(), grid_, "left", options.quadrature),
              kernels::tabulate_kernels(config.right(), grid_, "right", options.quadrature)},
      u_(greens::solve_retarded(config, grid_, tables_, options.method)) {
    if (max_m_ == 0) throw ParameterError("need at least one step per tau");
}

greens::NoiseCorrelation OpenLgiEvaluator::noise_for(std::size_t m) const {
    if (m == 0 || m > max_m_) {
        std::ostringstream os;
        os << "tau of " << m << " steps is outside the prepared range 1.." << max_m_;
        throw ParameterError(os.str());
    }
    // Only the leading 3m+1 nodes matter; the noise solver reads the prefix of the tables.
    const TimeGrid sub = TimeGrid::with_step(0.0, grid_.dt(), 3 * m + 1);
    greens::RetardedGreen u{sub, std::vector<Mat2>(u_.u.begin(), u_.u.begin() + 3 * m + 1)};
    return greens::solve_noise_correlations(config_, sub, tables_, u, {0, m, 2 * m, 3 * m}, 1);
}

LgiResult OpenLgiEvaluator::evaluate(std::size_t m) const {
    const greens::NoiseCorrelation noise = noise_for(m);
    const greens::RetardedGreen& u = u_;
    const std::array<std::size_t, 4> k{0, m, 2 * m, 3 * m};
    std::array<double, 4> n2{};
    for (int i = 0; i < 4; ++i) n2[i] = greens::occupation_n2(u, noise, k[i]);
    auto c = [&](int j, int i) {
        return q_correlator(two_time_n2_open(u, noise, k[i], k[j]), n2[j], n2[i]);
    };
    return assemble(grid_.dt() * static_cast<double>(m), c(1, 0), c(2, 1), c(2, 0), c(3, 2), c(3, 0),
                    options_.tol);
}

double classical_bound_check(std::span<const double, 8> p) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw ParameterError("probabilities must be nonnegative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ParameterError("probabilities must sum to 1");

    auto q = [](std::size_t idx, int bit) { return (idx >> bit) & 1u ? -1.0 : 1.0; };
    double c21 = 0.0, c32 = 0.0, c31 = 0.0;
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const double q1 = q(idx, 0), q2 = q(idx, 1), q3 = q(idx, 2);
        c21 += q2 * q1 * p[idx];
        c32 += q3 * q2 * p[idx];
        c31 += q3 * q1 * p[idx];
    }
    const double from_pairs = c21 + c32 - c31;
    constexpr std::size_t plus_minus_plus = 0b010;   // Q3 = +, Q2 = -, Q1 = +
    constexpr std::size_t minus_plus_minus = 0b101;  // Q3 = -, Q2 = +, Q1 = -
    const double closed_form = 1.0 - 4.0 * (p[plus_minus_plus] + p[minus_plus_minus]);
    if (std::abs(from_pairs - closed_form) > 1e-12) {
        std::ostringstream os;
        os << "classical C3 mismatch: " << from_pairs << " vs " << closed_form;
        throw NumericError(os.str());
    }
    return closed_form;
}

}  // namespace lgdot::lgi
