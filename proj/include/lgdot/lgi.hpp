// lgi.hpp: Two-time Q-correlators and the Leggett-Garg combinations C3, C4
//
// Q = 2 n2 - 1 is measured at t1..t4 = 0, tau, 2 tau, 3 tau and
//   C3 = C21 + C32 - C31 <= 1,   C4 = C21 + C32 + C43 - C41 <= 2
// for any macrorealist model. C_ji is the symmetrised correlator
// <{Q(tj), Q(ti)}>/2 = Re <Q(tj) Q(ti)>, because the anti-Hermitian half of
// Q(tj)Q(ti) has a purely imaginary expectation value.

#pragma once

#include <array>
#include <memory>
#include <span>

#include "lgdot/greens.hpp"
#include "lgdot/kernels.hpp"
#include "lgdot/model.hpp"

namespace lgdot::lgi {

struct LgiResult {
    double tau{0.0};
    double C21{0.0}, C32{0.0}, C31{0.0}, C43{0.0}, C41{0.0};
    double C3{0.0}, C4{0.0};
    bool violates_C3{false};  ///< C3 > 1 + tol
    bool violates_C4{false};  ///< C4 > 2 + tol
    double tol{1e-9};
};

/// Fills C3, C4 and the flags from the five pairwise correlators.
LgiResult assemble(double tau, double c21, double c32, double c31, double c43, double c41,
                   double tol = 1e-9);

/// Re(4 nn) - 2 n2(t2) - 2 n2(t1) + 1.
double q_correlator(cplx nn, double n2_t2, double n2_t1);

/// <n2(t2) n2(t1)> for the dot state |01> and thermal leads, from u, v and vbar
/// at grid nodes k1 <= k2 (eight terms).
cplx two_time_n2_open(const greens::RetardedGreen& u, const greens::NoiseCorrelation& noise,
                      std::size_t k1, std::size_t k2);

/// Same at times t1 <= t2, which must be grid nodes (ParameterError otherwise).
cplx two_time_n2_open(const greens::RetardedGreen& u, const greens::NoiseCorrelation& noise,
                      double t1, double t2);

enum class Pipeline { Closed, Open };

std::string_view to_string(Pipeline p);

struct LgiOptions {
    double dt{0.01};  ///< open pipeline target step; tau is resolved by round(tau / dt) steps
    greens::SolverMethod method{greens::SolverMethod::ProductTrapezoid};
    kernels::QuadratureOptions quadrature{};
    unsigned workers{1};
    double tol{1e-9};
};

/// C3, C4 at one tau. Closed: analytic propagator, superposition initial state,
/// leads ignored. Open: grid of spacing tau/m, m = max(1, round(tau/dt)).
LgiResult compute_lgi(const DeviceConfig& config, const MeasurementSchedule& schedule, Pipeline pipeline,
                      const LgiOptions& options = {});

/// Open pipeline sharing one grid, kernel tables and u across many tau values.
/// tau = m dt for integer m; the grid covers 3 m_max steps.
class OpenLgiEvaluator {
public:
    OpenLgiEvaluator(const DeviceConfig& config, double dt, std::size_t max_steps_per_tau,
                     const LgiOptions& options = {});

    double dt() const { return grid_.dt(); }
    std::size_t max_steps() const { return max_m_; }
    const TimeGrid& grid() const { return grid_; }
    const greens::RetardedGreen& retarded() const { return u_; }
    std::span<const kernels::KernelTable> tables() const { return tables_; }

    /// Result at tau = m dt, 1 <= m <= max_steps(). Thread-safe.
    LgiResult evaluate(std::size_t m) const;

    /// Noise correlations at the four measurement nodes of tau = m dt.
    greens::NoiseCorrelation noise_for(std::size_t m) const;

private:
    DeviceConfig config_;
    LgiOptions options_;
    std::size_t max_m_;
    TimeGrid grid_;
    std::array<kernels::KernelTable, 2> tables_;
    greens::RetardedGreen u_;
};

/// Joint distribution p over (Q3, Q2, Q1) in {+1,-1}^3, index
/// (Q3 == -1) << 2 | (Q2 == -1) << 1 | (Q1 == -1). Returns C3 from
/// 1 - 4 [P(+,-,+) + P(-,+,-)] after checking it equals C21 + C32 - C31 built
/// from the pairwise sums to 1e-12. ParameterError if p is negative or does
/// not sum to 1 within 1e-12.
double classical_bound_check(std::span<const double, 8> p);

}  // namespace lgdot::lgi
