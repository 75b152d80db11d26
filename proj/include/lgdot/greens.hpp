// greens.hpp: Retarded propagator u(t) and noise correlations v, vbar of the
// open double dot
//
// u solves the Volterra integro-differential equation
//     du/dt + i eps u + sum_alpha int_0^t g_alpha(t - s) u(s) ds = 0,   u(0) = 1,
// and the noise correlations are the double time integrals
//     v(t1, t2)    = sum_alpha int_0^t1 int_0^t2 u(t1 - s1) g~_alpha(s1 - s2) u(t2 - s2)^dagger
//     vbar(t1, t2) = same with gbar_alpha.
// Both use u(t, s) = u(t - s, 0), valid because every kernel depends on the
// time difference only.

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "lgdot/kernels.hpp"
#include "lgdot/model.hpp"

namespace lgdot::greens {

enum class SolverMethod {
    /// exp(-i eps dt) applied exactly, memory integral by trapezoid; O(dt^2), O(n^2) work.
    /// Exact when all leads are decoupled.
    ProductTrapezoid,
    /// Lorentzian kernels are exponentials, so each lead's memory integral
    /// obeys a local ODE; the enlarged linear system is stepped with RK4.
    AuxiliaryRk4,
};

struct RetardedGreen {
    TimeGrid grid;
    std::vector<Mat2> u;  ///< u[k] = u(t_k, t0)

    const Mat2& at(std::size_t k) const { return u.at(k); }
};

RetardedGreen solve_retarded(const DeviceConfig& config, const TimeGrid& grid,
                             std::span<const kernels::KernelTable> tables,
                             SolverMethod method = SolverMethod::ProductTrapezoid);

/// v and vbar sampled on a subset of grid nodes (all node pairs of the subset).
struct NoiseCorrelation {
    TimeGrid grid;
    std::vector<std::size_t> nodes;  ///< sorted, unique grid indices
    std::vector<Mat2> v;             ///< row-major over (nodes x nodes)
    std::vector<Mat2> vbar;

    bool has_node(std::size_t k) const;
    std::size_t slot(std::size_t k) const;  ///< ParameterError if k was not sampled
    const Mat2& v_at(std::size_t k1, std::size_t k2) const;
    const Mat2& vbar_at(std::size_t k1, std::size_t k2) const;
};

/// Evaluates v, vbar at all pairs of `nodes` by 2D trapezoidal quadrature.
/// Work is O(sum over nodes of node * max(nodes)); pairs share partial sums.
NoiseCorrelation solve_noise_correlations(const DeviceConfig& config, const TimeGrid& grid,
                                          std::span<const kernels::KernelTable> tables,
                                          const RetardedGreen& u, std::vector<std::size_t> nodes,
                                          unsigned workers = 1);

/// Every grid node (O(n^3)); intended for debugging and small grids.
NoiseCorrelation solve_noise_correlations_full(const DeviceConfig& config, const TimeGrid& grid,
                                               std::span<const kernels::KernelTable> tables,
                                               const RetardedGreen& u, unsigned workers = 1);

/// int_0^t1 int_0^t2 u(t1-s1) K(s1-s2) u(t2-s2)^dagger for an arbitrary kernel
/// table (e.g. g, to check v + vbar against it).
Mat2 noise_integral(const RetardedGreen& u, std::span<const Mat2> kernel_one_sided, std::size_t k1,
                    std::size_t k2);

/// <n2(t)> = |u22(t)|^2 + v22(t, t) for the initial dot state |01>.
/// NumericError if the result leaves [-1e-8, 1 + 1e-8].
double occupation_n2(const RetardedGreen& u, const NoiseCorrelation& noise, std::size_t k);

/// CSV trace: t, then Re/Im of u11 u12 u21 u22, then Re/Im of v(t,t) at the
/// noise nodes (v columns left empty on other rows when `noise` is null or
/// does not hold the node).
void write_trace_csv(std::ostream& os, const RetardedGreen& u, const NoiseCorrelation* noise);

/// Largest singular value of a 2x2 complex matrix.
double spectral_norm(const Mat2& m);

}  // namespace lgdot::greens
