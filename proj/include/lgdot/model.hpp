// model.hpp: Parameter types for the double-dot device and its two reservoirs
//
// Units: hbar = 1, energies in multiples of a reference rate Gamma (set to 1),
// times in 1/Gamma.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace lgdot {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using RealMat2 = Eigen::Matrix2d;

/// Invalid input: bad coupling, non-Hermitian matrix, off-grid time, ...
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not deliver its accuracy or physicality contract.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 2x2 single-particle Hamiltonian eps_ij of the double dot.
class DotHamiltonian {
public:
    DotHamiltonian(double e11, double e22, cplx e12);

    /// Throws ParameterError unless `eps` is Hermitian to 1e-12.
    static DotHamiltonian from_matrix(const Mat2& eps);

    const Mat2& matrix() const { return eps_; }
    double e11() const { return eps_(0, 0).real(); }
    double e22() const { return eps_(1, 1).real(); }
    cplx e12() const { return eps_(0, 1); }
    cplx e21() const { return eps_(1, 0); }

private:
    Mat2 eps_;
};

/// Reservoir parameters without the coupling matrix; the topology constructors
/// fill in gamma.
struct ReservoirParams {
    double bandwidth{1.0};
    double mu{0.0};
    double temperature{0.1};
};

/// One electrode: coupling matrix Gamma^alpha_ij, Lorentzian width W, chemical
/// potential mu and temperature k_B T.
class LeadSpec {
public:
    /// Validates: gamma symmetric PSD (eigenvalues >= -1e-12), W > 0, T >= 0.
    LeadSpec(const RealMat2& gamma, double bandwidth, double mu, double temperature);
    LeadSpec(const RealMat2& gamma, const ReservoirParams& p)
        : LeadSpec(gamma, p.bandwidth, p.mu, p.temperature) {}

    const RealMat2& gamma() const { return gamma_; }
    double bandwidth() const { return bandwidth_; }
    double mu() const { return mu_; }
    double temperature() const { return temperature_; }
    ReservoirParams params() const { return {bandwidth_, mu_, temperature_}; }

    bool decoupled() const { return gamma_.cwiseAbs().maxCoeff() == 0.0; }

private:
    RealMat2 gamma_;
    double bandwidth_;
    double mu_;
    double temperature_;
};

enum class Topology { Series, Parallel, Custom };

std::string_view to_string(Topology t);

class DeviceConfig {
public:
    DeviceConfig(DotHamiltonian dots, LeadSpec left, LeadSpec right, Topology topology);

    const DotHamiltonian& dots() const { return dots_; }
    const LeadSpec& left() const { return left_; }
    const LeadSpec& right() const { return right_; }
    const LeadSpec& lead(std::size_t alpha) const { return alpha == 0 ? left_ : right_; }
    Topology topology() const { return topology_; }

    static constexpr std::size_t lead_count = 2;

private:
    DotHamiltonian dots_;
    LeadSpec left_;
    LeadSpec right_;
    Topology topology_;
};

/// Dot 1 on the left lead, dot 2 on the right lead.
DeviceConfig make_series_config(double gamma_left, double gamma_right, const DotHamiltonian& dots,
                                const ReservoirParams& left, const ReservoirParams& right);

/// Both dots on both leads; each lead gets the rank-1 matrix (g/2) [[1,1],[1,1]].
DeviceConfig make_parallel_config(double gamma_left, double gamma_right, const DotHamiltonian& dots,
                                  const ReservoirParams& left, const ReservoirParams& right);

DeviceConfig make_custom_config(const DotHamiltonian& dots, LeadSpec left, LeadSpec right);

/// Measurement times t1..t4 = 0, tau, 2 tau, 3 tau.
class MeasurementSchedule {
public:
    explicit MeasurementSchedule(double tau);
    double tau() const { return tau_; }
    std::array<double, 4> times() const { return {0.0, tau_, 2.0 * tau_, 3.0 * tau_}; }

private:
    double tau_;
};

/// Uniform grid t_k = t0 + k dt, k = 0..n-1.
class TimeGrid {
public:
    TimeGrid(double t0, double t_max, std::size_t n);

    static TimeGrid with_step(double t0, double dt, std::size_t n);

    /// Grid with node spacing tau/m (m = max(1, round(tau/dt_target))) that
    /// contains all four measurement times as nodes.
    static TimeGrid for_schedule(const MeasurementSchedule& s, double dt_target);

    double t0() const { return t0_; }
    double t_max() const { return t0_ + dt_ * static_cast<double>(n_ - 1); }
    double dt() const { return dt_; }
    std::size_t size() const { return n_; }
    double time(std::size_t k) const { return t0_ + dt_ * static_cast<double>(k); }

    /// Index of the node at time t; ParameterError if t is not a node (to 1e-9 dt).
    std::size_t node_of(double t) const;

private:
    double t0_;
    double dt_;
    std::size_t n_;
};

namespace presets {

/// eps11 = eps22 = 1, eps12 = 0.5.
DotHamiltonian figure_dots();

/// W = 1, kT = 0.1 at the given chemical potential.
ReservoirParams figure_reservoir(double mu);

inline constexpr double mu_left = 5.0;
inline constexpr double mu_right = -5.0;

}  // namespace presets

}  // namespace lgdot
