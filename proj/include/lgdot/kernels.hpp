// kernels.hpp: Lorentzian lead memory kernels g, g~, gbar and their tabulation
//
//   g(s)    = int de/2pi J(e) e^{-i e s}
//   g~(s)   = int de/2pi J(e) f(e) e^{-i e s}
//   gbar(s) = int de/2pi J(e) (1 - f(e)) e^{-i e s}
//   J(e)    = gamma W^2 / ((e - mu)^2 + W^2)
//
// All three depend on the time difference s only and obey k(-s) = k(s)^dagger.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "lgdot/model.hpp"

namespace lgdot::kernels {

/// Fermi-Dirac occupation; a step with value 1/2 at e = mu when T = 0.
double fermi(double eps, const LeadSpec& lead);

/// J(e) as a 2x2 real matrix.
RealMat2 spectral_density(const LeadSpec& lead, double eps);

/// Closed form gamma (W/2) e^{-(W + i mu) s} for s >= 0, adjoint for s < 0.
Mat2 kernel_g(const LeadSpec& lead, double dtau);

struct QuadratureOptions {
    double abs_tol{1e-9};           ///< per matrix element
    double window_factor{50.0};     ///< C = window_factor * max(W, kT, 1)
    unsigned max_depth{30};
};

Mat2 kernel_gtilde(const LeadSpec& lead, double dtau, const QuadratureOptions& opts = {});
Mat2 kernel_gbar(const LeadSpec& lead, double dtau, const QuadratureOptions& opts = {});

/// Tables of g, g~, gbar at s = k dt, k = 0..n-1.
struct KernelTable {
    std::string label;
    double dt{0.0};
    std::vector<Mat2> g;
    std::vector<Mat2> gtilde;
    std::vector<Mat2> gbar;

    std::size_t size() const { return g.size(); }
};

KernelTable tabulate_kernels(const LeadSpec& lead, const TimeGrid& grid, std::string label = {},
                             const QuadratureOptions& opts = {});

/// Element-wise sum of tables over leads (same dt and length required).
KernelTable sum_tables(std::span<const KernelTable> tables, std::string label = "total");

/// Extends a one-sided table k[0..n-1] to k[-(n-1)..n-1] using k(-s) = k(s)^dagger.
/// Entry j of the result holds k((j - (n-1)) dt).
std::vector<Mat2> two_sided(std::span<const Mat2> one_sided);

namespace detail {

/// Scalar parts with gamma factored out (gamma = 1).
cplx lorentz_transform(double width, double mu, double s);            ///< g
cplx lorentz_lower_half_transform(double width, double mu, double s);  ///< J restricted to e < mu
/// int de/2pi L(e) (f(e) - theta(mu - e)) e^{-i e s}; zero when T = 0.
cplx fermi_correction_transform(const LeadSpec& lead, double s, const QuadratureOptions& opts,
                                double* achieved_error = nullptr);

}  // namespace detail

}  // namespace lgdot::kernels
