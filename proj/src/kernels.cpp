#include "lgdot/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lgdot::kernels {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double lorentzian(double width, double mu, double eps) {
    const double y = eps - mu;
    return width * width / (y * y + width * width);
}

// f(e) - theta(mu - e), written so that neither branch overflows.
double fermi_minus_step(double eps, const LeadSpec& lead) {
    const double y = eps - lead.mu();
    if (lead.temperature() == 0.0 || y == 0.0) return 0.0;
    const double x = y / lead.temperature();
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    const double e = std::exp(x);
    return -e / (1.0 + e);
}

// e^{-x} Ei(x) - e^{x} Ei(-x) for x >= 0; the sine transform of 1/(y^2+1).
double sine_transform_kernel(double x) {
    if (x == 0.0) return 0.0;
    if (x > 500.0) {
        const double r = 1.0 / (x * x);
        return 2.0 / x * (1.0 + r * (2.0 + r * (24.0 + r * 720.0)));
    }
    return std::exp(-x) * std::expint(x) - std::exp(x) * std::expint(-x);
}

Mat2 scaled(const RealMat2& gamma, cplx s) { return gamma.cast<cplx>() * s; }

}  // namespace

double fermi(double eps, const LeadSpec& lead) {
    const double y = eps - lead.mu();
    if (lead.temperature() == 0.0) {
        if (y < 0.0) return 1.0;
        if (y > 0.0) return 0.0;
        return 0.5;
    }
    const double x = y / lead.temperature();
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

RealMat2 spectral_density(const LeadSpec& lead, double eps) {
    return lead.gamma() * lorentzian(lead.bandwidth(), lead.mu(), eps);
}

namespace detail {

cplx lorentz_transform(double width, double mu, double s) {
    if (s < 0.0) return std::conj(lorentz_transform(width, mu, -s));
    return 0.5 * width * std::exp(-(width + I * mu) * s);
}

cplx lorentz_lower_half_transform(double width, double mu, double s) {
    if (s < 0.0) return std::conj(lorentz_lower_half_transform(width, mu, -s));
    const double x = width * s;
    const cplx body = 0.25 * width * std::exp(-x) + I * (width / (4.0 * pi)) * sine_transform_kernel(x);
    return std::exp(-I * mu * s) * body;
}

cplx fermi_correction_transform(const LeadSpec& lead, double s, const QuadratureOptions& opts,
                                double* achieved_error) {
    if (achieved_error) *achieved_error = 0.0;
    if (lead.temperature() == 0.0) return 0.0;
    if (s < 0.0) return std::conj(fermi_correction_transform(lead, -s, opts, achieved_error));

    const double W = lead.bandwidth();
    const double mu = lead.mu();
    const double cutoff = opts.window_factor * std::max({W, lead.temperature(), 1.0});
    auto integrand = [&](double eps) -> cplx {
        const double weight = lorentzian(W, mu, eps) * fermi_minus_step(eps, lead) / (2.0 * pi);
        return weight * std::exp(-I * (eps * s));
    };

    using boost::math::quadrature::gauss_kronrod;
    const double gmax = std::max(lead.gamma().cwiseAbs().maxCoeff(), 1e-300);
    const double target = opts.abs_tol / std::max(gmax, 1.0);
    double err_lo = 0.0, err_hi = 0.0;
    const cplx lo = gauss_kronrod<double, 31>::integrate(integrand, mu - cutoff, mu, opts.max_depth,
                                                         1e-12, &err_lo);
    const cplx hi = gauss_kronrod<double, 31>::integrate(integrand, mu, mu + cutoff, opts.max_depth,
                                                         1e-12, &err_hi);
    const double err = err_lo + err_hi;
    if (achieved_error) *achieved_error = err;
    if (!(err <= target)) {
        std::ostringstream os;
        os << "kernel quadrature did not converge at s=" << s << ": achieved " << err
           << ", requested " << target;
        throw NumericError(os.str());
    }
    return lo + hi;
}

}  // namespace detail

Mat2 kernel_g(const LeadSpec& lead, double dtau) {
    return scaled(lead.gamma(), detail::lorentz_transform(lead.bandwidth(), lead.mu(), dtau));
}

Mat2 kernel_gtilde(const LeadSpec& lead, double dtau, const QuadratureOptions& opts) {
    if (lead.decoupled()) return Mat2::Zero();
    const cplx half = detail::lorentz_lower_half_transform(lead.bandwidth(), lead.mu(), dtau);
    return scaled(lead.gamma(), half + detail::fermi_correction_transform(lead, dtau, opts));
}

Mat2 kernel_gbar(const LeadSpec& lead, double dtau, const QuadratureOptions& opts) {
    if (lead.decoupled()) return Mat2::Zero();
    const cplx full = detail::lorentz_transform(lead.bandwidth(), lead.mu(), dtau);
    const cplx half = detail::lorentz_lower_half_transform(lead.bandwidth(), lead.mu(), dtau);
    return scaled(lead.gamma(), full - half - detail::fermi_correction_transform(lead, dtau, opts));
}

KernelTable tabulate_kernels(const LeadSpec& lead, const TimeGrid& grid, std::string label,
                             const QuadratureOptions& opts) {
    KernelTable table;
    table.label = std::move(label);
    table.dt = grid.dt();
    const std::size_t n = grid.size();
    table.g.assign(n, Mat2::Zero());
    table.gtilde.assign(n, Mat2::Zero());
    table.gbar.assign(n, Mat2::Zero());
    if (lead.decoupled()) return table;

    const double W = lead.bandwidth();
    const double mu = lead.mu();
    for (std::size_t k = 0; k < n; ++k) {
        const double s = grid.dt() * static_cast<double>(k);
        const cplx full = detail::lorentz_transform(W, mu, s);
        const cplx filled = detail::lorentz_lower_half_transform(W, mu, s)
                          + detail::fermi_correction_transform(lead, s, opts);
        table.g[k] = scaled(lead.gamma(), full);
        table.gtilde[k] = scaled(lead.gamma(), filled);
        table.gbar[k] = scaled(lead.gamma(), full - filled);
    }
    return table;
}

KernelTable sum_tables(std::span<const KernelTable> tables, std::string label) {
    if (tables.empty()) throw ParameterError("sum_tables needs at least one table");
    KernelTable total = tables.front();
    total.label = std::move(label);
    for (const KernelTable& t : tables.subspan(1)) {
        if (t.size() != total.size() || t.dt != total.dt)
            throw ParameterError("kernel tables differ in length or time step");
        for (std::size_t k = 0; k < t.size(); ++k) {
            total.g[k] += t.g[k];
            total.gtilde[k] += t.gtilde[k];
            total.gbar[k] += t.gbar[k];
        }
    }
    return total;
}

std::vector<Mat2> two_sided(std::span<const Mat2> one_sided) {
    const std::size_t n = one_sided.size();
    if (n == 0) return {};
    std::vector<Mat2> out(2 * n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        out[n - 1 - k] = one_sided[k].adjoint();
        out[n - 1 + k] = one_sided[k];
    }
    return out;
}

}  // namespace lgdot::kernels
