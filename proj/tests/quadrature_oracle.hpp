// quadrature_oracle.hpp: Test-side frequency integrals, independent of the
// library's kernel code: composite Gauss-Legendre panels on a finite window
// plus an integration-by-parts tail for the Lorentzian wings.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace oracle_quad {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// int_a^b f over `panels` equal panels of 20-point Gauss-Legendre.
inline cplx composite(const std::function<cplx(double)>& f, double a, double b, int panels) {
    cplx sum{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + p * h, a + (p + 1) * h);
    return sum;
}

/// int_L^inf W^2/(y^2+W^2) e^{i w y} dy for w != 0 by three integrations by parts.
inline cplx lorentz_tail(double W, double L, double w) {
    const double d = L * L + W * W;
    const double f0 = W * W / d;
    const double f1 = -2.0 * W * W * L / (d * d);
    const double f2 = W * W * (6.0 * L * L - 2.0 * W * W) / (d * d * d);
    const cplx iw{0.0, w};
    return -std::exp(iw * L) * (f0 / iw - f1 / (iw * iw) + f2 / (iw * iw * iw));
}

/// int_L^inf W^2/(y^2+W^2) dy.
inline double lorentz_tail_zero(double W, double L) { return W * (pi / 2 - std::atan(L / W)); }

/// g(s) / gamma = int de/2pi W^2/((e-mu)^2+W^2) e^{-i e s}.
inline cplx full_transform(double W, double mu, double s, double L = 2000.0) {
    auto f = [&](double y) { return cplx(W * W / (y * y + W * W)) * std::exp(cplx(0.0, -y * s)); };
    cplx body = composite(f, -L, L, 8000);
    if (s == 0.0) body += 2.0 * lorentz_tail_zero(W, L);
    else body += lorentz_tail(W, L, s) + lorentz_tail(W, L, -s);
    return std::exp(cplx(0.0, -mu * s)) * body / (2 * pi);
}

/// g~(s) / gamma with Fermi function at temperature kT (> 0) or a step (kT = 0).
inline cplx filled_transform(double W, double mu, double kT, double s, double L = 2000.0) {
    auto occ = [&](double y) {
        if (kT == 0.0) return y < 0.0 ? 1.0 : (y > 0.0 ? 0.0 : 0.5);
        const double x = y / kT;
        return x > 0 ? std::exp(-x) / (1 + std::exp(-x)) : 1.0 / (1 + std::exp(x));
    };
    auto f = [&](double y) { return cplx(W * W / (y * y + W * W) * occ(y)) * std::exp(cplx(0.0, -y * s)); };
    // Split at the Fermi level; above `edge` the occupation is below e^-60.
    const double edge = std::max(60.0 * kT, 1.0);
    cplx body = composite(f, -L, -edge, 4000) + composite(f, -edge, 0.0, 400) + composite(f, 0.0, edge, 400);
    // Only the filled wing y < -L contributes beyond the window.
    if (s == 0.0) body += lorentz_tail_zero(W, L);
    else body += lorentz_tail(W, L, s);
    return std::exp(cplx(0.0, -mu * s)) * body / (2 * pi);
}

}  // namespace oracle_quad
