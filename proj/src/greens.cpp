#include "lgdot/greens.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lgdot/closed.hpp"
#include "lgdot/parallel.hpp"
#include "lgdot/simd/convolution.hpp"

namespace lgdot::greens {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double instability_limit = 1.0 + 1e-3;

void check_tables(const TimeGrid& grid, std::span<const kernels::KernelTable> tables) {
    if (tables.size() != DeviceConfig::lead_count)
        throw ParameterError("expected one kernel table per lead");
    for (const auto& t : tables) {
        if (t.size() < grid.size())
            throw ParameterError("kernel table '" + t.label + "' is shorter than the time grid");
        if (std::abs(t.dt - grid.dt()) > 1e-12 * grid.dt())
            throw ParameterError("kernel table '" + t.label + "' has a different time step");
    }
}

[[noreturn]] void unstable(std::size_t k, double t, double norm) {
    std::ostringstream os;
    os << "retarded propagator grew to norm " << norm << " at t=" << t << " (step " << k
       << "); reduce the time step";
    throw NumericError(os.str());
}

std::vector<Mat2> total_memory_kernel(std::span<const kernels::KernelTable> tables, std::size_t n) {
    std::vector<Mat2> k(n, Mat2::Zero());
    for (const auto& t : tables)
        for (std::size_t i = 0; i < n; ++i) k[i] += t.g[i];
    return k;
}

RetardedGreen solve_product_trapezoid(const DeviceConfig& config, const TimeGrid& grid,
                                      std::span<const kernels::KernelTable> tables) {
    const std::size_t n = grid.size();
    const double dt = grid.dt();
    const std::vector<Mat2> K = total_memory_kernel(tables, n);

    // Variation of constants over one step with E = exp(-i eps dt) exact and
    // the memory term M(t) = int_0^t K(t-s) u(s) ds integrated by trapezoid:
    //   u_{k+1} = E (u_k - dt/2 M_k) - dt/2 M_{k+1},
    //   M_{k+1} = H_{k+1} + dt/2 K(0) u_{k+1},
    // where H_{k+1} is the trapezoidal memory sum without its u_{k+1} term.
    const Mat2 E = closed::closed_propagator(config.dots(), dt);
    const Mat2 lhs_inv = (Mat2::Identity() + 0.25 * dt * dt * K[0]).inverse();

    RetardedGreen out{grid, std::vector<Mat2>(n)};
    auto& u = out.u;
    u[0] = Mat2::Identity();
    Mat2 M = Mat2::Zero();
    const std::span<const Mat2> Ks(K);
    const std::span<const Mat2> us(u);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        Mat2 H = simd::convolution_sum(Ks.subspan(1, k + 1), us.subspan(0, k + 1));
        H = dt * (H - 0.5 * K[k + 1] * u[0]);
        u[k + 1] = lhs_inv * (E * (u[k] - 0.5 * dt * M) - 0.5 * dt * H);
        M = H + 0.5 * dt * K[0] * u[k + 1];
        const double norm = spectral_norm(u[k + 1]);
        if (!(norm <= instability_limit)) unstable(k + 1, grid.time(k + 1), norm);
    }
    return out;
}

RetardedGreen solve_auxiliary_rk4(const DeviceConfig& config, const TimeGrid& grid) {
    // State (u, Z_L, Z_R) with Z_alpha(t) = int_0^t g_alpha(t-s) u(s) ds:
    //   u' = -i eps u - sum Z_alpha,   Z_alpha' = gamma_alpha W_alpha / 2 u - (W_alpha + i mu_alpha) Z_alpha.
    constexpr int L = static_cast<int>(DeviceConfig::lead_count);
    constexpr int dim = 2 * (L + 1);
    using Gen = Eigen::Matrix<cplx, dim, dim>;
    using State = Eigen::Matrix<cplx, dim, 2>;

    Gen G = Gen::Zero();
    G.block<2, 2>(0, 0) = -I * config.dots().matrix();
    for (int a = 0; a < L; ++a) {
        const LeadSpec& lead = config.lead(static_cast<std::size_t>(a));
        const int o = 2 * (a + 1);
        G.block<2, 2>(0, o) = -Mat2::Identity();
        G.block<2, 2>(o, 0) = lead.gamma().cast<cplx>() * (0.5 * lead.bandwidth());
        G.block<2, 2>(o, o) = -cplx(lead.bandwidth(), lead.mu()) * Mat2::Identity();
    }
    // Classical RK4 on a linear autonomous system is multiplication by the
    // degree-4 Taylor polynomial of exp(h G).
    const Gen hG = grid.dt() * G;
    Gen step = Gen::Identity();
    Gen term = Gen::Identity();
    for (int p = 1; p <= 4; ++p) {
        term = term * hG / static_cast<double>(p);
        step += term;
    }

    const std::size_t n = grid.size();
    RetardedGreen out{grid, std::vector<Mat2>(n)};
    State y = State::Zero();
    y.block<2, 2>(0, 0) = Mat2::Identity();
    out.u[0] = Mat2::Identity();
    for (std::size_t k = 1; k < n; ++k) {
        y = step * y;
        out.u[k] = y.block<2, 2>(0, 0);
        const double norm = spectral_norm(out.u[k]);
        if (!(norm <= instability_limit)) unstable(k, grid.time(k), norm);
    }
    return out;
}

// dt^2 sum_a sum_b w_a w_b u[k1-a] K(a-b) u[k2-b]^dagger, split as
//   Y(b) = dt sum_a w_a u[k1-a] K(a-b),   result = dt sum_b w_b Y(b) ud[k2-b].
// `kernel` is two-sided with K(j) at kernel[offset + j].
std::vector<Mat2> partial_sums(std::span<const Mat2> u, std::span<const Mat2> kernel, std::size_t offset,
                               std::size_t k1, std::size_t b_max, double dt) {
    std::vector<Mat2> Y(b_max + 1, Mat2::Zero());
    if (k1 == 0) return Y;
    const auto us = u.subspan(0, k1 + 1);
    for (std::size_t b = 0; b <= b_max; ++b) {
        const std::size_t start = offset - b;  // K(0 - b)
        Mat2 s = simd::convolution_sum(us, kernel.subspan(start, k1 + 1));
        s -= 0.5 * (u[k1] * kernel[start] + u[0] * kernel[start + k1]);
        Y[b] = dt * s;
    }
    return Y;
}

Mat2 close_pair(std::span<const Mat2> Y, std::span<const Mat2> ud, std::size_t k2, double dt) {
    if (k2 == 0) return Mat2::Zero();
    Mat2 s = simd::convolution_sum(Y.subspan(0, k2 + 1), ud.subspan(0, k2 + 1));
    s -= 0.5 * (Y[0] * ud[k2] + Y[k2] * ud[0]);
    return dt * s;
}

std::vector<Mat2> adjoints(std::span<const Mat2> u) {
    std::vector<Mat2> out(u.size());
    std::transform(u.begin(), u.end(), out.begin(), [](const Mat2& m) { return Mat2(m.adjoint()); });
    return out;
}

}  // namespace

double spectral_norm(const Mat2& m) {
    const Mat2 h = m.adjoint() * m;
    const double tr = h(0, 0).real() + h(1, 1).real();
    const double det = (h(0, 0).real() * h(1, 1).real()) - std::norm(h(0, 1));
    const double disc = std::max(0.0, tr * tr - 4.0 * det);
    return std::sqrt(std::max(0.0, 0.5 * (tr + std::sqrt(disc))));
}

RetardedGreen solve_retarded(const DeviceConfig& config, const TimeGrid& grid,
                             std::span<const kernels::KernelTable> tables, SolverMethod method) {
    if (method == SolverMethod::AuxiliaryRk4) return solve_auxiliary_rk4(config, grid);
    check_tables(grid, tables);
    return solve_product_trapezoid(config, grid, tables);
}

bool NoiseCorrelation::has_node(std::size_t k) const {
    return std::binary_search(nodes.begin(), nodes.end(), k);
}

std::size_t NoiseCorrelation::slot(std::size_t k) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), k);
    if (it == nodes.end() || *it != k) {
        std::ostringstream os;
        os << "noise correlation was not evaluated at grid node " << k;
        throw ParameterError(os.str());
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

const Mat2& NoiseCorrelation::v_at(std::size_t k1, std::size_t k2) const {
    return v[slot(k1) * nodes.size() + slot(k2)];
}

const Mat2& NoiseCorrelation::vbar_at(std::size_t k1, std::size_t k2) const {
    return vbar[slot(k1) * nodes.size() + slot(k2)];
}

NoiseCorrelation solve_noise_correlations(const DeviceConfig& config, const TimeGrid& grid,
                                          std::span<const kernels::KernelTable> tables,
                                          const RetardedGreen& u, std::vector<std::size_t> nodes,
                                          unsigned workers) {
    (void)config;
    check_tables(grid, tables);
    if (u.u.size() != grid.size() || u.grid.dt() != grid.dt())
        throw ParameterError("retarded propagator was solved on a different grid");
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.empty()) throw ParameterError("no noise-correlation nodes requested");
    if (nodes.back() >= grid.size()) throw ParameterError("noise-correlation node outside the grid");

    const std::size_t n = grid.size();
    const kernels::KernelTable total = kernels::sum_tables(tables);
    const std::vector<Mat2> gt = kernels::two_sided(std::span(total.gtilde).first(n));
    const std::vector<Mat2> gb = kernels::two_sided(std::span(total.gbar).first(n));
    const std::vector<Mat2> ud = adjoints(u.u);
    const std::size_t offset = n - 1;
    const std::size_t b_max = nodes.back();
    const double dt = grid.dt();

    const std::size_t m = nodes.size();
    NoiseCorrelation out{grid, nodes, std::vector<Mat2>(m * m), std::vector<Mat2>(m * m)};
    parallel_for(m, workers, [&](std::size_t i) {
        const std::size_t k1 = nodes[i];
        const auto Yt = partial_sums(u.u, gt, offset, k1, b_max, dt);
        const auto Yb = partial_sums(u.u, gb, offset, k1, b_max, dt);
        for (std::size_t j = 0; j < m; ++j) {
            out.v[i * m + j] = close_pair(Yt, ud, nodes[j], dt);
            out.vbar[i * m + j] = close_pair(Yb, ud, nodes[j], dt);
        }
    });
    return out;
}

NoiseCorrelation solve_noise_correlations_full(const DeviceConfig& config, const TimeGrid& grid,
                                               std::span<const kernels::KernelTable> tables,
                                               const RetardedGreen& u, unsigned workers) {
    std::vector<std::size_t> all(grid.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    return solve_noise_correlations(config, grid, tables, u, std::move(all), workers);
}

Mat2 noise_integral(const RetardedGreen& u, std::span<const Mat2> kernel_one_sided, std::size_t k1,
                    std::size_t k2) {
    const std::size_t n = u.u.size();
    if (k1 >= n || k2 >= n || kernel_one_sided.size() < n)
        throw ParameterError("noise_integral: index or kernel length out of range");
    const auto K = kernels::two_sided(kernel_one_sided.first(n));
    const auto ud = adjoints(u.u);
    const auto Y = partial_sums(u.u, K, n - 1, k1, k2, u.grid.dt());
    return close_pair(Y, ud, k2, u.grid.dt());
}

double occupation_n2(const RetardedGreen& u, const NoiseCorrelation& noise, std::size_t k) {
    const double n2 = std::norm(u.at(k)(1, 1)) + noise.v_at(k, k)(1, 1).real();
    if (n2 < -1e-8 || n2 > 1.0 + 1e-8) {
        std::ostringstream os;
        os << "occupation <n2> = " << n2 << " at t=" << u.grid.time(k) << " is unphysical";
        throw NumericError(os.str());
    }
    return n2;
}

void write_trace_csv(std::ostream& os, const RetardedGreen& u, const NoiseCorrelation* noise) {
    static constexpr const char* names[] = {"11", "12", "21", "22"};
    os << "t";
    for (const char* n : names) os << ",re_u" << n << ",im_u" << n;
    for (const char* n : names) os << ",re_v" << n << ",im_v" << n;
    os << '\n' << std::setprecision(12);
    for (std::size_t k = 0; k < u.u.size(); ++k) {
        os << u.grid.time(k);
        for (int e = 0; e < 4; ++e) {
            const cplx x = u.u[k](e / 2, e % 2);
            os << ',' << x.real() << ',' << x.imag();
        }
        const bool has_v = noise && noise->has_node(k);
        for (int e = 0; e < 4; ++e) {
            if (!has_v) {
                os << ",,";
                continue;
            }
            const cplx x = noise->v_at(k, k)(e / 2, e % 2);
            os << ',' << x.real() << ',' << x.imag();
        }
        os << '\n';
    }
}

}  // namespace lgdot::greens
