#include "lgdot/model.hpp"

#include <cmath>
#include <sstream>

namespace lgdot {

namespace {

constexpr double hermiticity_tol = 1e-12;
constexpr double psd_tol = 1e-12;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ParameterError(std::string(what) + " must be finite");
}

}  // namespace

DotHamiltonian::DotHamiltonian(double e11, double e22, cplx e12) {
    require_finite(e11, "e11");
    require_finite(e22, "e22");
    require_finite(e12.real(), "Re e12");
    require_finite(e12.imag(), "Im e12");
    eps_ << cplx(e11, 0.0), e12, std::conj(e12), cplx(e22, 0.0);
}

DotHamiltonian DotHamiltonian::from_matrix(const Mat2& eps) {
    if ((eps - eps.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
        throw ParameterError("dot Hamiltonian is not Hermitian");
    return DotHamiltonian(eps(0, 0).real(), eps(1, 1).real(), eps(0, 1));
}

LeadSpec::LeadSpec(const RealMat2& gamma, double bandwidth, double mu, double temperature)
    : gamma_(gamma), bandwidth_(bandwidth), mu_(mu), temperature_(temperature) {
    if (!gamma.allFinite()) throw ParameterError("lead gamma must be finite");
    if (std::abs(gamma(0, 1) - gamma(1, 0)) > psd_tol)
        throw ParameterError("lead gamma must be symmetric");
    Eigen::SelfAdjointEigenSolver<RealMat2> es(gamma);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw ParameterError("lead gamma must be positive semidefinite");
    require_finite(bandwidth, "bandwidth");
    require_finite(mu, "mu");
    require_finite(temperature, "temperature");
    if (!(bandwidth > 0.0)) throw ParameterError("bandwidth must be positive");
    if (temperature < 0.0) throw ParameterError("temperature must be nonnegative");
}

std::string_view to_string(Topology t) {
    switch (t) {
        case Topology::Series: return "series";
        case Topology::Parallel: return "parallel";
        case Topology::Custom: return "custom";
    }
    return "custom";
}

DeviceConfig::DeviceConfig(DotHamiltonian dots, LeadSpec left, LeadSpec right, Topology topology)
    : dots_(std::move(dots)), left_(std::move(left)), right_(std::move(right)), topology_(topology) {
    auto check = [](bool ok, const char* msg) {
        if (!ok) throw ParameterError(msg);
    };
    const RealMat2& gl = left_.gamma();
    const RealMat2& gr = right_.gamma();
    if (topology_ == Topology::Series) {
        check(gl(1, 1) == 0.0 && gl(0, 1) == 0.0 && gl(1, 0) == 0.0,
              "series topology: left lead may only couple to dot 1");
        check(gr(0, 0) == 0.0 && gr(0, 1) == 0.0 && gr(1, 0) == 0.0,
              "series topology: right lead may only couple to dot 2");
    } else if (topology_ == Topology::Parallel) {
        for (const RealMat2* g : {&gl, &gr}) {
            check((*g)(0, 0) == (*g)(1, 1), "parallel topology: gamma11 must equal gamma22");
            check((*g)(0, 1) == std::sqrt((*g)(0, 0) * (*g)(1, 1)),
                  "parallel topology: gamma12 must equal sqrt(gamma11 gamma22)");
        }
    }
}

namespace {

void require_coupling(double g, const char* which) {
    require_finite(g, which);
    if (g < 0.0) {
        std::ostringstream os;
        os << which << " coupling must be nonnegative, got " << g;
        throw ParameterError(os.str());
    }
}

}  // namespace

DeviceConfig make_series_config(double gamma_left, double gamma_right, const DotHamiltonian& dots,
                                const ReservoirParams& left, const ReservoirParams& right) {
    require_coupling(gamma_left, "left");
    require_coupling(gamma_right, "right");
    RealMat2 gl = RealMat2::Zero();
    RealMat2 gr = RealMat2::Zero();
    gl(0, 0) = gamma_left;
    gr(1, 1) = gamma_right;
    return DeviceConfig(dots, LeadSpec(gl, left), LeadSpec(gr, right), Topology::Series);
}

DeviceConfig make_parallel_config(double gamma_left, double gamma_right, const DotHamiltonian& dots,
                                  const ReservoirParams& left, const ReservoirParams& right) {
    require_coupling(gamma_left, "left");
    require_coupling(gamma_right, "right");
    auto rank_one = [](double g) {
        const double d = g / 2.0;
        RealMat2 m;
        m << d, std::sqrt(d * d), std::sqrt(d * d), d;
        return m;
    };
    return DeviceConfig(dots, LeadSpec(rank_one(gamma_left), left),
                        LeadSpec(rank_one(gamma_right), right), Topology::Parallel);
}

DeviceConfig make_custom_config(const DotHamiltonian& dots, LeadSpec left, LeadSpec right) {
    return DeviceConfig(dots, std::move(left), std::move(right), Topology::Custom);
}

MeasurementSchedule::MeasurementSchedule(double tau) : tau_(tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be positive and finite");
}

TimeGrid::TimeGrid(double t0, double t_max, std::size_t n) : t0_(t0), dt_(0.0), n_(n) {
    if (n < 2) throw ParameterError("time grid needs at least two nodes");
    require_finite(t0, "t0");
    require_finite(t_max, "t_max");
    dt_ = (t_max - t0) / static_cast<double>(n - 1);
    if (!(dt_ > 0.0)) throw ParameterError("time grid needs t_max > t0");
}

TimeGrid TimeGrid::with_step(double t0, double dt, std::size_t n) {
    if (!(dt > 0.0)) throw ParameterError("time step must be positive");
    if (n < 2) throw ParameterError("time grid needs at least two nodes");
    return TimeGrid(t0, t0 + dt * static_cast<double>(n - 1), n);
}

TimeGrid TimeGrid::for_schedule(const MeasurementSchedule& s, double dt_target) {
    if (!(dt_target > 0.0)) throw ParameterError("time step must be positive");
    const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(s.tau() / dt_target)));
    return TimeGrid(0.0, 3.0 * s.tau(), 3 * m + 1);
}

std::size_t TimeGrid::node_of(double t) const {
    const double x = (t - t0_) / dt_;
    const double k = std::round(x);
    if (k < 0.0 || k > static_cast<double>(n_ - 1) || std::abs(x - k) > 1e-9) {
        std::ostringstream os;
        os << "time " << t << " is not a node of the grid (t0=" << t0_ << ", dt=" << dt_
           << ", n=" << n_ << ")";
        throw ParameterError(os.str());
    }
    return static_cast<std::size_t>(k);
}

namespace presets {

DotHamiltonian figure_dots() { return DotHamiltonian(1.0, 1.0, 0.5); }

ReservoirParams figure_reservoir(double mu) { return ReservoirParams{1.0, mu, 0.1}; }

}  // namespace presets

}  // namespace lgdot
