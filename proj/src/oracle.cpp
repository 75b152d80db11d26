#include "lgdot/oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "lgdot/kernels.hpp"

namespace lgdot::oracle {

namespace {

constexpr cplx I{0.0, 1.0};

// exp(-i h t) from the eigendecomposition h = V diag(values) V^dagger.
MatX propagate(const MatX& vectors, const Eigen::VectorXd& values, double t) {
    VecX phase(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) phase[k] = std::exp(-I * (values[k] * t));
    return vectors * phase.asDiagonal() * vectors.adjoint();
}

}  // namespace

double FiniteBath::validity_time() const {
    if (span <= 0.0) return 0.0;
    return 2.0 * std::numbers::pi * static_cast<double>(modes_per_lead) / (2.0 * span);
}

FiniteBath build_bath(const DeviceConfig& config, std::size_t K, double span) {
    if (K < 1) throw ParameterError("bath needs at least one mode per lead");
    if (!(span > 0.0)) throw ParameterError("bath span must be positive");
    FiniteBath bath;
    bath.modes_per_lead = K;
    bath.span = span;
    const double width = 2.0 * span / static_cast<double>(K);
    for (std::size_t a = 0; a < DeviceConfig::lead_count; ++a) {
        const LeadSpec& lead = config.lead(a);
        if (lead.decoupled()) continue;
        const Eigen::SelfAdjointEigenSolver<RealMat2> eig(lead.gamma());
        const double W = lead.bandwidth();
        const double mu = lead.mu();
        for (int e = 0; e < 2; ++e) {
            const double lambda = eig.eigenvalues()[e];
            if (lambda <= 1e-14) continue;
            const Eigen::Vector2cd dir = eig.eigenvectors().col(e).cast<cplx>();
            for (std::size_t k = 0; k < K; ++k) {
                const double lo = mu - span + width * static_cast<double>(k);
                const double hi = lo + width;
                const double eps = 0.5 * (lo + hi);
                const double weight = lambda * W
                                    * (std::atan((hi - mu) / W) - std::atan((lo - mu) / W))
                                    / (2.0 * std::numbers::pi);
                bath.energy.push_back(eps);
                bath.lead.push_back(a);
                bath.coupling.push_back(dir * std::sqrt(weight));
                bath.occupation.push_back(kernels::fermi(eps, lead));
            }
        }
    }
    return bath;
}

SingleParticlePropagator::SingleParticlePropagator(const DeviceConfig& config, const FiniteBath& bath) {
    const Eigen::Index D = 2 + static_cast<Eigen::Index>(bath.size());
    h_ = MatX::Zero(D, D);
    h_.topLeftCorner<2, 2>() = config.dots().matrix();
    for (std::size_t m = 0; m < bath.size(); ++m) {
        const Eigen::Index j = 2 + static_cast<Eigen::Index>(m);
        h_(j, j) = bath.energy[m];
        for (int i = 0; i < 2; ++i) {
            h_(i, j) = bath.coupling[m][i];
            h_(j, i) = std::conj(bath.coupling[m][i]);
        }
    }
    const Eigen::SelfAdjointEigenSolver<MatX> eig(h_);
    if (eig.info() != Eigen::Success) throw NumericError("oracle eigendecomposition failed");
    vectors_ = eig.eigenvectors();
    values_ = eig.eigenvalues();
}

MatX SingleParticlePropagator::operator()(double t) const { return propagate(vectors_, values_, t); }

Eigen::Matrix<cplx, 2, Eigen::Dynamic> SingleParticlePropagator::dot_rows(double t) const {
    VecX phase(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) phase[k] = std::exp(-I * (values_[k] * t));
    return vectors_.topRows<2>() * phase.asDiagonal() * vectors_.adjoint();
}

Eigen::VectorXd initial_occupations(const FiniteBath& bath) {
    Eigen::VectorXd n(2 + static_cast<Eigen::Index>(bath.size()));
    n[0] = 0.0;
    n[1] = 1.0;
    for (std::size_t m = 0; m < bath.size(); ++m) n[2 + static_cast<Eigen::Index>(m)] = bath.occupation[m];
    return n;
}

TwoTime oracle_two_time(const DeviceConfig& config, const FiniteBath& bath, double t1, double t2) {
    return oracle_two_time(SingleParticlePropagator(config, bath), bath, t1, t2);
}

TwoTime oracle_two_time(const SingleParticlePropagator& prop, const FiniteBath& bath, double t1,
                        double t2) {
    if (t1 < 0.0 || t2 < t1) throw ParameterError("oracle needs 0 <= t1 <= t2");
    const Eigen::VectorXd n = initial_occupations(bath);
    const Eigen::RowVectorXcd r1 = prop.dot_rows(t1).row(1);
    const Eigen::RowVectorXcd r2 = prop.dot_rows(t2).row(1);
    // <a2^dagger(ta) a2(tb)> = sum_m conj(U_2m(ta)) U_2m(tb) n_m, and the hole
    // counterpart with 1 - n_m.
    cplx lesser_21{}, greater_21{};
    double n1 = 0.0, n2 = 0.0;
    for (Eigen::Index m = 0; m < n.size(); ++m) {
        n1 += std::norm(r1[m]) * n[m];
        n2 += std::norm(r2[m]) * n[m];
        lesser_21 += std::conj(r2[m]) * r1[m] * n[m];
        greater_21 += r2[m] * std::conj(r1[m]) * (1.0 - n[m]);
    }
    TwoTime out;
    out.n2_t1 = n1;
    out.n2_t2 = n2;
    out.nn = n2 * n1 + lesser_21 * greater_21;
    out.beyond_validity = !bath.energy.empty() && t2 > bath.validity_time();
    return out;
}

Mat2 oracle_noise_v(const SingleParticlePropagator& prop, const FiniteBath& bath, double t1, double t2) {
    const Eigen::Matrix<cplx, 2, Eigen::Dynamic> a = prop.dot_rows(t1);
    const Eigen::Matrix<cplx, 2, Eigen::Dynamic> b = prop.dot_rows(t2);
    Mat2 v = Mat2::Zero();
    for (std::size_t m = 0; m < bath.size(); ++m) {
        const Eigen::Index c = 2 + static_cast<Eigen::Index>(m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v(i, j) += a(i, c) * bath.occupation[m] * std::conj(b(j, c));
    }
    return v;
}

lgi::LgiResult oracle_lgi(const DeviceConfig& config, const FiniteBath& bath, double tau, double tol) {
    const SingleParticlePropagator prop(config, bath);
    const auto t = MeasurementSchedule(tau).times();
    auto c = [&](int j, int i) {
        const TwoTime r = oracle_two_time(prop, bath, t[i], t[j]);
        return lgi::q_correlator(r.nn, r.n2_t2, r.n2_t1);
    };
    return lgi::assemble(tau, c(1, 0), c(2, 1), c(2, 0), c(3, 2), c(3, 0), tol);
}

FockSpace::FockSpace(const MatX& h) : modes_(static_cast<std::size_t>(h.rows())) {
    if (h.rows() != h.cols() || modes_ == 0 || modes_ > 10)
        throw ParameterError("Fock-space simulator supports 1..10 modes");
    const auto S = static_cast<Eigen::Index>(states());
    H_ = MatX::Zero(S, S);
    for (std::size_t i = 0; i < modes_; ++i) {
        const MatX ci = annihilator(i);
        for (std::size_t j = 0; j < modes_; ++j) {
            const cplx hij = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (hij != cplx{}) H_ += hij * ci.adjoint() * annihilator(j);
        }
    }
    const Eigen::SelfAdjointEigenSolver<MatX> eig(H_);
    vectors_ = eig.eigenvectors();
    values_ = eig.eigenvalues();
}

MatX FockSpace::annihilator(std::size_t m) const {
    const auto S = static_cast<Eigen::Index>(states());
    MatX c = MatX::Zero(S, S);
    for (std::size_t s = 0; s < states(); ++s) {
        if (!((s >> m) & 1u)) continue;
        const std::size_t below = s & ((std::size_t{1} << m) - 1);
        const double sign = std::popcount(below) % 2 ? -1.0 : 1.0;
        c(static_cast<Eigen::Index>(s ^ (std::size_t{1} << m)), static_cast<Eigen::Index>(s)) = sign;
    }
    return c;
}

MatX FockSpace::number(std::size_t m) const {
    const MatX c = annihilator(m);
    return c.adjoint() * c;
}

MatX FockSpace::evolution(double t) const { return propagate(vectors_, values_, t); }

MatX FockSpace::product_state(const Eigen::VectorXd& n) const {
    if (static_cast<std::size_t>(n.size()) != modes_) throw ParameterError("occupation vector size mismatch");
    const auto S = static_cast<Eigen::Index>(states());
    MatX rho = MatX::Zero(S, S);
    for (std::size_t s = 0; s < states(); ++s) {
        double p = 1.0;
        for (std::size_t m = 0; m < modes_; ++m)
            p *= (s >> m) & 1u ? n[static_cast<Eigen::Index>(m)] : 1.0 - n[static_cast<Eigen::Index>(m)];
        rho(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = p;
    }
    return rho;
}

cplx FockSpace::correlator(const MatX& rho, const MatX& A, double t2, const MatX& B, double t1) const {
    const MatX U2 = evolution(t2);
    const MatX U1 = evolution(t1);
    const MatX Ah = U2.adjoint() * A * U2;
    const MatX Bh = U1.adjoint() * B * U1;
    return (rho * Ah * Bh).trace();
}

cplx state_vector_n2n2(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double t1, double t2) {
    const FockSpace fock(dots.matrix());
    const MatX n2 = fock.number(1);
    const VecX psi = psi0;
    const VecX a = fock.evolution(t1) * psi;          // U(t1) psi
    const VecX b = fock.evolution(t2 - t1) * (n2 * a);  // U(t2 - t1) n2 U(t1) psi
    const VecX c = fock.evolution(t2) * psi;
    return (n2 * c).dot(b);
}

double state_vector_Q(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double t1, double t2) {
    const FockSpace fock(dots.matrix());
    const MatX n2 = fock.number(1);
    const VecX psi = psi0;
    const VecX s1 = fock.evolution(t1) * psi;
    const VecX s2 = fock.evolution(t2) * psi;
    const double n_t1 = s1.dot(n2 * s1).real();
    const double n_t2 = s2.dot(n2 * s2).real();
    return lgi::q_correlator(state_vector_n2n2(dots, psi0, t1, t2), n_t2, n_t1);
}

Eigen::Vector4cd superposition_state() {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[1] = psi[2] = 1.0 / std::sqrt(2.0);
    return psi;
}

Eigen::Vector4cd dot2_occupied_state() {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[2] = 1.0;
    return psi;
}

lgi::LgiResult state_vector_lgi(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double tau,
                                double tol) {
    const auto t = MeasurementSchedule(tau).times();
    auto c = [&](int j, int i) { return state_vector_Q(dots, psi0, t[i], t[j]); };
    return lgi::assemble(tau, c(1, 0), c(2, 1), c(2, 0), c(3, 2), c(3, 0), tol);
}

}  // namespace lgdot::oracle
