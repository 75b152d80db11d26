// oracle.hpp: Brute-force reference: each lead replaced by K discrete modes
//
// The total Hamiltonian is quadratic, so a_i(t) = sum_m U_im(t) a_m(0) with
// U = exp(-i h t) for the (2 + modes) x (2 + modes) single-particle matrix h.
// The initial state (dots |01>, leads thermal) is Gaussian and diagonal in the
// mode basis, so every correlator follows from Wick contractions with the
// occupation vector n_m. A tiny Fock-space simulator backs up the Wick route.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lgdot/lgi.hpp"
#include "lgdot/model.hpp"

namespace lgdot::oracle {

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

struct FiniteBath {
    std::size_t modes_per_lead{0};
    double span{0.0};
    std::vector<double> energy;         ///< per bath mode
    std::vector<std::size_t> lead;      ///< 0 = left, 1 = right
    std::vector<Eigen::Vector2cd> coupling;  ///< (V_1m, V_2m): term V_im a_i^dagger c_m + h.c.
    std::vector<double> occupation;     ///< f_alpha(energy)

    std::size_t size() const { return energy.size(); }
    /// Recurrence time 2 pi K / (2 span) of the discrete bath.
    double validity_time() const;
};

/// K uniform bins on [mu - span, mu + span] per lead and per nonzero eigenvalue
/// lambda of the lead's gamma. Mode weights integrate J over the bin:
///   |V_m|^2 = lambda W [atan((b-mu)/W) - atan((a-mu)/W)] / (2 pi),
/// aligned with the eigenvector. ParameterError if K < 1 or span <= 0.
FiniteBath build_bath(const DeviceConfig& config, std::size_t K, double span = 20.0);

/// exp(-i h t) for the full single-particle Hamiltonian; dots are indices 0, 1.
class SingleParticlePropagator {
public:
    SingleParticlePropagator(const DeviceConfig& config, const FiniteBath& bath);

    std::size_t dimension() const { return static_cast<std::size_t>(h_.rows()); }
    const MatX& hamiltonian() const { return h_; }
    MatX operator()(double t) const;
    /// Rows 0, 1 of U(t) only (all the dot correlators need).
    Eigen::Matrix<cplx, 2, Eigen::Dynamic> dot_rows(double t) const;

private:
    MatX h_;
    MatX vectors_;
    Eigen::VectorXd values_;
};

/// Initial occupations: dots (0, 1), then the bath occupations.
Eigen::VectorXd initial_occupations(const FiniteBath& bath);

struct TwoTime {
    double n2_t1{0.0};
    double n2_t2{0.0};
    cplx nn;                      ///< <n2(t2) n2(t1)>
    bool beyond_validity{false};  ///< a time exceeds the bath recurrence time
};

TwoTime oracle_two_time(const DeviceConfig& config, const FiniteBath& bath, double t1, double t2);

/// Same with a prebuilt propagator.
TwoTime oracle_two_time(const SingleParticlePropagator& prop, const FiniteBath& bath, double t1,
                        double t2);

/// Bath part of v_ij(t1, t2) = sum_{bath m} U_im(t1) n_m conj(U_jm(t2)).
Mat2 oracle_noise_v(const SingleParticlePropagator& prop, const FiniteBath& bath, double t1, double t2);

/// C3, C4 at tau from the Wick oracle (dot state |01>).
lgi::LgiResult oracle_lgi(const DeviceConfig& config, const FiniteBath& bath, double tau,
                          double tol = 1e-9);

/// Explicit many-body simulator on 2^D states (D <= 10) for a quadratic
/// Hamiltonian h, Jordan-Wigner ordered by mode index.
class FockSpace {
public:
    explicit FockSpace(const MatX& h);

    std::size_t modes() const { return modes_; }
    std::size_t states() const { return std::size_t{1} << modes_; }

    /// c_m as a 2^D x 2^D matrix.
    MatX annihilator(std::size_t m) const;
    MatX number(std::size_t m) const;
    const MatX& hamiltonian() const { return H_; }
    /// exp(-i H t) on the many-body space.
    MatX evolution(double t) const;

    /// Product density matrix with mode m occupied with probability n[m].
    MatX product_state(const Eigen::VectorXd& n) const;

    /// Tr(rho A_H(t2) B_H(t1)) with X_H(t) = U(t)^dagger X U(t).
    cplx correlator(const MatX& rho, const MatX& A, double t2, const MatX& B, double t1) const;

private:
    std::size_t modes_;
    MatX H_;
    MatX vectors_;
    Eigen::VectorXd values_;
};

/// Two isolated dots by explicit state-vector evolution in the 4-state Fock
/// space: Re <Q(t2) Q(t1)> for a given initial state vector (basis index
/// n1 + 2 n2).
double state_vector_Q(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double t1, double t2);

/// <n2(t2) n2(t1)> for the same setup.
cplx state_vector_n2n2(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double t1, double t2);

/// (|01> + |10>)/sqrt(2): one electron shared between the dots.
Eigen::Vector4cd superposition_state();

/// |01>: dot 2 occupied.
Eigen::Vector4cd dot2_occupied_state();

/// C3, C4 of the isolated dots from state-vector evolution.
lgi::LgiResult state_vector_lgi(const DotHamiltonian& dots, const Eigen::Vector4cd& psi0, double tau,
                                double tol = 1e-9);

}  // namespace lgdot::oracle
