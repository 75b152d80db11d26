// closed.hpp: Isolated double dot: analytic propagator and LGI two-time correlators
//
// The dot operators evolve as a_i(t) = sum_j w_ij(t) a_j(0) with dw/dt = -i eps w.
// Correlators are for the one-electron initial state (|01> + |10>)/sqrt(2).

#pragma once

#include "lgdot/model.hpp"

namespace lgdot::closed {

/// w(t, 0) in closed form. Constants follow the two-exponential solution
///   w11 = A1 e^{-i(beta-alpha)t/2} + A2 e^{-i(beta+alpha)t/2},
///   w12 = A3 e^{...}             + A4 e^{...},
/// and w21, w22 from the same exponentials divided by 2 eps12. When
/// |eps21| < 1e-12 the diagonal limit diag(e^{-i eps11 t}, e^{-i eps22 t}) is used.
class ClosedPropagator {
public:
    explicit ClosedPropagator(const DotHamiltonian& dots);

    Mat2 operator()(double t) const;

    double alpha() const { return alpha_; }        ///< sqrt(gamma^2 + 4|eps21|^2)
    double beta() const { return beta_; }          ///< eps11 + eps22
    double gamma_diff() const { return gamma_; }   ///< eps22 - eps11
    cplx A1() const { return a1_; }
    cplx A2() const { return a2_; }
    cplx A3() const { return a3_; }
    cplx A4() const { return a4_; }
    bool diagonal_limit() const { return diagonal_; }

    /// Revival period 2 pi / alpha of |w_ij|; infinite in the diagonal limit.
    double period() const;

private:
    DotHamiltonian dots_;
    double alpha_{0.0};
    double beta_{0.0};
    double gamma_{0.0};
    double alpha_plus_gamma_{0.0};
    double alpha_minus_gamma_{0.0};
    cplx a1_, a2_, a3_, a4_;
    bool diagonal_{false};
};

Mat2 closed_propagator(const DotHamiltonian& dots, double t);

/// <n2(t)> for the superposition initial state.
double closed_occupation_n2(const DotHamiltonian& dots, double t);

/// <n2(t2) n2(t1)>, the eight-term expansion in w21, w22 at both times.
/// Requires t2 >= t1 >= 0.
cplx closed_two_time_n2(const DotHamiltonian& dots, double t1, double t2);

/// <Q(t2) Q(t1)> = 4<n2 n2> - 2<n2(t2)> - 2<n2(t1)> + 1 (unsymmetrized, complex).
cplx closed_Q_correlator(const DotHamiltonian& dots, double t1, double t2);

}  // namespace lgdot::closed
