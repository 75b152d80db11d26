#include "lgdot/closed.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lgdot::closed {

namespace {

constexpr double diagonal_threshold = 1e-12;
constexpr cplx I{0.0, 1.0};

}  // namespace

ClosedPropagator::ClosedPropagator(const DotHamiltonian& dots) : dots_(dots) {
    const cplx e12 = dots.e12();
    const double coupling2 = std::norm(dots.e21());
    beta_ = dots.e11() + dots.e22();
    gamma_ = dots.e22() - dots.e11();
    alpha_ = std::sqrt(gamma_ * gamma_ + 4.0 * coupling2);
    diagonal_ = std::abs(dots.e21()) < diagonal_threshold;
    if (diagonal_) return;

    // alpha +- gamma without cancellation: (alpha+gamma)(alpha-gamma) = 4|eps21|^2.
    if (gamma_ >= 0.0) {
        alpha_plus_gamma_ = alpha_ + gamma_;
        alpha_minus_gamma_ = 4.0 * coupling2 / alpha_plus_gamma_;
    } else {
        alpha_minus_gamma_ = alpha_ - gamma_;
        alpha_plus_gamma_ = 4.0 * coupling2 / alpha_minus_gamma_;
    }
    a1_ = alpha_plus_gamma_ / (2.0 * alpha_);
    a2_ = alpha_minus_gamma_ / (2.0 * alpha_);
    a3_ = -e12 / alpha_;
    a4_ = e12 / alpha_;
}

double ClosedPropagator::period() const {
    if (diagonal_ || alpha_ == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi / alpha_;
}

Mat2 ClosedPropagator::operator()(double t) const {
    Mat2 w;
    if (diagonal_) {
        w << std::exp(-I * dots_.e11() * t), 0.0, 0.0, std::exp(-I * dots_.e22() * t);
        return w;
    }
    const cplx slow = std::exp(-0.5 * I * (beta_ - alpha_) * t);
    const cplx fast = std::exp(-0.5 * I * (beta_ + alpha_) * t);
    const cplx pref = -1.0 / (2.0 * dots_.e12());
    w(0, 0) = a1_ * slow + a2_ * fast;
    w(0, 1) = a3_ * slow + a4_ * fast;
    w(1, 0) = pref * (a1_ * alpha_minus_gamma_ * slow - a2_ * alpha_plus_gamma_ * fast);
    w(1, 1) = pref * (a3_ * alpha_minus_gamma_ * slow - a4_ * alpha_plus_gamma_ * fast);
    return w;
}

Mat2 closed_propagator(const DotHamiltonian& dots, double t) { return ClosedPropagator(dots)(t); }

namespace {

double occupation_from(const Mat2& w) {
    const cplx w21 = w(1, 0);
    const cplx w22 = w(1, 1);
    return 0.5 * (std::norm(w21) + std::conj(w21) * w22 + std::conj(w22) * w21 + std::norm(w22)).real();
}

cplx two_time_from(const Mat2& w1, const Mat2& w2) {
    const cplx a1 = w1(1, 0), b1 = w1(1, 1);  // w21(t1), w22(t1)
    const cplx a2 = w2(1, 0), b2 = w2(1, 1);  // w21(t2), w22(t2)
    using std::conj;
    using std::norm;
    const cplx sum = norm(a2) * norm(a1)
                   + norm(a2) * conj(a1) * b1
                   + conj(a2) * b2 * conj(b1) * a1
                   + conj(a2) * b2 * norm(b1)
                   + conj(b2) * a2 * norm(a1)
                   + conj(b2) * a2 * conj(a1) * b1
                   + norm(b2) * conj(b1) * a1
                   + norm(b2) * norm(b1);
    return 0.5 * sum;
}

void require_ordered(double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 >= t1)) throw ParameterError("closed correlators need t2 >= t1 >= 0");
}

}  // namespace

double closed_occupation_n2(const DotHamiltonian& dots, double t) {
    return occupation_from(closed_propagator(dots, t));
}

cplx closed_two_time_n2(const DotHamiltonian& dots, double t1, double t2) {
    require_ordered(t1, t2);
    const ClosedPropagator w(dots);
    return two_time_from(w(t1), w(t2));
}

cplx closed_Q_correlator(const DotHamiltonian& dots, double t1, double t2) {
    require_ordered(t1, t2);
    const ClosedPropagator w(dots);
    const Mat2 w1 = w(t1);
    const Mat2 w2 = w(t2);
    return 4.0 * two_time_from(w1, w2) - 2.0 * occupation_from(w2) - 2.0 * occupation_from(w1) + 1.0;
}

}  // namespace lgdot::closed
