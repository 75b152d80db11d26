// Scalar reference for the 2x2 complex convolution sum. Kept deliberately
// plain: it is the oracle the vector variants are tested against.

#include "lgdot/simd/convolution.hpp"

#include <complex>

namespace lgdot::simd::raw {

void convolution_sum_ref(const double* a_last, const double* b_first, std::size_t count, double* out) {
    using C = std::complex<double>;
    C acc[4] = {};
    for (std::size_t j = 0; j < count; ++j) {
        const double* a = a_last - 8 * j;
        const double* b = b_first + 8 * j;
        const C a00(a[0], a[1]), a10(a[2], a[3]), a01(a[4], a[5]), a11(a[6], a[7]);
        const C b00(b[0], b[1]), b10(b[2], b[3]), b01(b[4], b[5]), b11(b[6], b[7]);
        acc[0] += a00 * b00 + a01 * b10;
        acc[1] += a10 * b00 + a11 * b10;
        acc[2] += a00 * b01 + a01 * b11;
        acc[3] += a10 * b01 + a11 * b11;
    }
    for (int k = 0; k < 4; ++k) {
        out[2 * k] = acc[k].real();
        out[2 * k + 1] = acc[k].imag();
    }
}

}  // namespace lgdot::simd::raw
