// AVX2/FMA variant of the 2x2 complex convolution sum. This translation unit
// is compiled with -mavx2 -mfma and must not include Eigen or any other header
// with inline code that could be shared with the rest of the library.

#include <immintrin.h>

#include <cstddef>

namespace lgdot::simd::raw {

namespace {

// One column of a 2x2 complex block is one __m256d: (re, im, re, im).
struct Accumulator {
    __m256d re0 = _mm256_setzero_pd();  // column 0, real-broadcast half
    __m256d im0 = _mm256_setzero_pd();  // column 0, imag-broadcast half
    __m256d re1 = _mm256_setzero_pd();
    __m256d im1 = _mm256_setzero_pd();

    inline void add(const double* a, const double* b) {
        const __m256d a0 = _mm256_loadu_pd(a);
        const __m256d a1 = _mm256_loadu_pd(a + 4);
        const __m256d s0 = _mm256_permute_pd(a0, 0b0101);
        const __m256d s1 = _mm256_permute_pd(a1, 0b0101);
        re0 = _mm256_fmadd_pd(a0, _mm256_broadcast_sd(b + 0), re0);
        im0 = _mm256_fmadd_pd(s0, _mm256_broadcast_sd(b + 1), im0);
        re0 = _mm256_fmadd_pd(a1, _mm256_broadcast_sd(b + 2), re0);
        im0 = _mm256_fmadd_pd(s1, _mm256_broadcast_sd(b + 3), im0);
        re1 = _mm256_fmadd_pd(a0, _mm256_broadcast_sd(b + 4), re1);
        im1 = _mm256_fmadd_pd(s0, _mm256_broadcast_sd(b + 5), im1);
        re1 = _mm256_fmadd_pd(a1, _mm256_broadcast_sd(b + 6), re1);
        im1 = _mm256_fmadd_pd(s1, _mm256_broadcast_sd(b + 7), im1);
    }
};

}  // namespace

void convolution_sum_avx2(const double* a_last, const double* b_first, std::size_t count, double* out) {
    Accumulator even, odd;
    std::size_t j = 0;
    for (; j + 1 < count; j += 2) {
        even.add(a_last - 8 * j, b_first + 8 * j);
        odd.add(a_last - 8 * (j + 1), b_first + 8 * (j + 1));
    }
    if (j < count) even.add(a_last - 8 * j, b_first + 8 * j);

    const __m256d re0 = _mm256_add_pd(even.re0, odd.re0);
    const __m256d im0 = _mm256_add_pd(even.im0, odd.im0);
    const __m256d re1 = _mm256_add_pd(even.re1, odd.re1);
    const __m256d im1 = _mm256_add_pd(even.im1, odd.im1);
    // (xr yr - xi yi, xi yr + xr yi) per complex lane.
    _mm256_storeu_pd(out, _mm256_addsub_pd(re0, im0));
    _mm256_storeu_pd(out + 4, _mm256_addsub_pd(re1, im1));
}

}  // namespace lgdot::simd::raw
