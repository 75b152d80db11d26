// convolution.hpp: 2x2 complex block convolution sums, scalar and AVX2
//
// The inner loops of the memory integrals are sums of products of 2x2 complex
// matrices taken from two sequences walked in opposite directions:
//
//     out = sum_{j=0}^{count-1} A[count-1-j] * B[j]
//
// Blocks are Eigen::Matrix2cd, i.e. 8 doubles in column-major order
// (re a00, im a00, re a10, im a10, re a01, im a01, re a11, im a11).

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "lgdot/model.hpp"

namespace lgdot::simd {

enum class KernelImpl { Reference, Avx2 };

std::string_view to_string(KernelImpl impl);

/// True when this binary carries the AVX2 kernel and the CPU reports AVX2 + FMA.
bool avx2_available();

/// The implementation used by convolution_sum(); chosen at first use.
KernelImpl active_impl();

/// Forces an implementation (benchmarks, tests). Throws ParameterError when the
/// requested variant is not available on this machine.
void force_impl(KernelImpl impl);

/// Restores automatic selection.
void reset_impl();

/// sum_j a[a.size()-1-j] * b[j]; a and b must have equal length.
Mat2 convolution_sum(std::span<const Mat2> a, std::span<const Mat2> b);

/// Same, with an explicit implementation.
Mat2 convolution_sum(KernelImpl impl, std::span<const Mat2> a, std::span<const Mat2> b);

namespace raw {

// Eigen-free entry points. `a_last` points at the block A[count-1]; the sum
// walks A backwards and B forwards. `out` receives 8 doubles.
void convolution_sum_ref(const double* a_last, const double* b_first, std::size_t count, double* out);
void convolution_sum_avx2(const double* a_last, const double* b_first, std::size_t count, double* out);

}  // namespace raw

}  // namespace lgdot::simd
