#include "lgdot/simd/convolution.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace lgdot::simd {

static_assert(sizeof(Mat2) == 8 * sizeof(double), "Matrix2cd must be 8 packed doubles");

namespace {

constexpr int unset = -1;
std::atomic<int> forced{unset};
std::atomic<int> detected{unset};

KernelImpl detect() {
    if (const char* env = std::getenv("LGDOT_KERNEL")) {
        if (std::string(env) == "reference") return KernelImpl::Reference;
    }
    return avx2_available() ? KernelImpl::Avx2 : KernelImpl::Reference;
}

}  // namespace

std::string_view to_string(KernelImpl impl) {
    return impl == KernelImpl::Avx2 ? "avx2" : "reference";
}

bool avx2_available() {
#if defined(LGDOT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

KernelImpl active_impl() {
    const int f = forced.load(std::memory_order_relaxed);
    if (f != unset) return static_cast<KernelImpl>(f);
    int d = detected.load(std::memory_order_relaxed);
    if (d == unset) {
        d = static_cast<int>(detect());
        detected.store(d, std::memory_order_relaxed);
    }
    return static_cast<KernelImpl>(d);
}

void force_impl(KernelImpl impl) {
    if (impl == KernelImpl::Avx2 && !avx2_available())
        throw ParameterError("AVX2 kernel requested but not available on this CPU/build");
    forced.store(static_cast<int>(impl), std::memory_order_relaxed);
}

void reset_impl() { forced.store(unset, std::memory_order_relaxed); }

Mat2 convolution_sum(KernelImpl impl, std::span<const Mat2> a, std::span<const Mat2> b) {
    if (a.size() != b.size()) throw ParameterError("convolution_sum: operands differ in length");
    Mat2 out = Mat2::Zero();
    if (a.empty()) return out;
    const auto* a_last = reinterpret_cast<const double*>(a.data() + (a.size() - 1));
    const auto* b_first = reinterpret_cast<const double*>(b.data());
    auto* dst = reinterpret_cast<double*>(out.data());
#if defined(LGDOT_HAVE_AVX2_TU)
    if (impl == KernelImpl::Avx2) {
        if (!avx2_available()) throw ParameterError("AVX2 kernel not available on this CPU");
        raw::convolution_sum_avx2(a_last, b_first, a.size(), dst);
        return out;
    }
#else
    if (impl == KernelImpl::Avx2) throw ParameterError("AVX2 kernel not compiled into this build");
#endif
    raw::convolution_sum_ref(a_last, b_first, a.size(), dst);
    return out;
}

Mat2 convolution_sum(std::span<const Mat2> a, std::span<const Mat2> b) {
    return convolution_sum(active_impl(), a, b);
}

}  // namespace lgdot::simd
