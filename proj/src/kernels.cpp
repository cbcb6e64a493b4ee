#include "reclaim/kernels.hpp"

#include <atomic>

#include "reclaim/errors.hpp"

namespace reclaim::kernels {

namespace {

Variant detect() {
#if defined(RECLAIM_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Variant::Avx2;
#endif
    return Variant::Scalar;
}

std::atomic<Variant> g_variant{detect()};

}  // namespace

bool avx2_available() {
#if defined(RECLAIM_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops& active() {
    switch (g_variant.load(std::memory_order_relaxed)) {
#if defined(RECLAIM_HAVE_AVX2)
        case Variant::Avx2:
            return avx2_ops();
#endif
        default:
            return scalar_ops();
    }
}

Variant active_variant() { return g_variant.load(std::memory_order_relaxed); }

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Scalar: return "scalar";
        case Variant::Avx2: return "avx2";
    }
    return "unknown";
}

void force_variant(Variant v) {
    if (v == Variant::Avx2 && !avx2_available()) {
        throw ContractError("avx2 kernels unavailable on this CPU/build");
    }
    g_variant.store(v, std::memory_order_relaxed);
}

void reset_variant() { g_variant.store(detect(), std::memory_order_relaxed); }

}  // namespace reclaim::kernels
