#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace reclaim::kernels {

/// Three-valued alignment entry: +1 agree, 0 unknown, -1 contradiction.
using Trit = std::int8_t;

/**
 * The data-parallel inner loops of the engine, behind a function-pointer
 * table so a SIMD variant can be selected at runtime. Every entry has a
 * scalar reference implementation; vector variants must be bit-for-bit
 * equivalent and are tested against the reference.
 *
 * Trit buffers hold only {-1, 0, +1}. Intersection inputs are sorted,
 * duplicate-free ascending arrays.
 */
struct Ops {
    /// True if some position has two differing non-zero trits.
    bool (*any_conflict)(const Trit* a, const Trit* b, std::size_t n);
    /// out[i] = max(a[i], b[i]); the three-valued OR. out may alias a or b.
    void (*elementwise_max)(const Trit* a, const Trit* b, Trit* out, std::size_t n);
    /// Number of positions equal to +1.
    std::size_t (*count_pos)(const Trit* a, std::size_t n);
    /// Number of positions equal to -1.
    std::size_t (*count_neg)(const Trit* a, std::size_t n);
    /// |a ∩ b| for sorted unique ascending arrays.
    std::size_t (*intersect_count)(const std::uint32_t* a, std::size_t na,
                                   const std::uint32_t* b, std::size_t nb);
};

enum class Variant { Scalar, Avx2 };

/// Reference implementation; always available.
const Ops& scalar_ops();

/// Best implementation the running CPU supports.
const Ops& active();
Variant active_variant();
std::string variant_name(Variant v);

/// Test hook: pin the dispatched variant (throws ContractError if the
/// requested variant is unsupported on this CPU/build).
void force_variant(Variant v);
void reset_variant();

/// True if this build carries the AVX2 kernels and the CPU supports them.
bool avx2_available();

#if defined(RECLAIM_HAVE_AVX2)
/// Direct access to the AVX2 table for equivalence tests.
const Ops& avx2_ops();
#endif

}  // namespace reclaim::kernels
