// AVX2 variants of the trit and intersection kernels. This translation unit
// is compiled with -mavx2; callers reach it only through the dispatch table,
// which checks CPU support first.

#include <immintrin.h>

#include "reclaim/kernels.hpp"

namespace reclaim::kernels {
namespace {

constexpr std::size_t kLanes = 32;  // int8 lanes per 256-bit vector

bool any_conflict_avx2(const Trit* a, const Trit* b, std::size_t n) {
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + kLanes <= n; i += kLanes) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i eq = _mm256_cmpeq_epi8(va, vb);
        const __m256i a_zero = _mm256_cmpeq_epi8(va, zero);
        const __m256i b_zero = _mm256_cmpeq_epi8(vb, zero);
        // conflict = !eq && !a_zero && !b_zero
        const __m256i ok = _mm256_or_si256(eq, _mm256_or_si256(a_zero, b_zero));
        if (_mm256_movemask_epi8(ok) != -1) return true;
    }
    for (; i < n; ++i) {
        if (a[i] != b[i] && a[i] != 0 && b[i] != 0) return true;
    }
    return false;
}

void elementwise_max_avx2(const Trit* a, const Trit* b, Trit* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_max_epi8(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

std::size_t count_value_avx2(const Trit* a, std::size_t n, Trit value) {
    std::size_t i = 0;
    std::size_t count = 0;
    const __m256i target = _mm256_set1_epi8(value);
    for (; i + kLanes <= n; i += kLanes) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const int mask = _mm256_movemask_epi8(_mm256_cmpeq_epi8(va, target));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) count += (a[i] == value);
    return count;
}

std::size_t count_pos_avx2(const Trit* a, std::size_t n) { return count_value_avx2(a, n, 1); }
std::size_t count_neg_avx2(const Trit* a, std::size_t n) { return count_value_avx2(a, n, -1); }

// Block intersection of sorted unique arrays: compare an 8-lane block of a
// against all rotations of an 8-lane block of b, then advance the side whose
// block ends first. Tails fall back to the two-pointer walk.
std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t na,
                                 const std::uint32_t* b, std::size_t nb) {
    constexpr std::size_t kWords = 8;
    std::size_t i = 0, j = 0, count = 0;
    if (na >= kWords && nb >= kWords) {
        const __m256i rot1 = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b));
        while (true) {
            __m256i matches = _mm256_cmpeq_epi32(va, vb);
            __m256i rotated = vb;
            for (int r = 1; r < static_cast<int>(kWords); ++r) {
                rotated = _mm256_permutevar8x32_epi32(rotated, rot1);
                matches = _mm256_or_si256(matches, _mm256_cmpeq_epi32(va, rotated));
            }
            const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(matches));
            count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
            const std::uint32_t a_max = a[i + kWords - 1];
            const std::uint32_t b_max = b[j + kWords - 1];
            if (a_max <= b_max) {
                i += kWords;
                if (i + kWords > na) break;
                va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
            }
            if (b_max <= a_max) {
                j += kWords;
                if (j + kWords > nb) break;
                vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
            }
        }
    }
    while (i < na && j < nb) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{
        any_conflict_avx2, elementwise_max_avx2, count_pos_avx2, count_neg_avx2,
        intersect_count_avx2,
    };
    return ops;
}

}  // namespace reclaim::kernels
