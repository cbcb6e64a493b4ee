#include <algorithm>

#include "reclaim/kernels.hpp"

namespace reclaim::kernels {
namespace detail {

bool any_conflict_scalar(const Trit* a, const Trit* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i] && a[i] != 0 && b[i] != 0) return true;
    }
    return false;
}

void elementwise_max_scalar(const Trit* a, const Trit* b, Trit* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

std::size_t count_pos_scalar(const Trit* a, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += (a[i] == 1);
    return count;
}

std::size_t count_neg_scalar(const Trit* a, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += (a[i] == -1);
    return count;
}

std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t na,
                                   const std::uint32_t* b, std::size_t nb) {
    std::size_t i = 0, j = 0, count = 0;
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

}  // namespace detail

const Ops& scalar_ops() {
    static const Ops ops{
        detail::any_conflict_scalar,   detail::elementwise_max_scalar,
        detail::count_pos_scalar,      detail::count_neg_scalar,
        detail::intersect_count_scalar,
    };
    return ops;
}

}  // namespace reclaim::kernels
