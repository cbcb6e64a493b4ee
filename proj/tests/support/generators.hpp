#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "reclaim/table.hpp"

namespace reclaim::testsupport {

/// Deterministic RNG for the test generators: mt19937_64 driven through
/// explicit helpers so sequences do not depend on libstdc++ distribution
/// internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
    /// Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  private:
    std::mt19937_64 gen_;
};

/// Null-free table with distinct rows (its own minimal form): up to
/// `max_cols` columns named with `prefix`, up to `max_rows` rows, values
/// drawn from an alphabet of `alphabet` atoms.
Table random_minimal_table(Rng& rng, std::size_t max_cols = 5, std::size_t max_rows = 8,
                           std::size_t alphabet = 6, const std::string& prefix = "c");

/// Two null-free minimal tables sharing one or two columns by name, values
/// drawn from one small alphabet so joins actually match sometimes.
std::pair<Table, Table> random_join_pair(std::uint64_t seed);

/// Two null-free minimal tables with disjoint column names.
std::pair<Table, Table> random_disjoint_pair(std::uint64_t seed);

struct VariantSet {
    Table source;
    KeySpec key;
    std::vector<Table> variants;
};

/// A keyed source (unique atom keys, occasional source Nulls) plus one to
/// three degraded copies: rows dropped, non-key columns dropped, remaining
/// non-key cells nulled. Keys stay intact, so every variant aligns.
VariantSet random_variant_set(std::uint64_t seed);

}  // namespace reclaim::testsupport
