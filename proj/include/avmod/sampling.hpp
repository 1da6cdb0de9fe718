#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "avmod/module.hpp"
#include "avmod/poly.hpp"
#include "avmod/smash.hpp"

namespace avmod {

/// Seeded generator whose outputs are identical on every platform: only the
/// raw engine stream is used, never the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

struct SampleShape {
  unsigned max_degree = 4;
  /// Terms per polynomial are drawn from 1..max_terms.
  unsigned max_terms = 2;
  /// Coefficients are ±a/b with 1 <= a <= max_numerator, 1 <= b <= max_denominator.
  unsigned max_numerator = 5;
  unsigned max_denominator = 3;
};

Poly random_poly(Rng& rng, std::size_t dim, const SampleShape& shape);
/// Like random_poly but never constant (degree >= 1).
Poly random_nonconstant_poly(Rng& rng, std::size_t dim, const SampleShape& shape);
Derivation random_derivation(Rng& rng, std::size_t dim, const SampleShape& shape);
/// Sum of 1..max_terms elements a # η with random a and η.
SmashElement random_smash(Rng& rng, std::size_t dim, const SampleShape& shape);
ModuleElement random_module_element(Rng& rng, std::size_t dim, std::size_t rank, const SampleShape& shape);
/// `count` pairwise distinct nonconstant polynomials.
std::vector<Poly> random_distinct_nonconstant(Rng& rng, std::size_t dim, std::size_t count,
                                              const SampleShape& shape);

/// Derives an independent stream seed from a base seed and a label, so each
/// suite draws the same samples whatever else is selected.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

}  // namespace avmod
