#include "avmod/sampling.hpp"

#include <algorithm>
#include <limits>

namespace avmod {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below needs n > 0");
  // Rejection sampling on the top of the range keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

Monomial random_monomial(Rng& rng, std::size_t dim, unsigned max_degree) {
  const unsigned degree = static_cast<unsigned>(rng.below(max_degree + 1));
  Monomial m;
  for (unsigned k = 0; k < degree; ++k) {
    const std::size_t v = rng.below(dim);
    m.set(v, m[v] + 1);
  }
  return m;
}

Rational random_coefficient(Rng& rng, const SampleShape& shape) {
  Rational c(static_cast<long>(rng.between(1, shape.max_numerator)),
             static_cast<long>(rng.between(1, shape.max_denominator)));
  c.canonicalize();
  return rng.below(2) ? c : Rational(-c);
}

}  // namespace

Poly random_poly(Rng& rng, std::size_t dim, const SampleShape& shape) {
  const unsigned count = static_cast<unsigned>(rng.between(1, shape.max_terms));
  std::vector<Poly::Term> terms;
  for (unsigned t = 0; t < count; ++t)
    terms.push_back({random_monomial(rng, dim, shape.max_degree), random_coefficient(rng, shape)});
  return Poly::from_terms(dim, std::move(terms));
}

Poly random_nonconstant_poly(Rng& rng, std::size_t dim, const SampleShape& shape) {
  if (shape.max_degree == 0) throw std::invalid_argument("nonconstant sample needs degree >= 1");
  for (;;) {
    Poly p = random_poly(rng, dim, shape);
    if (!p.is_constant()) return p;
  }
}

Derivation random_derivation(Rng& rng, std::size_t dim, const SampleShape& shape) {
  std::vector<Poly> coeffs;
  for (std::size_t i = 0; i < dim; ++i) coeffs.push_back(random_poly(rng, dim, shape));
  return Derivation(std::move(coeffs));
}

SmashElement random_smash(Rng& rng, std::size_t dim, const SampleShape& shape) {
  const unsigned count = static_cast<unsigned>(rng.between(1, shape.max_terms));
  SmashElement u(dim);
  for (unsigned t = 0; t < count; ++t) {
    Poly a = random_poly(rng, dim, shape);
    u += from_term(a, random_derivation(rng, dim, shape));
  }
  return u;
}

ModuleElement random_module_element(Rng& rng, std::size_t dim, std::size_t rank, const SampleShape& shape) {
  ModuleElement m(dim, rank);
  for (std::size_t k = 0; k < rank; ++k) m[k] = random_poly(rng, dim, shape);
  return m;
}

std::vector<Poly> random_distinct_nonconstant(Rng& rng, std::size_t dim, std::size_t count,
                                              const SampleShape& shape) {
  std::vector<Poly> out;
  while (out.size() < count) {
    Poly p = random_nonconstant_poly(rng, dim, shape);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  // FNV-1a over the label, then one splitmix64 finalization round.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h ^ (index * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace avmod
