#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "avmod/module.hpp"

namespace avmod {

class UnknownModule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A^rank with ρ(g∂_i)m = g∂_i m + g Γ_i m; Γ_i defaults to zero. The
/// module validates iff the connection Γ is flat.
AVModule trivial_dmodule(std::size_t dim, std::size_t rank,
                         const std::vector<PolyMatrix>& connection = {});
/// Ω¹ on A = 𝕜[x_1..x_d] with the Lie derivative, basis dx_1..dx_d.
AVModule differential_forms(std::size_t dim);
/// 𝒱 itself under the adjoint action, basis ∂_1..∂_d.
AVModule tangent_adjoint(std::size_t dim);
/// Jets of order n, basis e_α = (y−x)^α/α! for |α| <= n (the order used by
/// MultiIndex::up_to); jⁿh has coordinates (∂^α h)_α.
AVModule jet_module(std::size_t dim, unsigned n);
/// Rank-one family on d = 1 with D_{1,(1)} = λ: λ = 1 is Ω¹, λ = 0 trivial.
AVModule twist(const Rational& lambda);

struct ZooParams {
  std::size_t dim = 1;
  unsigned n = 1;
  std::size_t rank = 1;
  Rational lambda = 1;
};

/// Names: trivial_dmodule, differential_forms, tangent_adjoint, jet_module,
/// twist, plus the short aliases dmodule, forms, adjoint, jets.
AVModule zoo(const std::string& name, const ZooParams& params);

/// Modules used by the property suites: every zoo family with rank <= 6 in
/// d ∈ {1,2} plus one tensor product.
std::vector<AVModule> zoo_catalog();

}  // namespace avmod
