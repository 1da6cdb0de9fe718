#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "avmod/poly.hpp"

namespace avmod {

/// Element of the Lie algebra A#V in canonical doubled-variable form.
///
/// Component i is a polynomial in 2d variables (x_1..x_d, y_1..y_d) equal to
/// Σ f(x)·g_i(y) over the terms f # Σ g_i ∂_i of the element. The x block is
/// the left A factor, the y block carries the vector-field coefficients. Two
/// elements are equal iff all components agree.
class SmashElement {
 public:
  explicit SmashElement(std::size_t dim);
  SmashElement(std::size_t dim, std::vector<Poly> components);

  std::size_t dim() const { return dim_; }
  std::size_t nvars() const { return 2 * dim_; }
  const Poly& component(std::size_t i) const { return components_[i]; }
  const std::vector<Poly>& components() const { return components_; }
  bool is_zero() const;

  SmashElement operator-() const;
  SmashElement& operator+=(const SmashElement& other);
  SmashElement& operator-=(const SmashElement& other);
  friend SmashElement operator+(SmashElement a, const SmashElement& b) { return a += b; }
  friend SmashElement operator-(SmashElement a, const SmashElement& b) { return a -= b; }
  friend SmashElement operator*(const Rational& c, SmashElement u);

  friend bool operator==(const SmashElement&, const SmashElement&) = default;

 private:
  void require_same(const SmashElement& other) const;

  std::size_t dim_;
  std::vector<Poly> components_;
};

/// f # e.
SmashElement from_term(const Poly& f, const Derivation& e);

/// Bilinear extension of [f#η, g#µ] = fg#[η,µ] + fη(g)#µ − gµ(f)#η.
SmashElement smash_bracket(const SmashElement& u, const SmashElement& v);

/// Ω_p(f,e) from the closed form (f(x) − f(y))^p · e_i(y). Ω_0 = 1 # e.
SmashElement omega(unsigned p, const Poly& f, const Derivation& e);

/// Ω_p(f,e) from the alternating sum Σ_k (−1)^k C(p,k) f^{p−k} # f^k e.
SmashElement omega_by_definition(unsigned p, const Poly& f, const Derivation& e);

/// Ω((f_1..f_p), e) = Π_j (f_j ⊗ 1 − 1 ⊗ f_j) · (1 # e).
SmashElement omega_multi(std::span<const Poly> fs, const Derivation& e);

/// (a ⊗ b)·u: component i multiplied by a(x)·b(y).
SmashElement tensor_act(const Poly& a, const Poly& b, const SmashElement& u);

/// (a # 1)·u, the left A-module structure.
SmashElement left_multiply(const Poly& a, const SmashElement& u);

/// The commutator [u, g # 1] inside A#U(V). It lies in A # 1 and equals
/// Σ_i u_i(x,x) ∂_i g; returned as a polynomial in d variables.
Poly commutator_with_function(const SmashElement& u, const Poly& g);

/// Restriction of component i to the diagonal y = x (d variables).
Poly diagonal(const SmashElement& u, std::size_t i);

/// Values (∂_y^α u_i)|_{y=x} for every i and |α| <= order.
///
/// Only this data enters the action of u on a module whose action tensor has
/// order <= `order`, so annihilation is decided from it.
class DiagonalJet {
 public:
  DiagonalJet(std::size_t dim, unsigned order);

  std::size_t dim() const { return dim_; }
  unsigned order() const { return order_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  /// Position of alpha in indices(); alpha.order() must be <= order().
  std::size_t slot(const MultiIndex& alpha) const;

  const Poly& value(std::size_t i, std::size_t slot) const { return values_[i][slot]; }
  Poly& value(std::size_t i, std::size_t slot) { return values_[i][slot]; }
  bool is_zero() const;

  friend bool operator==(const DiagonalJet&, const DiagonalJet&) = default;

 private:
  std::size_t dim_;
  unsigned order_;
  std::vector<MultiIndex> indices_;
  std::vector<std::vector<Poly>> values_;
};

DiagonalJet diagonal_jet(const SmashElement& u, unsigned order);

/// Diagonal jet of Ω_p(f,e) computed in Taylor coordinates t = y − x with
/// truncation, without expanding the full power. Agrees with
/// diagonal_jet(omega(p,f,e), order).
DiagonalJet omega_jet(unsigned p, const Poly& f, const Derivation& e, unsigned order);

/// Diagonal jet of Ω((f_1..f_p), e), computed the same way.
DiagonalJet omega_multi_jet(std::span<const Poly> fs, const Derivation& e, unsigned order);

/// Component strings with the x block named x1..xd and the y block y1..yd.
std::vector<std::string> to_strings(const SmashElement& u);

}  // namespace avmod
