#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "avmod/module.hpp"
#include "avmod/verification.hpp"

namespace avmod {

/// numerator / base^denom_exp in A_f.
struct LocalizedPoly {
  Poly base;
  Poly numerator;
  unsigned denom_exp = 0;
};

/// numerator / base^denom_exp in 𝒱_f.
struct LocalizedDerivation {
  Poly base;
  Derivation numerator;
  unsigned denom_exp = 0;
};

/// numerator / base^denom_exp in M_f = A_f ⊗_A M.
struct LocalizedModuleElement {
  Poly base;
  ModuleElement numerator;
  unsigned denom_exp = 0;
};

/// Normal form: while the exponent is positive and the base divides every
/// numerator entry, cancel one factor. Zero becomes 0/1. Throws for a zero
/// base.
LocalizedPoly reduce(LocalizedPoly x);
LocalizedDerivation reduce(LocalizedDerivation x);
LocalizedModuleElement reduce(LocalizedModuleElement x);

/// Equality of values (compares normal forms).
bool same_value(const LocalizedPoly& a, const LocalizedPoly& b);
bool same_value(const LocalizedModuleElement& a, const LocalizedModuleElement& b);

LocalizedModuleElement operator+(const LocalizedModuleElement& a, const LocalizedModuleElement& b);
LocalizedModuleElement operator-(const LocalizedModuleElement& a, const LocalizedModuleElement& b);
LocalizedModuleElement operator*(const LocalizedPoly& a, const LocalizedModuleElement& m);

/// ed(a) in A_f.
LocalizedPoly apply_localized(const LocalizedDerivation& ed, const LocalizedPoly& a);
/// [η/f^a, µ/f^b] = (f[η,µ] − b·η(f)µ + a·µ(f)η) / f^{a+b+1}.
LocalizedDerivation localized_bracket(const LocalizedDerivation& a, const LocalizedDerivation& b);

/// Rewrites n/f^l in M_f as n·g^l/(fg)^l in M_{fg}.
LocalizedModuleElement embed(const LocalizedModuleElement& m, const Poly& g);

/// The localized module M_f for a validated M.
class LocalizedModule {
 public:
  LocalizedModule(AVModule module, Poly base);

  const AVModule& module() const { return module_; }
  const Poly& base() const { return base_; }

  LocalizedModuleElement element(const ModuleElement& m, unsigned denom_exp = 0) const;
  LocalizedDerivation derivation(const Derivation& e, unsigned denom_exp = 0) const;
  LocalizedPoly scalar(const Poly& a, unsigned denom_exp = 0) const;

  /// (η/f^k)(m/f^l) = f^{-l} Σ_{p<=N} f^{-k(p+1)} Ω_p(f^k,η)m − l·η(f)m/f^{k+l+1},
  /// the series stopping at the module order N. Result reduced.
  LocalizedModuleElement act(const LocalizedDerivation& ed, const LocalizedModuleElement& me) const;

  /// (η/f^k)m = Σ_{j<=N} C(j+k−1, k−1) f^{−(j+k)} Ω_j(f,η)m for m ∈ M, the
  /// expansion in powers of the single base f.
  LocalizedModuleElement act_by_inverse_powers(const Derivation& eta, unsigned k,
                                               const ModuleElement& m) const;

 private:
  void require_base(const Poly& base) const;

  AVModule module_;
  Poly base_;
};

struct LocalizedCheckInputs {
  std::optional<Poly> f, g, h;
  std::optional<Derivation> eta, mu;
  /// Scalar numerator for the Leibniz check.
  std::optional<Poly> a;
  unsigned j = 1;  ///< extra cancelled factor (welldefined) / scalar exponent (leibniz)
  unsigned k = 1;  ///< derivation denominator exponent
  unsigned l = 0;  ///< module-element denominator exponent
};

/// Check ids: welldefined, leibniz, bracket, inverse-square, inverse-cube,
/// restriction. Each check runs on e_b/f^l and x_v·e_b/f^l for every basis
/// vector e_b and variable x_v.
VerificationReport verify_localized(std::string_view check, const AVModule& m,
                                    const LocalizedCheckInputs& in);

std::span<const std::string_view> localized_check_ids();

std::string to_string(const LocalizedPoly& x);
std::vector<std::string> to_strings(const LocalizedModuleElement& x);

}  // namespace avmod
