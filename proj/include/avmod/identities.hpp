#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "avmod/poly.hpp"
#include "avmod/smash.hpp"
#include "avmod/verification.hpp"

namespace avmod {

/// Bracket identities among the Ω_p elements of A#V.
enum class Identity {
  kLemma2CommuteA,
  kLemma3Commutator,
  kLemma4Item1,
  kLemma4Item2,
  kLemma4Item3,
  kLemma4Item4,
  kLemma4Item5,
  kLemma5DerivBracket,
  kLemma41Recurrence,
  kOmegaClosedForm,
};

std::span<const Identity> all_identities();
std::string_view identity_name(Identity id);
std::optional<Identity> identity_from_name(std::string_view name);
/// Whether the identity has a second order parameter q.
bool identity_uses_q(Identity id);

class UnknownIdentity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingBinding : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IdentityInputs {
  std::optional<Poly> f, g, h;
  std::optional<Derivation> eta, mu;
  std::optional<unsigned> p, q;
};

struct VerifyOptions {
  /// Flips the sign of one right-hand-side term. Negative control only.
  bool corrupt_rhs = false;
};

/// Computes LHS − RHS in canonical form; passes iff it is identically zero.
VerificationReport verify_identity(Identity id, const IdentityInputs& in,
                                   const VerifyOptions& options = {});
VerificationReport verify_identity(std::string_view name, const IdentityInputs& in,
                                   const VerifyOptions& options = {});

}  // namespace avmod
