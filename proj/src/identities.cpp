#include "avmod/identities.hpp"

#include <array>
#include <string>

namespace avmod {

namespace {

struct IdentityInfo {
  Identity id;
  std::string_view name;
  bool needs_f, needs_g, needs_h, needs_eta, needs_mu, needs_p, needs_q;
};

constexpr std::array<IdentityInfo, 10> kIdentities{{
    {Identity::kLemma2CommuteA, "lemma2-commute-A", true, true, false, true, false, true, false},
    {Identity::kLemma3Commutator, "lemma3-commutator", true, false, false, true, true, true, true},
    {Identity::kLemma4Item1, "lemma4-1", true, true, false, true, true, true, true},
    {Identity::kLemma4Item2, "lemma4-2", true, true, true, true, false, true, true},
    {Identity::kLemma4Item3, "lemma4-3", true, true, false, true, false, true, true},
    {Identity::kLemma4Item4, "lemma4-4", true, true, true, true, false, true, true},
    {Identity::kLemma4Item5, "lemma4-5", true, true, true, true, false, true, true},
    {Identity::kLemma5DerivBracket, "lemma5-deriv-bracket", true, false, false, true, true, true, false},
    {Identity::kLemma41Recurrence, "lemma4.1-recurrence", true, false, false, true, false, true, false},
    {Identity::kOmegaClosedForm, "omega-closed-form", true, false, false, true, false, true, false},
}};

constexpr std::array<Identity, 10> kAll{
    Identity::kLemma2CommuteA, Identity::kLemma3Commutator, Identity::kLemma4Item1,
    Identity::kLemma4Item2,    Identity::kLemma4Item3,      Identity::kLemma4Item4,
    Identity::kLemma4Item5,    Identity::kLemma5DerivBracket, Identity::kLemma41Recurrence,
    Identity::kOmegaClosedForm};

const IdentityInfo& info(Identity id) {
  for (const auto& i : kIdentities)
    if (i.id == id) return i;
  throw UnknownIdentity("unknown identity");
}

template <typename T>
const T& need(const std::optional<T>& v, const char* name, Identity id) {
  if (!v)
    throw MissingBinding(std::string("identity ") + std::string(identity_name(id)) +
                         " needs a binding for " + name);
  return *v;
}

Rational sign(bool corrupt) { return corrupt ? -1 : 1; }

}  // namespace

std::span<const Identity> all_identities() { return kAll; }

std::string_view identity_name(Identity id) { return info(id).name; }

bool identity_uses_q(Identity id) { return info(id).needs_q; }

std::optional<Identity> identity_from_name(std::string_view name) {
  for (const auto& i : kIdentities)
    if (i.name == name) return i.id;
  return std::nullopt;
}

VerificationReport verify_identity(std::string_view name, const IdentityInputs& in,
                                   const VerifyOptions& options) {
  auto id = identity_from_name(name);
  if (!id) throw UnknownIdentity("unknown identity id: " + std::string(name));
  return verify_identity(*id, in, options);
}

VerificationReport verify_identity(Identity id, const IdentityInputs& in,
                                   const VerifyOptions& options) {
  const auto& meta = info(id);
  VerificationReport report;
  report.identity = std::string(meta.name);

  // Bind and echo exactly the symbols the identity uses.
  const Poly* f = meta.needs_f ? &need(in.f, "f", id) : nullptr;
  const Poly* g = meta.needs_g ? &need(in.g, "g", id) : nullptr;
  const Poly* h = meta.needs_h ? &need(in.h, "h", id) : nullptr;
  const Derivation* eta = meta.needs_eta ? &need(in.eta, "eta", id) : nullptr;
  const Derivation* mu = meta.needs_mu ? &need(in.mu, "mu", id) : nullptr;
  const unsigned p = meta.needs_p ? need(in.p, "p", id) : 0;
  const unsigned q = meta.needs_q ? need(in.q, "q", id) : 0;
  if (f) report.inputs.emplace_back("f", to_string(*f));
  if (g) report.inputs.emplace_back("g", to_string(*g));
  if (h) report.inputs.emplace_back("h", to_string(*h));
  if (eta) report.inputs.emplace_back("eta", to_string(*eta));
  if (mu) report.inputs.emplace_back("mu", to_string(*mu));
  if (meta.needs_p) report.inputs.emplace_back("p", std::to_string(p));
  if (meta.needs_q) report.inputs.emplace_back("q", std::to_string(q));

  const bool lemma41 = id == Identity::kLemma41Recurrence || id == Identity::kOmegaClosedForm;
  if ((meta.needs_p && p < 1 && !lemma41) || (meta.needs_q && q < 1))
    throw std::invalid_argument("identity " + report.identity + " needs p, q >= 1");

  const Rational s = sign(options.corrupt_rhs);

  if (id == Identity::kLemma2CommuteA) {
    // [Ω_p(f,η), g#1] is an element of A # 1; it must vanish.
    Poly defect = commutator_with_function(omega(p, *f, *eta), *g);
    if (options.corrupt_rhs) defect += f->pow(p) * apply_derivation(*eta, *g);
    if (!defect.is_zero()) report.fail_with({to_string(defect)});
    return report;
  }

  SmashElement diff(eta->dim());
  switch (id) {
    case Identity::kLemma3Commutator: {
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), omega(q, *f, *mu));
      SmashElement rhs = omega(p + q, *f, derivation_bracket(*eta, *mu)) +
                         s * Rational(p) * omega(p + q - 1, *f, apply_derivation(*mu, *f) * *eta) -
                         Rational(q) * omega(p + q - 1, *f, apply_derivation(*eta, *f) * *mu);
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma4Item1: {
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), omega(q, *f, *g * *mu)) -
                         smash_bracket(omega(p, *f, *g * *eta), omega(q, *f, *mu));
      SmashElement rhs = omega(p + q, *f,
                               apply_derivation(*eta, *g) * *mu + s * (apply_derivation(*mu, *g) * *eta));
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma4Item2: {
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), omega(q, *f, (*g * *h) * *eta)) -
                         smash_bracket(omega(p, *f, *g * *eta), omega(q, *f, *h * *eta));
      SmashElement rhs = s * Rational(2) *
                         omega(p + q, *f, (*h * apply_derivation(*eta, *g)) * *eta);
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma4Item3: {
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), omega(q, *f, *g * *eta)) -
                         smash_bracket(omega(p, *f, *g * *eta), omega(q, *f, *eta));
      SmashElement rhs = s * Rational(2) * omega(p + q, *f, apply_derivation(*eta, *g) * *eta);
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma4Item4: {
      Poly eta_h = apply_derivation(*eta, *h);
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), omega(q, *f, (*g * eta_h) * *eta)) -
                         smash_bracket(omega(p, *f, *g * *eta), omega(q, *f, eta_h * *eta));
      SmashElement rhs =
          s * Rational(2) * omega(p + q, *f, (apply_derivation(*eta, *g) * eta_h) * *eta);
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma4Item5: {
      Poly eta_h = apply_derivation(*eta, *h);
      SmashElement lhs = omega(p + q, *f, (*g * apply_derivation(*eta, eta_h)) * *eta);
      SmashElement rhs = omega(p + q, *f, apply_derivation(*eta, *g * eta_h) * *eta) -
                         s * omega(p + q, *f, (apply_derivation(*eta, *g) * eta_h) * *eta);
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma5DerivBracket: {
      Poly mu_f = apply_derivation(*mu, *f);
      SmashElement lhs = smash_bracket(omega(p, *f, *eta), from_term(Poly::constant(f->nvars(), 1), *mu));
      SmashElement rhs = omega(p, *f, derivation_bracket(*eta, *mu)) +
                         s * Rational(p) * omega(p - 1, *f, mu_f * *eta) -
                         Rational(p) * left_multiply(mu_f, omega(p - 1, *f, *eta));
      diff = lhs - rhs;
      break;
    }
    case Identity::kLemma41Recurrence: {
      SmashElement lhs = omega(p, *f, *f * *eta);
      SmashElement rhs = left_multiply(*f, omega(p, *f, *eta)) - s * omega(p + 1, *f, *eta);
      diff = lhs - rhs;
      break;
    }
    case Identity::kOmegaClosedForm: {
      diff = omega_by_definition(p, *f, *eta) - s * omega(p, *f, *eta);
      break;
    }
    default:
      throw UnknownIdentity("unknown identity");
  }
  if (!diff.is_zero()) report.fail_with(to_strings(diff));
  return report;
}

}  // namespace avmod
