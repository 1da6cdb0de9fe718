#include "avmod/localize.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "avmod/identities.hpp"

namespace avmod {

namespace {

void require_nonzero(const Poly& base) {
  if (base.is_zero()) throw std::invalid_argument("localizing at the zero polynomial");
}

/// Divides every entry by `base` if all divisions are exact.
template <typename Entries>
bool divide_all(Entries& entries, const Poly& base) {
  Entries out = entries;
  for (auto& e : out) {
    auto q = divide_exact(e, base);
    if (!q) return false;
    e = std::move(*q);
  }
  entries = std::move(out);
  return true;
}

std::vector<Poly> entries_of(const Derivation& e) { return e.coeffs(); }

ModuleElement raise(const LocalizedModuleElement& x, unsigned exponent) {
  return x.base.pow(exponent - x.denom_exp) * x.numerator;
}

void require_same_base(const Poly& a, const Poly& b) {
  if (a != b) throw std::invalid_argument("localized values over different bases");
}

}  // namespace

LocalizedPoly reduce(LocalizedPoly x) {
  require_nonzero(x.base);
  if (x.numerator.is_zero()) return {x.base, x.numerator, 0};
  std::array<Poly, 1> entries{x.numerator};
  while (x.denom_exp > 0 && divide_all(entries, x.base)) --x.denom_exp;
  x.numerator = entries[0];
  return x;
}

LocalizedDerivation reduce(LocalizedDerivation x) {
  require_nonzero(x.base);
  if (x.numerator.is_zero()) return {x.base, x.numerator, 0};
  auto entries = entries_of(x.numerator);
  while (x.denom_exp > 0 && divide_all(entries, x.base)) --x.denom_exp;
  x.numerator = Derivation(std::move(entries));
  return x;
}

LocalizedModuleElement reduce(LocalizedModuleElement x) {
  require_nonzero(x.base);
  if (x.numerator.is_zero()) return {x.base, x.numerator, 0};
  auto entries = x.numerator.entries();
  while (x.denom_exp > 0 && divide_all(entries, x.base)) --x.denom_exp;
  x.numerator = ModuleElement(std::move(entries), x.numerator.dim());
  return x;
}

bool same_value(const LocalizedPoly& a, const LocalizedPoly& b) {
  require_same_base(a.base, b.base);
  auto x = reduce(a), y = reduce(b);
  return x.denom_exp == y.denom_exp && x.numerator == y.numerator;
}

bool same_value(const LocalizedModuleElement& a, const LocalizedModuleElement& b) {
  require_same_base(a.base, b.base);
  auto x = reduce(a), y = reduce(b);
  return x.denom_exp == y.denom_exp && x.numerator == y.numerator;
}

LocalizedModuleElement operator+(const LocalizedModuleElement& a, const LocalizedModuleElement& b) {
  require_same_base(a.base, b.base);
  const unsigned e = std::max(a.denom_exp, b.denom_exp);
  return reduce({a.base, raise(a, e) + raise(b, e), e});
}

LocalizedModuleElement operator-(const LocalizedModuleElement& a, const LocalizedModuleElement& b) {
  require_same_base(a.base, b.base);
  const unsigned e = std::max(a.denom_exp, b.denom_exp);
  return reduce({a.base, raise(a, e) - raise(b, e), e});
}

LocalizedModuleElement operator*(const LocalizedPoly& a, const LocalizedModuleElement& m) {
  require_same_base(a.base, m.base);
  return reduce({m.base, a.numerator * m.numerator, a.denom_exp + m.denom_exp});
}

LocalizedPoly apply_localized(const LocalizedDerivation& ed, const LocalizedPoly& a) {
  require_same_base(ed.base, a.base);
  // (η/f^k)(a/f^j) = (η(a)·f − j·a·η(f)) / f^{k+j+1}.
  const Poly& f = ed.base;
  Poly num = apply_derivation(ed.numerator, a.numerator) * f -
             Rational(a.denom_exp) * a.numerator * apply_derivation(ed.numerator, f);
  return reduce({f, std::move(num), ed.denom_exp + a.denom_exp + 1});
}

LocalizedDerivation localized_bracket(const LocalizedDerivation& a, const LocalizedDerivation& b) {
  require_same_base(a.base, b.base);
  const Poly& f = a.base;
  Derivation num = f * derivation_bracket(a.numerator, b.numerator) -
                   Rational(b.denom_exp) * (apply_derivation(a.numerator, f) * b.numerator) +
                   Rational(a.denom_exp) * (apply_derivation(b.numerator, f) * a.numerator);
  return reduce({f, std::move(num), a.denom_exp + b.denom_exp + 1});
}

LocalizedModuleElement embed(const LocalizedModuleElement& m, const Poly& g) {
  return reduce({m.base * g, g.pow(m.denom_exp) * m.numerator, m.denom_exp});
}

// ---------------------------------------------------------- LocalizedModule

LocalizedModule::LocalizedModule(AVModule module, Poly base)
    : module_(std::move(module)), base_(std::move(base)) {
  require_nonzero(base_);
  if (base_.nvars() != module_.dim()) throw DimensionMismatch("base lives in the wrong dimension");
}

void LocalizedModule::require_base(const Poly& base) const { require_same_base(base_, base); }

LocalizedModuleElement LocalizedModule::element(const ModuleElement& m, unsigned denom_exp) const {
  return {base_, m, denom_exp};
}

LocalizedDerivation LocalizedModule::derivation(const Derivation& e, unsigned denom_exp) const {
  return {base_, e, denom_exp};
}

LocalizedPoly LocalizedModule::scalar(const Poly& a, unsigned denom_exp) const {
  return {base_, a, denom_exp};
}

LocalizedModuleElement LocalizedModule::act(const LocalizedDerivation& ed,
                                            const LocalizedModuleElement& me) const {
  require_base(ed.base);
  require_base(me.base);
  const unsigned n = module_.order();
  const unsigned k = ed.denom_exp, l = me.denom_exp;
  const Poly big_f = base_.pow(k);
  // Common exponent of every series term and of the Leibniz correction.
  const unsigned e = std::max(k * (n + 1) + l, k + l + 1);
  ModuleElement sum(module_.dim(), module_.rank());
  for (unsigned p = 0; p <= n; ++p) {
    ModuleElement term = act_jet(module_, omega_jet(p, big_f, ed.numerator, n), me.numerator);
    if (!term.is_zero()) sum += base_.pow(e - k * (p + 1) - l) * term;
  }
  if (l > 0) {
    Poly correction = Rational(l) * apply_derivation(ed.numerator, base_) * base_.pow(e - k - l - 1);
    sum -= correction * me.numerator;
  }
  return reduce({base_, std::move(sum), e});
}

LocalizedModuleElement LocalizedModule::act_by_inverse_powers(const Derivation& eta, unsigned k,
                                                              const ModuleElement& m) const {
  if (k < 1) throw std::invalid_argument("inverse-power expansion needs k >= 1");
  const unsigned n = module_.order();
  const unsigned e = n + k;
  ModuleElement sum(module_.dim(), module_.rank());
  for (unsigned j = 0; j <= n; ++j) {
    MultiIndex top(std::vector<unsigned>{j + k - 1});
    MultiIndex bottom(std::vector<unsigned>{k - 1});
    const Rational c = binomial(top, bottom);
    ModuleElement term = act_jet(module_, omega_jet(j, base_, eta, n), m);
    if (!term.is_zero()) sum += (c * base_.pow(e - j - k)) * term;
  }
  return reduce({base_, std::move(sum), e});
}

// ------------------------------------------------------------------- checks

namespace {

constexpr std::array<std::string_view, 6> kChecks{"welldefined",    "leibniz",      "bracket",
                                                  "inverse-square", "inverse-cube", "restriction"};

template <typename T>
const T& need(const std::optional<T>& v, const char* name, std::string_view check) {
  if (!v) throw MissingBinding("check " + std::string(check) + " needs a binding for " + name);
  return *v;
}

struct TestVector {
  std::string label;
  ModuleElement value;
};

std::vector<TestVector> test_vectors(const AVModule& m) {
  std::vector<TestVector> out;
  for (std::size_t b = 0; b < m.rank(); ++b) {
    ModuleElement e = ModuleElement::basis(m.dim(), m.rank(), b);
    out.push_back({"e" + std::to_string(b + 1), e});
    for (std::size_t v = 0; v < m.dim(); ++v)
      out.push_back({"x" + std::to_string(v + 1) + "*e" + std::to_string(b + 1),
                     Poly::variable(m.dim(), v) * e});
  }
  return out;
}

}  // namespace

std::span<const std::string_view> localized_check_ids() { return kChecks; }

VerificationReport verify_localized(std::string_view check, const AVModule& m,
                                    const LocalizedCheckInputs& in) {
  if (std::find(kChecks.begin(), kChecks.end(), check) == kChecks.end())
    throw UnknownIdentity("unknown localization check: " + std::string(check));
  VerificationReport report;
  report.identity = "localize-" + std::string(check);
  report.inputs.emplace_back("module", m.name());

  const Poly& f = need(in.f, "f", check);
  const Derivation& eta = need(in.eta, "eta", check);
  if (f.is_zero()) throw std::invalid_argument("zero denominator f");
  report.inputs.emplace_back("f", to_string(f));
  report.inputs.emplace_back("eta", to_string(eta));

  // Each check maps a test vector m to (lhs, rhs) in some M_F.
  using Sides = std::pair<LocalizedModuleElement, LocalizedModuleElement>;
  std::function<Sides(const ModuleElement&)> sides;

  if (check == "welldefined") {
    report.inputs.emplace_back("j", std::to_string(in.j));
    report.inputs.emplace_back("l", std::to_string(in.l));
    LocalizedModule mf(m, f);
    const Poly fj = f.pow(in.j);
    // Deliberately unreduced representatives on both arguments.
    LocalizedDerivation scaled{f, fj * eta, in.j};
    sides = [=](const ModuleElement& v) {
      LocalizedModuleElement plain{f, v, in.l};
      LocalizedModuleElement padded{f, fj * v, in.l + in.j};
      return Sides{mf.act(scaled, padded), mf.act(mf.derivation(eta), plain)};
    };
  } else if (check == "leibniz") {
    const Poly& a = need(in.a, "a", check);
    report.inputs.emplace_back("a", to_string(a));
    report.inputs.emplace_back("j", std::to_string(in.j));
    report.inputs.emplace_back("k", std::to_string(in.k));
    report.inputs.emplace_back("l", std::to_string(in.l));
    LocalizedModule mf(m, f);
    LocalizedDerivation ed{f, eta, in.k};
    LocalizedPoly scalar{f, a, in.j};
    sides = [=](const ModuleElement& v) {
      LocalizedModuleElement me{f, v, in.l};
      return Sides{mf.act(ed, scalar * me),
                   apply_localized(ed, scalar) * me + scalar * mf.act(ed, me)};
    };
  } else if (check == "bracket") {
    const Derivation& mu = need(in.mu, "mu", check);
    report.inputs.emplace_back("mu", to_string(mu));
    report.inputs.emplace_back("l", std::to_string(in.l));
    LocalizedModule mf(m, f);
    LocalizedDerivation a{f, eta, 1}, b{f, mu, 1};
    // −(η(f)/f³)µ + (µ(f)/f³)η + [η,µ]/f², each acting separately.
    LocalizedDerivation t1{f, -(apply_derivation(eta, f) * mu), 3};
    LocalizedDerivation t2{f, apply_derivation(mu, f) * eta, 3};
    LocalizedDerivation t3{f, derivation_bracket(eta, mu), 2};
    sides = [=](const ModuleElement& v) {
      LocalizedModuleElement me{f, v, in.l};
      return Sides{mf.act(a, mf.act(b, me)) - mf.act(b, mf.act(a, me)),
                   mf.act(t1, me) + mf.act(t2, me) + mf.act(t3, me)};
    };
  } else if (check == "inverse-square" || check == "inverse-cube") {
    const unsigned k = check == "inverse-square" ? 2 : 3;
    report.inputs.emplace_back("k", std::to_string(k));
    LocalizedModule mf(m, f);
    sides = [=](const ModuleElement& v) {
      return Sides{mf.act(mf.derivation(eta, k), mf.element(v)), mf.act_by_inverse_powers(eta, k, v)};
    };
  } else {  // restriction
    const Poly& g = need(in.g, "g", check);
    const Poly& c = need(in.h, "h", check);
    if (g.is_zero() || c.is_zero()) throw std::invalid_argument("zero denominator");
    report.inputs.emplace_back("g", to_string(g));
    report.inputs.emplace_back("h", to_string(c));
    // F = h·f and G = h·g; η = ν·f over F and µ = ν·g over G both equal ν/h.
    const Poly big_f = c * f, big_g = c * g;
    LocalizedModule mf(m, big_f), mg(m, big_g), mfg(m, big_f * big_g);
    LocalizedDerivation on_f{big_f, f * eta, 1}, on_g{big_g, g * eta, 1};
    LocalizedDerivation on_fg{big_f * big_g, (f * big_g) * eta, 1};
    sides = [=](const ModuleElement& v) {
      auto lhs = embed(mf.act(on_f, mf.element(v)), big_g);
      auto rhs = mg.act(on_g, mg.element(v));
      rhs = reduce({big_f * big_g, big_f.pow(rhs.denom_exp) * rhs.numerator, rhs.denom_exp});
      auto direct = mfg.act(on_fg, mfg.element(v));
      if (!same_value(rhs, direct)) return Sides{rhs, direct};
      return Sides{lhs, rhs};
    };
  }

  for (const auto& [label, v] : test_vectors(m)) {
    auto [lhs, rhs] = sides(v);
    if (!same_value(lhs, rhs)) {
      std::vector<std::string> witness{"on " + label + ": lhs - rhs ="};
      for (auto& s : to_strings(lhs - rhs)) witness.push_back(std::move(s));
      report.fail_with(std::move(witness));
      break;
    }
  }
  return report;
}

std::string to_string(const LocalizedPoly& x) {
  if (x.denom_exp == 0) return to_string(x.numerator);
  return "(" + to_string(x.numerator) + ")/(" + to_string(x.base) + ")^" + std::to_string(x.denom_exp);
}

std::vector<std::string> to_strings(const LocalizedModuleElement& x) {
  std::vector<std::string> out;
  for (const auto& p : x.numerator.entries()) out.push_back(to_string(LocalizedPoly{x.base, p, x.denom_exp}));
  return out;
}

}  // namespace avmod
