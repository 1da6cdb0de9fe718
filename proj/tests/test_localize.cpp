#include <doctest.h>

#include <vector>

#include "avmod/identities.hpp"
#include "avmod/localize.hpp"
#include "avmod/sampling.hpp"
#include "avmod/zoo.hpp"
#include "helpers.hpp"

using namespace avmod;
using avmod::test::D;
using avmod::test::P;

namespace {

SampleShape small_shape() {
  SampleShape s;
  s.max_degree = 2;
  return s;
}

ModuleElement as_element(const Derivation& e) { return ModuleElement(e.coeffs(), e.dim()); }

LocalizedCheckInputs random_inputs(Rng& rng, std::size_t d) {
  LocalizedCheckInputs in;
  in.f = random_nonconstant_poly(rng, d, small_shape());
  in.g = random_nonconstant_poly(rng, d, small_shape());
  in.h = random_nonconstant_poly(rng, d, small_shape());
  in.a = random_poly(rng, d, small_shape());
  in.eta = random_derivation(rng, d, small_shape());
  in.mu = random_derivation(rng, d, small_shape());
  in.j = static_cast<unsigned>(rng.between(0, 2));
  in.k = static_cast<unsigned>(rng.between(1, 2));
  in.l = static_cast<unsigned>(rng.between(0, 2));
  return in;
}

}  // namespace

TEST_CASE("reduce examples") {
  const Poly x = P("x1", 1);
  const LocalizedPoly a = reduce(LocalizedPoly{x, P("x1^2", 1), 3});
  CHECK(a.numerator == P("1", 1));
  CHECK(a.denom_exp == 1);
  const LocalizedPoly b = reduce(LocalizedPoly{x, P("x1 + 1", 1), 2});
  CHECK(b.numerator == P("x1 + 1", 1));
  CHECK(b.denom_exp == 2);
  const LocalizedPoly z = reduce(LocalizedPoly{x, P("0", 1), 5});
  CHECK(z.numerator.is_zero());
  CHECK(z.denom_exp == 0);
  CHECK_THROWS(reduce(LocalizedPoly{P("0", 1), x, 1}));
  // A module element reduces only if every entry is divisible.
  const Poly f = P("x1 + x2", 2);
  const LocalizedModuleElement m =
      reduce(LocalizedModuleElement{f, ModuleElement({f * P("x1", 2), f.pow(2)}, 2), 2});
  CHECK(m.denom_exp == 1);
  CHECK(m.numerator == ModuleElement({P("x1", 2), f}, 2));
  CHECK(same_value(LocalizedPoly{x, P("x1^3", 1), 2}, LocalizedPoly{x, x, 0}));
  CHECK_FALSE(same_value(LocalizedPoly{x, P("1", 1), 2}, LocalizedPoly{x, P("1", 1), 1}));
}

TEST_CASE("localized derivations: application and bracket") {
  const Poly x = P("x1", 1);
  const LocalizedDerivation d_over_x{x, D("d1", 1), 1};
  // (∂/x)(1/x) = −1/x³.
  CHECK(same_value(apply_localized(d_over_x, LocalizedPoly{x, P("1", 1), 1}),
                   LocalizedPoly{x, P("-1", 1), 3}));
  // [∂/x, x∂/x] = ∂/x².
  const LocalizedDerivation br = reduce(localized_bracket(d_over_x, LocalizedDerivation{x, D("x1*d1", 1), 1}));
  CHECK(br.denom_exp == 2);
  CHECK(br.numerator == D("d1", 1));
}

TEST_CASE("the one-form witness act(d/x, dx) = -dx/x^2") {
  const LocalizedModule mf(differential_forms(1), P("x1", 1));
  const LocalizedModuleElement out = mf.act(mf.derivation(D("d1", 1), 1), mf.element(ModuleElement::basis(1, 1, 0)));
  CHECK(out.denom_exp == 2);
  CHECK(out.numerator == -ModuleElement::basis(1, 1, 0));
  CHECK(to_strings(out) == std::vector<std::string>{"(-1)/(x1)^2"});
}

TEST_CASE("localized one-forms in d=1 follow the rational Lie derivative") {
  // L_{(b/f^k)∂}((a/f^l)dx) = (b/f^k)(a/f^l)' dx + (a/f^l)(b/f^k)' dx.
  Rng rng(211);
  const AVModule forms = differential_forms(1);
  for (int t = 0; t < 60; ++t) {
    const Poly f = random_nonconstant_poly(rng, 1, small_shape());
    const Poly a = random_poly(rng, 1, small_shape()), b = random_poly(rng, 1, small_shape());
    const auto k = static_cast<unsigned>(rng.between(0, 3));
    const auto l = static_cast<unsigned>(rng.between(0, 3));
    const Poly df = f.partial(0);
    const Poly expected = b * (a.partial(0) * f - Poly::constant(1, l) * a * df) +
                          a * (b.partial(0) * f - Poly::constant(1, k) * b * df);
    const LocalizedModule mf(forms, f);
    const LocalizedModuleElement got =
        mf.act(mf.derivation(Derivation({b}), k), mf.element(ModuleElement({a}, 1), l));
    CHECK(same_value(got, LocalizedModuleElement{f, ModuleElement({expected}, 1), k + l + 1}));
  }
}

TEST_CASE("localized adjoint module acts by the localized bracket") {
  Rng rng(223);
  for (std::size_t d = 1; d <= 2; ++d) {
    const AVModule adj = tangent_adjoint(d);
    for (int t = 0; t < 25; ++t) {
      const Poly f = random_nonconstant_poly(rng, d, small_shape());
      const Derivation e = random_derivation(rng, d, small_shape()), v = random_derivation(rng, d, small_shape());
      const auto k = static_cast<unsigned>(rng.between(0, 2));
      const auto l = static_cast<unsigned>(rng.between(0, 2));
      const LocalizedModule mf(adj, f);
      const LocalizedModuleElement got = mf.act(mf.derivation(e, k), mf.element(as_element(v), l));
      const LocalizedDerivation br = localized_bracket({f, e, k}, {f, v, l});
      CHECK(same_value(got, LocalizedModuleElement{f, as_element(br.numerator), br.denom_exp}));
    }
  }
}

TEST_CASE("inverse-power expansion") {
  Rng rng(227);
  for (const AVModule& m : zoo_catalog()) {
    const std::size_t d = m.dim();
    const Poly f = random_nonconstant_poly(rng, d, small_shape());
    const Derivation e = random_derivation(rng, d, small_shape());
    const ModuleElement v = random_module_element(rng, d, m.rank(), small_shape());
    const LocalizedModule mf(m, f);
    for (unsigned k = 1; k <= 3; ++k)
      CHECK_MESSAGE(same_value(mf.act(mf.derivation(e, k), mf.element(v)), mf.act_by_inverse_powers(e, k, v)),
                    m.name(), " k=", k);
  }
  const LocalizedModule mf(differential_forms(1), P("x1", 1));
  CHECK_THROWS(mf.act_by_inverse_powers(D("d1", 1), 0, ModuleElement::basis(1, 1, 0)));
}

TEST_CASE("an unlocalized derivation acts as in M") {
  Rng rng(229);
  for (const AVModule& m : zoo_catalog()) {
    const std::size_t d = m.dim();
    const Poly f = random_nonconstant_poly(rng, d, small_shape());
    const Derivation e = random_derivation(rng, d, small_shape());
    const ModuleElement v = random_module_element(rng, d, m.rank(), small_shape());
    const LocalizedModule mf(m, f);
    CHECK(same_value(mf.act(mf.derivation(e), mf.element(v)), mf.element(act_derivation(m, e, v))));
  }
}

TEST_CASE("embedding into M_fg") {
  const Poly f = P("x1", 2), g = P("x2 + 1", 2);
  const LocalizedModuleElement m{f, ModuleElement({P("x1 + x2", 2), P("3", 2)}, 2), 2};
  const LocalizedModuleElement e = embed(m, g);
  CHECK(e.base == f * g);
  CHECK(e.denom_exp == 2);
  CHECK(e.numerator == g.pow(2) * m.numerator);
  // Embedding commutes with the action of an element of 𝒱_f.
  const AVModule adj = tangent_adjoint(2);
  const LocalizedModule mf(adj, f), mfg(adj, f * g);
  const Derivation eta = D("x2*d1 + d2", 2);
  const LocalizedModuleElement lhs = embed(mf.act(mf.derivation(eta, 1), m), g);
  const LocalizedModuleElement rhs = mfg.act(LocalizedDerivation{f * g, g * eta, 1}, e);
  CHECK(same_value(lhs, rhs));
}

TEST_CASE("verify_localized: every check passes on the catalog") {
  Rng rng(233);
  for (const AVModule& m : zoo_catalog()) {
    const LocalizedCheckInputs in = random_inputs(rng, m.dim());
    for (std::string_view check : localized_check_ids()) {
      const VerificationReport r = verify_localized(check, m, in);
      CHECK_MESSAGE(r.passed, m.name(), " ", check);
      CHECK(r.identity == "localize-" + std::string(check));
    }
  }
}

TEST_CASE("verify_localized examples and errors") {
  const AVModule forms = differential_forms(1);
  LocalizedCheckInputs in;
  in.f = P("x1", 1);
  in.eta = D("d1", 1);
  in.mu = D("x1*d1", 1);
  CHECK(verify_localized("welldefined", forms, in).passed);
  CHECK(verify_localized("bracket", forms, in).passed);
  CHECK(verify_localized("inverse-square", forms, in).passed);
  CHECK(verify_localized("inverse-cube", forms, in).passed);
  CHECK_THROWS_AS(verify_localized("leibniz", forms, in), MissingBinding);
  CHECK_THROWS_AS(verify_localized("restriction", forms, in), MissingBinding);
  CHECK_THROWS_AS(verify_localized("sheafify", forms, in), UnknownIdentity);
  in.f = P("0", 1);
  CHECK_THROWS(verify_localized("welldefined", forms, in));
  CHECK(localized_check_ids().size() == 6);
}

TEST_CASE("localizing at mismatched dimensions is rejected") {
  CHECK_THROWS_AS(LocalizedModule(differential_forms(2), P("x1", 1)), DimensionMismatch);
  CHECK_THROWS(LocalizedModule(differential_forms(1), P("0", 1)));
}
