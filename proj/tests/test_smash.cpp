#include <doctest.h>

#include <utility>
#include <vector>

#include "avmod/identities.hpp"
#include "avmod/sampling.hpp"
#include "avmod/smash.hpp"
#include "helpers.hpp"

using namespace avmod;
using avmod::test::D;
using avmod::test::P;

namespace {

// Term-list model of A#V: a list of pairs f # η, bracketed term by term with
// fg#[η,µ] + fη(g)#µ − gµ(f)#η. Independent of the doubled-variable code.
using TermList = std::vector<std::pair<Poly, Derivation>>;

SmashElement canonical(const TermList& terms, std::size_t dim) {
  SmashElement u(dim);
  for (const auto& [f, e] : terms) u += from_term(f, e);
  return u;
}

TermList bracket_terms(const TermList& a, const TermList& b) {
  TermList out;
  for (const auto& [f, eta] : a)
    for (const auto& [g, mu] : b) {
      out.emplace_back(f * g, derivation_bracket(eta, mu));
      out.emplace_back(f * apply_derivation(eta, g), mu);
      out.emplace_back(-(g * apply_derivation(mu, f)), eta);
    }
  return out;
}

TermList random_terms(Rng& rng, std::size_t dim, const SampleShape& shape) {
  TermList out;
  const auto count = rng.between(1, 2);
  for (int k = 0; k < count; ++k)
    out.emplace_back(random_poly(rng, dim, shape), random_derivation(rng, dim, shape));
  return out;
}

// Doubled-variable polynomial: x_i is variable i, y_i is variable d + i.
Poly XY(const std::string& text, std::size_t dim) { return P(text, 2 * dim); }

}  // namespace

TEST_CASE("from_term examples") {
  CHECK(from_term(P("1", 1), D("d1", 1)).component(0) == XY("1", 1));
  CHECK(from_term(P("x1", 1), D("x1*d1", 1)).component(0) == XY("x1*x2", 1));
  CHECK(from_term(P("0", 2), D("x1*d1 + d2", 2)).is_zero());
  CHECK_THROWS_AS(from_term(P("x1", 1), D("d1", 2)), DimensionMismatch);
}

TEST_CASE("from_term is linear in both arguments") {
  Rng rng(5);
  SampleShape shape;
  for (int t = 0; t < 30; ++t) {
    const Poly f = random_poly(rng, 2, shape), g = random_poly(rng, 2, shape);
    const Derivation e = random_derivation(rng, 2, shape), m = random_derivation(rng, 2, shape);
    CHECK(from_term(f + g, e) == from_term(f, e) + from_term(g, e));
    CHECK(from_term(f, e + m) == from_term(f, e) + from_term(f, m));
  }
}

TEST_CASE("smash_bracket examples") {
  // [1#∂, x#∂] = 1#∂ from fg#[η,µ] + fη(g)#µ − gµ(f)#η.
  CHECK(smash_bracket(from_term(P("1", 1), D("d1", 1)), from_term(P("x1", 1), D("d1", 1))) ==
        from_term(P("1", 1), D("d1", 1)));
  // [x#∂, 1#x∂]: the associative expansion gives x#(∂·x∂ − x∂·∂) − x#∂ = 0.
  CHECK(smash_bracket(from_term(P("x1", 1), D("d1", 1)), from_term(P("1", 1), D("x1*d1", 1))).is_zero());
  Rng rng(7);
  const SmashElement u = random_smash(rng, 2, SampleShape{});
  CHECK(smash_bracket(u, u).is_zero());
}

TEST_CASE("smash_bracket agrees with the term-list oracle") {
  Rng rng(17);
  SampleShape shape;
  shape.max_degree = 3;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int t = 0; t < 40; ++t) {
      const TermList a = random_terms(rng, d, shape), b = random_terms(rng, d, shape);
      CHECK(smash_bracket(canonical(a, d), canonical(b, d)) == canonical(bracket_terms(a, b), d));
    }
}

TEST_CASE("smash_bracket is antisymmetric and satisfies Jacobi") {
  Rng rng(19);
  SampleShape shape;
  shape.max_degree = 3;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int t = 0; t < 25; ++t) {
      const SmashElement a = random_smash(rng, d, shape), b = random_smash(rng, d, shape),
                         c = random_smash(rng, d, shape);
      CHECK(smash_bracket(a, b) == -smash_bracket(b, a));
      CHECK((smash_bracket(a, smash_bracket(b, c)) + smash_bracket(b, smash_bracket(c, a)) +
             smash_bracket(c, smash_bracket(a, b)))
                .is_zero());
    }
}

TEST_CASE("omega examples") {
  const Poly x = P("x1", 1);
  const Derivation d = D("d1", 1);
  CHECK(omega(1, x, d) == from_term(x, d) - from_term(P("1", 1), D("x1*d1", 1)));
  CHECK(omega(1, x, d).component(0) == XY("x1 - x2", 1));
  CHECK(omega(2, x, d).component(0) == XY("x1^2 - 2*x1*x2 + x2^2", 1));
  CHECK(omega(0, x, d) == from_term(P("1", 1), d));
  for (unsigned p = 1; p <= 4; ++p) CHECK(omega(p, P("7/2", 2), D("x1*d2 + d1", 2)).is_zero());
}

TEST_CASE("omega closed form equals the definitional sum") {
  Rng rng(23);
  SampleShape shape;
  shape.max_degree = 4;
  for (std::size_t d = 1; d <= 3; ++d)
    for (unsigned p = 0; p <= 5; ++p)
      for (int t = 0; t < 6; ++t) {
        const Poly f = random_poly(rng, d, shape);
        const Derivation e = random_derivation(rng, d, shape);
        CHECK(omega_by_definition(p, f, e) == omega(p, f, e));
      }
}

TEST_CASE("omega_multi examples") {
  const Poly x = P("x1", 1);
  const std::vector<Poly> twice{x, x};
  CHECK(omega_multi(twice, D("d1", 1)) == omega(2, x, D("d1", 1)));
  const std::vector<Poly> coords{P("x1", 2), P("x2", 2)};
  const SmashElement u = omega_multi(coords, D("d1", 2));
  CHECK(u.component(0) == XY("x1*x2 - x1*x4 - x2*x3 + x3*x4", 2));
  CHECK(u.component(1).is_zero());
  const std::vector<Poly> constant{P("3", 2)};
  CHECK(omega_multi(constant, D("x1*d2", 2)).is_zero());
}

TEST_CASE("omega_multi with equal entries is omega, and multiplies out") {
  Rng rng(29);
  SampleShape shape;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int t = 0; t < 10; ++t) {
      const Poly f = random_nonconstant_poly(rng, d, shape), g = random_poly(rng, d, shape);
      const Derivation e = random_derivation(rng, d, shape);
      const std::vector<Poly> same{f, f, f};
      CHECK(omega_multi(same, e) == omega(3, f, e));
      const std::vector<Poly> pair{f, g};
      // (f⊗1 − 1⊗f)(g⊗1 − 1⊗g) applied to 1#e, expanded by tensor_act.
      const SmashElement base = from_term(P("1", d), e);
      const SmashElement expected = tensor_act(f * g, P("1", d), base) - tensor_act(f, g, base) -
                                    tensor_act(g, f, base) + tensor_act(P("1", d), f * g, base);
      CHECK(omega_multi(pair, e) == expected);
    }
}

TEST_CASE("tensor_act examples and module property") {
  const SmashElement unit = from_term(P("1", 1), D("d1", 1));
  CHECK(tensor_act(P("1", 1), P("1", 1), unit) == unit);
  CHECK(tensor_act(P("x1", 1), P("1", 1), unit) == from_term(P("x1", 1), D("d1", 1)));
  CHECK(tensor_act(P("1", 1), P("x1", 1), unit) == from_term(P("1", 1), D("x1*d1", 1)));
  CHECK(tensor_act(P("1", 1), P("x1", 1), unit).component(0) == XY("x2", 1));
  Rng rng(31);
  SampleShape shape;
  shape.max_degree = 3;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int t = 0; t < 20; ++t) {
      const Poly a = random_poly(rng, d, shape), a2 = random_poly(rng, d, shape);
      const Poly b = random_poly(rng, d, shape), b2 = random_poly(rng, d, shape);
      const SmashElement u = random_smash(rng, d, shape);
      CHECK(tensor_act(a * a2, b * b2, u) == tensor_act(a, b, tensor_act(a2, b2, u)));
      CHECK(tensor_act(a, P("1", d), u) == left_multiply(a, u));
    }
}

TEST_CASE("commutator_with_function matches the term-list oracle") {
  Rng rng(37);
  SampleShape shape;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int t = 0; t < 20; ++t) {
      const TermList a = random_terms(rng, d, shape);
      const Poly g = random_poly(rng, d, shape);
      Poly expected(d);
      for (const auto& [f, e] : a) expected += f * apply_derivation(e, g);
      CHECK(commutator_with_function(canonical(a, d), g) == expected);
    }
}

TEST_CASE("diagonal jets: Taylor path agrees with full expansion") {
  Rng rng(41);
  SampleShape shape;
  shape.max_degree = 3;
  for (std::size_t d = 1; d <= 2; ++d)
    for (unsigned order = 0; order <= 3; ++order)
      for (unsigned p = 0; p <= 5; ++p) {
        const Poly f = random_poly(rng, d, shape);
        const Derivation e = random_derivation(rng, d, shape);
        CHECK(omega_jet(p, f, e, order) == diagonal_jet(omega(p, f, e), order));
        const auto fs = random_distinct_nonconstant(rng, d, p + 1, shape);
        CHECK(omega_multi_jet(fs, e, order) == diagonal_jet(omega_multi(fs, e), order));
      }
}

TEST_CASE("verify_identity examples") {
  IdentityInputs in;
  in.f = P("x1", 1);
  in.eta = D("d1", 1);
  in.mu = D("x1*d1", 1);
  in.p = 1;
  in.q = 1;
  CHECK(verify_identity("lemma3-commutator", in).passed);

  IdentityInputs rec;
  rec.f = P("x1^2", 1);
  rec.eta = D("d1", 1);
  rec.p = 2;
  CHECK(verify_identity("lemma4.1-recurrence", rec).passed);

  const VerificationReport bad = verify_identity("lemma3-commutator", in, {true});
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.witness.empty());

  CHECK_THROWS_AS(verify_identity("lemma9", in), UnknownIdentity);
  IdentityInputs missing = in;
  missing.mu.reset();
  CHECK_THROWS_AS(verify_identity("lemma3-commutator", missing), MissingBinding);
}

TEST_CASE("a passing report has no witness; inputs are echoed") {
  IdentityInputs in;
  in.f = P("x1^2 + x2", 2);
  in.g = P("x1*x2", 2);
  in.eta = D("x2*d1", 2);
  in.p = 3;
  const VerificationReport r = verify_identity(Identity::kLemma2CommuteA, in);
  CHECK(r.passed);
  CHECK(r.witness.empty());
  REQUIRE(r.inputs.size() == 4);
  CHECK(r.inputs[0] == std::pair<std::string, std::string>{"f", "x1^2 + x2"});
  CHECK(r.inputs[3] == std::pair<std::string, std::string>{"p", "3"});
}

TEST_CASE("every identity passes on exhaustive p,q with random samples") {
  Rng rng(43);
  SampleShape shape;
  shape.max_degree = 3;
  for (Identity id : all_identities())
    for (std::size_t d = 1; d <= 2; ++d)
      for (unsigned p = 1; p <= 3; ++p)
        for (unsigned q = 1; q <= 3; ++q) {
          IdentityInputs in;
          in.f = random_nonconstant_poly(rng, d, shape);
          in.g = random_poly(rng, d, shape);
          in.h = random_poly(rng, d, shape);
          in.eta = random_derivation(rng, d, shape);
          in.mu = random_derivation(rng, d, shape);
          in.p = p;
          in.q = q;
          const VerificationReport r = verify_identity(id, in);
          CHECK_MESSAGE(r.passed, identity_name(id), " p=", p, " q=", q);
        }
}

TEST_CASE("negative controls catch every identity on inputs with a nonzero flipped term") {
  IdentityInputs in;
  in.f = P("x1", 1);
  in.g = P("x1", 1);
  in.h = P("x1", 1);
  in.eta = D("d1", 1);
  in.mu = D("x1*d1", 1);
  in.p = 1;
  in.q = 1;
  for (Identity id : all_identities()) {
    const VerificationReport r = verify_identity(id, in, {true});
    CHECK_MESSAGE(!r.passed, identity_name(id));
    CHECK_MESSAGE(!r.witness.empty(), identity_name(id));
  }
}

TEST_CASE("lemma4-2 fixes the bracket orientation") {
  // Swapping the two brackets, [Ω_p(f,gη),Ω_q(f,hη)] − [Ω_p(f,η),Ω_q(f,ghη)],
  // flips the sign of 2Ω_{p+q}(f,hη(g)η), so only one orientation holds.
  const Poly f = P("x1", 1), g = P("x1", 1), h = P("1", 1);
  const Derivation eta = D("d1", 1);
  const SmashElement swapped_lhs = smash_bracket(omega(1, f, g * eta), omega(1, f, h * eta)) -
                                   smash_bracket(omega(1, f, eta), omega(1, f, (g * h) * eta));
  const SmashElement rhs = Rational(2) * omega(2, f, (h * apply_derivation(eta, g)) * eta);
  CHECK_FALSE(rhs.is_zero());
  CHECK(swapped_lhs == -rhs);
}
