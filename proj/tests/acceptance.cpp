// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "avmod/commands.hpp"
#include "avmod/identities.hpp"
#include "avmod/localize.hpp"
#include "avmod/sampling.hpp"
#include "avmod/zoo.hpp"

using namespace avmod;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Poly P(const std::string& text, std::size_t dim) { return parse_poly(text, dim); }
Derivation D(const std::string& text, std::size_t dim) { return parse_derivation(text, dim); }

const std::vector<std::string> kIdentitySuites{"lemma2", "lemma3", "lemma4", "lemma5", "lemma4.1"};

void criterion1(Outcome& o) {
  const RunConfig c;  // dims 1..3, p,q ∈ 1..4, degree 4, 112 samples
  const auto start = std::chrono::steady_clock::now();
  const CommandResult r = cmd_verify(c, kIdentitySuites);
  const double elapsed = seconds_since(start);
  o.require(c.trials >= 100 && c.p_max == 4 && c.max_degree == 4 && c.dims == std::vector<std::size_t>{1, 2, 3},
            "configuration below the required sweep");
  o.require(r.exit_status == 0, "exit status " + std::to_string(r.exit_status));
  o.require(r.report["summary"]["failed"] == 0, "identity violations");
  o.require(elapsed < 60.0, "runtime over 60 s");
  std::size_t ids = 0;
  for (const auto& row : r.report["results"]) ids += row["dim"] == 1 ? 1 : 0;
  o.require(ids == 9, "expected 9 identities per dimension");
  o.detail << r.report["summary"]["checks"] << " checks over " << ids << " identities x 3 dims, "
           << c.trials << " samples each, " << elapsed << " s";
}

void criterion2(Outcome& o) {
  const RunConfig c;
  const CommandResult r = cmd_verify(c, {"closed-form"});
  o.require(r.exit_status == 0, "closed form differs from the definitional sum");
  o.detail << r.report["summary"]["checks"] << " closed-form checks on the criterion-1 samples";
}

void criterion3(Outcome& o) {
  const unsigned forms = min_annihilating_order(differential_forms(1), P("x1", 1), D("d1", 1));
  o.require(forms == 2, "min_annihilating_order(forms(1), x, d) = " + std::to_string(forms));
  for (std::size_t d = 1; d <= 2; ++d) {
    const AVModule adj = tangent_adjoint(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) {
        o.require(annihilates_omega(adj, 2, Poly::variable(d, k), Derivation::coordinate(d, i)),
                  "Omega_2 on adjoint(" + std::to_string(d) + ")");
        o.require(annihilates_omega(adj, 2, P(d == 1 ? "x1^3 + 2*x1" : "x1^2*x2 - x2^3", d),
                                    D(d == 1 ? "x1^2*d1" : "x2*d1 + x1*x2*d2", d)),
                  "Omega_2 of a nonlinear f on adjoint(" + std::to_string(d) + ")");
      }
  }
  for (std::size_t d = 1; d <= 2; ++d)
    o.require(lie_map_order(trivial_dmodule(d, 2)) == 0, "trivial D-module has nonzero order");
  o.detail << "min_annihilating_order(forms(1),x,d)=" << forms
           << "; Omega_2 annihilates adjoint(1), adjoint(2); lie_map_order(D-module)=0";
}

void criterion4(Outcome& o) {
  std::size_t count = 0;
  for (const AVModule& m : zoo_catalog()) {
    const unsigned r2 = static_cast<unsigned>(m.rank() * m.rank());
    const unsigned order = lie_map_order(m);
    const OracleResult oracle = oracle_order(m, r2);
    o.require(m.rank() <= 6, m.name() + " rank above 6");
    o.require(order == oracle.order && order <= r2,
              m.name() + ": lie_map_order " + std::to_string(order) + ", oracle " + std::to_string(oracle.order));
    ++count;
  }
  o.detail << count << " catalog modules with lie_map_order = oracle_order <= rank^2; jets d=1:";
  for (unsigned n = 0; n <= 3; ++n) {
    const AVModule j = jet_module(1, n);
    const unsigned oracle = oracle_order(j, static_cast<unsigned>(j.rank() * j.rank())).order;
    o.require(j.rank() == n + 1 && lie_map_order(j) == n && oracle == n, "jet table row " + std::to_string(n));
    o.detail << " J" << n << "(rank " << j.rank() << ", order " << oracle << ")";
  }
}

void module_suite(Outcome& o, const std::string& suite, unsigned trials, const std::string& label) {
  RunConfig c;
  c.dims = {1, 2};
  c.trials = trials;
  const CommandResult r = cmd_verify(c, {suite});
  o.require(r.exit_status == 0, suite + " suite failed");
  o.detail << r.report["summary"]["checks"] << " " << label << " over " << r.report["results"].size()
           << " modules";
}

void criterion5(Outcome& o) { module_suite(o, "annihilation", 50, "annihilation checks (rank^2 < p <= rank^2+3)"); }

void criterion6(Outcome& o) {
  module_suite(o, "localize", 50, "localization checks");
  const LocalizedModule mf(differential_forms(1), P("x1", 1));
  const LocalizedModuleElement got = mf.act(mf.derivation(D("d1", 1), 1), mf.element(ModuleElement::basis(1, 1, 0)));
  // Lie-derivative oracle: L_{(1/x)∂}(dx) = d(1/x) = −dx/x².
  const LocalizedModuleElement oracle{P("x1", 1), ModuleElement({P("-1", 1)}, 1), 2};
  o.require(same_value(got, oracle), "act(d/x, dx) differs from -dx/x^2");
  o.detail << "; act(d/x, dx) = " << to_strings(got)[0] << " dx";
}

void criterion7(Outcome& o) {
  module_suite(o, "exterior", 1, "top-exterior-power checks");
  for (const AVModule& m : zoo_catalog()) {
    const auto r = static_cast<unsigned>(m.rank());
    const AVModule top = exterior_power(m, r);
    o.require(!top.is_zero_module() && top.validation().passed, m.name() + ": top power");
    o.require(exterior_power(m, r + 1).is_zero_module(), m.name() + ": power above rank");
  }
}

void criterion8(Outcome& o) { module_suite(o, "representation", 6, "representation samples"); }

void criterion9(Outcome& o) {
  RunConfig c;
  c.trials = 10;
  c.inject_fault = true;
  const CommandResult r = cmd_verify(c, [] {
    auto s = kIdentitySuites;
    s.push_back("closed-form");
    return s;
  }());
  o.require(r.exit_status == 1, "corrupted identities exit " + std::to_string(r.exit_status));
  std::size_t caught = 0;
  for (const auto& row : r.report["results"]) {
    o.require(row["failed"].get<std::size_t>() > 0, "corruption of " + row["identity"].get<std::string>() +
                                                          " in dim " + row["dim"].dump() + " went unnoticed");
    caught += row["failed"].get<std::size_t>() > 0 ? 1 : 0;
  }

  // A non-flat connection and a second-order tensor that is not bracket compatible.
  std::vector<PolyMatrix> gamma{PolyMatrix(2, 1, 1), PolyMatrix(2, 1, 1)};
  gamma[0](0, 0) = P("x2", 2);
  bool rejected = false;
  try {
    trivial_dmodule(2, 1, gamma);
  } catch (const InvalidModule& e) {
    rejected = !e.report().passed && !e.report().witness.empty();
  }
  o.require(rejected, "non-flat connection accepted");
  ModuleData bad;
  bad.name = "second-derivative";
  bad.dim = 1;
  bad.rank = 1;
  bad.order = 2;
  bad.tensor.emplace(TensorKey{0, MultiIndex({2})}, PolyMatrix::identity(1, 1));
  o.require(!validate_module(bad).passed, "second-order tensor accepted");
  o.detail << "fault injection caught in " << caught << "/" << r.report["results"].size()
           << " identity rows (exit " << r.exit_status << "); incompatible tensors rejected with witness";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"identity suites", criterion1},         {"closed-form coherence", criterion2},
      {"worked examples", criterion3},          {"order bound", criterion4},
      {"uniform annihilation", criterion5},    {"localization", criterion6},
      {"exterior powers", criterion7},         {"representation property", criterion8},
      {"negative controls", criterion9}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += o.passed ? 0 : 1;
    std::cout << "criterion " << k + 1 << ": " << (o.passed ? "PASS" : "FAIL") << " - " << criteria[k].first
              << ": " << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
