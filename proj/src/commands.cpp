#include "avmod/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "avmod/identities.hpp"
#include "avmod/localize.hpp"
#include "avmod/module_io.hpp"
#include "avmod/sampling.hpp"

namespace avmod {

using nlohmann::json;

namespace {

/// Failing records kept per result row; the counts always cover everything.
constexpr std::size_t kMaxListedFailures = 20;

json envelope(const std::string& command) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}};
}

/// Accumulates pass/fail counts and failing records for one result row.
struct Tally {
  json row;
  std::size_t checks = 0, failed = 0;
  json failures = json::array();

  void add(const VerificationReport& r) {
    ++checks;
    if (r.passed) return;
    ++failed;
    if (failures.size() < kMaxListedFailures) failures.push_back(report_to_json(r));
  }

  json finish() {
    row["checks"] = checks;
    row["passed"] = checks - failed;
    row["failed"] = failed;
    row["failures"] = failures;
    if (failed > failures.size()) row["failures_omitted"] = failed - failures.size();
    return row;
  }
};

json config_to_json(const RunConfig& c, const std::vector<std::string>& suites) {
  return {{"dims", c.dims},     {"degree", c.max_degree}, {"trials", c.trials},
          {"seed", c.seed},     {"pmax", c.p_max},        {"terms", c.max_terms},
          {"suites", suites},   {"inject_fault", c.inject_fault}};
}

CommandResult finish(json report, std::size_t checks, std::size_t failed) {
  report["summary"] = {{"checks", checks}, {"passed", checks - failed}, {"failed", failed}};
  const int status = failed == 0 ? 0 : 1;
  report["exit_status"] = status;
  return {std::move(report), status};
}

CommandResult input_error(const std::string& command, const std::string& kind, const std::string& message,
                          const VerificationReport* witness = nullptr) {
  json report = envelope(command);
  report["error"] = {{"kind", kind}, {"message", message}};
  if (witness) report["error"]["validation"] = report_to_json(*witness);
  report["summary"] = {{"checks", 0}, {"passed", 0}, {"failed", 0}};
  report["exit_status"] = 2;
  return {std::move(report), 2};
}

/// Runs body; anything wrong with the inputs becomes an exit-2 envelope.
CommandResult guarded(const std::string& command, const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const InvalidModule& e) {
    return input_error(command, "validation", e.what(), &e.report());
  } catch (const SchemaError& e) {
    return input_error(command, "schema", e.what());
  } catch (const ParseError& e) {
    return input_error(command, "parse", e.what());
  } catch (const UnknownModule& e) {
    return input_error(command, "unknown-module", e.what());
  } catch (const UsageError& e) {
    return input_error(command, "usage", e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(command, "invalid-argument", e.what());
  }
}

// ---------------------------------------------------------- identity suites

const std::map<std::string, std::vector<Identity>>& identity_suites() {
  static const std::map<std::string, std::vector<Identity>> suites{
      {"lemma2", {Identity::kLemma2CommuteA}},
      {"lemma3", {Identity::kLemma3Commutator}},
      {"lemma4",
       {Identity::kLemma4Item1, Identity::kLemma4Item2, Identity::kLemma4Item3, Identity::kLemma4Item4,
        Identity::kLemma4Item5}},
      {"lemma5", {Identity::kLemma5DerivBracket}},
      {"lemma4.1", {Identity::kLemma41Recurrence}},
  };
  return suites;
}

const std::vector<std::string> kModuleSuites{"localize", "annihilation", "orders", "representation",
                                             "exterior"};

/// Sample t of identity `id` in dimension d: the same for every suite selection.
IdentityInputs identity_sample(const RunConfig& c, Identity id, std::size_t d, unsigned t) {
  Rng rng(derive_seed(c.seed, std::string("identity:") + std::string(identity_name(id)), d * 1000003ULL + t));
  SampleShape shape;
  shape.max_degree = c.max_degree;
  shape.max_terms = c.max_terms;
  IdentityInputs in;
  in.f = random_nonconstant_poly(rng, d, shape);
  in.g = random_poly(rng, d, shape);
  in.h = random_poly(rng, d, shape);
  in.eta = random_derivation(rng, d, shape);
  in.mu = random_derivation(rng, d, shape);
  // (p, q) sweeps 1..p_max exhaustively as t runs; p-only identities cycle p.
  if (identity_uses_q(id)) {
    const unsigned idx = t % (c.p_max * c.p_max);
    in.p = 1 + idx / c.p_max;
    in.q = 1 + idx % c.p_max;
  } else {
    in.p = 1 + t % c.p_max;
  }
  return in;
}

void run_identity(const RunConfig& c, Identity id, json& results, std::size_t& checks, std::size_t& failed) {
  for (auto d : c.dims) {
    Tally tally;
    tally.row = {{"suite", "identity"}, {"identity", identity_name(id)}, {"dim", d}};
    for (unsigned t = 0; t < c.trials; ++t)
      tally.add(verify_identity(id, identity_sample(c, id, d, t), {c.inject_fault}));
    checks += tally.checks;
    failed += tally.failed;
    results.push_back(tally.finish());
  }
}

/// Closed form against the definitional sum on every sample the identity
/// suites draw: each Ω_p(f,η) and Ω_q(f,µ) they build from a sample.
void run_closed_form(const RunConfig& c, json& results, std::size_t& checks, std::size_t& failed) {
  for (auto d : c.dims) {
    Tally tally;
    tally.row = {{"suite", "identity"}, {"identity", "omega-closed-form"}, {"dim", d}};
    for (Identity id : all_identities()) {
      if (id == Identity::kOmegaClosedForm) continue;
      for (unsigned t = 0; t < c.trials; ++t) {
        IdentityInputs s = identity_sample(c, id, d, t);
        IdentityInputs first{s.f, {}, {}, s.eta, {}, s.p, {}};
        tally.add(verify_identity(Identity::kOmegaClosedForm, first, {c.inject_fault}));
        if (identity_uses_q(id)) {
          IdentityInputs second{s.f, {}, {}, s.mu, {}, s.q, {}};
          tally.add(verify_identity(Identity::kOmegaClosedForm, second, {c.inject_fault}));
        }
      }
    }
    checks += tally.checks;
    failed += tally.failed;
    results.push_back(tally.finish());
  }
}

// ------------------------------------------------------------ module suites

SampleShape module_shape(const RunConfig& c) {
  SampleShape shape;
  shape.max_degree = std::min(c.max_degree, 3u);
  shape.max_terms = c.max_terms;
  return shape;
}

VerificationReport make_report(const std::string& name, const AVModule& m,
                               std::vector<std::pair<std::string, std::string>> inputs) {
  VerificationReport r;
  r.identity = name;
  r.inputs.emplace_back("module", m.name());
  for (auto& in : inputs) r.inputs.push_back(std::move(in));
  return r;
}

void suite_localize(const RunConfig& c, const AVModule& m, Tally& tally) {
  const SampleShape shape = module_shape(c);
  for (unsigned t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, "localize:" + m.name(), t));
    LocalizedCheckInputs in;
    in.f = random_nonconstant_poly(rng, m.dim(), shape);
    in.g = random_nonconstant_poly(rng, m.dim(), shape);
    in.h = random_nonconstant_poly(rng, m.dim(), shape);
    in.eta = random_derivation(rng, m.dim(), shape);
    in.mu = random_derivation(rng, m.dim(), shape);
    in.a = random_poly(rng, m.dim(), shape);
    in.j = 1 + t % 3;
    in.k = 1 + (t / 3) % 3;
    in.l = t % 3;
    for (auto id : localized_check_ids()) tally.add(verify_localized(id, m, in));
  }
}

void suite_annihilation(const RunConfig& c, const AVModule& m, Tally& tally) {
  const SampleShape shape = module_shape(c);
  const unsigned r2 = static_cast<unsigned>(m.rank() * m.rank());
  for (unsigned t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, "annihilation:" + m.name(), t));
    const Poly f = random_nonconstant_poly(rng, m.dim(), shape);
    const Derivation eta = random_derivation(rng, m.dim(), shape);
    for (unsigned p = r2 + 1; p <= r2 + 3; ++p) {
      auto single = make_report("omega-annihilates", m,
                                {{"f", to_string(f)}, {"eta", to_string(eta)}, {"p", std::to_string(p)}});
      if (!annihilates_omega(m, p, f, eta)) single.fail_with({"Omega_p(f,eta) acts nonzero"});
      tally.add(single);

      const auto fs = random_distinct_nonconstant(rng, m.dim(), p, shape);
      std::string listed;
      for (const auto& fi : fs) listed += (listed.empty() ? "" : "; ") + to_string(fi);
      auto multi = make_report("omega-multi-annihilates", m,
                               {{"fs", listed}, {"eta", to_string(eta)}, {"p", std::to_string(p)}});
      if (!annihilates_omega_multi(m, fs, eta)) multi.fail_with({"Omega((f_1..f_p),eta) acts nonzero"});
      tally.add(multi);
    }
  }
}

void suite_orders(const RunConfig& c, const AVModule& m, Tally& tally) {
  const unsigned r2 = static_cast<unsigned>(m.rank() * m.rank());
  const unsigned order = lie_map_order(m);
  const OracleResult oracle = oracle_order(m, r2);
  auto coherence = make_report("order-coherence", m,
                               {{"lie_map_order", std::to_string(order)},
                                {"oracle_order", std::to_string(oracle.order)},
                                {"rank_squared", std::to_string(r2)}});
  if (order != oracle.order || order > r2 || order != m.order())
    coherence.fail_with({oracle.diagnostic.value_or("lie_map_order, oracle_order and the rank^2 bound disagree")});
  tally.add(coherence);

  // On jet modules the first non-annihilating Ω sits exactly at the order.
  if (m.name().rfind("jet_module", 0) == 0) {
    const unsigned got = min_annihilating_order(m, Poly::variable(m.dim(), 0), Derivation::coordinate(m.dim(), 0));
    auto eq = make_report("jet-min-annihilating-order", m,
                          {{"f", "x1"}, {"eta", "d1"}, {"min_annihilating_order", std::to_string(got)}});
    if (got != order + 1) eq.fail_with({"expected " + std::to_string(order + 1)});
    tally.add(eq);
  }

  const SampleShape shape = module_shape(c);
  for (unsigned t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, "orders:" + m.name(), t));
    const Poly f = random_nonconstant_poly(rng, m.dim(), shape);
    const Derivation eta = random_derivation(rng, m.dim(), shape);
    const unsigned got = min_annihilating_order(m, f, eta);
    auto bound = make_report("min-annihilating-order-bound", m,
                             {{"f", to_string(f)}, {"eta", to_string(eta)},
                              {"min_annihilating_order", std::to_string(got)}});
    if (got > order + 1) bound.fail_with({"exceeds lie_map_order + 1 = " + std::to_string(order + 1)});
    tally.add(bound);
  }
}

void suite_representation(const RunConfig& c, const AVModule& m, Tally& tally) {
  const SampleShape shape = module_shape(c);
  for (unsigned t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, "representation:" + m.name(), t));
    const SmashElement u = random_smash(rng, m.dim(), shape);
    const SmashElement v = random_smash(rng, m.dim(), shape);
    const ModuleElement x = random_module_element(rng, m.dim(), m.rank(), shape);
    const ModuleElement lhs = act_smash(m, smash_bracket(u, v), x);
    const ModuleElement rhs = act_smash(m, u, act_smash(m, v, x)) - act_smash(m, v, act_smash(m, u, x));
    auto r = make_report("representation", m, {});
    auto join = [](const std::vector<std::string>& parts) {
      std::string s;
      for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
      return s;
    };
    r.inputs.emplace_back("u", join(to_strings(u)));
    r.inputs.emplace_back("v", join(to_strings(v)));
    r.inputs.emplace_back("m", join(to_strings(x)));
    if (lhs != rhs) r.fail_with(to_strings(lhs - rhs), "rho([u,v]) differs from the commutator");
    tally.add(r);
  }
}

void suite_exterior(const RunConfig&, const AVModule& m, Tally& tally) {
  auto r = make_report("exterior-power", m, {{"rank", std::to_string(m.rank())}});
  const AVModule top = exterior_power(m, static_cast<unsigned>(m.rank()));
  const AVModule above = exterior_power(m, static_cast<unsigned>(m.rank()) + 1);
  if (top.is_zero_module() || top.rank() != 1 || !top.validation().passed)
    r.fail_with({"top exterior power is not a validated rank-1 module"});
  else if (!above.is_zero_module())
    r.fail_with({"exterior power above the rank is nonzero"});
  tally.add(r);
}

void run_module_suite(const RunConfig& c, const std::string& suite, json& results, std::size_t& checks,
                      std::size_t& failed) {
  static const std::map<std::string, void (*)(const RunConfig&, const AVModule&, Tally&)> runners{
      {"localize", suite_localize},         {"annihilation", suite_annihilation},
      {"orders", suite_orders},             {"representation", suite_representation},
      {"exterior", suite_exterior}};
  const auto run = runners.at(suite);
  for (const auto& m : zoo_catalog()) {
    if (std::find(c.dims.begin(), c.dims.end(), m.dim()) == c.dims.end()) continue;
    Tally tally;
    tally.row = {{"suite", suite}, {"module", m.name()}, {"dim", m.dim()}};
    run(c, m, tally);
    checks += tally.checks;
    failed += tally.failed;
    results.push_back(tally.finish());
  }
}

}  // namespace

json report_to_json(const VerificationReport& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  json out = {{"identity", r.identity}, {"inputs", inputs}, {"status", r.passed ? "pass" : "fail"}};
  if (!r.passed) out["witness"] = r.witness;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

void check_config(const RunConfig& c) {
  if (c.trials < 1) throw UsageError("--trials must be at least 1");
  if (c.max_degree < 1) throw UsageError("--degree must be at least 1");
  if (c.p_max < 1) throw UsageError("--pmax must be at least 1");
  if (c.max_terms < 1) throw UsageError("--terms must be at least 1");
  if (c.dims.empty()) throw UsageError("--dims must not be empty");
  for (auto d : c.dims)
    if (d < 1 || 2 * d > kMaxVariables)
      throw UsageError("--dims entries must lie in 1.." + std::to_string(kMaxVariables / 2));
}

std::vector<std::string> known_suites() {
  std::vector<std::string> out;
  for (const auto& [name, ids] : identity_suites()) out.push_back(name);
  out.push_back("closed-form");
  for (const auto& s : kModuleSuites) out.push_back(s);
  out.push_back("all");
  return out;
}

CommandResult cmd_verify(const RunConfig& config, const std::vector<std::string>& suites) {
  return guarded("verify", [&]() {
    check_config(config);
    if (suites.empty()) throw UsageError("no suite selected");
    // Resolve to a canonical, duplicate-free selection.
    std::set<Identity> identities;
    bool closed_form = false;
    std::set<std::string> module_suites;
    for (const auto& s : suites) {
      if (s == "all") {
        for (Identity id : all_identities())
          if (id != Identity::kOmegaClosedForm) identities.insert(id);
        closed_form = true;
        module_suites.insert(kModuleSuites.begin(), kModuleSuites.end());
      } else if (auto it = identity_suites().find(s); it != identity_suites().end()) {
        identities.insert(it->second.begin(), it->second.end());
      } else if (s == "closed-form" || s == "omega-closed-form") {
        closed_form = true;
      } else if (std::find(kModuleSuites.begin(), kModuleSuites.end(), s) != kModuleSuites.end()) {
        module_suites.insert(s);
      } else if (auto id = identity_from_name(s)) {
        identities.insert(*id);
      } else {
        throw UsageError("unknown suite '" + s + "'");
      }
    }

    json report = envelope("verify");
    report["config"] = config_to_json(config, suites);
    json results = json::array();
    std::size_t checks = 0, failed = 0;
    for (Identity id : identities) run_identity(config, id, results, checks, failed);
    if (closed_form) run_closed_form(config, results, checks, failed);
    for (const auto& s : kModuleSuites)
      if (module_suites.contains(s)) run_module_suite(config, s, results, checks, failed);
    report["results"] = std::move(results);
    return finish(std::move(report), checks, failed);
  });
}

AVModule load_module_spec(const ModuleSpec& spec) {
  const std::string prefix = "zoo:";
  if (spec.module.rfind(prefix, 0) == 0) return zoo(spec.module.substr(prefix.size()), spec.params);
  return load_module_file(spec.module);
}

namespace {

json module_summary(const AVModule& m) {
  return {{"module", m.name()}, {"dim", m.dim()}, {"rank", m.rank()}, {"order", m.order()}};
}

json spec_config(const ModuleSpec& spec) {
  return {{"module", spec.module},
          {"dim", spec.params.dim},
          {"n", spec.params.n},
          {"rank", spec.params.rank},
          {"lambda", to_string(spec.params.lambda)}};
}

}  // namespace

CommandResult cmd_order(const ModuleSpec& spec, std::optional<unsigned> n_max) {
  return guarded("order", [&]() {
    json report = envelope("order");
    report["config"] = spec_config(spec);
    const AVModule m = load_module_spec(spec);
    const unsigned r2 = static_cast<unsigned>(m.rank() * m.rank());
    const unsigned order = lie_map_order(m);
    const OracleResult oracle = oracle_order(m, n_max.value_or(r2));
    json row = module_summary(m);
    row["lie_map_order"] = order;
    row["oracle_order"] = oracle.order;
    row["bound"] = r2;
    const bool ok = order <= r2 && oracle.order == order;
    row["bound_status"] = order <= r2 ? "ok" : "violated";
    row["status"] = ok ? "pass" : "fail";
    if (oracle.diagnostic) row["oracle_diagnostic"] = *oracle.diagnostic;
    report["config"]["nmax"] = n_max.value_or(r2);
    report["results"] = json::array({row});
    return finish(std::move(report), 1, ok ? 0 : 1);
  });
}

CommandResult cmd_annihilator(const ModuleSpec& spec, const std::string& f_text, const std::string& eta_text) {
  return guarded("annihilator", [&]() {
    json report = envelope("annihilator");
    report["config"] = spec_config(spec);
    report["config"]["f"] = f_text;
    report["config"]["eta"] = eta_text;
    const AVModule m = load_module_spec(spec);
    const Poly f = parse_poly(f_text, m.dim());
    const Derivation eta = parse_derivation(eta_text, m.dim());
    const unsigned p = min_annihilating_order(m, f, eta);
    json row = module_summary(m);
    row["f"] = to_string(f);
    row["eta"] = to_string(eta);
    row["min_annihilating_order"] = p;
    row["lie_map_order"] = lie_map_order(m);
    // Ω_q for q in [p, order] is checked explicitly; every larger q has zero
    // jet up to the module order.
    json profile = json::array();
    bool consistent = true;
    for (unsigned q = 1; q <= m.order() + 1; ++q) {
      const bool ann = annihilates_omega(m, q, f, eta);
      profile.push_back({{"p", q}, {"annihilates", ann}});
      if (q >= p && !ann) consistent = false;
    }
    row["profile"] = profile;
    row["verified_tail"] = {{"from", p}, {"checked_through", m.order() + 1}, {"beyond", "vanishing jet"}};
    if (f.is_constant()) row["note"] = "Omega_p(const, .) = 0 for every p >= 1";
    row["status"] = consistent ? "pass" : "fail";
    report["results"] = json::array({row});
    return finish(std::move(report), 1, consistent ? 0 : 1);
  });
}

CommandResult cmd_validate(const ModuleSpec& spec) {
  return guarded("validate", [&]() {
    json report = envelope("validate");
    report["config"] = spec_config(spec);
    VerificationReport v;
    try {
      const AVModule m = load_module_spec(spec);
      v = m.validation();
    } catch (const InvalidModule& e) {
      v = e.report();
    }
    report["results"] = json::array({report_to_json(v)});
    return finish(std::move(report), 1, v.passed ? 0 : 1);
  });
}

CommandResult cmd_export(const ModuleSpec& spec) {
  return guarded("export", [&]() {
    json report = envelope("export");
    report["config"] = spec_config(spec);
    const AVModule m = load_module_spec(spec);
    report["module"] = module_to_json(m.data());
    report["results"] = json::array({module_summary(m)});
    return finish(std::move(report), 1, 0);
  });
}

namespace {

void render(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

}  // namespace avmod
