// avtool: exact verification of the smash-product identities, annihilation
// profiles, Lie-map orders and localization checks for finite A𝒱-modules.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on a usage
// or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avmod/commands.hpp"

namespace {

struct Options {
  avmod::RunConfig config;
  std::vector<std::string> suites{"all"};
  avmod::ModuleSpec spec{"zoo:dmodule", {}};
  std::string lambda = "1";
  std::optional<unsigned> n_max;
  std::string f, eta;
  std::string format = "json";
  std::string out;
};

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out, "Write the report to this path instead of stdout");
}

void add_module_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--module", o.spec.module, "zoo:<name> or a module-definition JSON file");
  cmd->add_option("--dim", o.spec.params.dim, "Dimension d for zoo modules");
  cmd->add_option("--n", o.spec.params.n, "Jet order for zoo:jets");
  cmd->add_option("--rank", o.spec.params.rank, "Rank for zoo:dmodule");
  cmd->add_option("--lambda", o.lambda, "Weight for zoo:twist (rational)");
}

int emit(const avmod::CommandResult& result, const Options& o, const nlohmann::json* payload = nullptr) {
  std::string text;
  if (payload) {
    text = payload->dump(2) + "\n";
  } else {
    text = o.format == "text" ? avmod::render_text(result.report) : result.report.dump(2) + "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out);
    if (!file) {
      std::cerr << "avtool: cannot write " << o.out << "\n";
      return 2;
    }
    file << text;
  }
  if (result.exit_status != 0 && result.report.contains("error"))
    std::cerr << "avtool: " << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification kernel for A#V and finite AV-modules", "avtool"};
  app.set_version_flag("--version", avmod::kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Run identity and module suites");
  verify->add_option("--suite", o.suites, "Suites (comma separated)")->delimiter(',');
  verify->add_option("--dims", o.config.dims, "Dimensions (comma separated)")->delimiter(',');
  verify->add_option("--degree", o.config.max_degree, "Maximal degree of random polynomials");
  verify->add_option("--trials", o.config.trials, "Random samples per identity and dimension");
  verify->add_option("--seed", o.config.seed, "Seed of the pseudo-random generator");
  verify->add_option("--pmax", o.config.p_max, "p and q range over 1..pmax");
  verify->add_option("--terms", o.config.max_terms, "Maximal number of terms per random polynomial");
  verify->add_flag("--inject-fault", o.config.inject_fault, "Corrupt every identity (negative control)");
  add_output_flags(verify, o);

  auto* order = app.add_subcommand("order", "Lie-map order, oracle order and the rank^2 bound");
  add_module_flags(order, o);
  order->add_option("--pmax", o.n_max, "Largest n tried by the oracle (default rank^2)");
  add_output_flags(order, o);

  auto* annihilator = app.add_subcommand("annihilator", "Smallest p with Omega_q(f,eta) annihilating for q >= p");
  add_module_flags(annihilator, o);
  annihilator->add_option("--f", o.f, "Polynomial f")->required();
  annihilator->add_option("--eta", o.eta, "Derivation eta, e.g. x1*d1 + d2")->required();
  add_output_flags(annihilator, o);

  auto* validate = app.add_subcommand("validate", "Check bracket compatibility of a module");
  add_module_flags(validate, o);
  add_output_flags(validate, o);

  auto* exporter = app.add_subcommand("export", "Write the module-definition JSON of a module");
  add_module_flags(exporter, o);
  add_output_flags(exporter, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.spec.params.lambda = avmod::Rational(o.lambda);
    o.spec.params.lambda.canonicalize();
  } catch (const std::invalid_argument&) {
    std::cerr << "avtool: --lambda must be a rational number\n";
    return 2;
  }

  if (*verify) return emit(avmod::cmd_verify(o.config, o.suites), o);
  if (*order) return emit(avmod::cmd_order(o.spec, o.n_max), o);
  if (*annihilator) return emit(avmod::cmd_annihilator(o.spec, o.f, o.eta), o);
  if (*validate) return emit(avmod::cmd_validate(o.spec), o);
  auto result = avmod::cmd_export(o.spec);
  if (result.exit_status == 0) return emit(result, o, &result.report["module"]);
  return emit(result, o);
}
