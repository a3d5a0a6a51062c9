// crep: metric, modulus, duality, transport and gallery runs driven by a JSON
// config. Exit codes: 0 pass, 1 claim violated, 2 usage/config error,
// 3 numerical failure.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "crep/commands.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<crep::Seed> seed;
  std::optional<std::string> out;
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
  std::optional<std::string> scenario;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "64-bit RNG seed");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--tolerance", f.tolerance, "Override the check tolerance");
  sub->add_option("--samples", f.samples, "Sample count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation-space metrics, moduli of continuity and transport checks"};
  app.require_subcommand(1);
  Flags flags;
  const char* verbs[][2] = {
      {"metric", "Pairwise d_K between representations"},
      {"modulus", "Empirical moduli of continuity and calculus residuals"},
      {"duality", "Fenchel round trip, Lipschitz regularization and sandwich check"},
      {"transport", "Kantorovich distances with primal/dual agreement"},
      {"gallery", "Run a named counterexample scenario"},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v[0], v[1]);
    add_common(sub, flags);
    if (std::string(v[0]) == "gallery") sub->add_option("--scenario", flags.scenario, "Scenario name");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return crep::kExitUsage;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  crep::RunConfig cfg;
  try {
    const crep::Json file = flags.config.empty() ? crep::Json::object() : crep::read_json_file(flags.config);
    crep::FlagOverrides over;
    over.seed = flags.seed;
    over.scenario = flags.scenario;
    if (flags.out) over.out_dir = *flags.out;
    over.tolerance = flags.tolerance;
    over.samples = flags.samples;
    cfg = crep::resolve_config(verb, file, over);
  } catch (const crep::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return crep::kExitUsage;
  }
  return crep::run_command(cfg, std::cout, std::cerr);
}
