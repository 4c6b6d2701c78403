#include <iostream>

#include <CLI11.hpp>

#include "qeng/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Global-pulse sequence synthesis for qudit ensembles"};
  app.require_subcommand(1);
  qeng::JobConfig cfg;

  auto hamiltonian_opts = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "Preset interaction name");
    sub->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian JSON document");
    sub->add_option("--d", cfg.d, "Qudit dimension for d-dependent presets");
  };
  auto synthesis_opts = [&](CLI::App* sub) {
    sub->add_option("--max-depth", cfg.max_depth, "Composite pulse depth");
    sub->add_option("--tol", cfg.tol, "LP / trace tolerance");
    sub->add_option("--out", cfg.output_path, "Report JSON path");
    sub->add_option("--sequence-out", cfg.sequence_out, "Write the synthesized sequence here");
  };

  auto* basis = app.add_subcommand("basis", "Generalized Gell-Mann basis");
  basis->add_option("--d", cfg.d, "Qudit dimension")->required();
  basis->add_option("--out", cfg.output_path, "Basis JSON path");

  auto* repr = app.add_subcommand("repr", "C matrix of an interaction");
  hamiltonian_opts(repr);
  repr->add_option("--tol", cfg.tol, "Trace tolerance");
  repr->add_option("--out", cfg.output_path, "C matrix JSON path");

  auto* dec = app.add_subcommand("decouple", "Find a decoupling sequence");
  hamiltonian_opts(dec);
  synthesis_opts(dec);

  auto* eng = app.add_subcommand("engineer", "Map one interaction onto another");
  eng->add_option("--from", cfg.from, "Source preset or document")->required();
  eng->add_option("--to", cfg.to, "Target preset or document")->required();
  eng->add_option("--d", cfg.d, "Qudit dimension for d-dependent presets");
  synthesis_opts(eng);

  auto* hpq = app.add_subcommand("engineer-hpq", "Engineer H(p,q) from Ising couplings");
  hpq->add_option("--p", cfg.p, "p")->required();
  hpq->add_option("--q", cfg.q, "q")->required();
  synthesis_opts(hpq);

  auto* sym = app.add_subcommand("symmetrize", "Time-symmetrize a sequence");
  sym->add_option("--sequence", cfg.sequence_path, "Sequence JSON document")->required();
  sym->add_option("--out", cfg.output_path, "Output sequence path");

  auto* sim = app.add_subcommand("simulate", "Stroboscopic fidelity of a pulsed ensemble");
  hamiltonian_opts(sim);
  sim->add_option("--sequence", cfg.sequence_path, "Sequence JSON (omit for free evolution)");
  sim->add_option("--n", cfg.n, "Number of qudits");
  sim->add_option("--seed", cfg.seed, "Coupling RNG seed");
  sim->add_option("--J", cfg.coupling_j, "Coupling scale J");
  sim->add_option("--jt", cfg.jt, "J*T values")->delimiter(',');
  sim->add_option("--cycles", cfg.cycles, "Number of periods");
  sim->add_flag("--symmetrized", cfg.symmetrized, "Symmetrize the sequence first");
  sim->add_option("--out", cfg.output_path, "CSV path (suffixed per JT when several)");

  auto* ver = app.add_subcommand("verify", "Check a document against its invariants");
  ver->add_option("input", cfg.input_path, "Hamiltonian or sequence JSON")->required();
  ver->add_option("--out", cfg.output_path, "Diagnostics JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qeng::kExitValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return qeng::run(cfg, std::cout, std::cerr);
}
