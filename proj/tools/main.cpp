// liouville: command-line front end. Every subcommand prints one JSON run
// record; exit status is 0 on success, 1 on internal errors and failed
// verification, 2 on condition errors (bad input, poles, bound violations).

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "liouville/error.hpp"
#include "liouville/version.hpp"
#include "run_record.hpp"

namespace {

using namespace liouville::cli;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitCondition = 2;

void add_coupling(CLI::App* cmd, CouplingOptions& c) {
  cmd->add_option("--gamma", c.gamma, "Coupling constant in (0, 2)")->capture_default_str();
  cmd->add_option("--mu", c.mu, "Cosmological constant, > 0")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker cap; 0 uses all hardware threads")
      ->capture_default_str();
}

void add_quadrature(CLI::App* cmd, liouville::QuadratureConfig& q) {
  cmd->add_option("--p-max", q.p_max, "Spectral cutoff")->capture_default_str();
  cmd->add_option("--panels", q.panels, "Gauss-Legendre panels on [0, p_max]")
      ->capture_default_str();
  cmd->add_option("--nodes", q.nodes_per_panel, "Nodes per panel")->capture_default_str();
  cmd->add_option("--refine", q.refinement_factor, "Panel multiplier of the refinement pass")
      ->capture_default_str();
}

// Runs a command inside a record, classifying failures into exit codes.
int execute(const std::string& name, const std::string& output,
            const std::function<bool(RunRecord&)>& body) {
  RunRecord rec(name);
  int code = kExitOk;
  try {
    code = body(rec) ? kExitOk : kExitInternal;
  } catch (const liouville::PoleError& e) {
    rec.set_error("condition_error", e.what());
    rec.set_error_location(e.location());
    code = kExitCondition;
  } catch (const liouville::ConditionError& e) {
    rec.set_error("condition_error", e.what());
    code = kExitCondition;
  } catch (const std::invalid_argument& e) {
    rec.set_error("condition_error", e.what());
    code = kExitCondition;
  } catch (const std::exception& e) {
    rec.set_error("internal_error", e.what());
    code = kExitInternal;
  }
  try {
    emit(rec.finish(), output);
  } catch (const std::exception& e) {
    std::cerr << "liouville: " << e.what() << '\n';
    return kExitInternal;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouville conformal field theory: structure constants, blocks, bootstrap and GMC"};
  app.set_version_flag("--version", std::string(liouville::kVersion));
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON record to a file instead of stdout");

  DozzOptions dozz;
  auto* cmd_dozz = app.add_subcommand("dozz", "DOZZ three-point structure constant");
  add_coupling(cmd_dozz, dozz.coupling);
  cmd_dozz->add_option("--a1", dozz.a1, "alpha_1, complex as a+bi")->required();
  cmd_dozz->add_option("--a2", dozz.a2, "alpha_2")->required();
  cmd_dozz->add_option("--a3", dozz.a3, "alpha_3")->required();

  BlockOptions block;
  auto* cmd_block = app.add_subcommand("block", "Conformal block coefficients and series value");
  add_coupling(cmd_block, block.coupling);
  cmd_block->add_option("--d1", block.d1, "External alpha_1 (converted to a weight)");
  cmd_block->add_option("--d2", block.d2, "External alpha_2");
  cmd_block->add_option("--d3", block.d3, "External alpha_3");
  cmd_block->add_option("--d4", block.d4, "External alpha_4");
  cmd_block->add_option("--delta1", block.delta1, "External weight Delta_1 given directly");
  cmd_block->add_option("--delta2", block.delta2, "External weight Delta_2");
  cmd_block->add_option("--delta3", block.delta3, "External weight Delta_3");
  cmd_block->add_option("--delta4", block.delta4, "External weight Delta_4");
  cmd_block->add_option("--P", block.P, "Spectrum-line momentum of the intermediate state");
  cmd_block->add_option("--deltaP", block.deltaP, "Intermediate weight given directly");
  cmd_block->add_option("--z", block.z, "Cross-ratio, |z| < 1")->capture_default_str();
  cmd_block->add_option("--N", block.truncation, "Series truncation")->capture_default_str();
  cmd_block->add_option("--method", block.method, "inverse or solve")->capture_default_str();
  cmd_block->add_option("--csv", block.csv, "Write the beta table as CSV");

  FourPointOptions fp;
  auto* cmd_fp = app.add_subcommand("fourpoint", "Four-point function by the spectral integral");
  FourPointOptions cr;
  cr.z = "0.4";
  auto* cmd_cr = app.add_subcommand("crossing", "Crossing-symmetry residual between channels");
  for (auto [cmd, o] : {std::pair{cmd_fp, &fp}, std::pair{cmd_cr, &cr}}) {
    add_coupling(cmd, o->coupling);
    add_quadrature(cmd, o->quadrature);
    cmd->add_option("--a1", o->a1, "alpha_1")->required();
    cmd->add_option("--a2", o->a2, "alpha_2")->required();
    cmd->add_option("--a3", o->a3, "alpha_3")->required();
    cmd->add_option("--a4", o->a4, "alpha_4")->required();
    cmd->add_option("--z", o->z, "Cross-ratio")->capture_default_str();
    cmd->add_option("--N", o->truncation, "Block truncation")->capture_default_str();
  }
  cmd_fp->add_option("--csv", fp.csv, "Write integrand samples as CSV");
  cmd_fp->add_option("--csv-samples", fp.csv_samples, "Rows of the integrand CSV")
      ->capture_default_str();

  VerifyOptions verify;
  auto* cmd_verify = app.add_subcommand("verify", "Run the invariant suite");
  cmd_verify->add_option("--level", verify.level, "Highest level of the algebraic checks")
      ->capture_default_str();
  cmd_verify->add_option("--alphas", verify.alphas, "Random alphas for the Fock oracle")
      ->capture_default_str();
  cmd_verify->add_option("--gmc-samples", verify.gmc_samples, "Samples of the mu-scaling check")
      ->capture_default_str();

  GmcOptions gmc;
  auto* cmd_gmc = app.add_subcommand("gmc", "Monte Carlo correlation from the chaos measure");
  cmd_gmc->add_option("--config", gmc.config, "JSON job file");
  cmd_gmc->add_option("--samples", gmc.samples, "Number of field samples");
  cmd_gmc->add_option("--seed", gmc.seed,
                      "Random seed; defaults to the config value, then LIOUVILLE_SEED, then 1");
  cmd_gmc->add_option("--batches", gmc.batches, "Batches for the standard error");
  cmd_gmc->add_option("--gamma", gmc.gamma, "Overrides the config coupling");
  cmd_gmc->add_option("--mu", gmc.mu, "Overrides the config cosmological constant");
  cmd_gmc->add_option("--insert", gmc.insertions, "Insertion z@alpha, repeatable");
  cmd_gmc->add_option("--compare-dozz", gmc.compare_dozz,
                      "Equal-alpha three-point comparison with DOZZ at this alpha");
  cmd_gmc->add_option("--threads", gmc.threads, "Worker cap; 0 uses all hardware threads")
      ->capture_default_str();

  ShapovalovOptions shap;
  auto* cmd_shap = app.add_subcommand("shapovalov", "Exact Shapovalov matrix at a level");
  cmd_shap->add_option("--level", shap.level, "Level N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitCondition;
  }

  if (*cmd_dozz) {
    return execute("dozz", output, [&](RunRecord& r) { return run_dozz(dozz, r), true; });
  }
  if (*cmd_block) {
    return execute("block", output, [&](RunRecord& r) { return run_block(block, r), true; });
  }
  if (*cmd_fp) {
    return execute("fourpoint", output, [&](RunRecord& r) { return run_fourpoint(fp, r), true; });
  }
  if (*cmd_cr) {
    return execute("crossing", output, [&](RunRecord& r) { return run_crossing(cr, r), true; });
  }
  if (*cmd_verify) {
    return execute("verify", output, [&](RunRecord& r) { return run_verify(verify, r); });
  }
  if (*cmd_gmc) {
    return execute("gmc", output, [&](RunRecord& r) { return run_gmc(gmc, r), true; });
  }
  return execute("shapovalov", output, [&](RunRecord& r) { return run_shapovalov(shap, r), true; });
}
