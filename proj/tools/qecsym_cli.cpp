// qecsym batch front end: deterministic experiments from a JSON config.
// Exit codes: 0 success, 2 config error, 3 verification failure.

#include "qecsym/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> code;
  std::optional<std::string> experiment;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "JSON config file")->required();
  cmd->add_option("--seed", ov.seed, "override base_seed");
  cmd->add_option("--trials", ov.trials, "override trials");
  cmd->add_option("--out", ov.out, "override output path");
  cmd->add_option("--format", ov.format, "override output format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--code", ov.code, "override code kind");
  cmd->add_option("--experiment", ov.experiment, "override experiment name");
}

qecsym::ExperimentConfig resolve(const Overrides& ov, const std::string& subcommand) {
  qecsym::ExperimentConfig cfg = qecsym::load_config(ov.config_path);
  if (ov.seed) cfg.base_seed = *ov.seed;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.out) cfg.out_path = *ov.out;
  if (ov.format) cfg.format = *ov.format;
  if (ov.code) cfg.code = qecsym::code_kind_from_string(*ov.code);
  if (ov.experiment) cfg.experiment = *ov.experiment;
  if (cfg.experiment != subcommand) {
    throw std::invalid_argument("config: experiment '" + cfg.experiment +
                                "' does not match subcommand '" + subcommand + "'");
  }
  if (ov.trials && cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  return cfg;
}

int run(const std::string& subcommand, const Overrides& ov) {
  qecsym::ExperimentConfig cfg = resolve(ov, subcommand);
  if (subcommand == "verify") {
    qecsym::Json report = qecsym::run_verify(cfg);
    qecsym::write_output(cfg, report.dump(2) + "\n");
    return report.at("pass").get<bool>() ? 0 : 3;
  }
  if (subcommand == "recover") {
    qecsym::write_output(cfg, qecsym::render(qecsym::run_recover(cfg), cfg.format));
    return 0;
  }
  if (subcommand == "symmetrize") {
    qecsym::SymmetrizeRun out = qecsym::run_symmetrize(cfg);
    if (cfg.format == "json") {
      qecsym::Json doc;
      doc["summary"] = out.summary;
      doc["trials"] = out.per_trial.to_json();
      qecsym::write_output(cfg, doc.dump(2) + "\n");
    } else {
      qecsym::write_output(cfg, out.per_trial.to_csv());
      if (!cfg.out_path.empty()) {
        std::string s = out.summary.dump(2) + "\n";
        std::fwrite(s.data(), 1, s.size(), stdout);
      }
    }
    return 0;
  }
  if (subcommand == "zeno") {
    qecsym::write_output(cfg, qecsym::render(qecsym::run_zeno(cfg), cfg.format));
    return 0;
  }
  // barrier
  qecsym::write_output(cfg, qecsym::render(qecsym::run_barrier(cfg), cfg.format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codeword-correction and symmetrization experiments"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"verify", "code verification report (JSON)"},
      {"recover", "corrupt-and-recover trials"},
      {"symmetrize", "replica symmetrization experiments"},
      {"zeno", "stabilized two-qubit drift trajectory"},
      {"barrier", "codeword-barrier leakage trajectory"},
  };

  std::vector<Overrides> ovs(subs.size());
  std::vector<CLI::App*> cmds;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].first, subs[i].second);
    add_common_flags(cmd, ovs[i]);
    cmds.push_back(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (cmds[i]->parsed()) {
      try {
        return run(subs[i].first, ovs[i]);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
    }
  }
  return 2;
}
