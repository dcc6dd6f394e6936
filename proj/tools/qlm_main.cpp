// Batch driver: basis enumeration, circuit compilation, gate counting, and
// the exact / noiseless / noisy experiment pipelines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qlm/config.hpp"
#include "qlm/errors.hpp"
#include "qlm/io.hpp"

namespace {

std::string output_path(const std::string& out_dir, const std::string& leaf) {
  std::string root = out_dir;
  if (const char* env = std::getenv("QLM_OUTPUT_ROOT"); env && root == ".")
    root = env;
  if (root.empty() || root == ".") return leaf;
  return root + "/" + leaf;
}

std::string record_base(const qlm::RunConfig& config,
                        const qlm::ObservableRecord& record) {
  std::string name = record.protocol_name.empty() ? "run" : record.protocol_name;
  for (char& c : name)
    if (c == '/' || c == ' ') c = '_';
  return output_path(config.out_dir,
                     name + "." + record.engine + ".seed" +
                         std::to_string(record.seed));
}

qlm::Formulation formulation_from(const std::string& s) {
  if (s == "integrated") return qlm::Formulation::IntegratedOut;
  if (s == "matterful") return qlm::Formulation::Matterful;
  throw qlm::ConfigError("bad formulation: " + s);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"qudit quantum-link-model collider"};
  app.require_subcommand(1);

  // enumerate-basis
  auto* enumerate_cmd = app.add_subcommand("enumerate-basis",
                                           "count gauge-invariant configurations");
  int enum_L = 7;
  std::string enum_formulation = "integrated";
  bool enum_dump = false;
  enumerate_cmd->add_option("--L", enum_L, "matter sites")->required();
  enumerate_cmd->add_option("--formulation", enum_formulation,
                            "integrated | matterful");
  enumerate_cmd->add_flag("--dump", enum_dump, "print every configuration");

  // shared run options
  std::string config_path, preset, variant = "scatter", out_dir = ".";
  std::string engine_name, formulation_override;
  double alpha = 1.0;
  std::string noise_mode = "trajectories";
  bool postselect = false;
  int trajectories = 500;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool use_rzz = false;
  auto add_run_options = [&](CLI::App* cmd, bool with_engine) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--preset", preset, "named protocol preset");
    cmd->add_option("--variant", variant, "scatter | vacuum | free_left | free_right");
    cmd->add_option("--formulation", formulation_override, "integrated | matterful");
    cmd->add_option("--out-dir", out_dir, "output directory");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--jobs", jobs, "worker threads for trajectories");
    if (with_engine) {
      cmd->add_option("--engine", engine_name, "noiseless | noisy");
      cmd->add_option("--alpha", alpha, "noise exponent in [0,1]");
      cmd->add_option("--noise-mode", noise_mode, "trajectories | kraus");
      cmd->add_flag("--postselect", postselect, "project after every step");
      cmd->add_option("--trajectories", trajectories, "samples per run/step");
      cmd->add_flag("--use-rzz", use_rzz, "ZZ-phase entangler variant");
    }
  };

  auto* compile_cmd = app.add_subcommand("compile", "emit the circuit as text");
  std::string compile_out;
  add_run_options(compile_cmd, false);
  compile_cmd->add_option("--out", compile_out, "output file (default stdout)");

  auto* gatecount_cmd = app.add_subcommand("gatecount",
                                           "per-step gate counts by noise class");
  int gc_lmin = 7, gc_lmax = 12;
  std::string gc_out;
  bool gc_both = false;
  gatecount_cmd->add_option("--Lmin", gc_lmin, "smallest size");
  gatecount_cmd->add_option("--Lmax", gc_lmax, "largest size");
  gatecount_cmd->add_flag("--both", gc_both, "both formulations");
  gatecount_cmd->add_option("--out", gc_out, "output CSV (default stdout)");

  auto* exact_cmd = app.add_subcommand("exact", "reference evolution");
  add_run_options(exact_cmd, false);

  auto* simulate_cmd = app.add_subcommand("simulate", "circuit simulation");
  add_run_options(simulate_cmd, true);

  auto* analyze_cmd = app.add_subcommand("analyze", "background subtractions");
  std::string an_scat, an_left, an_right, an_vacuum, an_out;
  analyze_cmd->add_option("--scat", an_scat, "scattering record base")->required();
  analyze_cmd->add_option("--left", an_left, "left free record base")->required();
  analyze_cmd->add_option("--right", an_right, "right free record base")->required();
  analyze_cmd->add_option("--vacuum", an_vacuum, "vacuum record base")->required();
  analyze_cmd->add_option("--out", an_out, "output base")->required();

  auto* snapshot_cmd = app.add_subcommand("snapshot", "flux slices at times");
  std::string sn_record, sn_times, sn_out;
  snapshot_cmd->add_option("--record", sn_record, "record base")->required();
  snapshot_cmd->add_option("--times", sn_times, "comma-separated times")->required();
  snapshot_cmd->add_option("--out", sn_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  auto build_config = [&](bool with_engine) {
    qlm::RunConfig config;
    if (!config_path.empty()) config = qlm::parse_config_file(config_path);
    if (!preset.empty()) qlm::apply_config_key(config, "preset", preset);
    if (!formulation_override.empty())
      config.protocol.formulation = formulation_from(formulation_override);
    qlm::apply_config_key(config, "variant", variant);
    if (out_dir != ".") config.out_dir = out_dir;
    config.options.seed = seed;
    config.options.jobs = jobs;
    if (with_engine) {
      if (!engine_name.empty()) qlm::apply_config_key(config, "engine", engine_name);
      config.options.noise.alpha = alpha;
      qlm::apply_config_key(config, "noise_mode", noise_mode);
      config.options.postselect = postselect;
      config.options.num_trajectories = trajectories;
      config.options.use_rzz = use_rzz;
    }
    if (config.protocol.name.empty())
      throw qlm::ConfigError("no protocol: pass --preset or --config");
    return config;
  };

  if (enumerate_cmd->parsed()) {
    qlm::LatticeModel model;
    model.L = enum_L;
    model.formulation = formulation_from(enum_formulation);
    const qlm::PhysicalSubspace subspace = qlm::enumerate_physical(model);
    std::cout << subspace.dim() << "\n";
    if (enum_dump)
      for (const qlm::BasisConfig& cfg : subspace.configs)
        std::cout << qlm::config_to_string(cfg) << "\n";
    return 0;
  }

  if (compile_cmd->parsed()) {
    const qlm::RunConfig config = build_config(false);
    const qlm::ScatteringProtocol protocol = config.effective_protocol();
    const qlm::Circuit circuit =
        qlm::assemble_trotter(protocol.model(), protocol.T, protocol.steps,
                              protocol.walls(), config.options.use_rzz);
    const std::string text = qlm::circuit_to_text(circuit);
    if (compile_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output_path(config.out_dir, compile_out));
      if (!out) throw std::runtime_error("cannot write " + compile_out);
      out << text;
    }
    return 0;
  }

  if (gatecount_cmd->parsed()) {
    std::vector<qlm::GateCountRow> rows;
    for (int L = gc_lmin; L <= gc_lmax; ++L) {
      for (int pass = 0; pass < (gc_both ? 2 : 1); ++pass) {
        qlm::LatticeModel model;
        model.L = L;
        model.formulation = pass == 0 ? qlm::Formulation::IntegratedOut
                                      : qlm::Formulation::Matterful;
        const qlm::Circuit step = qlm::assemble_trotter(model, 0.25, 1);
        const qlm::GateCounts counts = qlm::gate_count(step);
        rows.push_back({L, pass == 0 ? "integrated" : "matterful", counts.ms,
                        counts.cx, counts.one_body});
      }
    }
    if (gc_out.empty()) std::cout << qlm::gatecount_csv(rows);
    else qlm::save_gatecount_csv(rows, gc_out);
    return 0;
  }

  if (exact_cmd->parsed() || simulate_cmd->parsed()) {
    qlm::RunConfig config = build_config(simulate_cmd->parsed());
    qlm::Engine engine = qlm::Engine::Exact;
    if (simulate_cmd->parsed()) {
      engine = config.engine == qlm::Engine::Exact ? qlm::Engine::Noiseless
                                                   : config.engine;
      if (!engine_name.empty())
        engine = engine_name == "noisy" ? qlm::Engine::Noisy : qlm::Engine::Noiseless;
    }
    const qlm::ScatteringProtocol protocol = config.effective_protocol();
    const qlm::ObservableRecord record =
        qlm::run_experiment(protocol, engine, config.options);
    const std::string base = record_base(config, record);
    qlm::save_record(record, base, config.resolved_json());
    std::cout << base << "\n";
    return 0;
  }

  if (analyze_cmd->parsed()) {
    const qlm::ObservableRecord scat = qlm::load_record(an_scat);
    const qlm::ObservableRecord left = qlm::load_record(an_left);
    const qlm::ObservableRecord right = qlm::load_record(an_right);
    const qlm::ObservableRecord vacuum = qlm::load_record(an_vacuum);
    qlm::save_record(qlm::subtract_vacuum(scat, vacuum), an_out + ".vacsub");
    qlm::save_record(qlm::subtract_free(scat, left, right, vacuum),
                     an_out + ".freesub");
    std::cout << an_out << ".vacsub\n" << an_out << ".freesub\n";
    return 0;
  }

  if (snapshot_cmd->parsed()) {
    const qlm::ObservableRecord record = qlm::load_record(sn_record);
    std::vector<double> times;
    std::istringstream ts(sn_times);
    std::string tok;
    while (std::getline(ts, tok, ',')) times.push_back(std::stod(tok));
    qlm::save_snapshot_csv(qlm::flux_snapshots(record, times), sn_out);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const qlm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qlm::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const qlm::AllTrajectoriesDiscarded& e) {
    std::cerr << "trajectory failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
