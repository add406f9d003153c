#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <bellopt/inequality_catalog.hpp>
#include <bellopt/relabel_group.hpp>
#include <bellopt/serialization.hpp>
#include <bellopt/trial_simulator.hpp>

#include "CLI11.hpp"
#include "json.hpp"

namespace bellopt::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

// JSON documents go to --output when given, else to standard output.
void emit(const CommandConfig& cfg, std::ostream& out, const std::string& text, const std::string& what) {
  if (cfg.output.empty()) {
    out << text << '\n';
  } else {
    write_file(cfg.output, text);
    out << what << " written to " << cfg.output << '\n';
  }
}

OutcomeVector load_distribution(const CommandConfig& cfg) {
  if (cfg.input.empty()) throw UsageError{"--input is required"};
  return outcome_vector_from_json(read_file(cfg.input));
}

std::vector<BellInequality> selected_inequalities(const CommandConfig& cfg, bool default_all) {
  std::vector<BellInequality> out;
  for (const auto& f : cfg.inequality_files) out.push_back(inequality_from_json(read_file(f)));
  for (const auto& n : cfg.catalog_names) out.push_back(catalog(n));
  if (out.empty() && default_all)
    for (const auto& n : catalog_names()) out.push_back(catalog(n));
  return out;
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void cmd_decompose(const CommandConfig& cfg, std::ostream& out) {
  const auto betas = selected_inequalities(cfg, false);
  if (!betas.empty() && !cfg.input.empty()) throw UsageError{"decompose takes --input or one inequality, not both"};
  if (betas.size() > 1) throw UsageError{"decompose takes a single inequality"};
  const OutcomeVector v = betas.empty() ? load_distribution(cfg) : betas.front().coeffs;
  const std::string text = decomposition_json(v, cfg.tolerance);
  if (!cfg.output.empty()) {
    const DecomposedVector d = decompose(v);
    for (Subspace s : kAllSubspaces) {
      const double norm = d.component(s).norm();
      if (d.component(s).coeffs().cwiseAbs().maxCoeff() > cfg.tolerance)
        out << std::left << std::setw(9) << name_of(s) << " norm " << sci(norm) << '\n';
    }
  }
  emit(cfg, out, text, "decomposition");
}

CovarianceMatrix covariance_for(const CommandConfig& cfg, const OutcomeVector& p) {
  const SamplingScheme scheme(cfg.trials, cfg.allocation);
  if (cfg.cov == CovSource::analytic) return analytic_covariance(p, scheme, cfg.estimator);
  return mc_covariance(p, scheme, cfg.runs, cfg.seed, {cfg.threads, cfg.estimator});
}

void cmd_optimize(const CommandConfig& cfg, std::ostream& out) {
  const auto betas = selected_inequalities(cfg, false);
  if (betas.size() != 1) throw UsageError{"optimize needs exactly one of --inequality or --catalog"};
  const OutcomeVector p = load_distribution(cfg);
  const CovarianceMatrix sigma = covariance_for(cfg, p);
  const BellInequality opt = optimal_variant(betas.front(), sigma);
  if (!cfg.output.empty()) {
    out << "sigma " << betas.front().name << " " << sci(std_dev(betas.front(), sigma)) << '\n';
    out << "sigma optimal " << sci(std_dev(opt, sigma)) << '\n';
  }
  emit(cfg, out, to_json(opt), "optimal inequality");
}

void cmd_simulate(const CommandConfig& cfg, std::ostream& out) {
  const OutcomeVector p = load_distribution(cfg);
  const auto betas = selected_inequalities(cfg, true);
  const EnsembleReport r = run_ensemble(p, betas, SamplingScheme(cfg.trials, cfg.allocation), cfg.runs, cfg.seed,
                                        cfg.threads);
  out << "runs " << r.runs << ", trials " << cfg.trials << ", allocation " << name_of(cfg.allocation) << ", seed "
      << cfg.seed << '\n';
  for (const auto& s : r.inequalities)
    out << std::left << std::setw(9) << s.name << " mean " << sci(s.mean) << "  std " << sci(s.std_dev) << '\n';
  if (r.rejections > 0) out << "redrawn allocations " << r.rejections << '\n';
  if (!cfg.output.empty()) write_file(cfg.output, ensemble_summary_json(r));
  if (!cfg.histogram.empty()) write_file(cfg.histogram, histogram_csv(r, make_histogram(r, cfg.bins)));
  if (!cfg.raw.empty()) write_file(cfg.raw, raw_values_csv(r));
}

void cmd_model(const CommandConfig& cfg, std::ostream& out) {
  OutcomeVector p;
  if (cfg.model == "nv") {
    const MeasurementAngles angles = cfg.nv_angles ? *cfg.nv_angles : nv_angles(cfg.nv.epsilon);
    p = nv_distribution(cfg.nv.lambda, cfg.nv.visibility, cfg.nv.readout_a, cfg.nv.readout_b, angles);
  } else {
    p = spdc_distribution(cfg.spdc);
  }
  emit(cfg, out, to_json(p), cfg.model + " distribution");
}

void cmd_group_verify(const CommandConfig& cfg, std::ostream& out) {
  const std::vector<Relabeling> g = enumerate_group();
  int invariant = 0;
  json blocks = json::object();
  for (Block b : kAllBlocks) {
    const bool ok = verify_invariance(g, b);
    invariant += ok;
    blocks[std::string(name_of(b))] = ok;
  }
  const double avg = (averaging_projector(g) - projector(Subspace::NO1)).cwiseAbs().maxCoeff();
  const int dim = commutant_dimension(g);
  const json report{{"order", g.size()},
                    {"invariant_blocks", invariant},
                    {"blocks", blocks},
                    {"commutant_dimension", dim},
                    {"averaging_projector_deviation", avg},
                    {"cayley_checksum", cayley_checksum(g)}};
  out << "order " << g.size() << '\n'
      << "invariant blocks " << invariant << '\n'
      << "commutant dimension " << dim << '\n'
      << "averaging projector - NO1 projector " << sci(avg) << '\n';
  if (!cfg.output.empty()) write_file(cfg.output, report.dump(2));
}

void cmd_catalog(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.catalog_names.empty()) {
    for (const auto& n : catalog_names()) out << n << '\n';
    return;
  }
  if (cfg.catalog_names.size() != 1) throw UsageError{"catalog takes a single --name"};
  emit(cfg, out, to_json(catalog(cfg.catalog_names.front())), "inequality");
}

MeasurementAngles angles_from_degrees(const std::vector<double>& deg) {
  constexpr double r = std::numbers::pi / 180.0;
  return {{deg[0] * r, deg[1] * r}, {deg[2] * r, deg[3] * r}};
}

}  // namespace

std::optional<CommandConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CommandConfig cfg;
  CLI::App app{"Bell inequality decomposition, variance optimization and trial simulation", "bellopt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string allocation = "fixed", cov = "analytic", estimator = "frequency", loss = "kraus";
  std::vector<double> angles;

  auto add_io = [&](CLI::App* c) { c->add_option("-o,--output", cfg.output, "Output file (JSON)"); };
  auto add_input = [&](CLI::App* c) {
    c->add_option("-i,--input", cfg.input, "Distribution JSON")->check(CLI::ExistingFile);
  };
  auto add_inequality = [&](CLI::App* c, bool many) {
    auto* f = c->add_option("--inequality", cfg.inequality_files, "Inequality JSON")->check(CLI::ExistingFile);
    auto* n = c->add_option("--catalog", cfg.catalog_names, "Catalog inequality name")
                  ->check(CLI::IsMember(catalog_names()));
    if (!many) {
      f->expected(1);
      n->expected(1);
    }
    f->excludes(n);
  };
  auto add_sampling = [&](CLI::App* c) {
    c->add_option("--trials", cfg.trials, "Trials per run")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 50));
    c->add_option("--runs", cfg.runs, "Number of runs")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    c->add_option("--seed", cfg.seed, "Random seed");
    c->add_option("--allocation", allocation, "Setting allocation")->check(CLI::IsMember({"fixed", "random"}));
    c->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 1024));
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "Split a vector into its invariant components");
  add_input(decompose_cmd);
  add_inequality(decompose_cmd, false);
  add_io(decompose_cmd);
  decompose_cmd->add_option("--tolerance", cfg.tolerance, "Components below this are omitted")
      ->check(CLI::NonNegativeNumber);

  auto* optimize_cmd = app.add_subcommand("optimize", "Minimal-variance variant of an inequality");
  add_input(optimize_cmd);
  add_inequality(optimize_cmd, false);
  add_sampling(optimize_cmd);
  add_io(optimize_cmd);
  optimize_cmd->add_option("--cov", cov, "Covariance source")->check(CLI::IsMember({"analytic", "mc"}));
  optimize_cmd->add_option("--estimator", estimator, "Probability estimator")
      ->check(CLI::IsMember({"frequency", "count-rate"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "Ensemble of finite-trial runs");
  add_input(simulate_cmd);
  add_inequality(simulate_cmd, true);
  add_sampling(simulate_cmd);
  add_io(simulate_cmd);
  simulate_cmd->add_option("--histogram", cfg.histogram, "Histogram CSV");
  simulate_cmd->add_option("--bins", cfg.bins, "Histogram bins")->check(CLI::Range(1, 100000));
  simulate_cmd->add_option("--raw", cfg.raw, "Per-run values CSV");

  auto* model_cmd = app.add_subcommand("model", "Distribution of a physical source");
  model_cmd->add_option("source", cfg.model, "nv or spdc")->required()->check(CLI::IsMember({"nv", "spdc"}));
  add_io(model_cmd);
  auto* lambda = model_cmd->add_option("--lambda", cfg.nv.lambda, "NV: population of |00>,|11>");
  auto* visibility = model_cmd->add_option("--visibility", cfg.nv.visibility, "NV: singlet coherence");
  auto* epsilon = model_cmd->add_option("--epsilon", cfg.nv.epsilon, "NV: angle offset (rad)");
  auto* mu = model_cmd->add_option("--mu", cfg.spdc.mu, "SPDC: mean pair number");
  auto* ratio = model_cmd->add_option("--ratio-r", cfg.spdc.ratio_r, "SPDC: amplitude ratio r");
  auto* eta_a = model_cmd->add_option("--eta-a", cfg.spdc.eta_a, "SPDC: efficiency of A");
  auto* eta_b = model_cmd->add_option("--eta-b", cfg.spdc.eta_b, "SPDC: efficiency of B");
  auto* cutoff = model_cmd->add_option("--cutoff", cfg.spdc.cutoff, "SPDC: photons per mode");
  auto* loss_opt =
      model_cmd->add_option("--loss", loss, "SPDC: loss model")->check(CLI::IsMember({"kraus", "single"}));
  model_cmd->add_option("--angles", angles, "a0,a1,b0,b1 in degrees")->delimiter(',')->expected(4);

  auto* group_cmd = app.add_subcommand("group-verify", "Check the relabeling group structure");
  add_io(group_cmd);

  auto* catalog_cmd = app.add_subcommand("catalog", "Print a catalog inequality");
  catalog_cmd->add_option("--name", cfg.catalog_names, "Inequality name")->check(CLI::IsMember(catalog_names()))
      ->expected(1);
  add_io(catalog_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError{e.what()};
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.allocation = allocation_from_name(allocation);
  cfg.cov = cov == "mc" ? CovSource::mc : CovSource::analytic;
  cfg.estimator = estimator == "count-rate" ? Estimator::count_rate : Estimator::frequency;
  cfg.spdc.loss = loss == "single" ? LossModel::single_operator : LossModel::kraus;

  if (cfg.subcommand == "model") {
    const bool nv = cfg.model == "nv";
    for (auto* o : {lambda, visibility, epsilon})
      if (!nv && o->count()) throw UsageError{o->get_name() + " applies to the nv source only"};
    for (auto* o : {mu, ratio, eta_a, eta_b, cutoff, loss_opt})
      if (nv && o->count()) throw UsageError{o->get_name() + " applies to the spdc source only"};
    if (!angles.empty()) {
      if (nv && epsilon->count()) throw UsageError{"--angles and --epsilon are mutually exclusive"};
      const MeasurementAngles m = angles_from_degrees(angles);
      if (nv)
        cfg.nv_angles = m;
      else
        cfg.spdc.angles = m;
    }
  }
  if (cfg.subcommand == "simulate" && cfg.runs < 2 && !cfg.histogram.empty())
    throw UsageError{"--histogram needs at least 2 runs"};
  if (cfg.subcommand == "optimize" && cfg.cov == CovSource::mc && cfg.runs < 2)
    throw UsageError{"--cov mc needs --runs >= 2"};
  return cfg;
}

void run_command(const CommandConfig& cfg, std::ostream& out) {
  static const std::map<std::string, void (*)(const CommandConfig&, std::ostream&)> table = {
      {"decompose", cmd_decompose}, {"optimize", cmd_optimize},          {"simulate", cmd_simulate},
      {"model", cmd_model},         {"group-verify", cmd_group_verify}, {"catalog", cmd_catalog},
  };
  const auto it = table.find(cfg.subcommand);
  if (it == table.end()) throw UsageError{"unknown subcommand '" + cfg.subcommand + "'"};
  it->second(cfg, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto fail = [&](int code, const char* kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}, {"status", code}}}}.dump() << '\n';
    return code;
  };
  try {
    const auto cfg = parse_command_line(argc, argv, out);
    if (cfg) run_command(*cfg, out);
    return 0;
  } catch (const UsageError& e) {
    return fail(2, "usage", e.message);
  } catch (const IoError& e) {
    return fail(3, "io", e.what());
  } catch (const SchemaError& e) {
    return fail(4, "schema", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(5, "parameter", e.what());
  } catch (const std::domain_error& e) {
    return fail(5, "numeric", e.what());
  } catch (const std::exception& e) {
    return fail(5, "internal", e.what());
  }
}

}  // namespace bellopt::cli
