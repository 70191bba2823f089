#include "resonance/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "resonance/analytic3.hpp"
#include "resonance/csv.hpp"
#include "resonance/error.hpp"
#include "resonance/evolve.hpp"
#include "resonance/experiments.hpp"
#include "resonance/scan.hpp"
#include "resonance/spec_io.hpp"

namespace resonance::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string config;
  std::string out_dir;
};

struct ProbeArgs {
  double omega = 1.0;
  double epsilon0 = 0.0;
  double c = 0.01;
};

void add_probe_options(CLI::App* cmd, ProbeArgs& probe, bool with_omega) {
  if (with_omega) cmd->add_option("--omega", probe.omega, "probe frequency")->capture_default_str();
  cmd->add_option("--epsilon0", probe.epsilon0, "reference-state energy")->capture_default_str();
  cmd->add_option("--c", probe.c, "probe-register coupling")->capture_default_str();
}

hamiltonian::ProbeConfig to_probe(const ProbeArgs& a) {
  hamiltonian::ProbeConfig p{a.omega, a.epsilon0, a.c};
  p.validate();
  return p;
}

qcore::Limits limits_from(const Common& common) {
  return common.config.empty() ? qcore::Limits{} : spec_io::load_limits(common.config);
}

fs::path prepare_out_dir(const std::string& dir) {
  if (dir.empty()) throw ValidationError("--out-dir is required");
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw ValidationError("cannot create output directory " + dir);
  return p;
}

void report_advisories(const hamiltonian::ProbeConfig& probe, std::ostream& err) {
  for (const auto& msg : probe.advisories()) err << "warning: " << msg << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("invalid integer list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty integer list");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probe-qubit resonance simulator", "resonance"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker threads for grid sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", common.seed, "base RNG seed")->capture_default_str();
  app.add_option("--config", common.config, "JSON file with numeric limits")->check(CLI::ExistingFile);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "evolve |Psi_0> and report success/decay probabilities");
  std::string sim_spec;
  ProbeArgs sim_probe;
  double sim_t = 0.0;
  std::string sim_rep = "reduced";
  std::uint64_t sim_shots = 0;
  int sim_trotter = 0;
  std::string sim_out;
  simulate->add_option("--spec", sim_spec, "system spec JSON")->required()->check(CLI::ExistingFile);
  add_probe_options(simulate, sim_probe, true);
  simulate->add_option("--t", sim_t, "evolution time")->required();
  simulate->add_option("--representation", sim_rep, "full or reduced")->capture_default_str();
  simulate->add_option("--shots", sim_shots, "probe readouts to sample (0 = none)");
  simulate->add_option("--trotter-steps", sim_trotter, "use the product formula with M steps (full only)");
  simulate->add_option("--out-dir", sim_out, "write simulate.csv here");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "sweep the probe frequency and locate decay peaks");
  std::string scan_spec;
  ProbeArgs scan_probe;
  scan::ScanConfig scan_cfg;
  std::string scan_rep = "reduced";
  std::optional<double> scan_t, scan_threshold;
  std::string scan_out;
  scan_cmd->add_option("--spec", scan_spec, "system spec JSON")->required()->check(CLI::ExistingFile);
  add_probe_options(scan_cmd, scan_probe, false);
  scan_cmd->add_option("--omega-ini", scan_cfg.omega_ini, "lower frequency bound")->required();
  scan_cmd->add_option("--omega-fin", scan_cfg.omega_fin, "upper frequency bound")->required();
  scan_cmd->add_option("--q", scan_cfg.q, "number of grid intervals")->required();
  scan_cmd->add_option("--t", scan_t, "evolution time (default pi/(2 c d_typ))");
  scan_cmd->add_option("--shots", scan_cfg.shots, "readouts per point (0 = exact)");
  scan_cmd->add_option("--representation", scan_rep, "full or reduced")->capture_default_str();
  scan_cmd->add_option("--threshold", scan_threshold, "peak threshold (default half the maximum)");
  scan_cmd->add_option("--min-separation", scan_cfg.min_separation, "peak window in grid cells")
      ->capture_default_str();
  scan_cmd->add_option("--out-dir", scan_out, "output directory")->required();

  // table1
  auto* table_cmd = app.add_subcommand("table1", "alpha vs d at E' = 20, P = 0.99");
  bool table_max_over_t = false;
  std::string table_out;
  table_cmd->add_flag("--max-over-t", table_max_over_t, "use max of P over [0, t] instead of P(t)");
  table_cmd->add_option("--out-dir", table_out, "output directory")->required();

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "write figure datasets");
  std::string fig_id;
  std::string fig_out;
  fig_cmd->add_option("--id", fig_id, "2a, 2b, 3, 4, 4c, 5 or all")->required();
  fig_cmd->add_option("--out-dir", fig_out, "output directory")->required();

  // trotter-check
  auto* trotter_cmd = app.add_subcommand("trotter-check", "product-formula error vs step count");
  std::string tr_spec;
  ProbeArgs tr_probe;
  double tr_t = 1.0;
  std::string tr_m = "8,16,32,64,128,256,512,1024";
  std::string tr_out;
  trotter_cmd->add_option("--spec", tr_spec, "explicit system spec JSON")->required()->check(CLI::ExistingFile);
  add_probe_options(trotter_cmd, tr_probe, true);
  trotter_cmd->add_option("--t", tr_t, "evolution time")->capture_default_str();
  trotter_cmd->add_option("--m-list", tr_m, "comma-separated step counts")->capture_default_str();
  trotter_cmd->add_option("--out-dir", tr_out, "write trotter.csv here");

  // validate-eq5
  auto* closed_form_cmd = app.add_subcommand("validate-eq5", "closed-form amplitude vs 3x3 propagation");
  std::string closed_form_grid = "default";
  std::string closed_form_out;
  closed_form_cmd->add_option("--grid", closed_form_grid, "default (201 times per case) or fine (2001)")
      ->check(CLI::IsMember({"default", "fine"}))
      ->capture_default_str();
  closed_form_cmd->add_option("--out-dir", closed_form_out, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    const auto limits = limits_from(common);

    if (simulate->parsed()) {
      const auto spec = spec_io::load_system_spec(sim_spec, limits);
      const auto probe = to_probe(sim_probe);
      report_advisories(probe, err);
      const auto rep = evolve::parse_representation(sim_rep);
      if (!std::isfinite(sim_t) || sim_t < 0.0) throw ValidationError("--t must be finite and >= 0");
      evolve::EvolutionResult r = [&] {
        if (sim_trotter > 0) {
          if (rep != evolve::Representation::full) {
            throw ValidationError("--trotter-steps requires --representation full");
          }
          return evolve::evolve_trotter(spec, probe, sim_t, sim_trotter, limits);
        }
        return evolve::evolve(spec, probe, sim_t, rep, limits);
      }();
      out << "success_prob=" << csv::number(r.success_prob) << '\n'
          << "probe_decay_prob=" << csv::number(r.probe_decay_prob) << '\n'
          << "leakage=" << csv::number(r.leakage) << '\n';
      csv::Table table{{"t", "success_prob", "probe_decay_prob", "leakage"},
                       {{sim_t, r.success_prob, r.probe_decay_prob, r.leakage}}};
      if (sim_shots > 0) {
        const auto counts = evolve::sample_probe(r, sim_shots, common.seed);
        out << "count0=" << counts.count0 << '\n' << "count1=" << counts.count1 << '\n';
        table.columns.insert(table.columns.end(), {"count0", "shots"});
        table.rows[0].insert(table.rows[0].end(),
                             {static_cast<double>(counts.count0), static_cast<double>(sim_shots)});
      }
      if (!sim_out.empty()) {
        csv::write_atomically(prepare_out_dir(sim_out) / "simulate.csv", table.to_string());
      }
      return kExitOk;
    }

    if (scan_cmd->parsed()) {
      const auto spec = spec_io::load_system_spec(scan_spec, limits);
      auto probe = to_probe(scan_probe);
      probe.omega = scan_cfg.omega_ini;
      scan_cfg.representation = evolve::parse_representation(scan_rep);
      scan_cfg.t_evolve = scan_t;
      scan_cfg.threshold = scan_threshold;
      scan_cfg.seed = common.seed;
      const auto dir = prepare_out_dir(scan_out);
      const auto result = scan::run_scan(spec, probe, scan_cfg, common.threads, limits);
      csv::write_atomically(dir / "scan.csv", scan::scan_csv(result));
      csv::write_atomically(dir / "peaks.csv", scan::peaks_csv(result));
      out << "t_evolve=" << csv::number(result.t_evolve) << '\n'
          << "threshold=" << csv::number(result.threshold) << '\n'
          << "peaks=" << result.peaks.size() << '\n';
      for (double e : result.spectrum_estimates) out << "energy_estimate=" << csv::number(e) << '\n';
      return kExitOk;
    }

    if (table_cmd->parsed()) {
      const auto dir = prepare_out_dir(table_out);
      const auto mode = table_max_over_t ? experiments::PMode::max_over_t : experiments::PMode::fixed_time;
      const auto rows = experiments::table1(mode, common.threads);
      const auto table = experiments::table1_csv(rows);
      csv::write_atomically(dir / "table1.csv", table.to_string());
      out << table.to_string();
      return kExitOk;
    }

    if (fig_cmd->parsed()) {
      const auto dir = prepare_out_dir(fig_out);
      const auto ids = fig_id == "all" ? experiments::all_figures()
                                       : std::vector<experiments::FigureId>{experiments::parse_figure_id(fig_id)};
      for (auto id : ids) {
        const auto table = experiments::figure_dataset(id, common.threads);
        csv::write_atomically(dir / experiments::file_name(id), table.to_string());
        out << "wrote " << experiments::file_name(id) << " (" << table.rows.size() << " rows)\n";
      }
      return kExitOk;
    }

    if (trotter_cmd->parsed()) {
      const auto spec = spec_io::load_system_spec(tr_spec, limits);
      const auto probe = to_probe(tr_probe);
      report_advisories(probe, err);
      const auto ms = parse_int_list(tr_m);
      const auto points = evolve::trotter_convergence(spec, probe, tr_t, ms, limits);
      csv::Table table{{"m", "error"}, {}};
      for (const auto& p : points) table.rows.push_back({static_cast<double>(p.m_steps), p.error});
      if (!tr_out.empty()) csv::write_atomically(prepare_out_dir(tr_out) / "trotter.csv", table.to_string());
      out << table.to_string();
      if (points.size() >= 2) out << "slope=" << csv::number(evolve::loglog_slope(points)) << '\n';
      return kExitOk;
    }

    if (closed_form_cmd->parsed()) {
      const auto dir = prepare_out_dir(closed_form_out);
      const auto v = experiments::validate_closed_form(closed_form_grid == "fine" ? 2001 : 201, common.threads);
      csv::write_atomically(dir / "eq5_report.csv", v.report.to_string());
      out << "max_abs_diff=" << csv::number(v.max_abs_diff) << '\n'
          << "degenerate_points=" << v.degenerate_points << '\n'
          << "points=" << v.report.rows.size() << '\n';
      return kExitOk;
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace resonance::cli
