#include "omx/cli/commands.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "omx/cli/io.hpp"
#include "omx/cli/svg.hpp"
#include "omx/error.hpp"
#include "omx/spectrum.hpp"
#include "omx/steady_state.hpp"
#include "omx/sweep.hpp"

namespace omx::cli {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::size_t kMaxBranches = 3;

ojson params_ordered(const SystemParams& p) {
  ojson j;
  j["delta_c"] = p.delta_c;
  j["delta_d"] = p.delta_d;
  j["eta"] = p.eta;
  j["gamma_a"] = p.gamma_a;
  j["gamma_m"] = p.gamma_m;
  j["kappa"] = p.kappa;
  j["chi"] = p.chi;
  j["g"] = p.g;
  j["e_l"] = p.e_l;
  j["e_p"] = p.e_p;
  j["sigma_z"] = p.sigma_z;
  return j;
}

void add_branch_columns(Table& t) {
  for (std::size_t k = 1; k <= kMaxBranches; ++k) t.header.push_back("n" + std::to_string(k));
  for (std::size_t k = 1; k <= kMaxBranches; ++k) t.header.push_back("stable" + std::to_string(k));
}

std::vector<std::string> branch_cells(const RootSet& set) {
  std::vector<std::string> cells(2 * kMaxBranches);
  for (std::size_t k = 0; k < std::min(kMaxBranches, set.branches.size()); ++k) {
    cells[k] = format_double(set.branches[k].n);
    cells[kMaxBranches + k] = format_bool(set.branches[k].stability == Stability::stable);
  }
  return cells;
}

Table trace_table(const SweepTrace& trace, bool with_paths) {
  Table t;
  t.header.push_back(trace.swept_name);
  add_branch_columns(t);
  if (with_paths) {
    t.header.emplace_back("up_path");
    t.header.emplace_back("down_path");
  }
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    std::vector<std::string> row{format_double(trace.values[i])};
    const auto cells = branch_cells(trace.root_sets[i]);
    row.insert(row.end(), cells.begin(), cells.end());
    if (with_paths) {
      row.push_back(i < trace.up_path.size() ? format_double(trace.up_path[i]) : "");
      row.push_back(i < trace.down_path.size() ? format_double(trace.down_path[i]) : "");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

void emit_table(const Table& t, const RunConfig& cfg, std::ostream& out) {
  emit(cfg.output.format == "json" ? to_json_rows(t) : to_csv(t), cfg.output.path, out);
  if (!cfg.output.plot.empty()) write_file_atomic(cfg.output.plot, render_svg(plot_from_table(t)));
}

OperatingPoint operating_point(const RunConfig& cfg) {
  if (cfg.spectrum.n) {
    if (!(*cfg.spectrum.n >= 0.0)) throw InvalidParams("spectrum.n must be non-negative");
    return OperatingPoint::from_photon_number(*cfg.spectrum.n);
  }
  const auto roots = steady_roots(cfg.params);
  const SteadyStateBranch* pick = nullptr;
  for (const auto& b : roots.branches) {
    if (b.stability == Stability::stable) pick = &b;
  }
  if (!pick && !roots.branches.empty()) pick = &roots.branches.back();
  if (!pick) throw NumericalError("no steady state to linearize about");
  return OperatingPoint::from_branch(*pick);
}

}  // namespace

std::string steady_json(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto roots = steady_roots(p);
  const auto verdict = bistability_predicate(p);
  const auto eff = effective_params(p);
  const auto tp = turning_points(p);

  ojson j;
  j["params"] = params_ordered(p);
  ojson branches = ojson::array();
  for (const auto& b : roots.branches) {
    ojson e;
    e["n"] = b.n;
    e["re_a_s"] = b.a_s.real();
    e["im_a_s"] = b.a_s.imag();
    e["q_s"] = b.q_s;
    e["p_s"] = b.p_s;
    e["re_sigma_s"] = b.sigma_s.real();
    e["im_sigma_s"] = b.sigma_s.imag();
    e["stability"] = to_string(b.stability);
    e["marginal"] = b.marginal;
    e["slope"] = b.slope;
    branches.push_back(std::move(e));
  }
  j["branches"] = std::move(branches);
  j["discriminant"] = verdict.bracket;
  j["compact_discriminant"] = verdict.compact;
  j["predicate"] = verdict.bistable;
  ojson knees = ojson::array();
  ojson drives = ojson::array();
  for (double n : tp.n) {
    knees.push_back(n);
    drives.push_back(drive_for_photon_number(p, n));
  }
  j["turning_points"] = std::move(knees);
  j["knee_drives"] = std::move(drives);
  j["effective"] = {{"beta", eff.beta}, {"d_qd", eff.d_qd}, {"gamma_eff", eff.gamma_eff},
                    {"theta_eff", eff.theta_eff}};
  j["diagnostics"] = {{"complex_roots", roots.diagnostics.complex_roots},
                      {"negative_roots", roots.diagnostics.negative_roots}};
  return j.dump(2) + "\n";
}

Table sweep_table(const RunConfig& cfg) {
  const auto which = parse_swept_param(cfg.sweep.param);
  const auto tie = parse_detuning_tie(cfg.sweep.tie);
  if (tie != DetuningTie::none && which != SweptParam::delta_c) {
    throw InvalidParams("sweep.tie applies to delta_c sweeps only");
  }
  const auto trace = sweep_parameter(cfg.params, which, {cfg.sweep.start, cfg.sweep.stop}, cfg.sweep.points, tie);
  return trace_table(trace, false);
}

Table hysteresis_table(const RunConfig& cfg) {
  const auto which = parse_swept_param(cfg.sweep.param);
  const auto dir = parse_direction(cfg.sweep.direction);
  const auto trace = follow_branches(cfg.params, which, {cfg.sweep.start, cfg.sweep.stop}, cfg.sweep.points, dir);
  return trace_table(trace, true);
}

Table spectrum_table(const RunConfig& cfg, std::string& features_json) {
  const auto op = operating_point(cfg);
  const auto grid = make_grid(cfg.spectrum.grid, cfg.params.gamma_m);
  SpectrumOptions options;
  options.window = {cfg.spectrum.window_center, cfg.spectrum.window_half_width};
  options.with_eit = cfg.spectrum.eit;
  const auto s = spectrum(cfg.params, op, grid, options);

  Table t;
  t.header = {"delta_p", "T", "re_A1", "im_A1", "abs_A2", "abs_Q1"};
  if (cfg.spectrum.eit) t.header.emplace_back("T_eit");
  for (std::size_t i = 0; i < s.responses.size(); ++i) {
    const auto& r = s.responses[i];
    std::vector<std::string> row{format_double(r.delta_p), format_double(r.t),
                                 format_double(r.a1.real()), format_double(r.a1.imag()),
                                 format_double(std::abs(r.a2)), format_double(std::abs(r.q1))};
    if (cfg.spectrum.eit) row.push_back(format_double(s.t_eit[i]));
    t.rows.push_back(std::move(row));
  }

  const auto& f = s.features;
  ojson j;
  j["operating_point"] = {{"n", op.n}, {"re_a_s", op.a_s.real()}, {"im_a_s", op.a_s.imag()}};
  j["window"] = {{"center", options.window.center}, {"half_width", options.window.half_width}};
  j["peaks"] = f.peak_positions;
  j["dips"] = f.dip_positions;
  j["principal_peak"] = f.principal_peak ? ojson(*f.principal_peak) : ojson(nullptr);
  j["peak_value"] = f.peak_value;
  j["prominence"] = f.prominence;
  j["window_width"] = f.window_width;
  j["contrast"] = f.contrast;
  j["contrast_normalized"] = f.contrast_normalized;
  j["asymmetry"] = f.asymmetry;
  j["warnings"] = s.warnings;
  ojson failed = ojson::array();
  for (const auto& e : s.errors) failed.push_back({{"delta_p", e.delta_p}, {"message", e.message}});
  j["failed_points"] = std::move(failed);
  features_json = j.dump(2) + "\n";
  return t;
}

Table map_table(const RunConfig& cfg) {
  const auto& mx = cfg.map.x;
  const auto& my = cfg.map.y;
  if (mx.param == my.param) throw InvalidParams("map axes must be different parameters");
  const MapAxis x{parse_swept_param(mx.param), {mx.start, mx.stop}, mx.points};
  const MapAxis y{parse_swept_param(my.param), {my.start, my.stop}, my.points};
  const auto map = bistability_map(cfg.params, x, y);

  Table t;
  t.header = {mx.param, my.param, "root_count", "knee_root_count", "predicate", "discriminant",
              "near_boundary", "disagrees"};
  for (std::size_t iy = 0; iy < map.y_values.size(); ++iy) {
    for (std::size_t ix = 0; ix < map.x_values.size(); ++ix) {
      const auto& c = map.at(ix, iy);
      t.rows.push_back({format_double(map.x_values[ix]), format_double(map.y_values[iy]),
                        std::to_string(c.root_count), std::to_string(c.knee_root_count), format_bool(c.predicate),
                        format_double(c.discriminant), format_bool(c.near_boundary), format_bool(c.disagrees)});
    }
  }
  return t;
}

namespace {

// Flags that land in the config document at a dotted key, applied over the file.
struct FlagBinding {
  CLI::Option* option;
  std::string key;
  std::string* value;
};

struct RunCommand {
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<std::string> sets;
  std::deque<std::string> storage;
  std::vector<FlagBinding> flags;

  void bind(const std::string& flag, const std::string& key, const std::string& help) {
    storage.emplace_back();
    auto* opt = app->add_option(flag, storage.back(), help);
    flags.push_back({opt, key, &storage.back()});
  }

  RunConfig resolve() const {
    nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_config_json(config_path);
    for (const auto& f : flags) {
      if (f.option->count() > 0) apply_override(doc, f.key + "=" + *f.value);
    }
    for (const auto& s : sets) apply_override(doc, s);
    return parse_config(doc);
  }
};

void add_common(RunCommand& rc) {
  rc.app->add_option("-c,--config", rc.config_path, "JSON config file");
  rc.app->add_option("-s,--set", rc.sets, "override a config key, e.g. params.eta=0.3 (repeatable)");
  rc.bind("-o,--out", "output.path", "output file (stdout when omitted)");
  rc.bind("--format", "output.format", "csv or json");
  rc.bind("--plot", "output.plot", "also write an SVG plot to this path");
  for (const char* name : {"delta_c", "delta_d", "eta", "gamma_a", "gamma_m", "kappa", "chi", "g", "e_l", "e_p",
                           "sigma_z"}) {
    std::string flag = std::string("--") + name;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    rc.bind(flag, std::string("params.") + name, std::string(name) + " (units of w_m)");
  }
}

void add_sweep_flags(RunCommand& rc) {
  rc.bind("--param", "sweep.param", "swept parameter name");
  rc.bind("--start", "sweep.start", "first value");
  rc.bind("--stop", "sweep.stop", "last value");
  rc.bind("--points", "sweep.points", "number of values");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"omx: steady states, bistability and probe spectra of a hybrid optomechanical cavity"};
  app.require_subcommand(1);

  std::map<std::string, RunCommand> commands;
  auto make = [&](const std::string& name, const std::string& help) -> RunCommand& {
    auto& rc = commands[name];
    rc.app = app.add_subcommand(name, help);
    add_common(rc);
    return rc;
  };
  make("steady", "steady-state branches, stability and the bistability criterion (JSON)");
  auto& sweep = make("sweep", "root sets along a parameter sweep");
  add_sweep_flags(sweep);
  sweep.bind("--tie", "sweep.tie", "none | equal | opposite: how delta_d follows delta_c");
  auto& hyst = make("hysteresis", "branch-following sweep in both directions");
  add_sweep_flags(hyst);
  hyst.bind("--direction", "sweep.direction", "up | down | both");
  auto& spec = make("spectrum", "weak-probe transmission spectrum and features");
  spec.bind("--start", "spectrum.start", "first probe detuning");
  spec.bind("--stop", "spectrum.stop", "last probe detuning");
  spec.bind("--points", "spectrum.points", "base grid points");
  spec.bind("--n", "spectrum.n", "operating photon number (default: highest stable branch)");
  spec.bind("--eit", "spectrum.eit", "true to add the two-mode model column");
  spec.bind("--features", "output.features", "features JSON path");
  make("map", "bistability map over two parameters");

  std::string plot_input;
  std::string plot_output;
  std::string plot_title;
  auto* plot = app.add_subcommand("plot", "render a CSV written by this tool as SVG");
  plot->add_option("input", plot_input, "CSV file")->required();
  plot->add_option("-o,--out", plot_output, "SVG file")->required();
  plot->add_option("--title", plot_title, "plot title");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      for (const auto* sub : app.get_subcommands()) out << sub->help();
      return ExitCode::ok;
    }
    err << "error: " << e.what() << "\n";
    return ExitCode::invalid_config;
  }

  try {
    if (plot->parsed()) {
      auto spec_plot = plot_from_table(parse_csv(read_file(plot_input)));
      if (!plot_title.empty()) spec_plot.title = plot_title;
      write_file_atomic(plot_output, render_svg(spec_plot));
      return ExitCode::ok;
    }
    for (auto& [name, rc] : commands) {
      if (!rc.app->parsed()) continue;
      const RunConfig cfg = rc.resolve();
      require_valid(cfg.params);
      if (name == "steady") {
        emit(steady_json(cfg), cfg.output.path, out);
      } else if (name == "sweep") {
        emit_table(sweep_table(cfg), cfg, out);
      } else if (name == "hysteresis") {
        emit_table(hysteresis_table(cfg), cfg, out);
      } else if (name == "map") {
        emit_table(map_table(cfg), cfg, out);
      } else if (name == "spectrum") {
        std::string features;
        const auto table = spectrum_table(cfg, features);
        emit_table(table, cfg, out);
        std::string fpath = cfg.output.features;
        if (fpath.empty() && !cfg.output.path.empty() && cfg.output.path != "-") {
          fpath = cfg.output.path + ".features.json";
        }
        if (!fpath.empty()) write_file_atomic(fpath, features);
      }
      return ExitCode::ok;
    }
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return ExitCode::invalid_config;
  } catch (const InvalidParams& e) {
    err << "invalid config: " << e.what() << "\n";
    return ExitCode::invalid_config;
  } catch (const MalformedData& e) {
    err << "malformed input: " << e.what() << "\n";
    return ExitCode::invalid_config;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return ExitCode::numerical_failure;
  } catch (const IoError& e) {
    err << "i/o failure: " << e.what() << "\n";
    return ExitCode::io_failure;
  }
  return ExitCode::usage;
}

}  // namespace omx::cli
