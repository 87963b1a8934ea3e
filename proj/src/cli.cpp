#include "entrates/cli.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "entrates/errors.hpp"
#include "entrates/io.hpp"
#include "entrates/scans.hpp"
#include "entrates/selftest.hpp"

namespace entrates::cli {

namespace {

using io::Json;

const std::map<std::string, Family>& family_table() {
  static const std::map<std::string, Family> table{{"bell-mix", Family::BellMix},
                                                   {"maxcorr-2x2", Family::MaxCorr2x2},
                                                   {"maxcorr-general", Family::MaxCorrGeneral},
                                                   {"product-mix", Family::ProductMix},
                                                   {"raw", Family::Raw}};
  return table;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ValidationError("parameter " + key + ": not a number: '" + text + "'");
  return v;
}

void require(bool present, const std::string& what) {
  if (!present) throw ValidationError(what);
}

void add_optimizer_flags(CLI::App* cmd, maxcorr::OptimizerConfig& config) {
  cmd->add_option("--members", config.members, "Decomposition size K (0: rank^2)");
  cmd->add_option("--restarts", config.restarts, "Random restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", config.seed, "Restart seed");
  cmd->add_option("--tol", config.tol, "Stop when a sweep gains less than this (bits)")->check(CLI::PositiveNumber);
  cmd->add_option("--max-sweeps", config.max_sweeps, "Sweep budget per restart")->check(CLI::PositiveNumber);
}

void flag(measures::MeasureReport& r, const std::string& key, measures::Provenance p) {
  r.flags.push_back(key + ":" + measures::to_string(p));
}

// Fills D_gamma for maximally correlated states and D = F = S(rho_A) for pure ones.
void add_state_measures(const BipartiteState& s, EvaluatedState& e) {
  if (measures::is_maximally_correlated(s)) {
    e.report.d_gamma = measures::d_gamma_maxcorr(s);
    flag(e.report, "D_gamma", measures::Provenance::PptFormula);
  }
  if (const auto ent = measures::pure_state_entanglement(s)) {
    e.report.d = *ent;
    e.report.flags.push_back("D:pure-state");
  }
}

void finish(EvaluatedState& e) {
  auto& r = e.report;
  if (!r.d) r.flags.push_back("D:unknown-locc");
  if (!r.f_cost) r.flags.push_back("F:unavailable");
  if (!r.d_gamma) r.flags.push_back("D_gamma:unavailable");
  if (r.d && r.f_cost) {
    r.cycle_ratio = rates::cycle_ratio_singlet(*r.d, *r.f_cost);
    if (!r.cycle_ratio) r.flags.push_back("cycle_ratio:undefined-0/0");
  }
  measures::check_report(r);
  e.descriptor.d_locc = r.d;
  e.descriptor.d_gamma = r.d_gamma;
  e.descriptor.f = r.f_cost;
}

void write_scan(const scans::ScanGrid& grid, const std::string& kind, double step, std::uint64_t seed,
                const std::string& out_path, std::ostream& out) {
  std::ostringstream csv;
  scans::write_csv(grid, csv);
  if (out_path.empty()) {
    out << csv.str();
    return;
  }
  io::write_text_file(out_path, csv.str());
  io::write_text_file(out_path + ".meta.json", io::dump_json(io::scan_metadata(grid, kind, step, seed)) + "\n");
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& [name, fam] : family_table())
    if (fam == f) return name;
  return "unknown";
}

Family parse_family(const std::string& name) {
  const auto it = family_table().find(name);
  if (it == family_table().end()) throw ValidationError("unknown state family '" + name + "'");
  return it->second;
}

StateFamilySpec parse_family_spec(const std::string& text) {
  StateFamilySpec spec;
  const auto colon = text.find(':');
  spec.family = parse_family(text.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("expected key=value in '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  switch (spec.family) {
    case Family::BellMix:
    case Family::ProductMix: {
      const auto p = take("p");
      require(p.has_value(), family_name(spec.family) + " needs p");
      spec.p = parse_number("p", *p);
      break;
    }
    case Family::MaxCorr2x2: {
      const auto q = take("q");
      const auto a2 = take("a2");
      require(q && a2, "maxcorr-2x2 needs q and a2");
      spec.q = parse_number("q", *q);
      spec.a2 = parse_number("a2", *a2);
      break;
    }
    case Family::MaxCorrGeneral:
    case Family::Raw: {
      const auto file = take("file");
      require(file.has_value(), family_name(spec.family) + " needs file");
      spec.file = *file;
      break;
    }
  }
  if (!kv.empty()) throw ValidationError("unexpected parameter '" + kv.begin()->first + "' for " + family_name(spec.family));
  return spec;
}

EvaluatedState evaluate(const StateFamilySpec& spec, const maxcorr::OptimizerConfig& config) {
  EvaluatedState e;
  e.descriptor.family = family_name(spec.family);
  switch (spec.family) {
    case Family::BellMix: {
      const measures::BellMixtureParam param(spec.p);
      e.descriptor.params = {spec.p};
      e.report.d = measures::d_bell_mixture(param);
      e.report.f_cost = measures::f_bell_mixture(param);
      flag(e.report, "D", measures::Provenance::ClosedForm);
      flag(e.report, "F", measures::Provenance::ClosedForm);
      e.report.d_gamma = measures::d_gamma_maxcorr(measures::bell_mixture_state(param));
      flag(e.report, "D_gamma", measures::Provenance::PptFormula);
      break;
    }
    case Family::MaxCorr2x2: {
      const auto param = measures::MaxCorr2x2Param::from_weight(spec.q, spec.a2);
      e.descriptor.params = {spec.q, spec.a2};
      const auto state = measures::maxcorr_2x2_state(param);
      e.report.f_cost = measures::f_maxcorr_2x2(param);
      flag(e.report, "F", measures::Provenance::ClosedForm);
      add_state_measures(state, e);
      if (!e.report.d && std::abs(spec.a2 - 0.5) <= 1e-12) {
        // |a|^2 = 1/2 is the Bell mixture with p = q.
        e.report.d = measures::d_bell_mixture(measures::BellMixtureParam(spec.q));
        flag(e.report, "D", measures::Provenance::ClosedForm);
      }
      break;
    }
    case Family::ProductMix: {
      const auto state = measures::phi_plus_product_mixture(spec.p);
      e.descriptor.params = {spec.p};
      e.report.f_cost = measures::wootters_eof_2x2(state).eof;
      flag(e.report, "F", measures::Provenance::Wootters);
      add_state_measures(state, e);
      break;
    }
    case Family::MaxCorrGeneral: {
      const auto mc = io::maxcorr_spec_from_json(io::read_json_file(spec.file));
      e.descriptor.family += ":" + spec.file;
      const auto state = maxcorr::build_maxcorr(mc);
      e.report.f_cost = maxcorr::reduced_eof(mc, config).value;
      flag(e.report, "F", measures::Provenance::ReducedEof);
      add_state_measures(state, e);
      break;
    }
    case Family::Raw: {
      const auto state = io::bipartite_from_json(io::read_json_file(spec.file));
      e.descriptor.family += ":" + spec.file;
      if (state.dim_a() == 2 && state.dim_b() == 2) {
        e.report.f_cost = measures::wootters_eof_2x2(state).eof;
        flag(e.report, "F", measures::Provenance::Wootters);
      }
      add_state_measures(state, e);
      if (!e.report.f_cost && e.report.d) {
        e.report.f_cost = e.report.d;  // pure: F = S(rho_A)
        e.report.flags.push_back("F:pure-state");
      }
      break;
    }
  }
  finish(e);
  return e;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymptotic entanglement transformation rates and irreversibility witnesses", "entrates"};
  app.require_subcommand(1);

  maxcorr::OptimizerConfig config;

  StateFamilySpec mspec;
  std::string family = "bell-mix";
  std::optional<double> opt_p;
  std::optional<double> opt_q;
  std::optional<double> opt_a2;
  auto* measures_cmd = app.add_subcommand("measures", "Report D, F, D_gamma and D/F for a state family");
  measures_cmd->add_option("--family", family, "bell-mix | maxcorr-2x2 | maxcorr-general | product-mix | raw")
      ->required();
  measures_cmd->add_option("--p", opt_p, "Mixing parameter (bell-mix, product-mix)");
  measures_cmd->add_option("--q", opt_q, "Mixing parameter (maxcorr-2x2)");
  measures_cmd->add_option("--a2", opt_a2, "|a|^2 (maxcorr-2x2)");
  measures_cmd->add_option("--file", mspec.file, "JSON input (maxcorr-general, raw)");
  add_optimizer_flags(measures_cmd, config);

  std::string eof_file;
  bool additivity = false;
  auto* eof_cmd = app.add_subcommand("eof", "Entanglement of formation of a maximally correlated state");
  eof_cmd->add_option("--file", eof_file, "a-matrix JSON")->required();
  eof_cmd->add_flag("--additivity", additivity, "Also compare against the doubled state");
  add_optimizer_flags(eof_cmd, config);

  std::string rho_text;
  std::string sigma_text;
  auto* witness_cmd = app.add_subcommand("witness", "Classify the sign of R_Diff for a pair of states");
  witness_cmd->add_option("--rho", rho_text, "e.g. bell-mix:p=0.99")->required();
  witness_cmd->add_option("--sigma", sigma_text, "e.g. maxcorr-2x2:q=0.7,a2=0.3")->required();
  add_optimizer_flags(witness_cmd, config);

  std::string kind;
  double step = scans::kDefaultStep;
  std::string out_path;
  double p_min = 0.5, p_max = 1.0, q_min = 0.5, q_max = 1.0, a2_max = 0.5;
  std::optional<double> a2_min;
  std::vector<double> p_list;
  double anchor_q = 2.0 / 3.0;
  std::uint64_t scan_seed = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Grid experiments written as CSV");
  scan_cmd->add_option("kind", kind, "fig1 | fig3 | limit | fig2")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig3", "limit", "fig2"}));
  scan_cmd->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  scan_cmd->add_option("--p-min", p_min);
  scan_cmd->add_option("--p-max", p_max);
  scan_cmd->add_option("--q-min", q_min);
  scan_cmd->add_option("--q-max", q_max);
  scan_cmd->add_option("--a2-min", a2_min, "Defaults to one step");
  scan_cmd->add_option("--a2-max", a2_max);
  scan_cmd->add_option("--p-list", p_list, "p values for the limit scan")->delimiter(',');
  scan_cmd->add_option("--q", anchor_q, "Fixed q for fig2 anchors");
  scan_cmd->add_option("--seed", scan_seed, "Recorded in the metadata sidecar");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the oracle-equivalence checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (measures_cmd->parsed()) {
      mspec.family = parse_family(family);
      switch (mspec.family) {
        case Family::BellMix:
        case Family::ProductMix:
          require(opt_p.has_value(), "--p is required for " + family);
          mspec.p = *opt_p;
          break;
        case Family::MaxCorr2x2:
          require(opt_q && opt_a2, "--q and --a2 are required for maxcorr-2x2");
          mspec.q = *opt_q;
          mspec.a2 = *opt_a2;
          break;
        case Family::MaxCorrGeneral:
        case Family::Raw:
          require(!mspec.file.empty(), "--file is required for " + family);
          break;
      }
      out << io::dump_json(io::to_json(evaluate(mspec, config).report)) << "\n";
    } else if (eof_cmd->parsed()) {
      const auto spec = io::maxcorr_spec_from_json(io::read_json_file(eof_file));
      Json j = io::to_json(maxcorr::reduced_eof(spec, config));
      if (additivity) j["additivity"] = io::to_json(maxcorr::additivity_check(spec, config));
      out << io::dump_json(j) << "\n";
    } else if (witness_cmd->parsed()) {
      const auto rho = evaluate(parse_family_spec(rho_text), config);
      const auto sigma = evaluate(parse_family_spec(sigma_text), config);
      out << io::dump_json(io::to_json(rates::rdiff_sign_witness(rho.descriptor, sigma.descriptor))) << "\n";
    } else if (scan_cmd->parsed()) {
      if (kind == "fig1") {
        write_scan(scans::fig1_scan({p_min, p_max}, {q_min, q_max}, step), kind, step, scan_seed, out_path, out);
      } else if (kind == "fig3") {
        const scans::Range a2{a2_min.value_or(step), a2_max};
        write_scan(scans::fig3_scan({q_min, q_max}, a2, step), kind, step, scan_seed, out_path, out);
      } else if (kind == "limit") {
        const auto list = p_list.empty() ? scans::default_limit_p_list() : p_list;
        write_scan(scans::limit_scan(list), kind, 0.0, scan_seed, out_path, out);
      } else {
        out << io::dump_json(io::to_json(scans::fig2_anchors(anchor_q))) << "\n";
      }
    } else if (selftest_cmd->parsed()) {
      return selftest::run(out) ? kExitOk : kExitFailure;
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace entrates::cli
