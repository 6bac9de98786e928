// impactsim: analytic predictions, Monte Carlo runs, theory comparison and
// oracle validation for the two-photon impact-series interferometer.
//
// Exit codes: 0 success, 2 argument or contract error, 3 validation failure.

#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "impact/bsnetwork.hpp"
#include "impact/montecarlo.hpp"
#include "impact/output.hpp"

namespace {

using namespace impact;

constexpr int kExitContract = 2;
constexpr int kExitValidation = 3;

struct CommonOptions {
  std::string model = "qm";
  std::string ordering = "spacelike";
  std::string subensemble = "L";
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool degrees = false;
  std::string format;
  std::string out;
};

const std::map<std::string, TheoryKind> kModels = {
    {"qm", TheoryKind::QM}, {"causal", TheoryKind::Causal}, {"rnl", TheoryKind::RNL}};
const std::map<std::string, TimeOrdering> kOrderings = {{"1", TimeOrdering::Ordering1},
                                                        {"2", TimeOrdering::Ordering2},
                                                        {"spacelike", TimeOrdering::Spacelike}};
const std::map<std::string, Subensemble> kSubensembles = {
    {"L", Subensemble::Long}, {"l", Subensemble::Short}};
const std::map<std::string, OutputFormat> kFormats = {{"csv", OutputFormat::CSV},
                                                      {"json", OutputFormat::JSON}};
const std::map<std::string, PhaseAxis> kAxes = {
    {"alpha", PhaseAxis::Alpha}, {"beta", PhaseAxis::Beta}, {"gamma", PhaseAxis::Gamma}};

double to_radians(double v, bool degrees) { return degrees ? v * std::numbers::pi / 180.0 : v; }

void add_common(CLI::App* cmd, CommonOptions& o, bool with_format) {
  cmd->add_option("--model", o.model, "Theory model")
      ->check(CLI::IsMember({"qm", "causal", "rnl"}));
  cmd->add_option("--ordering", o.ordering, "Time ordering")
      ->check(CLI::IsMember({"1", "2", "spacelike"}));
  cmd->add_option("--alpha", o.alpha, "Phase on photon 1's long arm");
  cmd->add_option("--beta", o.beta, "Phase on photon 2's first long arm");
  cmd->add_option("--gamma", o.gamma, "Phase on photon 2's second long arm");
  cmd->add_flag("--degrees", o.degrees, "Angles are given in degrees");
  cmd->add_option("--subensemble", o.subensemble, "Coincidence peak kept (L or l)")
      ->check(CLI::IsMember({"L", "l"}));
  if (with_format) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

TheoryModel model_of(const CommonOptions& o) {
  return TheoryModel{kModels.at(o.model), kOrderings.at(o.ordering)};
}

PhaseSettings phases_of(const CommonOptions& o) {
  return PhaseSettings{to_radians(o.alpha, o.degrees), to_radians(o.beta, o.degrees),
                       to_radians(o.gamma, o.degrees)};
}

// Writes to --out or stdout.
void emit(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
  f << text;
}

std::vector<double> parse_grid(const std::string& spec, bool degrees) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ContractError("--grid expects start:stop:count");
  std::size_t used = 0;
  const double start = std::stod(parts[0]);
  const double stop = std::stod(parts[1]);
  const long count = std::stol(parts[2], &used);
  if (used != parts[2].size() || count < 1) throw ContractError("--grid count must be >= 1");
  std::vector<double> grid;
  for (long i = 0; i < count; ++i) {
    const double v = count == 1 ? start : start + (stop - start) * i / (count - 1);
    grid.push_back(to_radians(v, degrees));
  }
  return grid;
}

Amplitude parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Amplitude{std::stod(text), 0.0};
  return Amplitude{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

std::string describe(const SinglesPair& s) {
  return fmt::format("P(+) = {}, P(-) = {}", format_real(s.p_plus), format_real(s.p_minus));
}

// Human-readable predict output with the provenance of each number.
std::string predict_text(const TheoryModel& model, Subensemble sub, const PhaseSettings& ph) {
  const Prediction pred = predict(model, ph, sub);
  std::string out = fmt::format("model={} ordering={} subensemble={} alpha={} beta={} gamma={}\n",
                                to_string(model.kind), to_string(model.ordering),
                                to_string(sub), format_real(ph.alpha), format_real(ph.beta),
                                format_real(ph.gamma));
  const bool qm = model.kind == TheoryKind::QM;
  auto source = [&](Side side) -> std::string {
    if (qm) {
      return side == Side::Side1 ? "superposition of the peak's three path pairs, D1 marginal"
                                 : "superposition of the peak's three path pairs, D2 marginal";
    }
    return side == Side::Side1 ? "sum of probabilities, photon 1 impacting first"
                               : "|A(LL)|^2 + |A(Ll)+A(lL)|^2, photon 2 impacting first";
  };
  auto line = [&](const char* name, const std::optional<SinglesPair>& s, Side side) {
    if (s) {
      out += fmt::format("{}: {}  [{}]\n", name, describe(*s), source(side));
    } else {
      out += fmt::format("{}: undefined  [depends on the particular causal model]\n", name);
    }
  };
  line("side1", pred.side1, Side::Side1);
  line("side2", pred.side2, Side::Side2);
  if (pred.joint) {
    out += "joint:";
    for (Outcome o : kAllOutcomes) {
      out += fmt::format(" P{} = {}", to_string(o), format_real((*pred.joint)[o]));
    }
    out += "\n";
  }
  if (pred.side1) {
    out += fmt::format("E = P1(+) - P1(-) = {}\n",
                       format_real(pred.side1->p_plus - pred.side1->p_minus));
  }
  return out;
}

std::string report_text(const OracleReport& r, const SplitterConvention& conv) {
  auto c = [](Amplitude a) {
    return fmt::format("{}{:+}i", format_real(a.real()), std::stod(format_real(a.imag())));
  };
  std::string out = fmt::format("convention t={} r={}  labeling flip_side1={} flip_side2={}\n",
                                c(conv.t), c(conv.r), r.labeling.flip_side1,
                                r.labeling.flip_side2);
  for (const auto& chk : r.checks) {
    out += fmt::format("{} {:<26} max deviation {:.3e}\n", chk.pass ? "PASS" : "FAIL", chk.name,
                       chk.max_deviation);
    if (!chk.pass) out += fmt::format("     first mismatch: {}\n", chk.first_mismatch);
  }
  out += r.pass() ? "oracle: PASS\n" : "oracle: FAIL\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Impact-series two-photon interferometer simulator"};
  app.require_subcommand(1);

  CommonOptions predict_opts;
  auto* predict_cmd = app.add_subcommand("predict", "Analytic singles and joint probabilities");
  add_common(predict_cmd, predict_opts, true);

  CommonOptions sim_opts;
  std::uint64_t events = 1'000'000;
  std::uint64_t seed = 42;
  unsigned workers = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run and E estimate");
  add_common(sim_cmd, sim_opts, true);
  sim_cmd->add_option("--events", events, "Emitted photon pairs")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "Random seed");
  sim_cmd->add_option("--workers", workers, "Worker threads (result does not depend on it)");

  CommonOptions cmp_opts;
  std::string grid_spec = "0:6.283185307179586:13";
  std::string axis = "alpha";
  std::uint64_t cmp_events = 100'000;
  std::uint64_t cmp_seed = 42;
  std::vector<std::string> cmp_models = {"qm", "rnl"};
  auto* cmp_cmd = app.add_subcommand("compare", "QM versus causal fringes over a phase grid");
  add_common(cmp_cmd, cmp_opts, true);
  cmp_cmd->add_option("--grid", grid_spec, "start:stop:count, endpoints included");
  cmp_cmd->add_option("--axis", axis, "Phase varied along the grid")
      ->check(CLI::IsMember({"alpha", "beta", "gamma"}));
  cmp_cmd->add_option("--events", cmp_events, "Emitted pairs per grid point")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp_seed, "Random seed");
  cmp_cmd->add_option("--models", cmp_models, "Models to compare")
      ->check(CLI::IsMember({"qm", "causal", "rnl"}))
      ->delimiter(',');

  std::string geometry_path;
  std::string t_text = "0.7071067811865476,0";
  std::string r_text = "0,0.7071067811865476";
  double tol = 1e-9;
  int grid_points = 7;
  bool allow_relabel = false;
  bool print_geometry = false;
  auto* val_cmd = app.add_subcommand("validate-oracle",
                                     "Rederive the amplitude tables from a splitter network");
  val_cmd->add_option("--geometry", geometry_path, "Geometry file (default: built-in cascade)");
  val_cmd->add_option("--t", t_text, "Transmission amplitude re,im");
  val_cmd->add_option("--r", r_text, "Reflection amplitude re,im");
  val_cmd->add_option("--tol", tol, "Comparison tolerance");
  val_cmd->add_option("--grid-points", grid_points, "Phase values per axis")
      ->check(CLI::PositiveNumber);
  val_cmd->add_flag("--allow-relabel", allow_relabel, "Accept any D1/D2 +/- labeling");
  val_cmd->add_flag("--print-geometry", print_geometry, "Print the geometry and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitContract;
  }

  try {
    if (*predict_cmd) {
      const auto& o = predict_opts;
      const TheoryModel model = model_of(o);
      const Subensemble sub = kSubensembles.at(o.subensemble);
      const PhaseSettings ph = phases_of(o);
      if (o.format.empty()) {
        emit(o, predict_text(model, sub, ph));
      } else {
        std::ostringstream os;
        write_rows(os, {make_row("predict", model, sub, ph, 0, 0, std::nullopt)},
                   kFormats.at(o.format));
        emit(o, os.str());
      }
    } else if (*sim_cmd) {
      const auto& o = sim_opts;
      RunConfig cfg{model_of(o), phases_of(o), events, seed, kSubensembles.at(o.subensemble),
                    workers};
      const CoincidenceTally t = run(cfg);
      std::ostringstream os;
      write_rows(os, {make_row("simulate", cfg.model, cfg.target_sub, cfg.phases, seed, events, t)},
                 kFormats.at(o.format.empty() ? "csv" : o.format));
      emit(o, os.str());
    } else if (*cmp_cmd) {
      const auto& o = cmp_opts;
      const auto grid = parse_grid(grid_spec, o.degrees);
      const Subensemble sub = kSubensembles.at(o.subensemble);
      std::vector<OutputRow> rows;
      std::vector<std::vector<ScanPoint>> scans;
      std::vector<TheoryModel> models;
      for (const auto& name : cmp_models) {
        TheoryModel m{kModels.at(name), kOrderings.at(o.ordering)};
        // The causal model needs a definite ordering; photon 1 first is the
        // ordering where it conflicts with QM.
        if (m.kind == TheoryKind::Causal && m.ordering == TimeOrdering::Spacelike) {
          m.ordering = TimeOrdering::Ordering2;
        }
        models.push_back(m);
        scans.push_back(scan_phases(m, kAxes.at(axis), grid, phases_of(o), cmp_events, cmp_seed,
                                    sub, workers));
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t m = 0; m < models.size(); ++m) {
          const ScanPoint& pt = scans[m][i];
          rows.push_back(make_row("compare", models[m], sub, pt.phases, pt.seed, cmp_events,
                                  pt.tally));
        }
      }
      std::ostringstream os;
      write_rows(os, rows, kFormats.at(o.format.empty() ? "csv" : o.format));
      emit(o, os.str());
    } else if (*val_cmd) {
      const SplitterConvention conv{parse_complex(t_text), parse_complex(r_text)};
      require_unitary(conv);
      const Geometry g = geometry_path.empty() ? default_geometry() : load_geometry(geometry_path);
      if (print_geometry) {
        std::cout << format_geometry(g);
        return 0;
      }
      const auto grid = phase_grid(grid_points);
      const OracleReport report = allow_relabel
                                      ? validate_oracle_any_labeling(g, conv, grid, tol)
                                      : validate_oracle(g, conv, grid, tol);
      std::cout << report_text(report, conv);
      return report.pass() ? 0 : kExitValidation;
    }
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number (" << e.what() << ")\n";
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return 0;
}
