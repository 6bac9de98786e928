#include "impact/bsnetwork.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "impact/theories.hpp"

namespace impact {

namespace {

bool is_input(char port) { return port == 'a' || port == 'b'; }
bool is_output(char port) { return port == 'c' || port == 'd'; }

std::string to_string(const PortRef& p) { return p.splitter + "." + p.port; }

std::string to_string(PhaseSymbol s) {
  switch (s) {
    case PhaseSymbol::None: return "";
    case PhaseSymbol::Alpha: return "alpha";
    case PhaseSymbol::Beta: return "beta";
    case PhaseSymbol::Gamma: return "gamma";
  }
  return "";
}

double angle_of(PhaseSymbol s, const PhaseSettings& ph) {
  switch (s) {
    case PhaseSymbol::None: return 0.0;
    case PhaseSymbol::Alpha: return ph.alpha;
    case PhaseSymbol::Beta: return ph.beta;
    case PhaseSymbol::Gamma: return ph.gamma;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Parsing

[[noreturn]] void fail(int line, const std::string& msg) {
  throw GeometryError("geometry line " + std::to_string(line) + ": " + msg);
}

PortRef parse_port(const std::string& tok, int line) {
  const auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 2 != tok.size()) {
    fail(line, "expected <splitter>.<port>, got '" + tok + "'");
  }
  const char port = tok[dot + 1];
  if (!is_input(port) && !is_output(port)) fail(line, "unknown port '" + tok + "'");
  return PortRef{tok.substr(0, dot), port};
}

PortRef parse_input(const std::string& tok, int line) {
  PortRef p = parse_port(tok, line);
  if (!is_input(p.port)) fail(line, "'" + tok + "' is not an input port");
  return p;
}

PortRef parse_output(const std::string& tok, int line) {
  PortRef p = parse_port(tok, line);
  if (!is_output(p.port)) fail(line, "'" + tok + "' is not an output port");
  return p;
}

PhaseSymbol parse_phase(const std::string& tok, int line) {
  if (tok == "alpha") return PhaseSymbol::Alpha;
  if (tok == "beta") return PhaseSymbol::Beta;
  if (tok == "gamma") return PhaseSymbol::Gamma;
  if (tok == "none") return PhaseSymbol::None;
  fail(line, "unknown phase '" + tok + "'");
}

// ---------------------------------------------------------------------------
// Validation

void validate_network(const PhotonNetwork& net, int photon) {
  const std::string who = "photon " + std::to_string(photon) + ": ";
  std::set<std::string> names;
  for (const auto& s : net.splitters) {
    if (!names.insert(s).second) throw GeometryError(who + "splitter " + s + " declared twice");
  }
  if (names.empty()) throw GeometryError(who + "no splitters");
  if (net.sources.size() != 1) throw GeometryError(who + "exactly one source is required");

  std::map<PortRef, int> uses;
  auto use = [&](const PortRef& p) {
    if (!names.contains(p.splitter)) {
      throw GeometryError(who + "unknown splitter in " + to_string(p));
    }
    if (++uses[p] > 1) throw GeometryError(who + "port " + to_string(p) + " used twice");
  };
  for (const auto& p : net.sources) use(p);
  for (const auto& p : net.open_inputs) use(p);
  for (const auto& a : net.arms) {
    use(a.from);
    use(a.to);
  }
  for (const auto& d : net.detectors) use(d.from);
  for (const auto& p : net.dumps) use(p);

  for (const auto& s : net.splitters) {
    for (char port : {'a', 'b', 'c', 'd'}) {
      if (!uses.contains(PortRef{s, port})) {
        throw GeometryError(who + "dangling port " + s + "." + port);
      }
    }
  }

  bool plus = false;
  bool minus = false;
  for (const auto& d : net.detectors) (d.sign == Sign::Plus ? plus : minus) = true;
  if (!plus || !minus) throw GeometryError(who + "both a + and a - detector are required");
}

// ---------------------------------------------------------------------------
// Path enumeration

struct Walker {
  const PhotonNetwork& net;
  const PhaseSettings& phases;
  std::vector<PhotonPath>& out;

  void from_input(const PortRef& in, PhotonPath path, std::size_t depth) {
    if (depth > net.arms.size() + 1) throw GeometryError("geometry contains a cycle");
    const char transmit = in.port == 'a' ? 'c' : 'd';
    const char reflect = in.port == 'a' ? 'd' : 'c';

    PhotonPath t = path;
    t.trace.push_back({TraceStep::Transmit, 0.0});
    from_output(PortRef{in.splitter, transmit}, std::move(t), depth);

    path.trace.push_back({TraceStep::Reflect, 0.0});
    from_output(PortRef{in.splitter, reflect}, std::move(path), depth);
  }

  void from_output(const PortRef& outp, PhotonPath path, std::size_t depth) {
    for (const auto& d : net.detectors) {
      if (d.from == outp) {
        path.detector = d.sign;
        out.push_back(std::move(path));
        return;
      }
    }
    for (const auto& a : net.arms) {
      if (a.from == outp) {
        path.arms.push_back(a.label);
        if (a.phase != PhaseSymbol::None) {
          path.trace.push_back({TraceStep::PhaseShift, angle_of(a.phase, phases)});
        }
        from_input(a.to, std::move(path), depth + 1);
        return;
      }
    }
    // Dumped port: the photon is lost.
  }
};

// ---------------------------------------------------------------------------
// Comparison helpers

Outcome relabel(Outcome o, DetectorLabeling lab) {
  auto flip = [](Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; };
  return Outcome{lab.flip_side1 ? flip(o.sigma) : o.sigma,
                 lab.flip_side2 ? flip(o.omega) : o.omega};
}

Sign relabel(Sign s, bool flip) {
  return flip ? (s == Sign::Plus ? Sign::Minus : Sign::Plus) : s;
}

std::string describe(const PhaseSettings& ph) {
  std::ostringstream os;
  os << "(alpha,beta,gamma)=(" << ph.alpha << "," << ph.beta << "," << ph.gamma << ")";
  return os.str();
}

std::string describe(Amplitude a) {
  std::ostringstream os;
  os.precision(6);
  os << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
  return os.str();
}

double ratio_deviation(Amplitude num, Amplitude den, Amplitude expected) {
  if (std::abs(den) < 1e-300) return std::numeric_limits<double>::infinity();
  return std::abs(num / den - expected);
}

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tol) : check_{std::move(name), true, 0.0, {}}, tol_(tol) {}

  void record(double deviation, const std::string& what) {
    if (!(deviation <= check_.max_deviation)) check_.max_deviation = deviation;
    if (check_.pass && !(deviation <= tol_)) {
      check_.pass = false;
      check_.first_mismatch = what;
    }
  }

  OracleCheck result() const { return check_; }

 private:
  OracleCheck check_;
  double tol_;
};

// Renormalized view of the derived joint amplitudes of one subensemble.
struct JointView {
  std::vector<PathPair> pairs;
  std::map<std::pair<std::size_t, std::size_t>, Amplitude> amp;  // (pair idx, outcome idx)

  Amplitude at(std::size_t pair, Outcome o) const { return amp.at({pair, outcome_index(o)}); }
};

JointView joint_view(const DerivedTables& t, Subensemble sub, DetectorLabeling lab) {
  JointView v;
  v.pairs = members(sub);
  double norm = 0.0;
  for (std::size_t i = 0; i < v.pairs.size(); ++i) {
    for (Outcome o : kAllOutcomes) {
      const Amplitude a = t.joint(v.pairs[i], relabel(o, lab));
      v.amp[{i, outcome_index(o)}] = a;
      norm += std::norm(a);
    }
  }
  const double scale = norm > 0.0 ? 1.0 / std::sqrt(norm) : 0.0;
  for (auto& [k, a] : v.amp) a *= scale;
  return v;
}

void compare_joint(const DerivedTables& t, Subensemble sub, const PhaseSettings& ph,
                   DetectorLabeling lab, CheckAccumulator& magnitude, CheckAccumulator& ratios,
                   CheckAccumulator& signs, CheckAccumulator& probs) {
  const JointView v = joint_view(t, sub, lab);
  const auto& pairs = v.pairs;
  const std::string where = " at " + describe(ph);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (Outcome o : kAllOutcomes) {
      magnitude.record(std::abs(std::abs(v.at(i, o)) - kJointMagnitude),
                       "|A_" + to_string(o) + to_string(pairs[i]) + "| = " +
                           std::to_string(std::abs(v.at(i, o))) + where);
    }
  }

  for (Outcome o : kAllOutcomes) {
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      const Amplitude expected =
          amp_joint(pairs[i], o, ph) / amp_joint(pairs[0], o, ph);
      const std::string label = "A_" + to_string(o) + to_string(pairs[i]) + "/A_" +
                                to_string(o) + to_string(pairs[0]);
      ratios.record(ratio_deviation(v.at(i, o), v.at(0, o), expected),
                    label + ": derived " + describe(v.at(i, o) / v.at(0, o)) + ", table " +
                        describe(expected) + where);
    }
  }

  const std::array<std::pair<Outcome, Outcome>, 2> relations = {
      std::pair{kAllOutcomes[0], kAllOutcomes[3]}, std::pair{kAllOutcomes[1], kAllOutcomes[2]}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const auto& [o1, o2] : relations) {
      const Amplitude expected = amp_joint(pairs[i], o1, ph) / amp_joint(pairs[i], o2, ph);
      signs.record(ratio_deviation(v.at(i, o1), v.at(i, o2), expected),
                   "A_" + to_string(o1) + to_string(pairs[i]) + "/A_" + to_string(o2) +
                       to_string(pairs[i]) + ": derived " +
                       describe(v.at(i, o1) / v.at(i, o2)) + ", table " + describe(expected) +
                       where);
    }
  }

  const JointDistribution reference = qm_joint(sub, ph);
  for (Outcome o : kAllOutcomes) {
    Amplitude sum{};
    for (std::size_t i = 0; i < pairs.size(); ++i) sum += v.at(i, o);
    probs.record(std::abs(std::norm(sum) - reference[o]),
                 "P_" + to_string(o) + "(" + to_string(sub) + ") = " +
                     std::to_string(std::norm(sum)) + ", expected " +
                     std::to_string(reference[o]) + where);
  }
}

void compare_single(const DerivedTables& t, const PhaseSettings& ph, bool flip,
                    CheckAccumulator& magnitude, CheckAccumulator& ratios,
                    CheckAccumulator& probs) {
  constexpr Arm l = Arm::Short;
  constexpr Arm L = Arm::Long;
  const std::array<Arm2Path, 3> paths = {Arm2Path{L, l}, Arm2Path{l, L}, Arm2Path{L, L}};
  const std::string where = " at " + describe(ph);

  std::map<std::pair<std::size_t, Sign>, Amplitude> amp;
  double norm = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const Amplitude a = t.single(paths[i], relabel(s, flip));
      amp[{i, s}] = a;
      norm += std::norm(a);
    }
  }
  const double scale = norm > 0.0 ? 1.0 / std::sqrt(norm) : 0.0;
  for (auto& [k, a] : amp) a *= scale;

  for (const auto& [key, a] : amp) {
    magnitude.record(std::abs(std::abs(a) - kSingleMagnitude),
                     "|A_" + to_string(key.second) + "(" + to_string(paths[key.first]) +
                         ")| = " + std::to_string(std::abs(a)) + where);
  }
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (std::size_t i = 1; i < paths.size(); ++i) {
      const Amplitude expected = amp_single(paths[i], s, ph) / amp_single(paths[0], s, ph);
      ratios.record(ratio_deviation(amp[{i, s}], amp[{0, s}], expected),
                    "A_" + to_string(s) + "(" + to_string(paths[i]) + ")/A_" + to_string(s) +
                        "(" + to_string(paths[0]) + "): derived " +
                        describe(amp[{i, s}] / amp[{0, s}]) + ", table " + describe(expected) +
                        where);
    }
  }

  // |A(LL)|^2 + |A(Ll) + A(lL)|^2 per detector.
  const SinglesPair reference = causal_singles_side2(ph);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double p = std::norm(amp[{2, s}]) + std::norm(amp[{0, s}] + amp[{1, s}]);
    const double expected = s == Sign::Plus ? reference.p_plus : reference.p_minus;
    probs.record(std::abs(p - expected), "P_" + to_string(s) + " single-path = " +
                                             std::to_string(p) + ", expected " +
                                             std::to_string(expected) + where);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_unitary(const SplitterConvention& c, double tol) {
  const double power = std::norm(c.t) + std::norm(c.r);
  const Amplitude cross = c.t * std::conj(c.r) + c.r * std::conj(c.t);
  return std::isfinite(power) && std::abs(power - 1.0) <= tol && std::abs(cross) <= tol;
}

void require_unitary(const SplitterConvention& conv) {
  if (!is_unitary(conv)) {
    throw ContractError("splitter convention t=" + describe(conv.t) + ", r=" + describe(conv.r) +
                        " is not unitary");
  }
}

Amplitude trace_amplitude(const PathTrace& trace, const SplitterConvention& conv) {
  Amplitude a{1.0, 0.0};
  for (const auto& e : trace) {
    switch (e.step) {
      case TraceStep::Transmit: a *= conv.t; break;
      case TraceStep::Reflect: a *= conv.r; break;
      case TraceStep::PhaseShift: a *= std::polar(1.0, e.angle); break;
    }
  }
  return a;
}

Geometry parse_geometry(std::istream& in) {
  Geometry g;
  PhotonNetwork* cur = nullptr;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    const std::string& kw = tok[0];
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (tok.size() < lo || tok.size() > hi) fail(line, "wrong number of fields for '" + kw + "'");
    };

    if (kw == "photon") {
      need(2, 2);
      if (tok[1] == "1") cur = &g.photon1;
      else if (tok[1] == "2") cur = &g.photon2;
      else fail(line, "photon must be 1 or 2");
      continue;
    }
    if (cur == nullptr) fail(line, "statement before any 'photon' section");

    if (kw == "splitter") {
      need(2, 2);
      if (tok[1].find('.') != std::string::npos) fail(line, "splitter names cannot contain '.'");
      cur->splitters.push_back(tok[1]);
    } else if (kw == "source") {
      need(2, 2);
      cur->sources.push_back(parse_input(tok[1], line));
    } else if (kw == "open") {
      need(2, 2);
      cur->open_inputs.push_back(parse_input(tok[1], line));
    } else if (kw == "arm") {
      need(4, 5);
      ArmSpec a;
      a.from = parse_output(tok[1], line);
      a.to = parse_input(tok[2], line);
      if (tok[3] == "l") a.label = Arm::Short;
      else if (tok[3] == "L") a.label = Arm::Long;
      else fail(line, "arm label must be l or L");
      if (tok.size() == 5) a.phase = parse_phase(tok[4], line);
      cur->arms.push_back(a);
    } else if (kw == "detector") {
      need(3, 3);
      DetectorSpec d;
      d.from = parse_output(tok[1], line);
      if (tok[2] == "+") d.sign = Sign::Plus;
      else if (tok[2] == "-") d.sign = Sign::Minus;
      else fail(line, "detector sign must be + or -");
      cur->detectors.push_back(d);
    } else if (kw == "dump") {
      need(2, 2);
      cur->dumps.push_back(parse_output(tok[1], line));
    } else {
      fail(line, "unknown statement '" + kw + "'");
    }
  }
  validate_geometry(g);
  return g;
}

Geometry parse_geometry_text(const std::string& text) {
  std::istringstream in(text);
  return parse_geometry(in);
}

Geometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot read geometry file '" + path + "'");
  return parse_geometry(in);
}

std::string format_geometry(const Geometry& g) {
  std::ostringstream os;
  auto emit = [&](const PhotonNetwork& net, int photon) {
    os << "photon " << photon << "\n";
    for (const auto& s : net.splitters) os << "splitter " << s << "\n";
    for (const auto& p : net.sources) os << "source " << to_string(p) << "\n";
    for (const auto& p : net.open_inputs) os << "open " << to_string(p) << "\n";
    for (const auto& a : net.arms) {
      os << "arm " << to_string(a.from) << " " << to_string(a.to) << " "
         << impact::to_string(a.label);
      if (a.phase != PhaseSymbol::None) os << " " << to_string(a.phase);
      os << "\n";
    }
    for (const auto& d : net.detectors) {
      os << "detector " << to_string(d.from) << " " << impact::to_string(d.sign) << "\n";
    }
    for (const auto& p : net.dumps) os << "dump " << to_string(p) << "\n";
  };
  emit(g.photon1, 1);
  os << "\n";
  emit(g.photon2, 2);
  return os.str();
}

Geometry default_geometry() {
  return parse_geometry_text(R"(
photon 1
splitter BS10
splitter BS11
source BS10.a
open BS10.b
arm BS10.c BS11.a l
arm BS10.d BS11.b L alpha
detector BS11.c +
detector BS11.d -

photon 2
splitter BS20
splitter BS21
splitter BS22
source BS20.a
open BS20.b
arm BS20.c BS21.a l
arm BS20.d BS21.b L beta
arm BS21.c BS22.a l
arm BS21.d BS22.b L gamma
detector BS22.c +
detector BS22.d -
)");
}

void validate_geometry(const Geometry& g) {
  validate_network(g.photon1, 1);
  validate_network(g.photon2, 2);
}

std::vector<PhotonPath> enumerate_paths(const PhotonNetwork& net, const PhaseSettings& phases) {
  std::vector<PhotonPath> out;
  Walker w{net, phases, out};
  w.from_input(net.sources.at(0), PhotonPath{}, 0);
  return out;
}

Amplitude DerivedTables::joint(PathPair pair, Outcome o) const {
  const auto a = photon1.find({pair.photon1, o.sigma});
  const auto b = photon2.find({{pair.photon2.first, pair.photon2.second}, o.omega});
  if (a == photon1.end() || b == photon2.end()) return Amplitude{};
  return a->second * b->second;
}

Amplitude DerivedTables::single(Arm2Path path, Sign s) const {
  const auto b = photon2.find({{path.first, path.second}, s});
  return b == photon2.end() ? Amplitude{} : b->second;
}

DerivedTables derive_tables(const Geometry& g, const SplitterConvention& conv,
                            const PhaseSettings& phases) {
  require_unitary(conv);
  validate_geometry(g);
  DerivedTables t;
  for (const auto& p : enumerate_paths(g.photon1, phases)) {
    if (p.arms.size() != 1) {
      throw GeometryError("photon 1 path crosses " + std::to_string(p.arms.size()) +
                          " arms; expected 1");
    }
    t.photon1[{p.arms[0], p.detector}] += trace_amplitude(p.trace, conv);
  }
  for (const auto& p : enumerate_paths(g.photon2, phases)) {
    if (p.arms.size() != 2) {
      throw GeometryError("photon 2 path crosses " + std::to_string(p.arms.size()) +
                          " arms; expected 2");
    }
    t.photon2[{{p.arms[0], p.arms[1]}, p.detector}] += trace_amplitude(p.trace, conv);
  }
  return t;
}

bool OracleReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.pass; });
}

std::vector<PhaseSettings> phase_grid(int points) {
  if (points < 1) throw ContractError("phase_grid: need at least one point per axis");
  std::vector<PhaseSettings> grid;
  const double step = 2.0 * std::numbers::pi / points;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      for (int k = 0; k < points; ++k) grid.push_back({i * step, j * step, k * step});
    }
  }
  return grid;
}

OracleReport validate_oracle(const Geometry& g, const SplitterConvention& conv,
                             const std::vector<PhaseSettings>& grid, double tol,
                             DetectorLabeling labeling) {
  require_unitary(conv);
  validate_geometry(g);

  CheckAccumulator magL("joint L magnitudes", tol), ratL("joint L ratios", tol),
      signL("joint L sign relations", tol), probL("joint L probabilities", tol);
  CheckAccumulator magl("joint l magnitudes", tol), ratl("joint l ratios", tol),
      signl("joint l sign relations", tol), probl("joint l probabilities", tol);
  CheckAccumulator magS("single-path magnitudes", tol), ratS("single-path ratios", tol),
      probS("single-path probabilities", tol);

  for (const auto& ph : grid) {
    const DerivedTables t = derive_tables(g, conv, ph);
    compare_joint(t, Subensemble::Long, ph, labeling, magL, ratL, signL, probL);
    compare_joint(t, Subensemble::Short, ph, labeling, magl, ratl, signl, probl);
    compare_single(t, ph, labeling.flip_side2, magS, ratS, probS);
  }

  OracleReport report;
  report.labeling = labeling;
  for (const auto* c : {&magL, &ratL, &signL, &probL, &magl, &ratl, &signl, &probl, &magS, &ratS,
                        &probS}) {
    report.checks.push_back(c->result());
  }
  return report;
}

OracleReport validate_oracle_any_labeling(const Geometry& g, const SplitterConvention& conv,
                                          const std::vector<PhaseSettings>& grid, double tol) {
  OracleReport first;
  for (bool f1 : {false, true}) {
    for (bool f2 : {false, true}) {
      OracleReport r = validate_oracle(g, conv, grid, tol, DetectorLabeling{f1, f2});
      if (r.pass()) return r;
      if (!f1 && !f2) first = std::move(r);
    }
  }
  return first;
}

}  // namespace impact
