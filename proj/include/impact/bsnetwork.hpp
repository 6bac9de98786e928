#pragma once

// First-principles rederivation of the amplitude tables: every photon path
// through a wired cascade of 50/50 splitters is traced, and its amplitude is
// the product of splitter factors and arm phases. Derived tables are compared
// with amplitudes.hpp through probabilities and phase-free amplitude ratios.
//
// Splitter ports: inputs a, b; outputs c, d. a->c and b->d transmit,
// a->d and b->c reflect.
//
// Geometry text format, one statement per line, '#' starts a comment:
//
//   photon <1|2>                    start the network of one photon
//   splitter <name>                 declare a splitter
//   source <name>.<a|b>             input port the photon enters through
//   open <name>.<a|b>               unused input port
//   arm <name>.<c|d> <name>.<a|b> <l|L> [alpha|beta|gamma]
//                                   arm of given length label and phase
//   detector <name>.<c|d> <+|->     detector on an output port
//   dump <name>.<c|d>               output port leading nowhere
//
// Every input and output port of a declared splitter must be used exactly
// once. Photon 1 paths must carry one arm label, photon 2 paths two.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "impact/amplitudes.hpp"
#include "impact/pathspace.hpp"

namespace impact {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SplitterConvention {
  Amplitude t{1.0 / std::sqrt(2.0), 0.0};
  Amplitude r{0.0, 1.0 / std::sqrt(2.0)};
};

/// |t|^2 + |r|^2 = 1 and t conj(r) + r conj(t) = 0, within tol.
bool is_unitary(const SplitterConvention& conv, double tol = 1e-12);
/// Throws ContractError if the convention is not unitary.
void require_unitary(const SplitterConvention& conv);

enum class TraceStep : std::uint8_t { Transmit, Reflect, PhaseShift };

struct TraceElement {
  TraceStep step = TraceStep::Transmit;
  double angle = 0.0;  // PhaseShift only
};

using PathTrace = std::vector<TraceElement>;

/// Product of the per-element factors.
Amplitude trace_amplitude(const PathTrace& trace, const SplitterConvention& conv);

enum class PhaseSymbol : std::uint8_t { None, Alpha, Beta, Gamma };

struct PortRef {
  std::string splitter;
  char port = 'a';

  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

struct ArmSpec {
  PortRef from;
  PortRef to;
  Arm label = Arm::Short;
  PhaseSymbol phase = PhaseSymbol::None;
};

struct DetectorSpec {
  PortRef from;
  Sign sign = Sign::Plus;
};

struct PhotonNetwork {
  std::vector<std::string> splitters;
  std::vector<PortRef> sources;
  std::vector<PortRef> open_inputs;
  std::vector<ArmSpec> arms;
  std::vector<DetectorSpec> detectors;
  std::vector<PortRef> dumps;
};

struct Geometry {
  PhotonNetwork photon1;
  PhotonNetwork photon2;
};

Geometry parse_geometry(std::istream& in);
Geometry parse_geometry_text(const std::string& text);
Geometry load_geometry(const std::string& path);
std::string format_geometry(const Geometry& g);

/// Chained Mach-Zehnder cascade: photon 1 through BS10/BS11, photon 2
/// through BS20/BS21/BS22 with BS21 shared by both interferometers.
Geometry default_geometry();

/// Throws GeometryError on dangling or doubly used ports, unknown splitters,
/// missing source or detectors.
void validate_geometry(const Geometry& g);

struct PhotonPath {
  std::vector<Arm> arms;
  Sign detector = Sign::Plus;
  PathTrace trace;
};

/// All source-to-detector paths of one photon at the given phases.
std::vector<PhotonPath> enumerate_paths(const PhotonNetwork& net, const PhaseSettings& phases);

/// Raw (unnormalized) amplitudes. Paths sharing a label and detector add.
struct DerivedTables {
  std::map<std::pair<Arm, Sign>, Amplitude> photon1;
  std::map<std::pair<std::pair<Arm, Arm>, Sign>, Amplitude> photon2;

  /// photon1 x photon2 product for one path pair and outcome.
  Amplitude joint(PathPair pair, Outcome o) const;
  Amplitude single(Arm2Path path, Sign s) const;
};

DerivedTables derive_tables(const Geometry& g, const SplitterConvention& conv,
                            const PhaseSettings& phases);

/// Relabels detectors before comparison: flip_side1 swaps D1(+)/D1(-),
/// flip_side2 swaps D2(+)/D2(-).
struct DetectorLabeling {
  bool flip_side1 = false;
  bool flip_side2 = false;
};

struct OracleCheck {
  std::string name;
  bool pass = true;
  double max_deviation = 0.0;
  std::string first_mismatch;  // empty when pass
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  DetectorLabeling labeling;

  bool pass() const;
};

/// Default comparison grid: `points` evenly spaced values per phase in
/// [0, 2pi), giving points^3 settings.
std::vector<PhaseSettings> phase_grid(int points);

/// Compares derived tables with amplitudes.hpp and the predictors on every
/// grid point: renormalized magnitudes, outcome-resolved ratios within each
/// subensemble, the tabulated sign relations, joint probabilities of both
/// interfering subensembles, and photon-2 single-path probabilities.
/// Throws ContractError for a non-unitary convention, GeometryError for an
/// invalid geometry.
OracleReport validate_oracle(const Geometry& g, const SplitterConvention& conv,
                             const std::vector<PhaseSettings>& grid, double tol = 1e-9,
                             DetectorLabeling labeling = {});

/// Tries all four detector labelings and returns the first passing report,
/// or the identity-labeling report if none passes.
OracleReport validate_oracle_any_labeling(const Geometry& g, const SplitterConvention& conv,
                                          const std::vector<PhaseSettings>& grid,
                                          double tol = 1e-9);

}  // namespace impact
