#pragma once

// Path and outcome vocabulary of the impact-series setup.
//
// Photon 1 crosses one unbalanced interferometer (short arm l, long arm L),
// photon 2 crosses two in series. A path pair names photon 1's arm followed
// by photon 2's two arms, e.g. (l,Ll). Arm lengths stay symbolic: only the
// ordering 2l-L < l < L < 2L-l of the arrival-time differences matters.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace impact {

/// Raised when a caller violates a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Arm : std::uint8_t { Short, Long };

struct Arm2Path {
  Arm first = Arm::Short;   // interferometer between BS20 and BS21
  Arm second = Arm::Short;  // interferometer between BS21 and BS22

  friend constexpr bool operator==(Arm2Path, Arm2Path) = default;
};

struct PathPair {
  Arm photon1 = Arm::Short;
  Arm2Path photon2;

  friend constexpr bool operator==(PathPair, PathPair) = default;
};

/// Arrival-time classes, named by the photon-2 minus photon-1 length
/// difference that characterises them.
enum class Subensemble : std::uint8_t {
  TwoLongMinusShort,  // 2L - l
  Long,               // L   (the central peak the experiment keeps)
  Short,              // l
  TwoShortMinusLong,  // 2l - L
};

inline constexpr std::array<Subensemble, 4> kAllSubensembles = {
    Subensemble::TwoLongMinusShort, Subensemble::Long, Subensemble::Short,
    Subensemble::TwoShortMinusLong};

enum class Sign : std::uint8_t { Plus, Minus };

/// Joint detector outcome: sigma for D1, omega for D2.
struct Outcome {
  Sign sigma = Sign::Plus;
  Sign omega = Sign::Plus;

  friend constexpr bool operator==(Outcome, Outcome) = default;
};

/// Canonical outcome order ++, +-, -+, --. Arrays indexed by outcome use it.
inline constexpr std::array<Outcome, 4> kAllOutcomes = {
    Outcome{Sign::Plus, Sign::Plus}, Outcome{Sign::Plus, Sign::Minus},
    Outcome{Sign::Minus, Sign::Plus}, Outcome{Sign::Minus, Sign::Minus}};

constexpr std::size_t outcome_index(Outcome o) {
  return (o.sigma == Sign::Minus ? 2U : 0U) + (o.omega == Sign::Minus ? 1U : 0U);
}

/// Which impact happens first. Ordering1: BS22 before BS11. Ordering2: BS11
/// before BS21. Spacelike: the impacts are spacelike separated.
enum class TimeOrdering : std::uint8_t { Ordering1, Ordering2, Spacelike };

/// All 8 path pairs, photon 1 first (l before L), then photon 2 in the
/// order ll, lL, Ll, LL.
std::vector<PathPair> enumerate_path_pairs();

Subensemble classify(PathPair pair);

/// Members of a subensemble, in canonical path-pair order.
std::vector<PathPair> members(Subensemble s);

/// Photon-2 minus photon-1 path length in units of the symbolic lengths:
/// returns {coefficient of L, coefficient of l}.
std::array<int, 2> length_difference(PathPair pair);

std::string to_string(Arm a);
std::string to_string(Arm2Path p);
std::string to_string(PathPair p);
std::string to_string(Subensemble s);
std::string to_string(Sign s);
std::string to_string(Outcome o);
std::string to_string(TimeOrdering t);

/// Parses labels such as "(l,Ll)" or "l,Ll".
PathPair parse_path_pair(std::string_view text);
Arm2Path parse_arm2_path(std::string_view text);

}  // namespace impact
