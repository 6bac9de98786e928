#include "impact/pathspace.hpp"

#include <algorithm>

namespace impact {

namespace {

constexpr std::array<Arm2Path, 4> kArm2Order = {
    Arm2Path{Arm::Short, Arm::Short}, Arm2Path{Arm::Short, Arm::Long},
    Arm2Path{Arm::Long, Arm::Short}, Arm2Path{Arm::Long, Arm::Long}};

int long_count(Arm a) { return a == Arm::Long ? 1 : 0; }

Arm parse_arm(char c) {
  switch (c) {
    case 'l': return Arm::Short;
    case 'L': return Arm::Long;
    default: throw ContractError(std::string("invalid arm label '") + c + "'");
  }
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '(')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == ')')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<PathPair> enumerate_path_pairs() {
  std::vector<PathPair> out;
  out.reserve(8);
  for (Arm a : {Arm::Short, Arm::Long}) {
    for (Arm2Path p : kArm2Order) out.push_back(PathPair{a, p});
  }
  return out;
}

std::array<int, 2> length_difference(PathPair pair) {
  const int long2 = long_count(pair.photon2.first) + long_count(pair.photon2.second);
  const int long1 = long_count(pair.photon1);
  // photon 2 travels long2 long arms and (2 - long2) short ones.
  const int coef_long = long2 - long1;
  const int coef_short = (2 - long2) - (1 - long1);
  return {coef_long, coef_short};
}

Subensemble classify(PathPair pair) {
  const auto [nl, ns] = length_difference(pair);
  if (nl == 2 && ns == -1) return Subensemble::TwoLongMinusShort;
  if (nl == 1 && ns == 0) return Subensemble::Long;
  if (nl == 0 && ns == 1) return Subensemble::Short;
  if (nl == -1 && ns == 2) return Subensemble::TwoShortMinusLong;
  // Unreachable for the 8 valid pairs.
  throw ContractError("path pair " + to_string(pair) + " has no subensemble");
}

std::vector<PathPair> members(Subensemble s) {
  auto all = enumerate_path_pairs();
  std::vector<PathPair> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [s](PathPair p) { return classify(p) == s; });
  return out;
}

std::string to_string(Arm a) { return a == Arm::Short ? "l" : "L"; }

std::string to_string(Arm2Path p) { return to_string(p.first) + to_string(p.second); }

std::string to_string(PathPair p) {
  return "(" + to_string(p.photon1) + "," + to_string(p.photon2) + ")";
}

std::string to_string(Subensemble s) {
  switch (s) {
    case Subensemble::TwoLongMinusShort: return "2L-l";
    case Subensemble::Long: return "L";
    case Subensemble::Short: return "l";
    case Subensemble::TwoShortMinusLong: return "2l-L";
  }
  return "?";
}

std::string to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

std::string to_string(Outcome o) { return to_string(o.sigma) + to_string(o.omega); }

std::string to_string(TimeOrdering t) {
  switch (t) {
    case TimeOrdering::Ordering1: return "1";
    case TimeOrdering::Ordering2: return "2";
    case TimeOrdering::Spacelike: return "spacelike";
  }
  return "?";
}

Arm2Path parse_arm2_path(std::string_view text) {
  text = strip(text);
  if (text.size() != 2) throw ContractError("invalid photon-2 path '" + std::string(text) + "'");
  return Arm2Path{parse_arm(text[0]), parse_arm(text[1])};
}

PathPair parse_path_pair(std::string_view text) {
  text = strip(text);
  const auto comma = text.find(',');
  if (comma != 1) throw ContractError("invalid path pair '" + std::string(text) + "'");
  return PathPair{parse_arm(text[0]), parse_arm2_path(text.substr(comma + 1))};
}

}  // namespace impact
