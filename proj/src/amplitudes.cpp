#include "impact/amplitudes.hpp"

#include <array>

namespace impact {

namespace {

using namespace std::complex_literals;

// Unit coefficients in outcome order ++, +-, -+, --.
using Row = std::array<Amplitude, 4>;

Amplitude phase(double angle) { return std::polar(1.0, angle); }

Amplitude entry(const Row& row, Outcome o, double scale, double angle) {
  return row[outcome_index(o)] * scale * phase(angle);
}

bool is(PathPair p, Arm a1, Arm b1, Arm b2) {
  return p == PathPair{a1, Arm2Path{b1, b2}};
}

constexpr Arm l = Arm::Short;
constexpr Arm L = Arm::Long;

}  // namespace

Amplitude amp_joint_L(PathPair pair, Outcome o, const PhaseSettings& ph) {
  // (l,Ll): A++ = -A--, A+- = A-+
  static const Row kLLl = {-1.0, -1.0i, -1.0i, 1.0};
  // (l,lL): A++ = A--, A+- = -A-+
  static const Row kllL = {-1.0, 1.0i, -1.0i, -1.0};
  // (L,LL): A++ = -A--, A+- = A-+
  static const Row kLLL = {1.0, -1.0i, -1.0i, -1.0};

  if (is(pair, l, L, l)) return entry(kLLl, o, kJointMagnitude, ph.beta);
  if (is(pair, l, l, L)) return entry(kllL, o, kJointMagnitude, ph.gamma);
  if (is(pair, L, L, L)) return entry(kLLL, o, kJointMagnitude, ph.alpha + ph.beta + ph.gamma);
  throw ContractError("amp_joint_L: " + to_string(pair) + " is not in subensemble L");
}

Amplitude amp_joint_l(PathPair pair, Outcome o, const PhaseSettings& ph) {
  // (l,ll): A++ = -A--, A+- = A-+
  static const Row kl_ll = {1.0, 1.0i, 1.0i, -1.0};
  // (L,lL): A++ = -A--, A+- = A-+
  static const Row kL_lL = {1.0, -1.0i, -1.0i, -1.0};
  // (L,Ll): A++ = A--, A+- = -A-+
  static const Row kL_Ll = {1.0, 1.0i, -1.0i, 1.0};

  if (is(pair, l, l, l)) return entry(kl_ll, o, kJointMagnitude, 0.0);
  if (is(pair, L, l, L)) return entry(kL_lL, o, kJointMagnitude, ph.alpha + ph.gamma);
  if (is(pair, L, L, l)) return entry(kL_Ll, o, kJointMagnitude, ph.alpha + ph.beta);
  throw ContractError("amp_joint_l: " + to_string(pair) + " is not in subensemble l");
}

Amplitude amp_joint(PathPair pair, Outcome outcome, const PhaseSettings& phases) {
  switch (classify(pair)) {
    case Subensemble::Long: return amp_joint_L(pair, outcome, phases);
    case Subensemble::Short: return amp_joint_l(pair, outcome, phases);
    default:
      throw ContractError("no amplitude table for satellite pair " + to_string(pair));
  }
}

Amplitude amp_single(Arm2Path path, Sign sigma, const PhaseSettings& ph) {
  const bool plus = sigma == Sign::Plus;
  if (path == Arm2Path{L, l}) {
    return (plus ? Amplitude{-1.0} : Amplitude{-1.0i}) * kSingleMagnitude * phase(ph.beta);
  }
  if (path == Arm2Path{l, L}) {
    return (plus ? Amplitude{-1.0} : Amplitude{1.0i}) * kSingleMagnitude * phase(ph.gamma);
  }
  if (path == Arm2Path{L, L}) {
    return (plus ? Amplitude{-1.0} : Amplitude{1.0i}) * kSingleMagnitude *
           phase(ph.beta + ph.gamma);
  }
  throw ContractError("amp_single: no single-path amplitude for " + to_string(path));
}

}  // namespace impact
