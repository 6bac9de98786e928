#include "impact/theories.hpp"

#include <cmath>
#include <complex>

namespace impact {

namespace {

SinglesPair from_plus(double p_plus, Side side) { return SinglesPair{p_plus, 1.0 - p_plus, side}; }

void require_interfering(Subensemble sub, const char* who) {
  if (sub != Subensemble::Long && sub != Subensemble::Short) {
    throw ContractError(std::string(who) + ": no amplitude table for subensemble " +
                        to_string(sub));
  }
}

}  // namespace

void validate(const TheoryModel& model) {
  if (model.kind == TheoryKind::Causal && model.ordering == TimeOrdering::Spacelike) {
    throw ContractError("the causal model is only defined for time orderings 1 and 2");
  }
}

std::string to_string(TheoryKind k) {
  switch (k) {
    case TheoryKind::QM: return "qm";
    case TheoryKind::Causal: return "causal";
    case TheoryKind::RNL: return "rnl";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Side1 ? "side1" : "side2"; }

JointDistribution qm_joint(Subensemble sub, const PhaseSettings& phases) {
  require_interfering(sub, "qm_joint");
  const auto pairs = members(sub);
  JointDistribution j;
  for (Outcome o : kAllOutcomes) {
    Amplitude sum{};
    for (PathPair p : pairs) sum += amp_joint(p, o, phases);
    j.p[outcome_index(o)] = std::norm(sum);
  }
  return j;
}

SinglesPair marginal_side2(const JointDistribution& j) {
  return SinglesPair{j.p[0] + j.p[2], j.p[1] + j.p[3], Side::Side2};
}

SinglesPair marginal_side1(const JointDistribution& j) {
  return SinglesPair{j.p[0] + j.p[1], j.p[2] + j.p[3], Side::Side1};
}

SinglesPair qm_singles_closed_form(Subensemble sub, Side side, const PhaseSettings& ph) {
  if (sub == Subensemble::Long && side == Side::Side2) {
    return from_plus(0.5 + std::cos(ph.beta - ph.gamma) / 3.0, side);
  }
  if (sub == Subensemble::Long && side == Side::Side1) {
    return from_plus(0.5 - std::cos(ph.alpha + ph.beta) / 3.0, side);
  }
  if (sub == Subensemble::Short && side == Side::Side1) {
    return from_plus(0.5 + std::cos(ph.alpha + ph.beta) / 3.0, side);
  }
  throw ContractError("no closed form for subensemble " + to_string(sub) + " " +
                      to_string(side) + "; use qm_joint and a marginal");
}

SinglesPair causal_singles_side2(const PhaseSettings& ph) {
  constexpr Arm l = Arm::Short;
  constexpr Arm L = Arm::Long;
  auto prob = [&](Sign s) {
    // LL stays distinguishable through photon 1; Ll and lL interfere.
    return std::norm(amp_single({L, L}, s, ph)) +
           std::norm(amp_single({L, l}, s, ph) + amp_single({l, L}, s, ph));
  };
  return SinglesPair{prob(Sign::Plus), prob(Sign::Minus), Side::Side2};
}

SinglesPair causal_singles_side2_closed_form(const PhaseSettings& ph) {
  return from_plus(0.5 + std::cos(ph.beta - ph.gamma) / 3.0, Side::Side2);
}

SinglesPair causal_singles_side1() { return SinglesPair{0.5, 0.5, Side::Side1}; }

SinglesPair causal_singles_side1_incoherent(const PhaseSettings& phases) {
  double plus = 0.0;
  double minus = 0.0;
  for (PathPair p : members(Subensemble::Long)) {
    for (Outcome o : kAllOutcomes) {
      const double w = std::norm(amp_joint_L(p, o, phases));
      (o.sigma == Sign::Plus ? plus : minus) += w;
    }
  }
  return SinglesPair{plus, minus, Side::Side1};
}

Prediction predict(const TheoryModel& model, const PhaseSettings& phases, Subensemble sub) {
  validate(model);
  Prediction out;
  switch (model.kind) {
    case TheoryKind::QM: {
      const auto j = qm_joint(sub, phases);
      out.joint = j;
      out.side1 = marginal_side1(j);
      out.side2 = marginal_side2(j);
      break;
    }
    case TheoryKind::Causal:
      // The later photon's singles depend on the particular causal model.
      if (model.ordering == TimeOrdering::Ordering1) {
        out.side2 = causal_singles_side2(phases);
      } else {
        out.side1 = causal_singles_side1();
      }
      break;
    case TheoryKind::RNL:
      out.side1 = causal_singles_side1();
      out.side2 = causal_singles_side2(phases);
      break;
  }
  return out;
}

}  // namespace impact
