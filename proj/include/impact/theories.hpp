#pragma once

// Prediction rules of the three rival models:
//   QM      superposition of all indistinguishable path pairs, any ordering
//   Causal  the first-impacting photon only sees local alternatives
//   RNL     the causal singles for every time ordering
//
// Causal and RNL fix only singles probabilities; joint distributions are
// left undefined here (montecarlo.hpp documents its completion).

#include <array>
#include <optional>

#include "impact/amplitudes.hpp"
#include "impact/pathspace.hpp"

namespace impact {

enum class Side : std::uint8_t { Side1, Side2 };

/// P(sigma, omega) indexed in canonical outcome order ++, +-, -+, --.
struct JointDistribution {
  std::array<double, 4> p{};

  double operator[](Outcome o) const { return p[outcome_index(o)]; }
  double total() const { return p[0] + p[1] + p[2] + p[3]; }
};

struct SinglesPair {
  double p_plus = 0.5;
  double p_minus = 0.5;
  Side side = Side::Side1;
};

enum class TheoryKind : std::uint8_t { QM, Causal, RNL };

struct TheoryModel {
  TheoryKind kind = TheoryKind::QM;
  TimeOrdering ordering = TimeOrdering::Spacelike;
};

/// Throws ContractError for Causal with a spacelike ordering.
void validate(const TheoryModel& model);

std::string to_string(TheoryKind k);
std::string to_string(Side s);

/// |sum of the three member amplitudes|^2 per outcome; sub must be the L or
/// l subensemble.
JointDistribution qm_joint(Subensemble sub, const PhaseSettings& phases);

/// Detector D2 singles: P(+) = P++ + P-+, P(-) = P+- + P--.
SinglesPair marginal_side2(const JointDistribution& j);
/// Detector D1 singles: P(+) = P++ + P+-, P(-) = P-+ + P--.
SinglesPair marginal_side1(const JointDistribution& j);

/// Printed closed forms:
///   (L, Side2): 1/2 + cos(beta - gamma)/3
///   (L, Side1): 1/2 - cos(alpha + beta)/3
///   (l, Side1): 1/2 + cos(alpha + beta)/3
/// Any other combination throws ContractError.
SinglesPair qm_singles_closed_form(Subensemble sub, Side side, const PhaseSettings& phases);

/// Photon 2 impacting first: |A(LL)|^2 + |A(Ll) + A(lL)|^2 from the
/// single-path amplitudes.
SinglesPair causal_singles_side2(const PhaseSettings& phases);
/// 1/2 +- cos(beta - gamma)/3.
SinglesPair causal_singles_side2_closed_form(const PhaseSettings& phases);

/// Photon 1 impacting first: exactly (1/2, 1/2).
SinglesPair causal_singles_side1();
/// Same quantity by summing probabilities (not amplitudes) over the three
/// central-peak path pairs.
SinglesPair causal_singles_side1_incoherent(const PhaseSettings& phases);

struct Prediction {
  std::optional<SinglesPair> side1;
  std::optional<SinglesPair> side2;
  std::optional<JointDistribution> joint;
};

/// QM: joint and both marginals for `sub` (L or l).
/// Causal/Ordering1: side2 only. Causal/Ordering2: side1 only.
/// RNL (any ordering): side1 and side2, no joint.
/// `sub` only affects QM; the causal singles are those of the central peak.
Prediction predict(const TheoryModel& model, const PhaseSettings& phases,
                   Subensemble sub = Subensemble::Long);

}  // namespace impact
