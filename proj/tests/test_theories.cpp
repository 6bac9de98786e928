#include "doctest.h"

#include <numbers>

#include "impact/theories.hpp"
#include "support/optics_oracle.hpp"

using namespace impact;

namespace {

constexpr double pi = std::numbers::pi;

// 5 x 5 x 5 = 125 settings.
std::vector<PhaseSettings> grid125() {
  std::vector<PhaseSettings> g;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) g.push_back({i * 1.3 - 2.0, j * 0.9 - 1.0, k * 1.7 - 3.0});
  return g;
}

void check_pair(const SinglesPair& s, double plus, double minus, double tol = 1e-12) {
  CHECK(s.p_plus == doctest::Approx(plus).epsilon(tol));
  CHECK(s.p_minus == doctest::Approx(minus).epsilon(tol));
}

}  // namespace

TEST_CASE("qm_joint at zero phases matches the delay-bin oracle") {
  // Frozen from oracle::conditional_joint(kDiffL, 0, 0, 0).
  const std::array<double, 4> frozen = {1.0 / 12, 1.0 / 12, 3.0 / 4, 1.0 / 12};
  const auto o = oracle::conditional_joint(oracle::kDiffL, 0, 0, 0);
  for (std::size_t i = 0; i < 4; ++i) REQUIRE(o[i] == doctest::Approx(frozen[i]).epsilon(1e-12));

  const auto j = qm_joint(Subensemble::Long, {});
  for (std::size_t i = 0; i < 4; ++i) CHECK(j.p[i] == doctest::Approx(frozen[i]).epsilon(1e-12));
  check_pair(marginal_side2(j), 5.0 / 6, 1.0 / 6);
  check_pair(marginal_side1(j), 1.0 / 6, 5.0 / 6);
}

TEST_CASE("qm_joint agrees with the delay-bin oracle across phases") {
  for (const auto& ph : grid125()) {
    const auto jL = qm_joint(Subensemble::Long, ph);
    const auto jl = qm_joint(Subensemble::Short, ph);
    const auto oL = oracle::conditional_joint(oracle::kDiffL, ph.alpha, ph.beta, ph.gamma);
    const auto ol = oracle::conditional_joint(oracle::kDiffl, ph.alpha, ph.beta, ph.gamma);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(jL.p[i] - oL[i]) < 1e-12);
      CHECK(std::abs(jl.p[i] - ol[i]) < 1e-12);
    }
  }
}

TEST_CASE("qm_joint normalization and side-1 value for subensemble l") {
  for (const auto& ph : grid125()) {
    CHECK(qm_joint(Subensemble::Long, ph).total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qm_joint(Subensemble::Short, ph).total() == doctest::Approx(1.0).epsilon(1e-12));
  }
  check_pair(marginal_side1(qm_joint(Subensemble::Short, {})), 5.0 / 6, 1.0 / 6);
  CHECK_THROWS_AS(qm_joint(Subensemble::TwoLongMinusShort, {}), ContractError);
  CHECK_THROWS_AS(qm_joint(Subensemble::TwoShortMinusLong, {}), ContractError);
}

TEST_CASE("marginals") {
  const JointDistribution j{{1.0 / 12, 1.0 / 12, 3.0 / 4, 1.0 / 12}};
  check_pair(marginal_side2(j), 5.0 / 6, 1.0 / 6);
  check_pair(marginal_side1(j), 1.0 / 6, 5.0 / 6);
  CHECK(marginal_side2(j).side == Side::Side2);

  const JointDistribution uniform{{0.25, 0.25, 0.25, 0.25}};
  check_pair(marginal_side1(uniform), 0.5, 0.5);
  check_pair(marginal_side2(uniform), 0.5, 0.5);

  const JointDistribution first{{1, 0, 0, 0}};
  CHECK(marginal_side2(first).p_plus == 1.0);
  CHECK(marginal_side2(first).p_minus == 0.0);
  const JointDistribution lower{{0, 0, 0.5, 0.5}};
  CHECK(marginal_side1(lower).p_plus == 0.0);
  CHECK(marginal_side1(lower).p_minus == 1.0);
}

TEST_CASE("closed forms") {
  check_pair(qm_singles_closed_form(Subensemble::Long, Side::Side2, {0, 0.4, 0.4}), 5.0 / 6, 1.0 / 6);
  check_pair(qm_singles_closed_form(Subensemble::Long, Side::Side1, {pi / 4, pi / 4, 0}), 0.5, 0.5);
  check_pair(qm_singles_closed_form(Subensemble::Short, Side::Side1, {pi / 2, pi / 2, 0}), 1.0 / 6, 5.0 / 6);
  CHECK_THROWS_AS(qm_singles_closed_form(Subensemble::Short, Side::Side2, {}), ContractError);
  CHECK_THROWS_AS(qm_singles_closed_form(Subensemble::TwoLongMinusShort, Side::Side1, {}),
                  ContractError);
}

TEST_CASE("amplitude route equals closed-form route") {
  for (const auto& ph : grid125()) {
    const auto jL = qm_joint(Subensemble::Long, ph);
    const auto jl = qm_joint(Subensemble::Short, ph);
    CHECK(std::abs(marginal_side2(jL).p_plus -
                   qm_singles_closed_form(Subensemble::Long, Side::Side2, ph).p_plus) < 1e-9);
    CHECK(std::abs(marginal_side1(jL).p_plus -
                   qm_singles_closed_form(Subensemble::Long, Side::Side1, ph).p_plus) < 1e-9);
    CHECK(std::abs(marginal_side1(jl).p_plus -
                   qm_singles_closed_form(Subensemble::Short, Side::Side1, ph).p_plus) < 1e-9);
    CHECK(std::abs(causal_singles_side2(ph).p_plus - causal_singles_side2_closed_form(ph).p_plus) < 1e-9);
    CHECK(std::abs(causal_singles_side1_incoherent(ph).p_plus - 0.5) < 1e-9);
  }
}

TEST_CASE("causal singles") {
  check_pair(causal_singles_side2({}), 5.0 / 6, 1.0 / 6);
  check_pair(causal_singles_side2({0, pi / 2, 0}), 0.5, 0.5);
  check_pair(causal_singles_side2({0, pi, 0}), 1.0 / 6, 5.0 / 6);
  check_pair(causal_singles_side1(), 0.5, 0.5);

  // Photon 2 first: causal and QM side-2 singles coincide.
  for (const auto& ph : grid125()) {
    CHECK(std::abs(causal_singles_side2(ph).p_plus -
                   qm_singles_closed_form(Subensemble::Long, Side::Side2, ph).p_plus) < 1e-12);
  }
  // Photon 1 first: the models differ by 1/3 at alpha + beta = 0.
  const double qm = qm_singles_closed_form(Subensemble::Long, Side::Side1, {}).p_plus;
  CHECK(std::abs(causal_singles_side1().p_plus - qm) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("property: no signalling through photon 1's singles") {
  for (const auto& ph : grid125()) {
    const double avg = 0.5 * (qm_singles_closed_form(Subensemble::Long, Side::Side1, ph).p_plus +
                              qm_singles_closed_form(Subensemble::Short, Side::Side1, ph).p_plus);
    CHECK(std::abs(avg - 0.5) <= 1e-12);
  }
}

TEST_CASE("property: probabilities are in range and singles sum to one") {
  for (const auto& ph : grid125()) {
    for (TheoryKind kind : {TheoryKind::QM, TheoryKind::Causal, TheoryKind::RNL}) {
      for (TimeOrdering ord : {TimeOrdering::Ordering1, TimeOrdering::Ordering2}) {
        const auto pred = predict({kind, ord}, ph);
        for (const auto& s : {pred.side1, pred.side2}) {
          if (!s) continue;
          CHECK(s->p_plus >= -1e-15);
          CHECK(s->p_plus <= 1 + 1e-15);
          CHECK(s->p_plus + s->p_minus == doctest::Approx(1.0).epsilon(1e-9));
        }
        if (pred.joint) {
          for (double p : pred.joint->p) CHECK((p >= -1e-15 && p <= 1 + 1e-15));
        }
      }
    }
  }
}

TEST_CASE("predict per model") {
  const auto qm = predict({TheoryKind::QM, TimeOrdering::Spacelike}, {});
  REQUIRE(qm.side1);
  REQUIRE(qm.side2);
  REQUIRE(qm.joint);
  check_pair(*qm.side1, 1.0 / 6, 5.0 / 6);
  check_pair(*qm.side2, 5.0 / 6, 1.0 / 6);

  const auto rnl = predict({TheoryKind::RNL, TimeOrdering::Spacelike}, {0.7, 0.3, 0.3});
  REQUIRE(rnl.side1);
  REQUIRE(rnl.side2);
  CHECK_FALSE(rnl.joint);
  check_pair(*rnl.side2, 5.0 / 6, 1.0 / 6);
  check_pair(*rnl.side1, 0.5, 0.5);

  const auto c2 = predict({TheoryKind::Causal, TimeOrdering::Ordering2}, {1.0, 2.0, 3.0});
  REQUIRE(c2.side1);
  CHECK_FALSE(c2.side2);
  CHECK_FALSE(c2.joint);
  check_pair(*c2.side1, 0.5, 0.5);

  const auto c1 = predict({TheoryKind::Causal, TimeOrdering::Ordering1}, {});
  CHECK_FALSE(c1.side1);
  REQUIRE(c1.side2);
  check_pair(*c1.side2, 5.0 / 6, 1.0 / 6);

  CHECK_THROWS_AS(predict({TheoryKind::Causal, TimeOrdering::Spacelike}, {}), ContractError);

  const auto qml = predict({TheoryKind::QM, TimeOrdering::Ordering2}, {}, Subensemble::Short);
  check_pair(*qml.side1, 5.0 / 6, 1.0 / 6);
}
