#pragma once

// Event-level emulation of a run: emitted pairs are spread over the eight
// path pairs, coincidence timing keeps only the target subensemble, and the
// accepted events are tallied per detector outcome.
//
// Reproducibility contract: events are processed in fixed blocks of
// kBlockSize; block b draws from std::mt19937_64 seeded with
// derive_seed(seed, b). Tallies merge by integer addition, so the result is
// bit-identical for any number of worker threads.

#include <array>
#include <cstdint>
#include <vector>

#include "impact/theories.hpp"

namespace impact {

inline constexpr std::uint64_t kBlockSize = 1ULL << 16;

/// SplitMix64 finalizer applied to seed and stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Top 53 bits of a 64-bit word mapped to [0, 1).
constexpr double to_unit_interval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

struct RunConfig {
  TheoryModel model;
  PhaseSettings phases;
  std::uint64_t events = 1;
  std::uint64_t seed = 0;
  Subensemble target_sub = Subensemble::Long;
  /// 0 picks std::thread::hardware_concurrency(). Never affects the result.
  unsigned workers = 0;
};

struct CoincidenceTally {
  std::array<std::uint64_t, 4> r{};  // R++, R+-, R-+, R--
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;

  std::uint64_t operator[](Outcome o) const { return r[outcome_index(o)]; }
  std::uint64_t events() const { return accepted + rejected; }
  CoincidenceTally& operator+=(const CoincidenceTally& other);
  friend bool operator==(const CoincidenceTally&, const CoincidenceTally&) = default;
};

struct EstimateE {
  double value = 0.0;
  double std_error = 0.0;
  /// (2/3)|cos(alpha + beta)|, the QM magnitude for the central peak.
  double analytic_qm = 0.0;
  /// Causal models predict no side-1 asymmetry.
  double analytic_causal = 0.0;
};

/// Outcome distribution the simulator samples for accepted events.
/// QM: qm_joint(target_sub). Causal and RNL: product of the side-1 and
/// side-2 singles, an undefined side replaced by (1/2, 1/2). This
/// completion keeps every side-1 marginal exact but carries no physical
/// correlation.
JointDistribution sampling_distribution(const TheoryModel& model, const PhaseSettings& phases,
                                        Subensemble target_sub);

/// Throws ContractError on invalid models, zero events, or QM with a
/// satellite target subensemble.
CoincidenceTally run(const RunConfig& config);

/// Tallies the events of one block. Exposed for the partition tests.
CoincidenceTally run_block(const RunConfig& config, std::uint64_t block);

/// E = (R++ + R+- - R-+ - R--) / accepted, i.e. P1(+) - P1(-).
/// Throws ContractError when nothing was accepted.
EstimateE estimate_E(const CoincidenceTally& tally, const TheoryModel& model_context,
                     const PhaseSettings& phases);

/// Side-1 and side-2 singles estimated from a tally.
SinglesPair tally_side1(const CoincidenceTally& tally);
SinglesPair tally_side2(const CoincidenceTally& tally);

enum class PhaseAxis : std::uint8_t { Alpha, Beta, Gamma };

PhaseSettings with_axis(PhaseSettings base, PhaseAxis axis, double angle);
std::string to_string(PhaseAxis axis);

struct ScanPoint {
  double angle = 0.0;
  PhaseSettings phases;
  std::uint64_t seed = 0;
  CoincidenceTally tally;
  EstimateE estimate;
  SinglesPair mc_side1;
  SinglesPair mc_side2;
  Prediction analytic;
};

/// One run per grid point; point i uses derive_seed(seed, i).
std::vector<ScanPoint> scan_phases(const TheoryModel& model, PhaseAxis axis,
                                   const std::vector<double>& grid, const PhaseSettings& base,
                                   std::uint64_t events_per_point, std::uint64_t seed,
                                   Subensemble target_sub = Subensemble::Long,
                                   unsigned workers = 0);

}  // namespace impact
