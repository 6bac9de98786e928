#include "impact/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace impact {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_config(const RunConfig& config) {
  validate(config.model);
  if (config.events == 0) throw ContractError("run: events must be at least 1");
  if (config.model.kind == TheoryKind::QM && config.target_sub != Subensemble::Long &&
      config.target_sub != Subensemble::Short) {
    throw ContractError("run: QM has no outcome distribution for satellite subensemble " +
                        to_string(config.target_sub));
  }
}

// Cumulative thresholds over the canonical outcome order.
std::array<double, 3> cumulative(const JointDistribution& j) {
  const double total = j.total();
  return {j.p[0] / total, (j.p[0] + j.p[1]) / total, (j.p[0] + j.p[1] + j.p[2]) / total};
}

CoincidenceTally tally_block(const std::array<double, 3>& cdf, Subensemble target,
                             std::uint64_t block_seed, std::uint64_t count) {
  static const auto kPairs = enumerate_path_pairs();
  std::array<bool, 8> keep{};
  for (std::size_t i = 0; i < kPairs.size(); ++i) keep[i] = classify(kPairs[i]) == target;

  std::mt19937_64 rng(block_seed);
  CoincidenceTally t;
  for (std::uint64_t n = 0; n < count; ++n) {
    // Unbiased splitters: each of the 8 path pairs is equally likely.
    const auto pair_index = static_cast<std::size_t>(rng() >> 61);
    if (!keep[pair_index]) {
      ++t.rejected;
      continue;
    }
    const double u = to_unit_interval(rng());
    const std::size_t k = u < cdf[0] ? 0 : u < cdf[1] ? 1 : u < cdf[2] ? 2 : 3;
    ++t.r[k];
    ++t.accepted;
  }
  return t;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

CoincidenceTally& CoincidenceTally::operator+=(const CoincidenceTally& other) {
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += other.r[i];
  accepted += other.accepted;
  rejected += other.rejected;
  return *this;
}

JointDistribution sampling_distribution(const TheoryModel& model, const PhaseSettings& phases,
                                        Subensemble target_sub) {
  validate(model);
  if (model.kind == TheoryKind::QM) return qm_joint(target_sub, phases);

  const Prediction pred = predict(model, phases);
  const SinglesPair s1 = pred.side1.value_or(SinglesPair{0.5, 0.5, Side::Side1});
  const SinglesPair s2 = pred.side2.value_or(SinglesPair{0.5, 0.5, Side::Side2});
  JointDistribution j;
  for (Outcome o : kAllOutcomes) {
    const double a = o.sigma == Sign::Plus ? s1.p_plus : s1.p_minus;
    const double b = o.omega == Sign::Plus ? s2.p_plus : s2.p_minus;
    j.p[outcome_index(o)] = a * b;
  }
  return j;
}

CoincidenceTally run_block(const RunConfig& config, std::uint64_t block) {
  check_config(config);
  const std::uint64_t blocks = (config.events + kBlockSize - 1) / kBlockSize;
  if (block >= blocks) throw ContractError("run_block: block index out of range");
  const std::uint64_t first = block * kBlockSize;
  const std::uint64_t count = std::min(kBlockSize, config.events - first);
  const auto cdf = cumulative(sampling_distribution(config.model, config.phases, config.target_sub));
  return tally_block(cdf, config.target_sub, derive_seed(config.seed, block), count);
}

CoincidenceTally run(const RunConfig& config) {
  check_config(config);
  const auto cdf = cumulative(sampling_distribution(config.model, config.phases, config.target_sub));
  const std::uint64_t blocks = (config.events + kBlockSize - 1) / kBlockSize;

  unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, blocks));

  std::vector<CoincidenceTally> partial(workers);
  auto work = [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      const std::uint64_t first = b * kBlockSize;
      const std::uint64_t count = std::min(kBlockSize, config.events - first);
      partial[w] += tally_block(cdf, config.target_sub, derive_seed(config.seed, b), count);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  CoincidenceTally total;
  for (const auto& t : partial) total += t;
  return total;
}

SinglesPair tally_side1(const CoincidenceTally& t) {
  if (t.accepted == 0) throw ContractError("empty tally");
  const double n = static_cast<double>(t.accepted);
  return SinglesPair{static_cast<double>(t.r[0] + t.r[1]) / n,
                     static_cast<double>(t.r[2] + t.r[3]) / n, Side::Side1};
}

SinglesPair tally_side2(const CoincidenceTally& t) {
  if (t.accepted == 0) throw ContractError("empty tally");
  const double n = static_cast<double>(t.accepted);
  return SinglesPair{static_cast<double>(t.r[0] + t.r[2]) / n,
                     static_cast<double>(t.r[1] + t.r[3]) / n, Side::Side2};
}

EstimateE estimate_E(const CoincidenceTally& t, const TheoryModel& model_context,
                     const PhaseSettings& phases) {
  validate(model_context);
  if (t.accepted == 0) throw ContractError("estimate_E: tally has no accepted events");
  const double n = static_cast<double>(t.accepted);
  const auto plus = static_cast<double>(t.r[0] + t.r[1]);
  const auto minus = static_cast<double>(t.r[2] + t.r[3]);
  const double p = plus / n;

  EstimateE e;
  e.value = (plus - minus) / n;
  e.std_error = 2.0 * std::sqrt(p * (1.0 - p) / n);
  e.analytic_qm = (2.0 / 3.0) * std::abs(std::cos(phases.alpha + phases.beta));
  e.analytic_causal = 0.0;
  return e;
}

PhaseSettings with_axis(PhaseSettings base, PhaseAxis axis, double angle) {
  switch (axis) {
    case PhaseAxis::Alpha: base.alpha = angle; break;
    case PhaseAxis::Beta: base.beta = angle; break;
    case PhaseAxis::Gamma: base.gamma = angle; break;
  }
  return base;
}

std::string to_string(PhaseAxis axis) {
  switch (axis) {
    case PhaseAxis::Alpha: return "alpha";
    case PhaseAxis::Beta: return "beta";
    case PhaseAxis::Gamma: return "gamma";
  }
  return "?";
}

std::vector<ScanPoint> scan_phases(const TheoryModel& model, PhaseAxis axis,
                                   const std::vector<double>& grid, const PhaseSettings& base,
                                   std::uint64_t events_per_point, std::uint64_t seed,
                                   Subensemble target_sub, unsigned workers) {
  if (grid.empty()) throw ContractError("scan_phases: empty grid");
  std::vector<ScanPoint> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScanPoint pt;
    pt.angle = grid[i];
    pt.phases = with_axis(base, axis, grid[i]);
    pt.seed = derive_seed(seed, i);
    pt.tally = run(RunConfig{model, pt.phases, events_per_point, pt.seed, target_sub, workers});
    pt.analytic = predict(model, pt.phases,
                          model.kind == TheoryKind::QM ? target_sub : Subensemble::Long);
    if (pt.tally.accepted > 0) {
      pt.estimate = estimate_E(pt.tally, model, pt.phases);
      pt.mc_side1 = tally_side1(pt.tally);
      pt.mc_side2 = tally_side2(pt.tally);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace impact
