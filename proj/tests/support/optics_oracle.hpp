#pragma once

// Test-only oracle. Propagates each photon as a wave over (delay, mode)
// bins through explicit 2x2 splitter matrices, with numeric arm lengths
// l = 1 and L = 2.7, then groups the two-photon amplitudes by arrival-time
// difference. Shares no code with the library's path traversal or tables.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <tuple>
#include <utility>

namespace oracle {

using C = std::complex<double>;

inline constexpr double kShort = 1.0;
inline constexpr double kLong = 2.7;

// Splitter: out0 = t*in0 + r*in1, out1 = r*in0 + t*in1.
struct Splitter {
  C t{1.0 / std::sqrt(2.0), 0.0};
  C r{0.0, 1.0 / std::sqrt(2.0)};
};

// Amplitude per (accumulated delay, mode).
using Wave = std::map<std::pair<double, int>, C>;

inline Wave split(const Wave& in, const Splitter& bs) {
  Wave out;
  for (const auto& [key, a] : in) {
    const auto [delay, mode] = key;
    out[{delay, 0}] += (mode == 0 ? bs.t : bs.r) * a;
    out[{delay, 1}] += (mode == 0 ? bs.r : bs.t) * a;
  }
  return out;
}

// Mode 0 takes the short arm, mode 1 the long arm with the given phase.
inline Wave arms(const Wave& in, double phase) {
  Wave out;
  for (const auto& [key, a] : in) {
    const auto [delay, mode] = key;
    if (mode == 0) out[{delay + kShort, 0}] += a;
    else out[{delay + kLong, 1}] += a * std::polar(1.0, phase);
  }
  return out;
}

inline Wave photon1(double alpha, const Splitter& bs = {}) {
  return split(arms(split(Wave{{{0.0, 0}, 1.0}}, bs), alpha), bs);
}

inline Wave photon2(double beta, double gamma, const Splitter& bs = {}) {
  return split(arms(split(arms(split(Wave{{{0.0, 0}, 1.0}}, bs), beta), bs), gamma), bs);
}

// Joint amplitude per (rounded delay difference, mode1, mode2); mode 0 is
// the + detector.
inline std::map<std::tuple<long, int, int>, C> joint(double alpha, double beta, double gamma) {
  std::map<std::tuple<long, int, int>, C> out;
  for (const auto& [k1, a1] : photon1(alpha)) {
    for (const auto& [k2, a2] : photon2(beta, gamma)) {
      const long diff = std::lround((k2.first - k1.first) * 1000.0);
      out[{diff, k1.second, k2.second}] += a1 * a2;
    }
  }
  return out;
}

inline long diff_key(double d) { return std::lround(d * 1000.0); }

// Delay differences of the four arrival-time classes.
inline const long kDiff2Ll = diff_key(2 * kLong - kShort);
inline const long kDiffL = diff_key(kLong);
inline const long kDiffl = diff_key(kShort);
inline const long kDiff2lL = diff_key(2 * kShort - kLong);

// Probability of landing in a class (coherent within the class).
inline double class_weight(long diff, double alpha, double beta, double gamma) {
  double w = 0.0;
  for (const auto& [k, a] : joint(alpha, beta, gamma)) {
    if (std::get<0>(k) == diff) w += std::norm(a);
  }
  return w;
}

// P(sigma, omega | class) in order ++, +-, -+, --.
inline std::array<double, 4> conditional_joint(long diff, double alpha, double beta,
                                               double gamma) {
  std::array<double, 4> p{};
  double total = 0.0;
  for (const auto& [k, a] : joint(alpha, beta, gamma)) {
    if (std::get<0>(k) != diff) continue;
    const double w = std::norm(a);
    p[static_cast<std::size_t>(2 * std::get<1>(k) + std::get<2>(k))] += w;
    total += w;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace oracle
