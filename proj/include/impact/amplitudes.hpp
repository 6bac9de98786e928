#pragma once

// Closed-form probability amplitudes for the two interfering subensembles
// and for photon 2's single paths. These tables are the ground truth the
// predictors build on; bsnetwork.hpp rederives them independently.

#include <cmath>
#include <complex>

#include "impact/pathspace.hpp"

namespace impact {

using Amplitude = std::complex<double>;

/// Adjustable phases on the long arms, in radians.
///   alpha: photon 1's long arm
///   beta:  long arm of photon 2's first interferometer
///   gamma: long arm of photon 2's second interferometer
struct PhaseSettings {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// 1/(2*sqrt(3)): magnitude of every joint amplitude.
inline const double kJointMagnitude = 0.5 / std::sqrt(3.0);
/// 1/sqrt(6): magnitude of every photon-2 single-path amplitude.
inline const double kSingleMagnitude = 1.0 / std::sqrt(6.0);

/// Joint amplitude for a pair of the central (difference L) subensemble,
/// normalized over its three members. Throws ContractError otherwise.
Amplitude amp_joint_L(PathPair pair, Outcome outcome, const PhaseSettings& phases);

/// Joint amplitude for a pair of the difference-l subensemble.
Amplitude amp_joint_l(PathPair pair, Outcome outcome, const PhaseSettings& phases);

/// Dispatches to amp_joint_L or amp_joint_l by classify(pair).
Amplitude amp_joint(PathPair pair, Outcome outcome, const PhaseSettings& phases);

/// Photon-2 single-path amplitude for detector D2(sigma); path must be one
/// of Ll, lL, LL.
Amplitude amp_single(Arm2Path path, Sign sigma, const PhaseSettings& phases);

}  // namespace impact
