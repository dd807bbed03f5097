// Copyright (c) 2026 The artopo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <utility>
#include <vector>

#include "artopo/object_model.h"
#include "artopo/spatial.h"
#include "artopo/trial_store.h"

namespace artopo {

struct EstimatorConfig {
  /// Moving-average window applied to the momentum series before
  /// differentiation; 1 disables smoothing.
  int smoothingWindow = 5;
  /// Absolute zero-error floor for the inconclusive test.
  double epsAbs = 1e-6;
  /// Minimum relative spread (max-min)/max between hypothesis errors for
  /// a conclusive selection.
  double separationThreshold = 0.1;
  /// Minimum fraction of samples flagged moving for a conclusive trial.
  double motionFractionMin = 0.05;
  /// Diagonal weighting of the 6-vector residual (identity: raw N and
  /// N*m mixed in one Euclidean norm).
  Vec6 residualWeights = Vec6::Ones();
};

struct HypothesisError {
  Topology topology;
  double error = 0.0;
  std::vector<double> perSampleResiduals;
};

struct EstimationReport {
  std::vector<HypothesisError> errors;  // one per candidate, input order
  Topology selected;
  bool inconclusive = false;
  double motionFraction = 0.0;
};

/// Net wrench acting on the whole object about the inertial origin: both
/// recorded terminal wrenches (acting ON the object, each in its own link
/// frame) pushed through their link poses, plus every link's weight
/// acting at its center of mass. Dissipation is deliberately excluded.
SpatialForce netWrench(const TrialSample& sample, const ObjectSpec& spec,
                       const Vec3& gravityAccel = Vec3(0.0, 0.0, -9.81));

/// Least-squares projection of the measured relative twist onto the
/// hypothesized joint subspace: v_J = v_child - X_{child<-parent}
/// v_parent, expressed in the joint frame, then qdot = S^T v_J (unit
/// axes make S^T S = 1).
double projectJointRate(const Pose& parentPose, const Pose& childPose,
                        const SpatialMotion& parentTwist,
                        const SpatialMotion& childTwist,
                        const JointSpec& joint, JointModel model);

/// Total hypothesized momentum in the inertial frame: link twists are
/// reconstructed by the chain recursion v_i = X v_{i-1} + S qdot_i from
/// the base twist (zero when anchored), using the measured poses for
/// every transform; returns sum of X*_i M_i v_i.
SpatialForce hypothesizedMomentum(const std::vector<Pose>& poses,
                                  const ObjectSpec& spec,
                                  const Topology& topology,
                                  const std::vector<double>& jointRates,
                                  const SpatialMotion& baseTwist = {});

/// Numerical rate of a uniformly sampled momentum series: optional
/// moving-average pre-smoothing (window w, shrinking at the edges),
/// central differences inside, second-order one-sided at the endpoints.
/// Throws std::invalid_argument for fewer than 3 samples or a
/// non-uniform time grid.
std::vector<std::pair<double, SpatialForce>> momentumRate(
    const std::vector<std::pair<double, SpatialForce>>& hSeries,
    int smoothingWindow = 5);

/// Hypothesis error for one candidate topology: the momentum-theorem
/// residual ||W - hdot|| summed over aligned samples, with the first and
/// last 2 dropped against one-sided-difference bias.
HypothesisError hypothesisError(const TrialRecord& record,
                                const ObjectSpec& spec,
                                const Topology& topology,
                                const EstimatorConfig& config = {});

/// Evaluates every candidate and selects the argmin, breaking exact ties
/// toward the lexicographically smallest topology. The report is flagged
/// inconclusive when the error spread is below separationThreshold or
/// the object barely moved.
EstimationReport selectTopology(const TrialRecord& record,
                                const ObjectSpec& spec,
                                const std::vector<Topology>& candidates,
                                const EstimatorConfig& config = {});

}  // namespace artopo
