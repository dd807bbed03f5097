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

#include "artopo/estimator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace artopo {

namespace {

// Twists, midpoint poses, and aligned net wrenches shared by every
// candidate of one record. Entry k sits between samples k and k+1.
struct AlignedSeries {
  std::vector<double> times;
  std::vector<std::vector<Pose>> midPoses;
  std::vector<std::vector<SpatialMotion>> twists;
  std::vector<SpatialForce> wrenches;
};

AlignedSeries buildAligned(const TrialRecord& record, const ObjectSpec& spec) {
  const size_t sampleCount = record.samples.size();
  const size_t linkCount = spec.links.size();
  const double dt = record.metadata.dt;
  AlignedSeries aligned;
  aligned.times.reserve(sampleCount - 1);
  aligned.midPoses.reserve(sampleCount - 1);
  aligned.twists.reserve(sampleCount - 1);
  aligned.wrenches.reserve(sampleCount - 1);
  for (size_t k = 0; k + 1 < sampleCount; ++k) {
    const TrialSample& prev = record.samples[k];
    const TrialSample& next = record.samples[k + 1];
    std::vector<Pose> mid(linkCount);
    std::vector<SpatialMotion> twist(linkCount);
    for (size_t i = 0; i < linkCount; ++i) {
      mid[i] = midpointPose(prev.poses[i], next.poses[i]);
      twist[i] = bodyTwistFromPoses(prev.poses[i], next.poses[i], dt);
    }
    aligned.times.push_back(0.5 * (prev.t + next.t));
    aligned.midPoses.push_back(std::move(mid));
    aligned.twists.push_back(std::move(twist));
    const SpatialForce w =
        netWrench(prev, spec, record.metadata.gravity) +
        netWrench(next, spec, record.metadata.gravity);
    aligned.wrenches.push_back(w * 0.5);
  }
  return aligned;
}

HypothesisError scoreTopology(const AlignedSeries& aligned,
                              const ObjectSpec& spec, const Topology& topology,
                              const EstimatorConfig& config) {
  const size_t midCount = aligned.times.size();
  const size_t jointCount = spec.joints.size();
  // One-sided differences and smoothing shrinkage bias the outermost
  // rate estimates; 2 per side get dropped, so something must remain.
  if (midCount < 5) {
    throw std::invalid_argument(
        "trial too short to align derivatives (need at least 6 samples)");
  }

  std::vector<std::pair<double, SpatialForce>> hSeries;
  hSeries.reserve(midCount);
  std::vector<double> rates(jointCount);
  for (size_t k = 0; k < midCount; ++k) {
    for (size_t j = 0; j < jointCount; ++j) {
      rates[j] = projectJointRate(
          aligned.midPoses[k][j], aligned.midPoses[k][j + 1],
          aligned.twists[k][j], aligned.twists[k][j + 1], spec.joints[j],
          topology.models[j]);
    }
    hSeries.emplace_back(
        aligned.times[k],
        hypothesizedMomentum(aligned.midPoses[k], spec, topology, rates,
                             aligned.twists[k].front()));
  }

  const auto rate = momentumRate(hSeries, config.smoothingWindow);

  HypothesisError result;
  result.topology = topology;
  result.perSampleResiduals.reserve(midCount - 4);
  for (size_t k = 2; k + 2 < midCount; ++k) {
    const SpatialForce residual = aligned.wrenches[k] - rate[k].second;
    const Vec6 weighted =
        residual.vector().cwiseProduct(config.residualWeights);
    result.perSampleResiduals.push_back(weighted.norm());
    result.error += weighted.norm();
  }
  return result;
}

}  // namespace

SpatialForce netWrench(const TrialSample& sample, const ObjectSpec& spec,
                       const Vec3& gravityAccel) {
  if (sample.poses.size() != spec.links.size()) {
    throw std::invalid_argument("sample pose count does not match the spec");
  }
  SpatialForce total =
      forceTransform(poseToHomogeneous(sample.poses.front())).apply(
          sample.fLeft) +
      forceTransform(poseToHomogeneous(sample.poses.back())).apply(
          sample.fRight);
  for (size_t i = 0; i < spec.links.size(); ++i) {
    HomogeneousTransform comFrame = poseToHomogeneous(sample.poses[i]);
    comFrame.translation += comFrame.rotation * spec.links[i].inertia.com();
    SpatialForce weight;
    weight.force = spec.links[i].inertia.mass() *
                   (comFrame.rotation.transpose() * gravityAccel);
    total = total + forceTransform(comFrame).apply(weight);
  }
  return total;
}

double projectJointRate(const Pose& parentPose, const Pose& childPose,
                        const SpatialMotion& parentTwist,
                        const SpatialMotion& childTwist,
                        const JointSpec& joint, JointModel model) {
  const HomogeneousTransform childFromParent =
      poseToHomogeneous(childPose).inverse() * poseToHomogeneous(parentPose);
  const SpatialMotion residual =
      childTwist - motionTransform(childFromParent).apply(parentTwist);
  const SpatialMotion inJointFrame =
      motionTransform(joint.childFrame.inverse()).apply(residual);
  const SpatialMotion axis = motionSubspace(model, joint.axis);
  return axis.vector().dot(inJointFrame.vector());
}

SpatialForce hypothesizedMomentum(const std::vector<Pose>& poses,
                                  const ObjectSpec& spec,
                                  const Topology& topology,
                                  const std::vector<double>& jointRates,
                                  const SpatialMotion& baseTwist) {
  if (poses.size() != spec.links.size()) {
    throw std::invalid_argument("pose count does not match the spec");
  }
  if (topology.models.size() != spec.joints.size() ||
      jointRates.size() != spec.joints.size()) {
    throw std::invalid_argument("joint rate count does not match the spec");
  }
  std::vector<SpatialMotion> v(poses.size());
  v[0] = baseTwist;
  for (size_t j = 0; j < spec.joints.size(); ++j) {
    const HomogeneousTransform childFromParent =
        poseToHomogeneous(poses[j + 1]).inverse() *
        poseToHomogeneous(poses[j]);
    v[j + 1] = motionTransform(childFromParent).apply(v[j]) +
               jointSubspaceInChild(spec.joints[j], topology.models[j]) *
                   jointRates[j];
  }
  SpatialForce total;
  for (size_t i = 0; i < poses.size(); ++i) {
    const SpatialForce h = momentum(spec.links[i].inertia, v[i]);
    total = total + forceTransform(poseToHomogeneous(poses[i])).apply(h);
  }
  return total;
}

std::vector<std::pair<double, SpatialForce>> momentumRate(
    const std::vector<std::pair<double, SpatialForce>>& hSeries,
    int smoothingWindow) {
  const size_t n = hSeries.size();
  if (n < 3) {
    throw std::invalid_argument("momentum rate needs at least 3 samples");
  }
  if (smoothingWindow < 1) {
    throw std::invalid_argument("smoothing window must be >= 1");
  }
  const double dt = hSeries[1].first - hSeries[0].first;
  if (!(dt > 0.0)) {
    throw std::invalid_argument("time must be strictly increasing");
  }
  for (size_t k = 1; k < n; ++k) {
    if (std::abs(hSeries[k].first - hSeries[k - 1].first - dt) > 1e-9) {
      throw std::invalid_argument("momentum series must be uniformly sampled");
    }
  }

  // Centered moving average. The radius shrinks symmetrically at the
  // edges; a clipped one-sided window would shift the effective sample
  // time and bias the derivative there.
  const size_t radius = static_cast<size_t>(smoothingWindow / 2);
  std::vector<SpatialForce> smooth(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t r = std::min({radius, k, n - 1 - k});
    SpatialForce sum;
    for (size_t i = k - r; i <= k + r; ++i) {
      sum = sum + hSeries[i].second;
    }
    smooth[k] = sum * (1.0 / static_cast<double>(2 * r + 1));
  }

  std::vector<std::pair<double, SpatialForce>> rate(n);
  const double inv2dt = 1.0 / (2.0 * dt);
  rate[0] = {hSeries[0].first,
             (smooth[0] * -3.0 + smooth[1] * 4.0 - smooth[2]) * inv2dt};
  for (size_t k = 1; k + 1 < n; ++k) {
    rate[k] = {hSeries[k].first, (smooth[k + 1] - smooth[k - 1]) * inv2dt};
  }
  rate[n - 1] = {hSeries[n - 1].first,
                 (smooth[n - 1] * 3.0 - smooth[n - 2] * 4.0 + smooth[n - 3]) *
                     inv2dt};
  return rate;
}

HypothesisError hypothesisError(const TrialRecord& record,
                                const ObjectSpec& spec,
                                const Topology& topology,
                                const EstimatorConfig& config) {
  record.validate();
  spec.validate();
  if (topology.models.size() != spec.joints.size()) {
    throw std::invalid_argument("topology does not match the object's joints");
  }
  return scoreTopology(buildAligned(record, spec), spec, topology, config);
}

EstimationReport selectTopology(const TrialRecord& record,
                                const ObjectSpec& spec,
                                const std::vector<Topology>& candidates,
                                const EstimatorConfig& config) {
  if (candidates.empty()) {
    throw std::invalid_argument("need at least one candidate topology");
  }
  record.validate();
  spec.validate();
  for (const Topology& candidate : candidates) {
    if (candidate.models.size() != spec.joints.size()) {
      throw std::invalid_argument(
          "candidate does not match the object's joints");
    }
  }

  const AlignedSeries aligned = buildAligned(record, spec);
  EstimationReport report;
  report.errors.reserve(candidates.size());
  for (const Topology& candidate : candidates) {
    report.errors.push_back(scoreTopology(aligned, spec, candidate, config));
  }

  size_t best = 0;
  for (size_t c = 1; c < report.errors.size(); ++c) {
    const double error = report.errors[c].error;
    if (error < report.errors[best].error ||
        (error == report.errors[best].error &&
         report.errors[c].topology < report.errors[best].topology)) {
      best = c;
    }
  }
  report.selected = report.errors[best].topology;

  size_t movingCount = 0;
  for (const TrialSample& sample : record.samples) {
    movingCount += sample.moving ? 1u : 0u;
  }
  report.motionFraction = static_cast<double>(movingCount) /
                          static_cast<double>(record.samples.size());

  double minError = report.errors.front().error;
  double maxError = minError;
  for (const HypothesisError& h : report.errors) {
    minError = std::min(minError, h.error);
    maxError = std::max(maxError, h.error);
  }
  const double separation =
      (maxError - minError) / std::max(maxError, config.epsAbs);
  report.inconclusive = separation < config.separationThreshold ||
                        report.motionFraction < config.motionFractionMin;
  return report;
}

}  // namespace artopo
