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

#include "artopo/simulator.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "artopo/model_io.h"

namespace artopo {

namespace {

// Below this speed a joint is a stiction candidate; the recorded moving
// flag threshold (SimConfig::motionThreshold) is one decade lower.
constexpr double kStictionVelocity = 1e-4;
constexpr double kDivergenceSpeed = 1e12;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Joint-dependent quantities at a fixed configuration q.
struct ChainContext {
  std::vector<SpatialMotion> subspace;         // in child link frame
  std::vector<MotionTransform> childFromParent;
  std::vector<ForceTransform> parentFromChild;
  std::vector<Mat6> inertia;                   // one per link
  SpatialMotion baseAccel;                     // fictitious -g, link 0 frame
};

ChainContext makeContext(const ObjectSpec& spec, const Topology& topology,
                         const std::vector<double>& q, const Vec3& gravity) {
  const size_t n = spec.joints.size();
  ChainContext ctx;
  ctx.subspace.reserve(n);
  ctx.childFromParent.reserve(n);
  ctx.parentFromChild.reserve(n);
  for (size_t j = 0; j < n; ++j) {
    const JointModel model = topology.models[j];
    ctx.subspace.push_back(jointSubspaceInChild(spec.joints[j], model));
    const HomogeneousTransform parentToChild =
        jointTransform(spec.joints[j], model, q[j]);
    ctx.childFromParent.push_back(motionTransform(parentToChild.inverse()));
    ctx.parentFromChild.push_back(forceTransform(parentToChild));
  }
  ctx.inertia.reserve(spec.links.size());
  for (const LinkSpec& link : spec.links) {
    ctx.inertia.push_back(link.inertia.matrix());
  }
  ctx.baseAccel.linear =
      spec.basePose.orientation.toRotation().transpose() * (-gravity);
  return ctx;
}

std::vector<SpatialMotion> linkTwists(const ChainContext& ctx,
                                      const Eigen::VectorXd& qd) {
  const size_t links = ctx.inertia.size();
  std::vector<SpatialMotion> v(links);
  for (size_t i = 1; i < links; ++i) {
    const size_t j = i - 1;
    v[i] = ctx.childFromParent[j].apply(v[i - 1]) +
           ctx.subspace[j] * qd[static_cast<Eigen::Index>(j)];
  }
  return v;
}

struct RneaResult {
  Eigen::VectorXd tau;
  SpatialForce baseWrench;
};

// Recursive Newton-Euler over the serial chain: generalized forces that
// realize qdd, plus the wrench the anchor must apply to link 0. Gravity
// rides in as the fictitious base acceleration; `tipWrench` is the
// external wrench acting ON the last link in its own frame.
RneaResult rnea(const ChainContext& ctx, const Eigen::VectorXd& qd,
                const Eigen::VectorXd& qdd, bool withGravity,
                const SpatialForce& tipWrench) {
  const size_t links = ctx.inertia.size();
  const size_t n = links - 1;
  std::vector<SpatialMotion> v(links);
  std::vector<SpatialMotion> a(links);
  if (withGravity) {
    a[0] = ctx.baseAccel;
  }
  for (size_t i = 1; i < links; ++i) {
    const size_t j = i - 1;
    const SpatialMotion vJ =
        ctx.subspace[j] * qd[static_cast<Eigen::Index>(j)];
    v[i] = ctx.childFromParent[j].apply(v[i - 1]) + vJ;
    a[i] = ctx.childFromParent[j].apply(a[i - 1]) +
           ctx.subspace[j] * qdd[static_cast<Eigen::Index>(j)] +
           crossMotion(v[i], vJ);
  }
  std::vector<SpatialForce> f(links);
  for (size_t i = 0; i < links; ++i) {
    const SpatialForce momentum =
        SpatialForce::fromVector(ctx.inertia[i] * v[i].vector());
    f[i] = SpatialForce::fromVector(ctx.inertia[i] * a[i].vector()) +
           crossForce(v[i], momentum);
  }
  f[links - 1] = f[links - 1] - tipWrench;
  RneaResult result;
  result.tau.resize(static_cast<Eigen::Index>(n));
  for (size_t i = links - 1; i >= 1; --i) {
    const size_t j = i - 1;
    result.tau[static_cast<Eigen::Index>(j)] = power(f[i], ctx.subspace[j]);
    f[i - 1] = f[i - 1] + ctx.parentFromChild[j].apply(f[i]);
  }
  result.baseWrench = f[0];
  return result;
}

struct Resolved {
  Eigen::VectorXd qdd;
  std::vector<bool> locked;
  SpatialForce baseWrench;
};

// Forward dynamics with Coulomb stiction: joints below the stiction
// speed whose net drive fits inside static friction are held; held
// joints are released when the torque required to hold them exceeds the
// friction budget (checked against the mixed solve, worst case n+1
// rounds).
Resolved resolveDynamics(const ObjectSpec& spec, const Topology& topology,
                         const std::vector<double>& q,
                         const std::vector<double>& qdVec,
                         const SpatialForce& applied, const SimConfig& cfg) {
  const size_t n = spec.joints.size();
  const ChainContext ctx = makeContext(spec, topology, q, cfg.gravityAccel);
  const Eigen::VectorXd qd =
      Eigen::Map<const Eigen::VectorXd>(qdVec.data(), qdVec.size());

  Resolved out;
  out.qdd = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  out.locked.assign(n, false);
  if (n == 0) {
    out.baseWrench = rnea(ctx, qd, out.qdd, true, applied).baseWrench;
    return out;
  }

  const Eigen::VectorXd bias = rnea(ctx, qd, out.qdd, true, applied).tau;

  Eigen::MatrixXd massMatrix(n, n);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  for (size_t j = 0; j < n; ++j) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    unit[static_cast<Eigen::Index>(j)] = 1.0;
    massMatrix.col(static_cast<Eigen::Index>(j)) =
        rnea(ctx, zero, unit, false, SpatialForce{}).tau;
  }

  for (size_t j = 0; j < n; ++j) {
    // Frictionless joints never stick; coasting below the stiction speed
    // is legitimate motion there.
    out.locked[j] = spec.joints[j].staticFriction > 0.0 &&
                    std::abs(qd[static_cast<Eigen::Index>(j)]) <
                        kStictionVelocity &&
                    std::abs(bias[static_cast<Eigen::Index>(j)]) <=
                        spec.joints[j].staticFriction;
  }

  for (size_t round = 0; round <= n; ++round) {
    std::vector<Eigen::Index> freeIdx;
    for (size_t j = 0; j < n; ++j) {
      if (!out.locked[j]) {
        freeIdx.push_back(static_cast<Eigen::Index>(j));
      }
    }
    out.qdd.setZero();
    if (!freeIdx.empty()) {
      Eigen::MatrixXd mFree(freeIdx.size(), freeIdx.size());
      Eigen::VectorXd rhs(freeIdx.size());
      for (size_t r = 0; r < freeIdx.size(); ++r) {
        const Eigen::Index j = freeIdx[r];
        const JointSpec& joint = spec.joints[static_cast<size_t>(j)];
        const double speed = qd[j];
        const double direction =
            std::abs(speed) > 1e-12 ? sgn(speed) : sgn(-bias[j]);
        const double actuation = -joint.damping * speed -
                                 joint.staticFriction * direction;
        rhs[static_cast<Eigen::Index>(r)] = actuation - bias[j];
        for (size_t c = 0; c < freeIdx.size(); ++c) {
          mFree(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              massMatrix(j, freeIdx[c]);
        }
      }
      const Eigen::VectorXd qddFree = mFree.ldlt().solve(rhs);
      for (size_t r = 0; r < freeIdx.size(); ++r) {
        out.qdd[freeIdx[r]] = qddFree[static_cast<Eigen::Index>(r)];
      }
    }
    // Verify every held joint can actually be held.
    const Eigen::VectorXd holdTorque = massMatrix * out.qdd + bias;
    bool anyReleased = false;
    for (size_t j = 0; j < n; ++j) {
      if (out.locked[j] &&
          std::abs(holdTorque[static_cast<Eigen::Index>(j)]) >
              spec.joints[j].staticFriction + 1e-12) {
        out.locked[j] = false;
        anyReleased = true;
      }
    }
    if (!anyReleased) {
      break;
    }
  }

  out.baseWrench = rnea(ctx, qd, out.qdd, true, applied).baseWrench;
  return out;
}

std::vector<double> positions(const SimState& state) {
  std::vector<double> q(state.jointStates.size());
  for (size_t j = 0; j < q.size(); ++j) {
    q[j] = state.jointStates[j].q;
  }
  return q;
}

std::vector<double> velocities(const SimState& state) {
  std::vector<double> qd(state.jointStates.size());
  for (size_t j = 0; j < qd.size(); ++j) {
    qd[j] = state.jointStates[j].qdot;
  }
  return qd;
}

void requireConsistent(const ObjectSpec& spec, const Topology& topology,
                       const SimState& state) {
  if (topology.models.size() != spec.joints.size()) {
    throw std::invalid_argument("topology does not match the object's joints");
  }
  if (state.jointStates.size() != spec.joints.size()) {
    throw std::invalid_argument("state does not match the object's joints");
  }
}

}  // namespace

DivergenceError::DivergenceError(std::size_t step, double t)
    : std::runtime_error("numerical divergence at step " +
                         std::to_string(step) + " (t=" + std::to_string(t) +
                         " s)"),
      step_(step) {}

SimState generalizedDynamicsStep(const ObjectSpec& spec,
                                 const Topology& topology,
                                 const SimState& state,
                                 const SpatialForce& externalWrench,
                                 const SimConfig& cfg) {
  requireConsistent(spec, topology, state);
  if (!(cfg.dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const Resolved resolved = resolveDynamics(
      spec, topology, positions(state), velocities(state), externalWrench,
      cfg);

  SimState next;
  next.t = state.t + cfg.dt;
  next.appliedWrench = externalWrench;
  next.jointStates.resize(state.jointStates.size());
  const std::size_t stepIndex =
      static_cast<std::size_t>(std::llround(state.t / cfg.dt));
  for (size_t j = 0; j < state.jointStates.size(); ++j) {
    const JointSpec& joint = spec.joints[j];
    const double qd = state.jointStates[j].qdot;
    double qdNew = qd + cfg.dt * resolved.qdd[static_cast<Eigen::Index>(j)];
    if (resolved.locked[j]) {
      qdNew = 0.0;
    } else if (joint.staticFriction > 0.0 && qd != 0.0 && qdNew * qd < 0.0) {
      // Friction overshoot through zero within one step is chatter, not
      // motion; park the joint and let the next stiction test decide.
      qdNew = 0.0;
    }
    double qNew = state.jointStates[j].q + cfg.dt * qdNew;
    if (qNew <= joint.limitLo) {
      qNew = joint.limitLo;
      qdNew = 0.0;
    } else if (qNew >= joint.limitHi) {
      qNew = joint.limitHi;
      qdNew = 0.0;
    }
    if (!std::isfinite(qNew) || !std::isfinite(qdNew) ||
        std::abs(qdNew) > kDivergenceSpeed) {
      throw DivergenceError(stepIndex, state.t);
    }
    next.jointStates[j].q = qNew;
    next.jointStates[j].qdot = qdNew;
  }
  return next;
}

std::pair<SpatialForce, SpatialForce> measuredTerminalWrenches(
    const ObjectSpec& spec, const Topology& topology, const SimState& state,
    const SimConfig& cfg) {
  requireConsistent(spec, topology, state);
  const Resolved resolved =
      resolveDynamics(spec, topology, positions(state), velocities(state),
                      state.appliedWrench, cfg);
  return {resolved.baseWrench, state.appliedWrench};
}

double kineticEnergy(const ObjectSpec& spec, const Topology& topology,
                     const SimState& state) {
  requireConsistent(spec, topology, state);
  const ChainContext ctx =
      makeContext(spec, topology, positions(state), Vec3::Zero());
  const std::vector<double> qdVec = velocities(state);
  const Eigen::VectorXd qd =
      Eigen::Map<const Eigen::VectorXd>(qdVec.data(), qdVec.size());
  const std::vector<SpatialMotion> v = linkTwists(ctx, qd);
  double energy = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const SpatialForce h =
        SpatialForce::fromVector(ctx.inertia[i] * v[i].vector());
    energy += 0.5 * power(h, v[i]);
  }
  return energy;
}

SpatialForce systemMomentum(const ObjectSpec& spec, const Topology& topology,
                            const SimState& state) {
  requireConsistent(spec, topology, state);
  const std::vector<double> q = positions(state);
  const ChainContext ctx = makeContext(spec, topology, q, Vec3::Zero());
  const std::vector<double> qdVec = velocities(state);
  const Eigen::VectorXd qd =
      Eigen::Map<const Eigen::VectorXd>(qdVec.data(), qdVec.size());
  const std::vector<SpatialMotion> v = linkTwists(ctx, qd);
  const std::vector<Pose> poses = forwardKinematics(spec, topology, q);
  SpatialForce total;
  for (size_t i = 0; i < v.size(); ++i) {
    const SpatialForce h =
        SpatialForce::fromVector(ctx.inertia[i] * v[i].vector());
    total = total + forceTransform(poseToHomogeneous(poses[i])).apply(h);
  }
  return total;
}

TrialRecord runTrial(const ObjectSpec& spec, const Topology& topology,
                     const SinusoidSpec& signal, const SimConfig& cfg,
                     const std::vector<double>& initialQ) {
  spec.validate();
  signal.validate();
  if (!spec.anchored()) {
    throw std::invalid_argument(
        "the chain simulator needs an anchored terminal link");
  }
  if (topology.models.size() != spec.joints.size()) {
    throw std::invalid_argument("topology does not match the object's joints");
  }
  if (!(cfg.dt > 0.0) || cfg.duration < cfg.dt) {
    throw std::invalid_argument("need dt > 0 and duration >= dt");
  }
  const size_t n = spec.joints.size();
  if (!initialQ.empty() && initialQ.size() != n) {
    throw std::invalid_argument("initialQ must provide one value per joint");
  }

  SimState state;
  state.jointStates.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const JointSpec& joint = spec.joints[j];
    const double q0 = initialQ.empty()
                          ? std::clamp(0.0, joint.limitLo, joint.limitHi)
                          : initialQ[j];
    if (q0 < joint.limitLo || q0 > joint.limitHi) {
      throw std::out_of_range("initial joint position violates limits");
    }
    state.jointStates[j].q = q0;
  }

  const std::size_t sampleCount =
      static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
  if (sampleCount < 2) {
    throw std::invalid_argument("trial too short to record two samples");
  }

  TrialRecord record;
  record.metadata.object = spec;
  record.metadata.objectHash = hashHex(specHash(spec));
  record.metadata.dt = cfg.dt;
  record.metadata.seed = cfg.seed;
  record.metadata.gravity = cfg.gravityAccel;
  record.metadata.trueTopology = topology;
  record.metadata.signal = signal;
  record.samples.reserve(sampleCount);

  for (std::size_t k = 0; k < sampleCount; ++k) {
    state.t = static_cast<double>(k) * cfg.dt;
    state.appliedWrench = evaluate(signal, state.t);

    TrialSample sample;
    sample.t = state.t;
    sample.poses = forwardKinematics(spec, topology, positions(state));
    const auto wrenches =
        measuredTerminalWrenches(spec, topology, state, cfg);
    sample.fLeft = wrenches.first;
    sample.fRight = wrenches.second;
    for (const JointState& js : state.jointStates) {
      sample.moving = sample.moving || std::abs(js.qdot) > cfg.motionThreshold;
    }
    record.samples.push_back(std::move(sample));

    if (k + 1 < sampleCount) {
      state = generalizedDynamicsStep(spec, topology, state,
                                      state.appliedWrench, cfg);
    }
  }
  record.validate();
  return record;
}

}  // namespace artopo
