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

#include <Eigen/Dense>

namespace artopo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Skew-symmetric matrix S(u) with S(u) v = u x v.
Mat3 skew(const Vec3& u);

/// Unit quaternion, scalar-first Hamilton convention. Represents the
/// body-to-inertial rotation when used as a link orientation.
///
/// Construction from raw components renormalizes; a norm further than
/// 1e-6 from 1 is rejected instead of silently corrected.
class Quaternion {
 public:
  Quaternion() : w_(1.0), x_(0.0), y_(0.0), z_(0.0) {}
  Quaternion(double w, double x, double y, double z);

  static Quaternion fromAxisAngle(const Vec3& unitAxis, double angle);
  /// exp of a rotation vector (axis * angle).
  static Quaternion exp(const Vec3& rotationVector);
  static Quaternion fromRotation(const Mat3& rotation);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 imag() const { return Vec3(x_, y_, z_); }
  double norm() const;

  Quaternion operator*(const Quaternion& rhs) const;
  Quaternion conjugate() const { return raw(w_, -x_, -y_, -z_); }
  /// Same rotation with w >= 0.
  Quaternion canonicalized() const;

  Vec3 rotate(const Vec3& v) const;
  Mat3 toRotation() const;

  /// Rotation vector (axis * angle), angle in [0, pi). Throws
  /// std::domain_error when the rotation angle reaches pi, where the
  /// shortest-path direction is ambiguous.
  Vec3 log() const;

 private:
  static Quaternion raw(double w, double x, double y, double z);
  double w_, x_, y_, z_;
};

/// Rotation matrix of a validated unit quaternion. Throws
/// std::invalid_argument if the quaternion norm is off by more than 1e-6.
Mat3 quaternionToRotation(const Quaternion& q);

/// Position and orientation of a frame w.r.t. the inertial frame.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quaternion orientation;
};

struct HomogeneousTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  HomogeneousTransform operator*(const HomogeneousTransform& rhs) const;
  HomogeneousTransform inverse() const;
  Vec3 apply(const Vec3& point) const { return rotation * point + translation; }
};

HomogeneousTransform poseToHomogeneous(const Pose& pose);
Pose homogeneousToPose(const HomogeneousTransform& transform);

/// 6D motion vector (twist), linear part first, then angular.
struct SpatialMotion {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vec6 vector() const;
  static SpatialMotion fromVector(const Vec6& v);

  SpatialMotion operator+(const SpatialMotion& rhs) const;
  SpatialMotion operator-(const SpatialMotion& rhs) const;
  SpatialMotion operator*(double s) const;
  double norm() const { return vector().norm(); }
};

/// 6D force vector (wrench), force part first, then moment. Also used for
/// spatial momentum (linear momentum; angular momentum).
struct SpatialForce {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();

  Vec6 vector() const;
  static SpatialForce fromVector(const Vec6& v);

  SpatialForce operator+(const SpatialForce& rhs) const;
  SpatialForce operator-(const SpatialForce& rhs) const;
  SpatialForce operator*(double s) const;
  double norm() const { return vector().norm(); }
};

/// Power delivered by a wrench through a twist (both in the same frame).
double power(const SpatialForce& f, const SpatialMotion& v);

/// 6x6 transform acting on motion vectors. For H = pose of frame B in
/// frame A, apply() maps a twist expressed in B to the same twist
/// expressed in A:
///   linear_A  = R linear_B + S(p) R angular_B
///   angular_A = R angular_B
struct MotionTransform {
  Mat6 matrix = Mat6::Identity();

  SpatialMotion apply(const SpatialMotion& v) const;
  MotionTransform operator*(const MotionTransform& rhs) const;
};

/// 6x6 transform acting on force vectors; the inverse transpose of the
/// corresponding MotionTransform, so power is frame-invariant.
struct ForceTransform {
  Mat6 matrix = Mat6::Identity();

  SpatialForce apply(const SpatialForce& f) const;
  ForceTransform operator*(const ForceTransform& rhs) const;
};

MotionTransform motionTransform(const HomogeneousTransform& transform);
ForceTransform forceTransform(const HomogeneousTransform& transform);

/// Motion-by-motion spatial cross product (velocity bias).
SpatialMotion crossMotion(const SpatialMotion& v, const SpatialMotion& m);
/// Motion-by-force spatial cross product (momentum bias), dual to
/// crossMotion: power(crossForce(v, f), m) == -power(f, crossMotion(v, m)).
SpatialForce crossForce(const SpatialMotion& v, const SpatialForce& f);

/// Mass, center of mass and rotational inertia of one rigid body, all
/// expressed in the body frame. The rotational inertia is taken about the
/// body-frame origin.
class SpatialInertia {
 public:
  SpatialInertia(double mass, const Vec3& com, const Mat3& inertiaAtFrame);

  /// Builds from the inertia about the center of mass using the
  /// parallel-axis relation I_B = I_c - m S(c) S(c).
  static SpatialInertia fromComInertia(double mass, const Vec3& com,
                                       const Mat3& inertiaAtCom);

  double mass() const { return mass_; }
  const Vec3& com() const { return com_; }
  const Mat3& inertiaAtFrame() const { return inertiaAtFrame_; }
  Mat3 inertiaAtCom() const;

  /// 6x6 spatial inertia [m 1, -m S(c); m S(c), I_B].
  Mat6 matrix() const;

 private:
  double mass_;
  Vec3 com_;
  Mat3 inertiaAtFrame_;
};

Mat6 spatialInertiaMatrix(const SpatialInertia& inertia);

/// Spatial momentum h = M v of one body, in body coordinates.
SpatialForce momentum(const SpatialInertia& inertia, const SpatialMotion& twist);

/// Body-frame twist from two consecutive poses dt apart. The angular part
/// is the exact SO(3) log of the relative rotation divided by dt; the
/// linear part uses the midpoint orientation, which keeps the estimate
/// second-order accurate. Throws std::invalid_argument for dt <= 0 and
/// std::domain_error when the rotation between the samples reaches pi
/// (aliasing).
SpatialMotion bodyTwistFromPoses(const Pose& prev, const Pose& next, double dt);

/// Pose halfway between two samples: mean position, half of the relative
/// rotation. Companion of bodyTwistFromPoses for midpoint-consistent
/// momentum evaluation.
Pose midpointPose(const Pose& prev, const Pose& next);

}  // namespace artopo
