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

#include "artopo/spatial.h"

#include <cmath>
#include <stdexcept>

namespace artopo {

namespace {
constexpr double kUnitNormTolerance = 1e-6;
}  // namespace

Mat3 skew(const Vec3& u) {
  Mat3 s;
  s << 0.0, -u.z(), u.y(),
       u.z(), 0.0, -u.x(),
       -u.y(), u.x(), 0.0;
  return s;
}

Quaternion::Quaternion(double w, double x, double y, double z)
    : w_(w), x_(x), y_(y), z_(z) {
  const double n = norm();
  if (std::abs(n - 1.0) > kUnitNormTolerance) {
    throw std::invalid_argument("quaternion norm " + std::to_string(n) +
                                " is not within 1e-6 of unit");
  }
  w_ /= n;
  x_ /= n;
  y_ /= n;
  z_ /= n;
}

Quaternion Quaternion::raw(double w, double x, double y, double z) {
  Quaternion q;
  q.w_ = w;
  q.x_ = x;
  q.y_ = y;
  q.z_ = z;
  return q;
}

Quaternion Quaternion::fromAxisAngle(const Vec3& unitAxis, double angle) {
  const double n = unitAxis.norm();
  if (std::abs(n - 1.0) > kUnitNormTolerance) {
    throw std::invalid_argument("axis must be unit length");
  }
  const double half = 0.5 * angle;
  const double s = std::sin(half);
  return raw(std::cos(half), s * unitAxis.x() / n, s * unitAxis.y() / n,
             s * unitAxis.z() / n);
}

Quaternion Quaternion::exp(const Vec3& rotationVector) {
  const double angle = rotationVector.norm();
  const double half = 0.5 * angle;
  // sin(x)/x expansion below the switch point keeps full precision.
  double k;
  if (angle < 1e-8) {
    k = 0.5 - half * half / 12.0;
  } else {
    k = std::sin(half) / angle;
  }
  return raw(std::cos(half), k * rotationVector.x(), k * rotationVector.y(),
             k * rotationVector.z());
}

Quaternion Quaternion::fromRotation(const Mat3& rotation) {
  const Mat3& r = rotation;
  if ((r * r.transpose() - Mat3::Identity()).norm() > 1e-6 ||
      r.determinant() < 0.0) {
    throw std::invalid_argument("matrix is not a rotation");
  }
  // Shepperd's method: pick the largest diagonal combination for stability.
  const double t = r.trace();
  double w, x, y, z;
  if (t > r(0, 0) && t > r(1, 1) && t > r(2, 2)) {
    const double s = std::sqrt(1.0 + t) * 2.0;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  return raw(w / n, x / n, y / n, z / n);
}

double Quaternion::norm() const {
  return std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_);
}

Quaternion Quaternion::operator*(const Quaternion& rhs) const {
  return raw(w_ * rhs.w_ - x_ * rhs.x_ - y_ * rhs.y_ - z_ * rhs.z_,
             w_ * rhs.x_ + x_ * rhs.w_ + y_ * rhs.z_ - z_ * rhs.y_,
             w_ * rhs.y_ - x_ * rhs.z_ + y_ * rhs.w_ + z_ * rhs.x_,
             w_ * rhs.z_ + x_ * rhs.y_ - y_ * rhs.x_ + z_ * rhs.w_);
}

Quaternion Quaternion::canonicalized() const {
  if (w_ < 0.0) {
    return raw(-w_, -x_, -y_, -z_);
  }
  return *this;
}

Vec3 Quaternion::rotate(const Vec3& v) const {
  const Vec3 u = imag();
  const Vec3 t = 2.0 * u.cross(v);
  return v + w_ * t + u.cross(t);
}

Mat3 Quaternion::toRotation() const {
  const double ww = w_ * w_, xx = x_ * x_, yy = y_ * y_, zz = z_ * z_;
  const double wx = w_ * x_, wy = w_ * y_, wz = w_ * z_;
  const double xy = x_ * y_, xz = x_ * z_, yz = y_ * z_;
  Mat3 r;
  r << ww + xx - yy - zz, 2.0 * (xy - wz), 2.0 * (xz + wy),
       2.0 * (xy + wz), ww - xx + yy - zz, 2.0 * (yz - wx),
       2.0 * (xz - wy), 2.0 * (yz + wx), ww - xx - yy + zz;
  return r;
}

Vec3 Quaternion::log() const {
  const Quaternion q = canonicalized();
  const double vnorm = q.imag().norm();
  const double angle = 2.0 * std::atan2(vnorm, q.w());
  if (angle >= M_PI - 1e-9) {
    throw std::domain_error("rotation angle reached pi; log is ambiguous");
  }
  if (vnorm < 1e-12) {
    return 2.0 * q.imag();
  }
  return (angle / vnorm) * q.imag();
}

Mat3 quaternionToRotation(const Quaternion& q) {
  if (std::abs(q.norm() - 1.0) > kUnitNormTolerance) {
    throw std::invalid_argument("quaternion is not unit length");
  }
  return q.toRotation();
}

HomogeneousTransform HomogeneousTransform::operator*(
    const HomogeneousTransform& rhs) const {
  HomogeneousTransform out;
  out.rotation = rotation * rhs.rotation;
  out.translation = rotation * rhs.translation + translation;
  return out;
}

HomogeneousTransform HomogeneousTransform::inverse() const {
  HomogeneousTransform out;
  out.rotation = rotation.transpose();
  out.translation = -(rotation.transpose() * translation);
  return out;
}

HomogeneousTransform poseToHomogeneous(const Pose& pose) {
  HomogeneousTransform out;
  out.rotation = pose.orientation.toRotation();
  out.translation = pose.position;
  return out;
}

Pose homogeneousToPose(const HomogeneousTransform& transform) {
  Pose out;
  out.position = transform.translation;
  out.orientation = Quaternion::fromRotation(transform.rotation);
  return out;
}

Vec6 SpatialMotion::vector() const {
  Vec6 v;
  v << linear, angular;
  return v;
}

SpatialMotion SpatialMotion::fromVector(const Vec6& v) {
  SpatialMotion m;
  m.linear = v.head<3>();
  m.angular = v.tail<3>();
  return m;
}

SpatialMotion SpatialMotion::operator+(const SpatialMotion& rhs) const {
  return {linear + rhs.linear, angular + rhs.angular};
}

SpatialMotion SpatialMotion::operator-(const SpatialMotion& rhs) const {
  return {linear - rhs.linear, angular - rhs.angular};
}

SpatialMotion SpatialMotion::operator*(double s) const {
  return {linear * s, angular * s};
}

Vec6 SpatialForce::vector() const {
  Vec6 v;
  v << force, moment;
  return v;
}

SpatialForce SpatialForce::fromVector(const Vec6& v) {
  SpatialForce f;
  f.force = v.head<3>();
  f.moment = v.tail<3>();
  return f;
}

SpatialForce SpatialForce::operator+(const SpatialForce& rhs) const {
  return {force + rhs.force, moment + rhs.moment};
}

SpatialForce SpatialForce::operator-(const SpatialForce& rhs) const {
  return {force - rhs.force, moment - rhs.moment};
}

SpatialForce SpatialForce::operator*(double s) const {
  return {force * s, moment * s};
}

double power(const SpatialForce& f, const SpatialMotion& v) {
  return f.force.dot(v.linear) + f.moment.dot(v.angular);
}

SpatialMotion MotionTransform::apply(const SpatialMotion& v) const {
  return SpatialMotion::fromVector(matrix * v.vector());
}

MotionTransform MotionTransform::operator*(const MotionTransform& rhs) const {
  return {matrix * rhs.matrix};
}

SpatialForce ForceTransform::apply(const SpatialForce& f) const {
  return SpatialForce::fromVector(matrix * f.vector());
}

ForceTransform ForceTransform::operator*(const ForceTransform& rhs) const {
  return {matrix * rhs.matrix};
}

MotionTransform motionTransform(const HomogeneousTransform& transform) {
  MotionTransform out;
  const Mat3& r = transform.rotation;
  out.matrix.topLeftCorner<3, 3>() = r;
  out.matrix.topRightCorner<3, 3>() = skew(transform.translation) * r;
  out.matrix.bottomLeftCorner<3, 3>().setZero();
  out.matrix.bottomRightCorner<3, 3>() = r;
  return out;
}

ForceTransform forceTransform(const HomogeneousTransform& transform) {
  ForceTransform out;
  const Mat3& r = transform.rotation;
  out.matrix.topLeftCorner<3, 3>() = r;
  out.matrix.topRightCorner<3, 3>().setZero();
  out.matrix.bottomLeftCorner<3, 3>() = skew(transform.translation) * r;
  out.matrix.bottomRightCorner<3, 3>() = r;
  return out;
}

SpatialMotion crossMotion(const SpatialMotion& v, const SpatialMotion& m) {
  SpatialMotion out;
  out.linear = v.angular.cross(m.linear) + v.linear.cross(m.angular);
  out.angular = v.angular.cross(m.angular);
  return out;
}

SpatialForce crossForce(const SpatialMotion& v, const SpatialForce& f) {
  SpatialForce out;
  out.force = v.angular.cross(f.force);
  out.moment = v.angular.cross(f.moment) + v.linear.cross(f.force);
  return out;
}

SpatialInertia::SpatialInertia(double mass, const Vec3& com,
                               const Mat3& inertiaAtFrame)
    : mass_(mass), com_(com), inertiaAtFrame_(inertiaAtFrame) {
  if (!(mass > 0.0)) {
    throw std::invalid_argument("mass must be positive");
  }
  if ((inertiaAtFrame - inertiaAtFrame.transpose()).norm() > 1e-12) {
    throw std::invalid_argument("rotational inertia must be symmetric");
  }
  const Mat3 atCom = inertiaAtCom();
  Eigen::LLT<Mat3> llt(atCom);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "rotational inertia about the com must be positive definite");
  }
}

SpatialInertia SpatialInertia::fromComInertia(double mass, const Vec3& com,
                                              const Mat3& inertiaAtCom) {
  const Mat3 sc = skew(com);
  return SpatialInertia(mass, com, inertiaAtCom - mass * sc * sc);
}

Mat3 SpatialInertia::inertiaAtCom() const {
  const Mat3 sc = skew(com_);
  return inertiaAtFrame_ + mass_ * sc * sc;
}

Mat6 SpatialInertia::matrix() const {
  Mat6 m;
  const Mat3 msc = mass_ * skew(com_);
  m.topLeftCorner<3, 3>() = mass_ * Mat3::Identity();
  m.topRightCorner<3, 3>() = -msc;
  m.bottomLeftCorner<3, 3>() = msc;
  m.bottomRightCorner<3, 3>() = inertiaAtFrame_;
  return m;
}

Mat6 spatialInertiaMatrix(const SpatialInertia& inertia) {
  return inertia.matrix();
}

SpatialForce momentum(const SpatialInertia& inertia,
                      const SpatialMotion& twist) {
  return SpatialForce::fromVector(inertia.matrix() * twist.vector());
}

SpatialMotion bodyTwistFromPoses(const Pose& prev, const Pose& next,
                                 double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const Quaternion rel = prev.orientation.conjugate() * next.orientation;
  Vec3 rotVec;
  try {
    rotVec = rel.log();
  } catch (const std::domain_error&) {
    throw std::domain_error(
        "orientation change between samples reached pi; the sample rate "
        "aliases the rotation");
  }
  SpatialMotion twist;
  twist.angular = rotVec / dt;
  const Pose mid = midpointPose(prev, next);
  twist.linear =
      mid.orientation.toRotation().transpose() * (next.position - prev.position) /
      dt;
  return twist;
}

Pose midpointPose(const Pose& prev, const Pose& next) {
  const Quaternion rel = prev.orientation.conjugate() * next.orientation;
  Pose mid;
  mid.position = 0.5 * (prev.position + next.position);
  mid.orientation = prev.orientation * Quaternion::exp(0.5 * rel.log());
  return mid;
}

}  // namespace artopo
