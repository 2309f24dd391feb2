#pragma once

#include <cmath>
#include <optional>

namespace gazepinch {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double d) { return d * (kPi / 180.0); }
inline constexpr double rad_to_deg(double r) { return r * (180.0 / kPi); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr Vec3 operator*(Vec3 v, double s) { return s * v; }
  friend constexpr bool operator==(Vec3 a, Vec3 b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(Vec3 v) {
  double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

// Unit quaternion, scalar-first.
struct Orientation {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(Orientation a, Orientation b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline Orientation normalized(Orientation q) {
  double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

inline Orientation from_axis_angle(Vec3 axis, double degrees) {
  Vec3 u = normalized(axis);
  double half = deg_to_rad(degrees) / 2.0;
  double s = std::sin(half);
  return {std::cos(half), u.x * s, u.y * s, u.z * s};
}

inline Orientation multiply(Orientation a, Orientation b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

// Geodesic angle between two orientations in degrees, in [0, 180].
// Double-cover folded out: q and -q describe the same pose.
inline double angular_delta(Orientation a, Orientation b) {
  double d = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  d = std::fabs(d);
  if (d > 1.0) d = 1.0;
  return rad_to_deg(2.0 * std::acos(d));
}

// Normalized linear interpolation; adequate for the small per-frame steps
// used by keyframe scripts.
inline Orientation nlerp(Orientation a, Orientation b, double t) {
  double d = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  double sign = d < 0.0 ? -1.0 : 1.0;
  Orientation q{a.w + t * (sign * b.w - a.w), a.x + t * (sign * b.x - a.x),
                a.y + t * (sign * b.y - a.y), a.z + t * (sign * b.z - a.z)};
  return normalized(q);
}

// Signed twist of q about the world forward axis (+z), in degrees, wrapped to
// (-180, 180]. Positive follows the right-hand rule about +z. Returns nullopt
// for the degenerate pure-180-about-orthogonal-axis case where the twist
// component vanishes entirely.
inline std::optional<double> twist_about_forward(Orientation q) {
  if (q.w == 0.0 && q.z == 0.0) return std::nullopt;
  return rad_to_deg(2.0 * std::atan2(q.z, q.w));
}

inline double wrap_degrees(double d) {
  while (d > 180.0) d -= 360.0;
  while (d <= -180.0) d += 360.0;
  return d;
}

// Nearest non-negative ray parameter where the ray meets the sphere, or
// nullopt on a miss. A ray starting inside the sphere reports the exit point.
// `dir` is assumed unit length, so t is metric distance.
inline std::optional<double> ray_sphere_hit(Vec3 origin, Vec3 dir, Vec3 center,
                                            double radius) {
  Vec3 oc = origin - center;
  double b = dot(oc, dir);
  double c = dot(oc, oc) - radius * radius;
  double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  double s = std::sqrt(disc);
  double t0 = -b - s;
  if (t0 >= 0.0) return t0;
  double t1 = -b + s;
  if (t1 >= 0.0) return t1;
  return std::nullopt;
}

}  // namespace gazepinch
