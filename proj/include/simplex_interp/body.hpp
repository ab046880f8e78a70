#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

enum class BodyKind { unit_cube, symmetric_cube, ball, polytope };

inline std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::unit_cube: return "cube";
    case BodyKind::symmetric_cube: return "symcube";
    case BodyKind::ball: return "ball";
    case BodyKind::polytope: return "polytope";
  }
  return "?";
}

// Reference convex body: [0,1]^n, [-1,1]^n, B(center; radius) or conv(vertices).
template <Scalar T>
struct Body {
  BodyKind kind = BodyKind::unit_cube;
  std::size_t n = 0;
  Point<T> center;
  T radius{0};
  std::vector<Point<T>> vertices;

  static Body unit_cube(std::size_t n) { return {BodyKind::unit_cube, n, {}, T(0), {}}; }
  static Body symmetric_cube(std::size_t n) { return {BodyKind::symmetric_cube, n, {}, T(0), {}}; }

  static Body ball(Point<T> center, T radius) {
    if (!(radius > T(0))) throw DimensionMismatch("ball radius must be positive");
    const std::size_t n = center.size();
    return {BodyKind::ball, n, std::move(center), std::move(radius), {}};
  }

  static Body unit_ball(std::size_t n) { return ball(Point<T>(n, T(0)), T(1)); }

  static Body polytope(std::vector<Point<T>> vertices) {
    if (vertices.empty()) throw DimensionMismatch("polytope needs vertices");
    const std::size_t n = vertices.front().size();
    for (const auto& v : vertices)
      if (v.size() != n) throw DimensionMismatch("polytope vertices differ in dimension");
    return {BodyKind::polytope, n, {}, T(0), std::move(vertices)};
  }

  bool is_cube() const { return kind == BodyKind::unit_cube || kind == BodyKind::symmetric_cube; }
};

}  // namespace simplex_interp
