#pragma once

// Exact planar geometry over GMP rationals, plus a thin double-precision
// layer used by the numerical search.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckpierce {

using Rational = mpq_class;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses an integer ("-3") or a fraction ("7/12"). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational px, Rational py);

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b);
RationalPoint operator*(const Rational& s, const RationalPoint& p);
Rational dot(const RationalPoint& a, const RationalPoint& b);
Rational cross(const RationalPoint& a, const RationalPoint& b);

/// Sign of (q-p) x (r-p): +1 for a left turn, -1 for a right turn, 0 if collinear.
int orient(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r);

/// A compact convex polygon. One vertex is a point, two are a segment;
/// otherwise vertices are strictly convex and counterclockwise, starting
/// from the lexicographically smallest one. Only convex_hull() creates them,
/// so every instance is canonical.
class ConvexBody {
 public:
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool is_point() const { return vertices_.size() == 1; }
  bool is_segment() const { return vertices_.size() == 2; }

  /// Closed containment test.
  bool contains(const RationalPoint& p) const;

  friend bool operator==(const ConvexBody&, const ConvexBody&) = default;

 private:
  friend ConvexBody convex_hull(std::span<const RationalPoint> points);
  explicit ConvexBody(std::vector<RationalPoint> v) : vertices_(std::move(v)) {}
  std::vector<RationalPoint> vertices_;
};

/// Throws GeometryError("empty point set") on empty input.
ConvexBody convex_hull(std::span<const RationalPoint> points);
ConvexBody hull_union(const ConvexBody& a, const ConvexBody& b);

/// True iff the closed bodies share no point (separating-axis test).
bool bodies_disjoint(const ConvexBody& a, const ConvexBody& b);

/// Exact intersection of two closed bodies, or nullopt if empty.
std::optional<ConvexBody> intersect_bodies(const ConvexBody& a, const ConvexBody& b);

/// {(x,y) : a x + b y = c}, scaled to coprime integers with the first
/// nonzero of (a, b) positive.
class Line {
 public:
  Line(Rational a, Rational b, Rational c);
  static Line through(const RationalPoint& p, const RationalPoint& q);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }

  /// a x + b y - c
  Rational eval(const RationalPoint& p) const { return a_ * p.x + b_ * p.y - c_; }

  friend bool operator==(const Line&, const Line&) = default;
  friend bool operator<(const Line& l, const Line& r);

 private:
  Rational a_, b_, c_;
};

std::string to_string(const Line& l);

bool line_meets_body(const Line& line, const ConvexBody& body);

/// Exact squared Euclidean distance between the body and the line.
Rational distance_lower_bound(const ConvexBody& body, const Line& line);

// ---------------------------------------------------------------------------
// Floating-point layer.

struct FloatPoint {
  double x = 0.0;
  double y = 0.0;
};

inline FloatPoint operator-(FloatPoint a, FloatPoint b) { return {a.x - b.x, a.y - b.y}; }
inline double cross(FloatPoint a, FloatPoint b) { return a.x * b.y - a.y * b.x; }

FloatPoint to_float(const RationalPoint& p);
std::vector<FloatPoint> to_float(const ConvexBody& body);

/// Signed distance of p from the directed line through a and b (positive on the left).
double signed_distance(FloatPoint a, FloatPoint b, FloatPoint p);

/// Distance from a convex vertex set to the infinite line through a and b.
double distance_to_line(std::span<const FloatPoint> body, FloatPoint a, FloatPoint b);

}  // namespace ckpierce
