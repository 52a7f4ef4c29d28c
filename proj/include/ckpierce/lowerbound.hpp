#pragma once

// The lower-bound family: 3(k-1) chords between rational points on the unit
// circle, C(k)-free and C(k+1)-free, yet not pierceable by ceil(k/2)-1 lines.

#include <set>
#include <utility>
#include <vector>

#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"

namespace ckpierce {

struct CirclePointSpec {
  int k = 5;
  /// Offset of p_i^l / p_i^r from p_i as a fraction of the base spacing.
  /// Must lie in (0, 1/2).
  Rational perturbation{1, 10};
};

using NamedPoint = std::pair<PointTag, RationalPoint>;

/// The 3k points p1l, p1r, p2l, p2r, p3l, p3r, p4, ..., p_{3(k-1)} in
/// clockwise order, exactly on x^2 + y^2 = 1. p5 sits at angle 0 and the
/// base points are (nearly) equally spaced. Throws std::invalid_argument
/// for k < 5 or a perturbation that breaks the cyclic order.
std::vector<NamedPoint> circle_points(const CirclePointSpec& spec);

/// Rational point on the unit circle near angle `radians`.
RationalPoint rational_circle_point(double radians);

/// True iff the points are distinct and appear in the given cyclic order
/// when walking the circle clockwise.
bool clockwise_cyclic_order(const std::vector<RationalPoint>& points);

Family build_construction(int k, const Rational& perturbation = Rational(1, 10));

/// Indices i such that p_i, p_i^l or p_i^r lies on the clockwise arc from
/// the member's first endpoint to its second, endpoints included.
std::set<int> arc_index_set(const Family& family, int member);

/// Number of generated points on that same arc.
int arc_point_count(const Family& family, int member);

/// True iff the generated point `tag` lies on the member's arc.
bool arc_contains(const Family& family, int member, const PointTag& tag);

/// Index of the member [p_1^r, p_3^l].
int first_long_member(const Family& family);

}  // namespace ckpierce
