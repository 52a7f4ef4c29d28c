#pragma once

// Shared fixtures and reference implementations for the test binaries. The
// oracles here deliberately avoid the library's own predicates.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "ckpierce/ck_detect.hpp"
#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"
#include "ckpierce/lowerbound.hpp"

namespace testing {

using ckpierce::ConvexBody;
using ckpierce::Family;
using ckpierce::Rational;
using ckpierce::RationalPoint;

inline ConvexBody hull(std::vector<RationalPoint> pts) { return ckpierce::convex_hull(pts); }

inline ConvexBody point(Rational x, Rational y) { return hull({RationalPoint(x, y)}); }

inline ConvexBody segment(Rational x1, Rational y1, Rational x2, Rational y2) {
  return hull({RationalPoint(x1, y1), RationalPoint(x2, y2)});
}

inline Family family_of(std::vector<ConvexBody> bodies) {
  Family f;
  for (auto& b : bodies) f.add(std::move(b));
  return f;
}

/// Random body with 1..max_vertices integer points in [-range, range]^2.
inline ConvexBody random_body(std::mt19937_64& rng, int range, int max_vertices) {
  std::uniform_int_distribution<int> coord(-range, range);
  std::uniform_int_distribution<int> count(1, max_vertices);
  std::vector<RationalPoint> pts;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
  return hull(pts);
}

/// Body near (cx, cy): a point, a short segment or a small triangle.
inline ConvexBody random_small_body(std::mt19937_64& rng, int cx, int cy, int spread) {
  std::uniform_int_distribution<int> off(-spread, spread);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<RationalPoint> pts;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) pts.emplace_back(cx + off(rng), cy + off(rng));
  return hull(pts);
}

/// k points of a regular k-gon of radius 1/2 (rational, on a circle up to rounding).
inline Family pentagon(int k = 5) {
  Family f;
  for (int i = 0; i < k; ++i) {
    const RationalPoint p = ckpierce::rational_circle_point(2 * std::numbers::pi * i / k);
    f.add(point(p.x / 2, p.y / 2));
  }
  return f;
}

// --- Half-plane clipping oracle -------------------------------------------

// a x + b y <= c
struct HalfPlane {
  Rational a, b, c;
  Rational value(const RationalPoint& p) const { return a * p.x + b * p.y - c; }
};

/// Half-planes whose intersection is exactly the closed body.
inline std::vector<HalfPlane> describe(const ConvexBody& body) {
  const auto& v = body.vertices();
  std::vector<HalfPlane> hs;
  if (v.size() == 1) {
    hs.push_back({1, 0, v[0].x});
    hs.push_back({-1, 0, -v[0].x});
    hs.push_back({0, 1, v[0].y});
    hs.push_back({0, -1, -v[0].y});
    return hs;
  }
  if (v.size() == 2) {
    const Rational dx = v[1].x - v[0].x;
    const Rational dy = v[1].y - v[0].y;
    // Supporting line, both sides.
    const Rational a = -dy, b = dx, c = a * v[0].x + b * v[0].y;
    hs.push_back({a, b, c});
    hs.push_back({-a, -b, -c});
    // End caps along the direction.
    hs.push_back({dx, dy, dx * v[1].x + dy * v[1].y});
    hs.push_back({-dx, -dy, -(dx * v[0].x + dy * v[0].y)});
    return hs;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const RationalPoint& p = v[i];
    const RationalPoint& q = v[(i + 1) % v.size()];
    // Counterclockwise polygon: interior is left of p->q, i.e. cross >= 0.
    const Rational a = q.y - p.y, b = p.x - q.x;
    hs.push_back({a, b, a * p.x + b * p.y});
  }
  return hs;
}

/// Sutherland-Hodgman clipping of a closed vertex loop by one half-plane.
inline std::vector<RationalPoint> clip(const std::vector<RationalPoint>& loop, const HalfPlane& h) {
  std::vector<RationalPoint> out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoint& cur = loop[i];
    const RationalPoint& nxt = loop[(i + 1) % n];
    const Rational vc = h.value(cur);
    const Rational vn = h.value(nxt);
    if (vc <= 0) out.push_back(cur);
    if ((vc < 0 && vn > 0) || (vc > 0 && vn < 0)) {
      const Rational t = vc / (vc - vn);
      out.emplace_back(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y));
    }
  }
  return out;
}

inline bool clipping_intersects(const ConvexBody& a, const ConvexBody& b) {
  std::vector<RationalPoint> loop = a.vertices();
  for (const auto& h : describe(b)) {
    loop = clip(loop, h);
    if (loop.empty()) return false;
  }
  return true;
}

// --- Rotational sampling of line directions ----------------------------

// Sampled directions; a direction admits a transversal iff the projections
// of all members onto its normal share a point. Returns true only with a
// positive margin, so a hit is a genuine transversal.
inline bool sampled_transversal(const Family& f, const std::vector<int>& subset, int directions) {
  for (int d = 0; d < directions; ++d) {
    const double th = std::numbers::pi * d / directions;
    const double nx = -std::sin(th), ny = std::cos(th);
    double lo = -1e300, hi = 1e300;
    for (int m : subset) {
      double mn = 1e300, mx = -1e300;
      for (const auto& p : f.members[m].vertices()) {
        const double v = nx * p.x.get_d() + ny * p.y.get_d();
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      lo = std::max(lo, mn);
      hi = std::min(hi, mx);
    }
    if (hi - lo > 1e-9) return true;
  }
  return false;
}

// --- Brute-force C(k) search without pruning -------------------------------

inline bool hulls_meet(const ConvexBody& a, const ConvexBody& b) { return clipping_intersects(a, b); }

inline bool brute_is_ck(const Family& f, const std::vector<int>& order) {
  const int k = static_cast<int>(order.size());
  auto m = [&](int p) -> const ConvexBody& { return f.members[order[p % k]]; };
  if (k == 3) {
    for (int i = 0; i < 3; ++i) {
      if (hulls_meet(m(i), m(i + 1))) return false;
    }
    return !ckpierce::is_tight_triple(m(0), m(1), m(2));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if ((i + 1) % k == j || (j + 1) % k == i) continue;
      if (hulls_meet(ckpierce::hull_union(m(i), m(i + 1)), ckpierce::hull_union(m(j), m(j + 1)))) return false;
    }
  }
  return true;
}

/// Every k-subset in increasing order, every arrangement with the smallest
/// index first and order[1] < order[k-1]; first valid one in lexicographic
/// order of the sequences.
inline std::optional<std::vector<int>> brute_find_ck(const Family& f, int k) {
  const int n = static_cast<int>(f.size());
  std::optional<std::vector<int>> best;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + std::min(k, n), true);
  if (k > n) return std::nullopt;
  do {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (mask[i]) subset.push_back(i);
    }
    std::vector<int> rest(subset.begin() + 1, subset.end());
    do {
      std::vector<int> order{subset[0]};
      order.insert(order.end(), rest.begin(), rest.end());
      if (order[1] > order[k - 1]) continue;
      if (brute_is_ck(f, order) && (!best || order < *best)) best = order;
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace testing
