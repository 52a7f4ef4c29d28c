#include "ckpierce/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ckpierce {

namespace {

constexpr long kTangentDenominator = 10000;

// Tangent half-angle parameterization, |phi| <= pi/2.
RationalPoint half_angle_point(double phi) {
  const double t = std::tan(phi / 2.0);
  Rational q(mpz_class(std::lround(t * kTangentDenominator)), kTangentDenominator);
  q.canonicalize();
  const Rational den = 1 + q * q;
  return {(1 - q * q) / den, 2 * q / den};
}

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_plane(const RationalPoint& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; }

bool ccw_before(const RationalPoint& a, const RationalPoint& b) {
  const int ha = half_plane(a);
  const int hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace

RationalPoint rational_circle_point(double radians) {
  double theta = std::remainder(radians, 2 * std::numbers::pi);  // (-pi, pi]
  if (std::abs(theta) <= std::numbers::pi / 2) return half_angle_point(theta);
  const RationalPoint p = half_angle_point(std::remainder(theta - std::numbers::pi, 2 * std::numbers::pi));
  return {-p.x, -p.y};
}

bool clockwise_cyclic_order(const std::vector<RationalPoint>& points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return ccw_before(points[a], points[b]); });
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (!ccw_before(points[idx[j]], points[idx[j + 1]])) return false;  // repeated direction
  }
  // Walking clockwise means walking the ccw-sorted list backwards.
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t here = idx[(j + 1) % n];
    const std::size_t next = idx[j];
    if (next != (here + 1) % n) return false;
  }
  return true;
}

std::vector<NamedPoint> circle_points(const CirclePointSpec& spec) {
  if (spec.k < 5) throw std::invalid_argument("construction needs k >= 5");
  if (spec.perturbation <= 0 || spec.perturbation >= Rational(1, 2)) {
    throw std::invalid_argument("perturbation must lie strictly between 0 and 1/2");
  }
  const int base = 3 * (spec.k - 1);
  const double gap = 2 * std::numbers::pi / base;
  const double delta = spec.perturbation.get_d() * gap;
  auto angle = [&](int i) { return (5 - i) * gap; };

  std::vector<NamedPoint> pts;
  for (int i = 1; i <= 3; ++i) {
    pts.push_back({{i, PointTag::Side::kLeft}, rational_circle_point(angle(i) + delta)});
    pts.push_back({{i, PointTag::Side::kRight}, rational_circle_point(angle(i) - delta)});
  }
  for (int i = 4; i <= base; ++i) pts.push_back({{i, PointTag::Side::kBase}, rational_circle_point(angle(i))});

  std::vector<RationalPoint> raw;
  for (const auto& np : pts) raw.push_back(np.second);
  if (!clockwise_cyclic_order(raw)) {
    throw std::invalid_argument("perturbation too large: circle points out of order");
  }
  return pts;
}

Family build_construction(int k, const Rational& perturbation) {
  if (k < 5) throw std::invalid_argument("construction needs k >= 5");
  const int n = 3 * (k - 1);
  ConstructionMeta meta;
  meta.k = k;
  meta.perturbation = perturbation;
  meta.points = circle_points({k, perturbation});

  using Side = PointTag::Side;
  auto at = [&](const PointTag& tag) -> const RationalPoint& {
    for (const auto& [t, p] : meta.points) {
      if (t == tag) return p;
    }
    throw std::logic_error("unknown point " + tag.name());
  };
  auto base = [](int i) { return PointTag{i, Side::kBase}; };

  std::vector<MemberProvenance> members;
  members.push_back({1, {1, Side::kRight}, {3, Side::kLeft}});
  for (int s = 4; s + 2 <= n; s += 3) members.push_back({1, base(s), base(s + 2)});
  members.push_back({2, {2, Side::kRight}, base(4)});
  for (int s = 5; s + 2 <= n - 2; s += 3) members.push_back({2, base(s), base(s + 2)});
  members.push_back({2, base(n - 1), {1, Side::kLeft}});
  members.push_back({3, {3, Side::kRight}, base(5)});
  for (int s = 6; s + 2 <= n - 1; s += 3) members.push_back({3, base(s), base(s + 2)});
  members.push_back({3, base(n), {2, Side::kLeft}});

  Family family;
  family.source = "generated";
  for (const auto& m : members) {
    family.add(convex_hull(std::vector{at(m.first), at(m.second)}),
               "[" + m.first.name() + "," + m.second.name() + "]");
  }
  meta.members = std::move(members);
  family.construction = std::move(meta);
  return family;
}

namespace {

const ConstructionMeta& meta_of(const Family& family, int member) {
  if (!family.construction) throw std::invalid_argument("member is not from a generated construction");
  if (member < 0 || member >= static_cast<int>(family.construction->members.size())) {
    throw std::invalid_argument("member index out of range");
  }
  return *family.construction;
}

std::vector<PointTag> arc_tags(const Family& family, int member) {
  const ConstructionMeta& meta = meta_of(family, member);
  const MemberProvenance& prov = meta.members[member];
  auto position = [&](const PointTag& tag) {
    for (std::size_t i = 0; i < meta.points.size(); ++i) {
      if (meta.points[i].first == tag) return i;
    }
    throw std::invalid_argument("endpoint " + tag.name() + " is not a generated point");
  };
  const std::size_t n = meta.points.size();
  std::vector<PointTag> tags;
  for (std::size_t i = position(prov.first);; i = (i + 1) % n) {
    tags.push_back(meta.points[i].first);
    if (meta.points[i].first == prov.second) break;
  }
  return tags;
}

}  // namespace

std::set<int> arc_index_set(const Family& family, int member) {
  std::set<int> out;
  for (const auto& tag : arc_tags(family, member)) out.insert(tag.index);
  return out;
}

int arc_point_count(const Family& family, int member) {
  return static_cast<int>(arc_tags(family, member).size());
}

bool arc_contains(const Family& family, int member, const PointTag& tag) {
  const auto tags = arc_tags(family, member);
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

int first_long_member(const Family& family) {
  if (!family.construction) throw std::invalid_argument("family is not a generated construction");
  const auto& members = family.construction->members;
  const PointTag first{1, PointTag::Side::kRight};
  const PointTag second{3, PointTag::Side::kLeft};
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].first == first && members[i].second == second) return static_cast<int>(i);
  }
  throw std::invalid_argument("construction has no [p1r,p3l] member");
}

}  // namespace ckpierce
