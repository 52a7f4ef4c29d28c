#include "ckpierce/geom.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace ckpierce {

Rational parse_rational(const std::string& text) {
  static const std::regex kPattern(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) {
    throw std::invalid_argument("not a rational: \"" + text + "\"");
  }
  mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str(), 10);
  mpz_class den = 1;
  if (m[2].matched) {
    den = mpz_class(m[2].str(), 10);
    if (den == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

RationalPoint::RationalPoint(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
  x.canonicalize();
  y.canonicalize();
}

RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) {
  return {a.x + b.x, a.y + b.y};
}
RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) {
  return {a.x - b.x, a.y - b.y};
}
RationalPoint operator*(const Rational& s, const RationalPoint& p) { return {s * p.x, s * p.y}; }
Rational dot(const RationalPoint& a, const RationalPoint& b) { return a.x * b.x + a.y * b.y; }
Rational cross(const RationalPoint& a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }

int orient(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r) {
  return sgn(Rational((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)));
}

bool ConvexBody::contains(const RationalPoint& p) const {
  const auto& v = vertices_;
  if (v.size() == 1) return v[0] == p;
  if (v.size() == 2) {
    return orient(v[0], v[1], p) == 0 && dot(p - v[0], v[1] - v[0]) >= 0 &&
           dot(p - v[1], v[0] - v[1]) >= 0;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orient(v[i], v[(i + 1) % v.size()], p) < 0) return false;
  }
  return true;
}

// Andrew's monotone chain; collinear points are dropped.
ConvexBody convex_hull(std::span<const RationalPoint> points) {
  if (points.empty()) throw GeometryError("empty point set");
  std::vector<RationalPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return ConvexBody(std::move(pts));

  std::vector<RationalPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  // Collinear input leaves only the two extremes.
  hull.resize(k - 1);
  return ConvexBody(std::move(hull));
}

ConvexBody hull_union(const ConvexBody& a, const ConvexBody& b) {
  std::vector<RationalPoint> pts = a.vertices();
  pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
  return convex_hull(pts);
}

namespace {

void edge_directions(const ConvexBody& body, std::vector<RationalPoint>& out) {
  const auto& v = body.vertices();
  if (v.size() < 2) return;
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    RationalPoint d = v[(i + 1) % v.size()] - v[i];
    out.push_back(d);
    out.push_back({-d.y, d.x});
  }
}

// Strict separation of the projections onto `dir`.
bool separates(const RationalPoint& dir, const ConvexBody& a, const ConvexBody& b) {
  auto project = [&dir](const ConvexBody& body) {
    Rational lo = dot(dir, body.vertices()[0]);
    Rational hi = lo;
    for (const auto& p : body.vertices()) {
      Rational t = dot(dir, p);
      if (t < lo) lo = t;
      if (t > hi) hi = t;
    }
    return std::pair{lo, hi};
  };
  auto [alo, ahi] = project(a);
  auto [blo, bhi] = project(b);
  return ahi < blo || bhi < alo;
}

}  // namespace

bool bodies_disjoint(const ConvexBody& a, const ConvexBody& b) {
  std::vector<RationalPoint> dirs;
  edge_directions(a, dirs);
  edge_directions(b, dirs);
  for (const auto& p : a.vertices()) {
    for (const auto& q : b.vertices()) {
      if (p == q) return false;
      dirs.push_back(q - p);
    }
  }
  return std::any_of(dirs.begin(), dirs.end(),
                     [&](const RationalPoint& d) { return separates(d, a, b); });
}

namespace {

// Closed half-plane n.p <= c.
struct HalfPlane {
  RationalPoint n;
  Rational c;
};

std::vector<HalfPlane> half_planes(const ConvexBody& body) {
  const auto& v = body.vertices();
  std::vector<HalfPlane> hp;
  if (v.size() == 1) {
    hp.push_back({{1, 0}, v[0].x});
    hp.push_back({{-1, 0}, -v[0].x});
    hp.push_back({{0, 1}, v[0].y});
    hp.push_back({{0, -1}, -v[0].y});
    return hp;
  }
  auto left_of = [](const RationalPoint& p, const RationalPoint& q) {
    // orient(p, q, r) >= 0  <=>  n.r <= n.p
    RationalPoint n{q.y - p.y, p.x - q.x};
    return HalfPlane{n, dot(n, p)};
  };
  if (v.size() == 2) {
    HalfPlane l = left_of(v[0], v[1]);
    hp.push_back(l);
    hp.push_back({{-l.n.x, -l.n.y}, -l.c});
    RationalPoint d = v[1] - v[0];
    hp.push_back({{-d.x, -d.y}, -dot(d, v[0])});
    hp.push_back({d, dot(d, v[1])});
    return hp;
  }
  for (std::size_t i = 0; i < v.size(); ++i) hp.push_back(left_of(v[i], v[(i + 1) % v.size()]));
  return hp;
}

std::vector<RationalPoint> clip(const std::vector<RationalPoint>& ring, const HalfPlane& h) {
  std::vector<RationalPoint> out;
  const std::size_t n = ring.size();
  if (n == 1) {
    if (dot(h.n, ring[0]) <= h.c) out.push_back(ring[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoint& p = ring[i];
    const RationalPoint& q = ring[(i + 1) % n];
    Rational sp = dot(h.n, p) - h.c;
    Rational sq = dot(h.n, q) - h.c;
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) {
      Rational t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

}  // namespace

std::optional<ConvexBody> intersect_bodies(const ConvexBody& a, const ConvexBody& b) {
  std::vector<RationalPoint> ring = a.vertices();
  for (const auto& h : half_planes(b)) {
    ring = clip(ring, h);
    if (ring.empty()) return std::nullopt;
  }
  return convex_hull(ring);
}

Line::Line(Rational a, Rational b, Rational c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_ == 0 && b_ == 0) throw GeometryError("degenerate line: a = b = 0");
  mpz_class den_lcm = 1;
  for (Rational* q : {&a_, &b_, &c_}) {
    q->canonicalize();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q->get_den_mpz_t());
  }
  mpz_class num_gcd = 0;
  for (Rational* q : {&a_, &b_, &c_}) {
    *q *= den_lcm;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q->get_num_mpz_t());
  }
  const bool flip = a_ < 0 || (a_ == 0 && b_ < 0);
  Rational scale(flip ? mpz_class(-num_gcd) : num_gcd, 1);
  for (Rational* q : {&a_, &b_, &c_}) *q /= scale;
}

Line Line::through(const RationalPoint& p, const RationalPoint& q) {
  if (p == q) throw GeometryError("line through coincident points");
  Rational a = q.y - p.y;
  Rational b = p.x - q.x;
  return Line(a, b, a * p.x + b * p.y);
}

bool operator<(const Line& l, const Line& r) {
  if (l.a_ != r.a_) return l.a_ < r.a_;
  if (l.b_ != r.b_) return l.b_ < r.b_;
  return l.c_ < r.c_;
}

std::string to_string(const Line& l) {
  return format_rational(l.a()) + "*x + " + format_rational(l.b()) + "*y = " +
         format_rational(l.c());
}

bool line_meets_body(const Line& line, const ConvexBody& body) {
  bool neg = false;
  bool pos = false;
  for (const auto& p : body.vertices()) {
    const int s = sgn(line.eval(p));
    if (s == 0) return true;
    (s < 0 ? neg : pos) = true;
  }
  return neg && pos;
}

Rational distance_lower_bound(const ConvexBody& body, const Line& line) {
  if (line_meets_body(line, body)) return 0;
  Rational best = -1;
  for (const auto& p : body.vertices()) {
    Rational s = line.eval(p);
    Rational d = s * s;
    if (best < 0 || d < best) best = d;
  }
  return best / (line.a() * line.a() + line.b() * line.b());
}

FloatPoint to_float(const RationalPoint& p) { return {p.x.get_d(), p.y.get_d()}; }

std::vector<FloatPoint> to_float(const ConvexBody& body) {
  std::vector<FloatPoint> out;
  out.reserve(body.size());
  for (const auto& p : body.vertices()) out.push_back(to_float(p));
  return out;
}

double signed_distance(FloatPoint a, FloatPoint b, FloatPoint p) {
  const FloatPoint d = b - a;
  return cross(d, p - a) / std::hypot(d.x, d.y);
}

double distance_to_line(std::span<const FloatPoint> body, FloatPoint a, FloatPoint b) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& p : body) {
    const double s = signed_distance(a, b, p);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (lo <= 0.0 && hi >= 0.0) return 0.0;
  return lo > 0.0 ? lo : -hi;
}

}  // namespace ckpierce
