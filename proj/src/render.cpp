#include "ckpierce/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ckpierce {

namespace {

constexpr int kCanvas = 800;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

class Canvas {
 public:
  explicit Canvas(double half_width) : half_(half_width) {}

  double sx(double x) const { return (x + half_) / (2 * half_) * kCanvas; }
  double sy(double y) const { return (half_ - y) / (2 * half_) * kCanvas; }
  double scale() const { return kCanvas / (2 * half_); }
  double half() const { return half_; }

  std::string point(double x, double y) const { return fixed(sx(x)) + "," + fixed(sy(y)); }

 private:
  double half_;
};

const char* family_color(int family) {
  switch (family) {
    case 1:
      return "#d62728";
    case 2:
      return "#1f77b4";
    case 3:
      return "#2ca02c";
    default:
      return "#333333";
  }
}

// Clips the line a x + b y + c = 0 to the square [-h, h]^2.
std::optional<std::pair<FloatPoint, FloatPoint>> clip_line(double a, double b, double c, double h) {
  std::vector<FloatPoint> hits;
  if (b != 0.0) {
    for (double x : {-h, h}) {
      const double y = -(a * x + c) / b;
      if (y >= -h && y <= h) hits.push_back({x, y});
    }
  }
  if (a != 0.0) {
    for (double y : {-h, h}) {
      const double x = -(b * y + c) / a;
      if (x >= -h && x <= h) hits.push_back({x, y});
    }
  }
  if (hits.size() < 2) return std::nullopt;
  auto far = std::minmax_element(hits.begin(), hits.end(), [](FloatPoint p, FloatPoint q) {
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  });
  return std::make_pair(*far.first, *far.second);
}

}  // namespace

std::string render_svg(const Family& family, const RenderOptions& options) {
  double extent = 0.0;
  for (const auto& body : family.members) {
    for (const auto& p : body.vertices()) {
      extent = std::max({extent, std::abs(p.x.get_d()), std::abs(p.y.get_d())});
    }
  }
  const Canvas cv(std::max(1.15, 1.05 * extent));
  const double stroke = 2.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kCanvas) + "\" height=\"" +
         std::to_string(kCanvas) + "\" viewBox=\"0 0 " + std::to_string(kCanvas) + " " +
         std::to_string(kCanvas) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<circle cx=\"" + fixed(cv.sx(0)) + "\" cy=\"" + fixed(cv.sy(0)) + "\" r=\"" + fixed(cv.scale()) +
         "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  if (options.chords) {
    const ChordSystem& cs = *options.chords;
    for (int i = 0; i < cs.chord_count(); ++i) {
      const FloatPoint a = cs.chord_start(i);
      const FloatPoint b = cs.chord_end(i);
      out += "<line x1=\"" + fixed(cv.sx(a.x)) + "\" y1=\"" + fixed(cv.sy(a.y)) + "\" x2=\"" + fixed(cv.sx(b.x)) +
             "\" y2=\"" + fixed(cv.sy(b.y)) + "\" stroke=\"#7f7f7f\" stroke-width=\"1.5\" class=\"chord\"/>\n";
    }
    for (int i = 0; i < cs.size(); ++i) {
      const FloatPoint f = cs.boundary(i);
      out += "<circle cx=\"" + fixed(cv.sx(f.x)) + "\" cy=\"" + fixed(cv.sy(f.y)) +
             "\" r=\"3.000000\" fill=\"#7f7f7f\" class=\"boundary\"/>\n";
    }
  }

  for (std::size_t m = 0; m < family.size(); ++m) {
    int origin = 0;
    if (family.construction && m < family.construction->members.size()) {
      origin = family.construction->members[m].family;
    }
    const std::string color = family_color(origin);
    const auto& body = family.members[m];
    const auto& v = body.vertices();
    if (body.is_point()) {
      out += "<circle cx=\"" + fixed(cv.sx(v[0].x.get_d())) + "\" cy=\"" + fixed(cv.sy(v[0].y.get_d())) +
             "\" r=\"4.000000\" fill=\"" + color + "\"/>\n";
    } else if (body.is_segment()) {
      out += "<line x1=\"" + fixed(cv.sx(v[0].x.get_d())) + "\" y1=\"" + fixed(cv.sy(v[0].y.get_d())) +
             "\" x2=\"" + fixed(cv.sx(v[1].x.get_d())) + "\" y2=\"" + fixed(cv.sy(v[1].y.get_d())) +
             "\" stroke=\"" + color + "\" stroke-width=\"" + fixed(stroke) + "\"/>\n";
    } else {
      out += "<polygon points=\"";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += cv.point(v[i].x.get_d(), v[i].y.get_d());
      }
      out += "\" fill=\"" + color + "\" fill-opacity=\"0.35\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
    }
  }

  for (const Line& line : options.lines) {
    const auto seg = clip_line(line.a().get_d(), line.b().get_d(), line.c().get_d(), cv.half());
    if (!seg) continue;
    out += "<line x1=\"" + fixed(cv.sx(seg->first.x)) + "\" y1=\"" + fixed(cv.sy(seg->first.y)) + "\" x2=\"" +
           fixed(cv.sx(seg->second.x)) + "\" y2=\"" + fixed(cv.sy(seg->second.y)) +
           "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\" class=\"solution\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ckpierce
