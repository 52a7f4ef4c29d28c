#include "ckpierce/family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ckpierce {

using nlohmann::json;

std::string PointTag::name() const {
  std::string s = "p" + std::to_string(index);
  if (side == Side::kLeft) s += "l";
  if (side == Side::kRight) s += "r";
  return s;
}

PointTag PointTag::parse(const std::string& name) {
  PointTag tag;
  std::string digits = name.size() > 1 && name[0] == 'p' ? name.substr(1) : std::string();
  if (!digits.empty() && (digits.back() == 'l' || digits.back() == 'r')) {
    tag.side = digits.back() == 'l' ? Side::kLeft : Side::kRight;
    digits.pop_back();
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw ParseError("bad point name \"" + name + "\"");
  }
  tag.index = std::stoi(digits);
  return tag;
}

void Family::add(ConvexBody body, std::optional<std::string> label) {
  members.push_back(std::move(body));
  labels.push_back(std::move(label));
}

ConvexBody body_from_vertex_list(const std::vector<RationalPoint>& vertices) {
  ConvexBody hull = convex_hull(vertices);
  if (hull.size() < 3) return hull;

  std::vector<RationalPoint> ring;
  for (const auto& p : vertices) {
    if (ring.empty() || !(ring.back() == p)) ring.push_back(p);
  }
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

  // Consistent turning direction.
  const std::size_t n = ring.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int o = orient(ring[i], ring[(i + 1) % n], ring[(i + 2) % n]);
    if (o == 0) continue;
    if (sign != 0 && o != sign) throw ValidationError("vertex list is not convex");
    sign = o;
  }
  // Hull vertices visited once each, in hull order (either direction).
  const auto& hv = hull.vertices();
  std::vector<std::size_t> visit;
  for (const auto& p : ring) {
    auto it = std::find(hv.begin(), hv.end(), p);
    if (it == hv.end()) {
      if (!hull.contains(p)) throw ValidationError("vertex list is not convex");
      continue;
    }
    visit.push_back(static_cast<std::size_t>(it - hv.begin()));
  }
  if (visit.size() != hv.size()) throw ValidationError("vertex list is not convex");
  const std::size_t m = visit.size();
  const bool forward = visit[1 % m] == (visit[0] + 1) % m;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = forward ? (visit[i] + 1) % m : (visit[i] + m - 1) % m;
    if (visit[(i + 1) % m] != next) throw ValidationError("vertex list is not convex");
  }
  // Boundary points must sit on the boundary, not inside.
  for (const auto& p : ring) {
    bool on_edge = false;
    for (std::size_t i = 0; i < m && !on_edge; ++i) {
      on_edge = convex_hull(std::vector{hv[i], hv[(i + 1) % m]}).contains(p);
    }
    if (!on_edge) throw ValidationError("vertex list is not convex");
  }
  return hull;
}

namespace {

json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(format_rational(q));
}

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(mpz_class(std::to_string(v.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_float()) throw ParseError(where + ": floating-point coordinates are not accepted");
  throw ParseError(where + ": expected an integer or \"n/d\" string");
}

RationalPoint point_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected [x, y]");
  return {rational_from_json(v[0], where + "/0"), rational_from_json(v[1], where + "/1")};
}

json point_to_json(const RationalPoint& p) {
  return json::array({rational_to_json(p.x), rational_to_json(p.y)});
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

ConstructionMeta construction_from_json(const json& c, std::size_t member_count) {
  const std::string where = "/construction";
  ConstructionMeta meta;
  const json& k = require(c, "k", where);
  if (!k.is_number_integer()) throw ParseError(where + "/k: expected integer");
  meta.k = k.get<int>();
  meta.perturbation = rational_from_json(require(c, "perturbation", where), where + "/perturbation");
  const json& pts = require(c, "points", where);
  if (!pts.is_array()) throw ParseError(where + "/points: expected array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string w = where + "/points/" + std::to_string(i);
    meta.points.emplace_back(PointTag::parse(require(pts[i], "name", w).get<std::string>()),
                             point_from_json(require(pts[i], "at", w), w + "/at"));
  }
  const json& mem = require(c, "members", where);
  if (!mem.is_array() || mem.size() != member_count) {
    throw ValidationError(where + "/members: expected one entry per family member");
  }
  for (std::size_t i = 0; i < mem.size(); ++i) {
    const std::string w = where + "/members/" + std::to_string(i);
    const json& ends = require(mem[i], "endpoints", w);
    if (!ends.is_array() || ends.size() != 2) throw ParseError(w + "/endpoints: expected two names");
    meta.members.push_back({require(mem[i], "family", w).get<int>(),
                            PointTag::parse(ends[0].get<std::string>()),
                            PointTag::parse(ends[1].get<std::string>())});
  }
  return meta;
}

json construction_to_json(const ConstructionMeta& meta) {
  json pts = json::array();
  for (const auto& [tag, p] : meta.points) pts.push_back({{"name", tag.name()}, {"at", point_to_json(p)}});
  json mem = json::array();
  for (const auto& m : meta.members) {
    mem.push_back({{"family", m.family}, {"endpoints", {m.first.name(), m.second.name()}}});
  }
  return {{"k", meta.k},
          {"perturbation", rational_to_json(meta.perturbation)},
          {"points", std::move(pts)},
          {"members", std::move(mem)}};
}

}  // namespace

Family load_family(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  Family family;
  try {
    const json& members = require(doc, "members", "");
    if (!members.is_array()) throw ParseError("/members: expected array");
    if (members.empty()) throw ValidationError("/members: family has no members");
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string where = "/members/" + std::to_string(i);
      const json& m = members[i];
      const json& verts = require(m, "vertices", where);
      if (!verts.is_array() || verts.empty()) {
        throw ValidationError(where + "/vertices: expected a nonempty array");
      }
      std::vector<RationalPoint> pts;
      for (std::size_t j = 0; j < verts.size(); ++j) {
        pts.push_back(point_from_json(verts[j], where + "/vertices/" + std::to_string(j)));
      }
      std::optional<std::string> label;
      if (m.contains("label")) {
        if (!m["label"].is_string()) throw ParseError(where + "/label: expected string");
        label = m["label"].get<std::string>();
      }
      try {
        family.add(body_from_vertex_list(pts), label);
      } catch (const ValidationError& e) {
        throw ValidationError("member " + std::to_string(i) + (label ? " (" + *label + ")" : "") +
                              ": " + e.what());
      }
    }
    if (doc.contains("construction")) {
      family.construction = construction_from_json(doc["construction"], family.size());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  }
  family.source = "loaded";
  return family;
}

std::string save_family(const Family& family) {
  json members = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    json m = json::object();
    if (i < family.labels.size() && family.labels[i]) m["label"] = *family.labels[i];
    json verts = json::array();
    for (const auto& p : family.members[i].vertices()) verts.push_back(point_to_json(p));
    m["vertices"] = std::move(verts);
    members.push_back(std::move(m));
  }
  json doc = {{"members", std::move(members)}};
  if (family.construction) doc["construction"] = construction_to_json(*family.construction);
  return doc.dump(2) + "\n";
}

Family load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_family(buf.str());
}

void save_family_file(const Family& family, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << save_family(family);
}

RationalPoint DiskTransform::apply(const RationalPoint& p) const {
  return scale * p + translation;
}

ConvexBody DiskTransform::apply(const ConvexBody& body) const {
  std::vector<RationalPoint> pts;
  for (const auto& p : body.vertices()) pts.push_back(apply(p));
  return convex_hull(pts);
}

Line DiskTransform::pull_back(const Line& line) const {
  // a.(s p + t) = c  <=>  s a.p = c - a.t
  return Line(scale * line.a(), scale * line.b(),
              line.c() - line.a() * translation.x - line.b() * translation.y);
}

std::pair<Family, DiskTransform> scale_to_unit_disk(const Family& family) {
  if (family.empty()) throw ValidationError("cannot scale an empty family");
  RationalPoint centroid{0, 0};
  std::size_t count = 0;
  for (const auto& body : family.members) {
    for (const auto& p : body.vertices()) {
      centroid = centroid + p;
      ++count;
    }
  }
  centroid = Rational(1, count) * centroid;

  Rational radius_sq = 0;
  for (const auto& body : family.members) {
    for (const auto& p : body.vertices()) {
      RationalPoint d = p - centroid;
      const Rational r = dot(d, d);
      if (r > radius_sq) radius_sq = r;
    }
  }

  DiskTransform t;
  if (radius_sq > 0) {
    // Rational upper bound on the radius with denominator 1024.
    constexpr long kDen = 1024;
    mpz_class num(std::ceil(std::sqrt(radius_sq.get_d()) * kDen));
    Rational upper(num, kDen);
    while (upper * upper < radius_sq) upper += Rational(1, kDen);
    upper.canonicalize();
    t.scale = Rational(9, 10) / upper;
  }
  t.translation = RationalPoint{0, 0} - t.scale * centroid;

  Family out;
  out.source = family.source;
  out.labels = family.labels;
  for (const auto& body : family.members) out.members.push_back(t.apply(body));
  return {std::move(out), t};
}

}  // namespace ckpierce
