#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ckpierce/geom.hpp"

namespace ckpierce {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Names one of the generated circle points: p_i, p_i^l or p_i^r.
struct PointTag {
  enum class Side { kBase, kLeft, kRight };
  int index = 0;
  Side side = Side::kBase;

  /// "p4", "p1l", "p2r".
  std::string name() const;
  static PointTag parse(const std::string& name);

  friend bool operator==(const PointTag&, const PointTag&) = default;
};

struct MemberProvenance {
  int family = 0;  // 1, 2 or 3
  PointTag first;  // comes clockwise before `second`
  PointTag second;

  friend bool operator==(const MemberProvenance&, const MemberProvenance&) = default;
};

struct ConstructionMeta {
  int k = 0;
  Rational perturbation;
  /// All generated circle points in clockwise order.
  std::vector<std::pair<PointTag, RationalPoint>> points;
  /// One entry per family member, same indexing.
  std::vector<MemberProvenance> members;

  friend bool operator==(const ConstructionMeta&, const ConstructionMeta&) = default;
};

struct Family {
  std::vector<ConvexBody> members;
  std::vector<std::optional<std::string>> labels;
  std::string source = "loaded";
  std::optional<ConstructionMeta> construction;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  void add(ConvexBody body, std::optional<std::string> label = std::nullopt);

  /// Member-by-member equality; `source` is not compared.
  friend bool operator==(const Family& a, const Family& b) {
    return a.members == b.members && a.labels == b.labels && a.construction == b.construction;
  }
};

/// Hull of `vertices`, rejecting lists that are not a convex traversal of
/// their hull. Collinear and repeated points are dropped.
ConvexBody body_from_vertex_list(const std::vector<RationalPoint>& vertices);

Family load_family(const std::string& text);
std::string save_family(const Family& family);

Family load_family_file(const std::string& path);
void save_family_file(const Family& family, const std::string& path);

/// p -> scale * p + translation
struct DiskTransform {
  Rational scale = 1;
  RationalPoint translation{0, 0};

  RationalPoint apply(const RationalPoint& p) const;
  ConvexBody apply(const ConvexBody& body) const;
  /// Maps a line given in transformed coordinates back to the original frame.
  Line pull_back(const Line& line) const;
};

/// Translates the vertex centroid to the origin and shrinks so every vertex
/// has norm at most 9/10. Precondition: family nonempty.
std::pair<Family, DiskTransform> scale_to_unit_disk(const Family& family);

}  // namespace ckpierce
