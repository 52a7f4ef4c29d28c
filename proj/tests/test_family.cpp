#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ckpierce/ck_detect.hpp"
#include "ckpierce/family.hpp"
#include "ckpierce/line_piercing.hpp"
#include "ckpierce/lowerbound.hpp"
#include "support.hpp"

using namespace ckpierce;
using testing::hull;
using testing::point;
using testing::segment;

namespace {

RationalPoint P(Rational x, Rational y) { return {x, y}; }

bool strictly_inside_disk(const Family& f) {
  for (const auto& b : f.members) {
    for (const auto& p : b.vertices()) {
      if (p.x * p.x + p.y * p.y >= 1) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("load_family accepts the documented shapes") {
  const Family seg = load_family(R"({"members":[{"vertices":[[0,0],[1,0]]}]})");
  REQUIRE(seg.size() == 1);
  CHECK(seg.members[0] == segment(0, 0, 1, 0));
  CHECK(seg.source == "loaded");

  const Family sq = load_family(R"({"members":[{"label":"sq","vertices":[[0,0],[1,0],[1,1],[0,1]]}]})");
  CHECK(sq.members[0] == hull({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}));
  CHECK(sq.labels[0] == std::optional<std::string>("sq"));

  const Family col = load_family(R"({"members":[{"vertices":[[0,0],[2,0],[1,0]]}]})");
  CHECK(col.members[0] == segment(0, 0, 2, 0));

  const Family frac = load_family(R"({"members":[{"vertices":[["1/3","-2/4"]]}]})");
  CHECK(frac.members[0] == point(Rational(1, 3), Rational(-1, 2)));
}

TEST_CASE("load_family rejects bad input with located messages") {
  CHECK_THROWS_AS(load_family("{"), ParseError);
  CHECK_THROWS_AS(load_family(R"({"members":[]})"), ValidationError);
  CHECK_THROWS_AS(load_family(R"({"members":[{"vertices":[[0.5,0]]}]})"), ParseError);
  CHECK_THROWS_AS(load_family(R"({"members":[{"vertices":[[0,0,1]]}]})"), ParseError);
  CHECK_THROWS_AS(load_family(R"({"nope":1})"), ParseError);

  try {
    load_family(R"({"members":[{"vertices":[[0,0]]},{"label":"bow","vertices":[[0,0],[1,1],[1,0],[0,1]]}]})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("member 1") != std::string::npos);
    CHECK(msg.find("bow") != std::string::npos);
  }
  try {
    load_family(R"({"members":[{"vertices":[[0,"x"]]}]})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/members/0/vertices/0") != std::string::npos);
  }
}

TEST_CASE("save_family round-trips exactly") {
  Family f;
  f.add(segment(Rational(1, 3), 0, 2, Rational(-7, 5)));
  f.add(point(4, 5), "p");
  const std::string text = save_family(f);
  CHECK(text.find("\"1/3\"") != std::string::npos);
  CHECK(text.find("0.33") == std::string::npos);
  CHECK(load_family(text) == f);

  Family unlabeled;
  unlabeled.add(point(0, 0));
  CHECK(save_family(unlabeled).find("label") == std::string::npos);

  const Family c5 = build_construction(5);
  const Family back = load_family(save_family(c5));
  CHECK(back == c5);
  CHECK(save_family(back) == save_family(c5));
}

TEST_CASE("scale_to_unit_disk") {
  const Family far = testing::family_of({point(100, 100)});
  CHECK(strictly_inside_disk(scale_to_unit_disk(far).first));

  const Family c5 = build_construction(5);
  const auto [scaled, t] = scale_to_unit_disk(c5);
  CHECK(strictly_inside_disk(scaled));
  for (const auto& b : scaled.members) {
    for (const auto& p : b.vertices()) CHECK(p.x * p.x + p.y * p.y <= Rational(81, 100));
  }
  for (std::size_t i = 0; i < c5.size(); ++i) CHECK(t.apply(c5.members[i]) == scaled.members[i]);

  const Family tiny = testing::family_of({segment(0, 0, Rational(1, 100), 0)});
  CHECK(strictly_inside_disk(scale_to_unit_disk(tiny).first));
}

TEST_CASE("scaling preserves disjointness, tight triples and transversals") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    Family f;
    for (int i = 0; i < 5; ++i) f.add(testing::random_body(rng, 30, 3));
    const auto [s, tr] = scale_to_unit_disk(f);
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        CHECK(bodies_disjoint(f.members[i], f.members[j]) == bodies_disjoint(s.members[i], s.members[j]));
        for (int l = j + 1; l < 5; ++l) {
          CHECK(is_tight_triple(f.members[i], f.members[j], f.members[l]) ==
                is_tight_triple(s.members[i], s.members[j], s.members[l]));
        }
      }
    }
    for (const std::vector<int>& subset : {std::vector<int>{0, 1, 2}, {0, 1, 2, 3}, {1, 2, 3, 4}}) {
      const auto before = has_line_transversal(f, subset);
      const auto after = has_line_transversal(s, subset);
      CHECK(before.has_value() == after.has_value());
      if (after) {
        const Line back = tr.pull_back(*after);
        for (int m : subset) CHECK(line_meets_body(back, f.members[m]));
      }
    }
  }
}

TEST_CASE("body_from_vertex_list") {
  CHECK(body_from_vertex_list({P(0, 0), P(0, 1), P(1, 1), P(1, 0)}) == hull({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}));
  CHECK_THROWS_AS(body_from_vertex_list({P(0, 0), P(1, 1), P(1, 0), P(0, 1)}), ValidationError);
  CHECK_THROWS_AS(body_from_vertex_list({P(0, 0), P(2, 0), P(1, 1), P(1, Rational(1, 4))}), ValidationError);
}

TEST_CASE("point tags") {
  CHECK(PointTag{4, PointTag::Side::kBase}.name() == "p4");
  CHECK(PointTag{1, PointTag::Side::kLeft}.name() == "p1l");
  CHECK(PointTag::parse("p2r") == PointTag{2, PointTag::Side::kRight});
  CHECK_THROWS_AS(PointTag::parse("q2"), ParseError);
}
