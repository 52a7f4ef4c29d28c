#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ckpierce/kkm.hpp"
#include "ckpierce/lowerbound.hpp"
#include "support.hpp"

using namespace ckpierce;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_simplex(std::mt19937_64& rng, int n, bool allow_zero) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution zero(0.2);
  std::vector<double> x(n);
  double s = 0.0;
  for (double& c : x) {
    c = (allow_zero && zero(rng)) ? 0.0 : std::pow(e(rng), 2);
    s += c;
  }
  if (s == 0.0) x[0] = s = 1.0;
  for (double& c : x) c /= s;
  double sum = 0.0;
  for (double c : x) sum += c;
  for (double& c : x) {
    if (c > 0.0) {
      c += 1.0 - sum;
      break;
    }
  }
  return x;
}

FloatBody tiny_at(double angle, double radius, double size = 1e-3) {
  const double cx = radius * std::cos(angle), cy = radius * std::sin(angle);
  return {{cx - size, cy - size}, {cx + size, cy - size}, {cx, cy + size}};
}

double dist(FloatPoint a, FloatPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST_CASE("SimplexPoint validation") {
  CHECK_NOTHROW(SimplexPoint({0.5, 0.5}));
  CHECK_NOTHROW(SimplexPoint({-1e-13, 1.0 + 1e-13}));
  CHECK(SimplexPoint({-1e-13, 1.0 + 1e-13})[0] == 0.0);
  CHECK_THROWS_AS(SimplexPoint({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(ChordSystem(SimplexPoint::barycenter(5), 5), std::invalid_argument);
  CHECK_THROWS_AS(ChordSystem(SimplexPoint::barycenter(4), 4), std::invalid_argument);
}

TEST_CASE("chord system at the barycenter is three diameters") {
  const ChordSystem cs(SimplexPoint::barycenter(6), 5);
  CHECK(cs.size() == 6);
  CHECK(cs.chord_count() == 3);
  for (int i = 0; i < 6; ++i) {
    const FloatPoint f = cs.boundary(i);
    CHECK(f.x == doctest::Approx(std::cos(i * kPi / 3)));
    CHECK(f.y == doctest::Approx(std::sin(i * kPi / 3)));
  }
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(cs.chord_degenerate(i));
    CHECK(std::abs(signed_distance(cs.chord_start(i), cs.chord_end(i), {0, 0})) < 1e-12);
    const FloatPoint d0 = cs.chord_end(i) - cs.chord_start(i);
    const FloatPoint d1 = cs.chord_end((i + 1) % 3) - cs.chord_start((i + 1) % 3);
    const double cosine = (d0.x * d1.x + d0.y * d1.y) / (std::hypot(d0.x, d0.y) * std::hypot(d1.x, d1.y));
    CHECK(std::abs(cosine) == doctest::Approx(0.5));
  }
  CHECK(dist(cs.chord_start(0), cs.chord_end(3)) < 1e-12);
  CHECK(dist(cs.chord_end(0), cs.chord_start(3)) < 1e-12);
}

TEST_CASE("a vertex of the simplex collapses the boundary points") {
  const ChordSystem cs(SimplexPoint({1, 0, 0, 0, 0, 0}), 5);
  for (int i = 1; i <= 6; ++i) CHECK(dist(cs.boundary(i), cs.boundary(0)) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(cs.chord_degenerate(i));
}

TEST_CASE("chord periodicity") {
  std::mt19937_64 rng(1);
  for (int k : {5, 6, 7}) {
    for (int t = 0; t < 200; ++t) {
      const ChordSystem cs(SimplexPoint(random_simplex(rng, 2 * (k - 2), true)), k);
      for (int i = 0; i < cs.size(); ++i) {
        CHECK(dist(cs.chord_start(i), cs.chord_end(i + k - 2)) < 1e-12);
        CHECK(dist(cs.chord_end(i), cs.chord_start(i + k - 2)) < 1e-12);
      }
      int nondegenerate = 0;
      for (int i = 0; i < cs.chord_count(); ++i) nondegenerate += cs.chord_degenerate(i) ? 0 : 1;
      bool positive = true;
      for (int r = 1; r <= cs.size(); ++r) positive = positive && cs.arc_mass(r) > 0;
      if (positive) CHECK(nondegenerate == k - 2);
    }
  }
}

TEST_CASE("region membership") {
  const SimplexPoint bary = SimplexPoint::barycenter(6);
  const ChordSystem cs(bary, 5);
  const FloatBody near_arc1 = tiny_at(kPi / 6, 0.95);
  CHECK(region_contains(cs, 1, near_arc1));
  for (int r = 2; r <= 6; ++r) CHECK_FALSE(region_contains(cs, r, near_arc1));

  // Exact-body overload.
  const auto exact = testing::point(Rational(19, 20) * Rational(866, 1000), Rational(19, 20) * Rational(1, 2));
  CHECK(region_contains(bary, 5, 1, exact));

  // Crossing chord l_1 (direction 60 degrees).
  const FloatBody crossing{{0.4 * std::cos(kPi / 3) - 0.05, 0.4 * std::sin(kPi / 3)},
                           {0.4 * std::cos(kPi / 3) + 0.05, 0.4 * std::sin(kPi / 3)}};
  for (int r = 1; r <= 6; ++r) CHECK_FALSE(region_contains(cs, r, crossing));

  // Empty region when its coordinate vanishes.
  const ChordSystem zero(SimplexPoint({0, 0.2, 0.2, 0.2, 0.2, 0.2}), 5);
  for (double a = 0; a < 2 * kPi; a += 0.1) CHECK_FALSE(region_contains(zero, 1, tiny_at(a, 0.9)));

  CHECK_THROWS_AS(region_depth(cs, 0, near_arc1), std::out_of_range);
  CHECK_THROWS_AS(region_depth(cs, 7, near_arc1), std::out_of_range);
}

TEST_CASE("regions used by the extraction are pairwise disjoint") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k : {5, 6, 7}) {
    const int n = 2 * (k - 2);
    for (int t = 0; t < 4000; ++t) {
      const ChordSystem cs(SimplexPoint(random_simplex(rng, n, false)), k);
      const FloatPoint p{u(rng), u(rng)};
      if (std::hypot(p.x, p.y) >= 1) continue;
      const FloatBody b{p};
      std::vector<int> in;
      for (int r = 1; r <= n; ++r) {
        if (region_contains(cs, r, b)) in.push_back(r);
      }
      for (std::size_t i = 0; i < in.size(); ++i) {
        for (std::size_t j = i + 1; j < in.size(); ++j) {
          if (k == 5 || in[j] >= k - 2) CHECK_MESSAGE(false, "regions " << in[i] << " and " << in[j] << " overlap");
        }
      }
    }
  }
}

TEST_CASE("cover_label") {
  const ChordSystem cs(SimplexPoint::barycenter(6), 5);
  const std::vector<FloatBody> on_chord{{{0.3, 0.0}, {0.3001, 0.0}}};
  CHECK(cover_label(cs, on_chord, 1e-6).pierced);

  const std::vector<FloatBody> in_two{tiny_at(kPi / 2, 0.9)};
  const CoverLabel l = cover_label(cs, in_two, 1e-6);
  CHECK_FALSE(l.pierced);
  CHECK(l.region == 2);

  const Family c5 = scale_to_unit_disk(build_construction(5)).first;
  const auto bodies = to_float(c5);
  const CoverLabel lc = cover_label(cs, bodies, 1e-6);
  if (!lc.pierced) {
    CHECK(lc.region >= 1);
    CHECK(lc.region <= 6);
  }

  const std::vector<FloatBody> outside{{{2.0, 0.0}}};
  CHECK_THROWS_AS(cover_label(cs, outside, 1e-6), std::invalid_argument);
}

TEST_CASE("cover_label never returns an empty region") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    Family f;
    for (int i = 0; i < 8; ++i) f.add(testing::random_body(rng, 40, 3));
    const auto bodies = to_float(scale_to_unit_disk(f).first);
    for (int s = 0; s < 300; ++s) {
      const ChordSystem cs(SimplexPoint(random_simplex(rng, 6, true)), 5);
      const CoverLabel l = cover_label(cs, bodies, 1e-6);
      if (!l.pierced) CHECK(cs.arc_mass(l.region) > 0.0);
    }
  }
}

TEST_CASE("quadrant_region_index") {
  const ChordSystem bary(SimplexPoint::barycenter(6), 5);
  const int j = quadrant_region_index(bary);
  CHECK((j == 1 || j == 2));

  // Mass concentrated so l_1 leans into the quadrant of region 2.
  const ChordSystem skew(SimplexPoint({0.05, 0.45, 0.05, 0.05, 0.35, 0.05}), 5);
  const int js = quadrant_region_index(skew);
  CHECK((js == 1 || js == 2));

  std::mt19937_64 rng(4);
  for (int k : {5, 6, 7}) {
    for (int t = 0; t < 300; ++t) {
      const ChordSystem cs(SimplexPoint(random_simplex(rng, 2 * (k - 2), false)), k);
      const int r = quadrant_region_index(cs);
      CHECK(r >= 1);
      CHECK(r <= k - 3);
    }
  }

  CHECK_THROWS_WITH_AS(quadrant_region_index(ChordSystem(SimplexPoint({0, 0.2, 0.2, 0.2, 0.2, 0.2}), 5)),
                       "empty region", GeometryError);
}

TEST_CASE("find_piercing_lines on small fixtures") {
  const Family collinear = testing::family_of(
      {testing::segment(0, 0, 1, 0), testing::segment(2, 0, 3, 0), testing::segment(5, 0, 6, 0)});
  const KkmResult r = find_piercing_lines(collinear, 5);
  REQUIRE(r.status == KkmResult::Status::kPierced);
  CHECK(r.piercing->lines.size() <= 3);
  CHECK(verify_piercing(collinear, *r.piercing));

  const Family c5 = build_construction(5);
  const KkmResult rc = find_piercing_lines(c5, 5);
  REQUIRE(rc.status == KkmResult::Status::kPierced);
  CHECK(rc.piercing->lines.size() == 3);
  CHECK(verify_piercing(c5, *rc.piercing));

  const KkmResult again = find_piercing_lines(c5, 5);
  CHECK(again.piercing->lines == rc.piercing->lines);

  CHECK_THROWS_AS(find_piercing_lines(c5, 4), std::invalid_argument);
  KkmOptions bad;
  bad.tolerance = 0;
  CHECK_THROWS_AS(find_piercing_lines(c5, 5, bad), std::invalid_argument);
  CHECK_THROWS_AS(find_piercing_lines(Family{}, 5), std::invalid_argument);
}

TEST_CASE("pentagon: phase 3 yields a C(5) that find_ck confirms") {
  const Family pent = testing::pentagon();
  const KkmResult w = sperner_witness(pent, 5);
  REQUIRE(w.status == KkmResult::Status::kCkWitness);
  REQUIRE(w.certificate);
  CHECK(std::holds_alternative<CkCertificate>(verify_ck(pent, w.certificate->order)));
  CHECK(w.separations->all());
  CHECK(find_ck(pent, 5).has_value());

  // Five points are pierced by three lines, so the full procedure may stop earlier.
  const KkmResult full = find_piercing_lines(pent, 5);
  if (full.status == KkmResult::Status::kPierced) CHECK(verify_piercing(pent, *full.piercing));
}

TEST_CASE("full procedure extracts a witness when k-2 lines do not suffice") {
  // 18 members need 4 lines; they contain a C(5).
  const Family f = build_construction(7);
  const KkmResult r = find_piercing_lines(f, 5);
  REQUIRE(r.status == KkmResult::Status::kCkWitness);
  CHECK(r.phase == 3);
  CHECK(std::holds_alternative<CkCertificate>(verify_ck(f, r.certificate->order)));
  REQUIRE(r.separations);
  CHECK(r.separations->first_pair);
  CHECK(r.separations->middle_pairs);
  CHECK(r.separations->closing_pair);
  const ChordSystem cs(SimplexPoint(r.x), 5);
  CHECK(check_separations(scale_to_unit_disk(f).first, cs, r.certificate->order).all());
}

TEST_CASE("solution JSON") {
  const Family c5 = build_construction(5);
  const KkmResult r = find_piercing_lines(c5, 5);
  const std::string text = solution_to_json(r);
  CHECK(text.find("\"status\": \"pierced\"") != std::string::npos);
  CHECK(solution_lines_from_json(text) == r.piercing->lines);

  KkmResult u;
  u.best_g = 0.25;
  u.resolution = 16;
  const std::string ut = solution_to_json(u);
  CHECK(ut.find("\"unresolved\"") != std::string::npos);
  CHECK(ut.find("\"best_g\": 0.25") != std::string::npos);
  CHECK(solution_lines_from_json(ut).empty());
  CHECK_THROWS_AS(solution_lines_from_json("{"), ParseError);
  CHECK(solution_lines_from_json(R"({"lines":[{"a":1,"b":"1/2","c":"-3"}]})")[0] == Line(2, 1, -6));
}
