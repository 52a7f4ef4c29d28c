#include "ckpierce/kkm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "ckpierce/parallel.hpp"
#include "json.hpp"

namespace ckpierce {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2 * std::numbers::pi;

FloatPoint on_circle(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

int mod(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("simplex point has no coordinates");
  double sum = 0.0;
  for (double& c : coords_) {
    if (!std::isfinite(c) || c < -1e-12) throw std::invalid_argument("simplex coordinate is negative");
    if (c < 0.0) c = 0.0;
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("simplex coordinates do not sum to 1");
}

SimplexPoint SimplexPoint::barycenter(int dimension) {
  return SimplexPoint(std::vector<double>(static_cast<std::size_t>(dimension), 1.0 / dimension));
}

ChordSystem::ChordSystem(const SimplexPoint& x, int k) : x_(x), k_(k), n_(2 * (k - 2)) {
  if (k < 5) throw std::invalid_argument("chord systems need k >= 5");
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("simplex point has dimension " + std::to_string(x.size()) +
                                ", expected " + std::to_string(n_));
  }
  cumulative_.assign(n_ + 1, 0.0);
  for (int i = 1; i <= n_; ++i) cumulative_[i] = cumulative_[i - 1] + x[i - 1];
}

FloatPoint ChordSystem::boundary(int i) const { return on_circle(cumulative_[mod(i, n_)]); }

bool ChordSystem::chord_degenerate(int i) const {
  // Arcs i+1 .. i+m lie on one side of l_i, the rest on the other.
  const int m = chord_count();
  bool inside_empty = true;
  bool outside_empty = true;
  for (int r = 1; r <= n_; ++r) {
    const bool inside = mod(r - 1 - i, n_) < m;
    if (x_[r - 1] > 0.0) (inside ? inside_empty : outside_empty) = false;
  }
  return inside_empty || outside_empty;
}

FloatPoint ChordSystem::arc_midpoint(int region) const {
  return on_circle(cumulative_[region - 1] + x_[region - 1] / 2.0);
}

std::vector<FloatBody> to_float(const Family& family) {
  std::vector<FloatBody> out;
  for (const auto& body : family.members) out.push_back(ckpierce::to_float(body));
  return out;
}

double region_depth(const ChordSystem& cs, int region, std::span<const FloatPoint> body) {
  const int n = cs.size();
  const int m = cs.chord_count();
  if (region < 1 || region > n) throw std::out_of_range("region index out of range");
  if (cs.arc_mass(region) <= 0.0) return -kInf;

  const FloatPoint mid = cs.arc_midpoint(region);
  double depth = kInf;
  auto bound_by = [&](int chord) {
    if (cs.chord_degenerate(chord)) return;
    const FloatPoint a = cs.chord_start(chord);
    const FloatPoint b = cs.chord_end(chord);
    const double ref = signed_distance(a, b, mid);
    if (ref == 0.0) {
      depth = -kInf;
      return;
    }
    const double side = ref > 0.0 ? 1.0 : -1.0;
    for (const auto& v : body) depth = std::min(depth, side * signed_distance(a, b, v));
  };
  if (region <= m - 1) {
    bound_by(mod(region - 1, m));
    bound_by(mod(region, m));
  } else {
    for (int j = 0; j < m; ++j) bound_by(j);
  }
  for (const auto& v : body) depth = std::min(depth, 1.0 - std::hypot(v.x, v.y));
  return depth;
}

bool region_contains(const ChordSystem& cs, int region, std::span<const FloatPoint> body) {
  return region_depth(cs, region, body) > 0.0;
}

bool region_contains(const SimplexPoint& x, int k, int region, const ConvexBody& body) {
  const auto fb = ckpierce::to_float(body);
  return region_contains(ChordSystem(x, k), region, fb);
}

double chord_distance(const ChordSystem& cs, std::span<const FloatPoint> body, int* nearest) {
  double best = kInf;
  int arg = 0;
  for (int j = 0; j < cs.chord_count(); ++j) {
    double d;
    if (cs.chord_degenerate(j)) {
      const FloatPoint p = cs.chord_start(j);
      d = kInf;
      for (const auto& v : body) d = std::min(d, std::hypot(v.x - p.x, v.y - p.y));
    } else {
      d = distance_to_line(body, cs.chord_start(j), cs.chord_end(j));
    }
    if (d < best) {
      best = d;
      arg = j;
    }
  }
  if (nearest) *nearest = arg;
  return best;
}

CoverLabel cover_label(const ChordSystem& cs, std::span<const FloatBody> bodies, double tolerance) {
  bool pierced = true;
  for (const auto& body : bodies) {
    for (const auto& v : body) {
      if (std::hypot(v.x, v.y) >= 1.0) throw std::invalid_argument("member not inside the open unit disk");
    }
    if (chord_distance(cs, body) > tolerance) pierced = false;
  }
  if (pierced) return {true, 0};
  for (int r = 1; r <= cs.size(); ++r) {
    if (cs.arc_mass(r) <= 0.0) continue;
    for (const auto& body : bodies) {
      if (region_contains(cs, r, body)) return {false, r};
    }
  }
  throw std::logic_error("cover_label: an unpierced member lies in no region");
}

namespace {

std::optional<FloatPoint> line_intersection(FloatPoint a1, FloatPoint b1, FloatPoint a2, FloatPoint b2) {
  const FloatPoint d1 = b1 - a1;
  const FloatPoint d2 = b2 - a2;
  const double den = cross(d1, d2);
  if (den == 0.0) return std::nullopt;
  const double t = cross(a2 - a1, d2) / den;
  return FloatPoint{a1.x + t * d1.x, a1.y + t * d1.y};
}

// Slack of each apex l_{j-1} ∩ l_j (1 <= j <= k-3) inside the closed
// quadrant Q_1; index 0 unused.
std::vector<double> quadrant_slacks(const ChordSystem& cs) {
  const int m = cs.chord_count();
  std::vector<double> slack(m, -kInf);
  // Midpoint of the arc from f_0 to f_{k-3}.
  double s = 0.0;
  for (int i = 0; i < m - 1; ++i) s += cs.point()[i];
  const FloatPoint mid = on_circle(s / 2.0);
  const int lines[2] = {m - 1, 0};
  double side[2];
  for (int t = 0; t < 2; ++t) {
    const double d = signed_distance(cs.chord_start(lines[t]), cs.chord_end(lines[t]), mid);
    side[t] = d > 0.0 ? 1.0 : -1.0;
  }
  for (int j = 1; j <= m - 1; ++j) {
    const auto apex = line_intersection(cs.chord_start(j - 1), cs.chord_end(j - 1), cs.chord_start(j),
                                        cs.chord_end(j));
    if (!apex) continue;
    double v = kInf;
    for (int t = 0; t < 2; ++t) {
      v = std::min(v, side[t] * signed_distance(cs.chord_start(lines[t]), cs.chord_end(lines[t]), *apex));
    }
    slack[j] = v;
  }
  return slack;
}

bool all_arcs_positive(const ChordSystem& cs) {
  for (int r = 1; r <= cs.size(); ++r) {
    if (cs.arc_mass(r) <= 0.0) return false;
  }
  return true;
}

}  // namespace

int quadrant_region_index(const ChordSystem& cs) {
  if (!all_arcs_positive(cs)) throw GeometryError("empty region");
  const auto slack = quadrant_slacks(cs);
  for (int j = 1; j < cs.chord_count(); ++j) {
    if (slack[j] >= -1e-12) return j;
  }
  throw GeometryError("no region 1..k-3 lies in the quadrant");
}

Line exact_chord(const ChordSystem& cs, int i) {
  const FloatPoint a = cs.chord_start(i);
  const FloatPoint b = cs.chord_end(i);
  return Line::through({Rational(a.x), Rational(a.y)}, {Rational(b.x), Rational(b.y)});
}

namespace {

// +1 / -1 if the body lies strictly on one side of the line, else 0.
int strict_side(const Line& line, const ConvexBody& body) {
  int side = 0;
  for (const auto& p : body.vertices()) {
    const int s = sgn(line.eval(p));
    if (s == 0 || (side != 0 && s != side)) return 0;
    side = s;
  }
  return side;
}

// Members at positions `near` (0-based into order) on one side of the line,
// those at `far` strictly on the other.
bool separated(const Family& family, const Line& line, const std::vector<int>& order,
               const std::vector<int>& near, const std::vector<int>& far) {
  int side = 0;
  for (int p : near) {
    const int s = strict_side(line, family.members[order[p]]);
    if (s == 0 || (side != 0 && s != side)) return false;
    side = s;
  }
  for (int p : far) {
    if (strict_side(line, family.members[order[p]]) != -side) return false;
  }
  return true;
}

bool hull_pair_disjoint(const Family& family, const std::vector<int>& order, int i, int j) {
  const int k = static_cast<int>(order.size());
  const auto& m = family.members;
  return bodies_disjoint(hull_union(m[order[i]], m[order[(i + 1) % k]]),
                         hull_union(m[order[j]], m[order[(j + 1) % k]]));
}

}  // namespace

SeparationLedger check_separations(const Family& family, const ChordSystem& cs,
                                   const std::vector<int>& order) {
  const int k = static_cast<int>(order.size());
  const int m = cs.chord_count();
  if (k != cs.k()) throw std::invalid_argument("order length does not match k");
  SeparationLedger ledger;
  // Positions below are 0-based: F_1 is position 0.
  auto range = [](int from, int to) {
    std::vector<int> v;
    for (int i = from; i <= to; ++i) v.push_back(i);
    return v;
  };

  try {
    ledger.first_pair = separated(family, exact_chord(cs, 0), order, {0, 1}, range(2, k - 1));
    for (int u = 2; u <= k - 2 && ledger.first_pair; ++u) {
      ledger.first_pair = hull_pair_disjoint(family, order, 0, u);
    }

    ledger.middle_pairs = true;
    for (int j = 2; j <= k - 1 && ledger.middle_pairs; ++j) {
      // F_j, F_{j+1} at positions j-1, j; chord l_{k-3+j}.
      if (j + 2 <= k) {
        ledger.middle_pairs =
            separated(family, exact_chord(cs, mod(m - 1 + j, m)), order, {j - 1, j}, range(j + 1, k - 1));
      }
      for (int u = j + 2; u <= k - 1 && ledger.middle_pairs; ++u) {
        ledger.middle_pairs = hull_pair_disjoint(family, order, j - 1, u - 1);
      }
    }

    ledger.closing_pair = separated(family, exact_chord(cs, m - 1), order, {k - 1, 0}, range(1, k - 2));
    for (int u = 2; u <= k - 2 && ledger.closing_pair; ++u) {
      ledger.closing_pair = hull_pair_disjoint(family, order, k - 1, u - 1);
    }
  } catch (const GeometryError&) {
    return SeparationLedger{};
  }
  return ledger;
}

std::string to_string(KkmResult::Status status) {
  switch (status) {
    case KkmResult::Status::kPierced:
      return "pierced";
    case KkmResult::Status::kCkWitness:
      return "ck_witness";
    case KkmResult::Status::kUnresolved:
      break;
  }
  return "unresolved";
}

namespace {

struct Problem {
  const Family& family;
  Family scaled;
  std::vector<FloatBody> bodies;
  int k;
  int n;
  KkmOptions options;

  Problem(const Family& f, int kk, const KkmOptions& opt)
      : family(f), scaled(scale_to_unit_disk(f).first), bodies(to_float(scaled)), k(kk),
        n(2 * (kk - 2)), options(opt) {}

  double g(const SimplexPoint& x) const {
    const ChordSystem cs(x, k);
    double worst = 0.0;
    for (const auto& body : bodies) worst = std::max(worst, chord_distance(cs, body));
    return worst;
  }
};

void normalize(std::vector<double>& x) {
  for (double& c : x) c = std::max(c, 0.0);
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& c : x) c /= sum;
}

// Derivative-free descent on the simplex: mass transfers between pairs of
// coordinates plus a few random zero-sum directions, halving the step when
// nothing improves.
template <typename Objective>
std::pair<double, std::vector<double>> local_search(std::vector<double> x, Objective&& f,
                                                    int max_iterations, double target,
                                                    std::mt19937_64& rng) {
  const int n = static_cast<int>(x.size());
  double fx = f(x);
  double step = 0.1;
  std::normal_distribution<double> normal;
  for (int iter = 0; iter < max_iterations && step > 1e-13 && fx > target; ++iter) {
    bool improved = false;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b || x[a] <= 0.0) continue;
        std::vector<double> y = x;
        const double d = std::min(step, y[a]);
        y[a] -= d;
        y[b] += d;
        normalize(y);
        const double fy = f(y);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) {
      for (int r = 0; r < 2 * n; ++r) {
        std::vector<double> dir(n);
        double mean = 0.0;
        for (double& c : dir) mean += (c = normal(rng));
        mean /= n;
        double norm = 0.0;
        for (double& c : dir) {
          c -= mean;
          norm += c * c;
        }
        norm = std::sqrt(norm);
        std::vector<double> y = x;
        for (int i = 0; i < n; ++i) y[i] += step * dir[i] / norm;
        normalize(y);
        const double fy = f(y);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    }
    step = improved ? std::min(0.25, step * 1.5) : step / 2;
  }
  return {fx, x};
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> grid_points(int resolution, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(resolution, parts, cur, out);
  return out;
}

std::vector<double> to_coords(const std::vector<int>& v, int resolution) {
  std::vector<double> x;
  for (int c : v) x.push_back(static_cast<double>(c) / resolution);
  return x;
}

std::vector<double> uniform_simplex(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  for (double& c : x) c = e(rng);
  normalize(x);
  return x;
}

// Groups members by nearest chord and asks for an exact transversal of each
// group; succeeds only with a verified piercing of the original family.
std::optional<PiercingSolution> snap(const Problem& pb, const SimplexPoint& x) {
  const ChordSystem cs(x, pb.k);
  std::vector<std::vector<int>> groups(cs.chord_count());
  for (std::size_t m = 0; m < pb.bodies.size(); ++m) {
    int nearest = 0;
    chord_distance(cs, pb.bodies[m], &nearest);
    groups[nearest].push_back(static_cast<int>(m));
  }
  PiercingSolution solution;
  solution.assignment.assign(pb.family.size(), -1);
  for (const auto& group : groups) {
    if (group.empty()) continue;
    auto line = has_line_transversal(pb.family, group);
    if (!line) return std::nullopt;
    for (int m : group) solution.assignment[m] = static_cast<int>(solution.lines.size());
    solution.lines.push_back(*line);
  }
  if (!verify_piercing(pb.family, solution)) return std::nullopt;
  return solution;
}

struct Candidate {
  double g;
  std::vector<double> x;
  bool operator<(const Candidate& o) const { return g != o.g ? g < o.g : x < o.x; }
};

std::optional<KkmResult> numeric_phase(const Problem& pb, double& best_g, std::vector<double>& best_x) {
  const auto& opt = pb.options;
  std::vector<Candidate> seeds;
  for (const auto& v : grid_points(opt.grid, pb.n)) {
    auto x = to_coords(v, opt.grid);
    seeds.push_back({pb.g(SimplexPoint(x)), std::move(x)});
  }
  std::sort(seeds.begin(), seeds.end());
  const int from_grid = std::min<int>(static_cast<int>(seeds.size()), std::max(1, opt.restarts / 2));
  seeds.resize(from_grid);
  std::mt19937_64 rng(opt.seed);
  while (static_cast<int>(seeds.size()) < std::max(opt.restarts, from_grid)) {
    seeds.push_back({kInf, uniform_simplex(pb.n, rng)});
  }

  std::vector<Candidate> results(seeds.size());
  const int threads = opt.threads > 0 ? opt.threads : thread_count();
  parallel_for(static_cast<int>(seeds.size()), threads, [&](int i) {
    std::mt19937_64 local(opt.seed * 1000003ULL + static_cast<std::uint64_t>(i));
    auto objective = [&](const std::vector<double>& x) { return pb.g(SimplexPoint(x)); };
    auto [g, x] = local_search(seeds[i].x, objective, opt.max_iterations, 0.0, local);
    results[i] = {g, std::move(x)};
  });
  std::sort(results.begin(), results.end());
  best_g = results.front().g;
  best_x = results.front().x;

  for (const auto& c : results) {
    if (c.g > opt.tolerance) break;
    if (auto sol = snap(pb, SimplexPoint(c.x))) {
      KkmResult r;
      r.status = KkmResult::Status::kPierced;
      r.piercing = std::move(sol);
      r.x = c.x;
      r.best_g = c.g;
      r.resolution = opt.grid;
      r.phase = 2;
      return r;
    }
  }
  return std::nullopt;
}

// Score of how well x realizes the witness configuration: positive iff some
// region 1..k-3 inside Q_1 and every region k-2..n hold a member.
double extraction_score(const Problem& pb, const std::vector<double>& coords) {
  const SimplexPoint x(coords);
  const ChordSystem cs(x, pb.k);
  if (!all_arcs_positive(cs)) return -kInf;
  const int m = cs.chord_count();
  auto best_depth = [&](int r) {
    double d = -kInf;
    for (const auto& body : pb.bodies) d = std::max(d, region_depth(cs, r, body));
    return d;
  };
  const auto slack = quadrant_slacks(cs);
  double first = -kInf;
  for (int j = 1; j <= m - 1; ++j) first = std::max(first, std::min(best_depth(j), slack[j]));
  double score = first;
  for (int r = m; r <= pb.n; ++r) score = std::min(score, best_depth(r));
  return score;
}

std::optional<KkmResult> extract_at(const Problem& pb, const std::vector<double>& coords) {
  try {
    const ChordSystem cs(SimplexPoint(coords), pb.k);
    auto r = extract_witness(pb.family, pb.scaled, cs);
    if (r) r->x = coords;
    return r;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Kuhn (Freudenthal) triangulation in cumulative coordinates
// 0 <= y_1 <= ... <= y_{n-1} <= M; a cell is a base vertex plus unit steps
// along a permutation of the axes. Only cells whose labels are all distinct
// are followed to the end.
class SpernerGrid {
 public:
  SpernerGrid(int n, int resolution) : n_(n), res_(resolution) {}

  std::int64_t key(const std::vector<int>& y) const {
    std::int64_t k = 0;
    for (int v : y) k = k * (res_ + 1) + v;
    return k;
  }

  static std::vector<int> cumulative(const std::vector<int>& v) {
    std::vector<int> y(v.size() - 1);
    std::partial_sum(v.begin(), v.end() - 1, y.begin());
    return y;
  }

  std::vector<int> composition(const std::vector<int>& y) const {
    std::vector<int> v(n_);
    int prev = 0;
    for (int i = 0; i < n_ - 1; ++i) {
      v[i] = y[i] - prev;
      prev = y[i];
    }
    v[n_ - 1] = res_ - prev;
    return v;
  }

  template <typename LabelOf, typename OnCell>
  void fully_labeled(const std::vector<std::vector<int>>& points, LabelOf&& label_of, OnCell&& on_cell) const {
    const int d = n_ - 1;
    for (const auto& p : points) {
      std::vector<int> y = cumulative(p);
      std::vector<std::vector<int>> cell{p};
      std::vector<bool> seen(n_ + 1, false);
      seen[label_of(y)] = true;
      std::vector<bool> used(d, false);
      if (walk(y, cell, seen, used, 0, label_of, on_cell)) return;
    }
  }

 private:
  template <typename LabelOf, typename OnCell>
  bool walk(std::vector<int>& y, std::vector<std::vector<int>>& cell, std::vector<bool>& seen,
            std::vector<bool>& used, int depth, LabelOf& label_of, OnCell& on_cell) const {
    const int d = n_ - 1;
    if (depth == d) return on_cell(cell);
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      const int cap = c + 1 < d ? y[c + 1] : res_;
      if (y[c] + 1 > cap) continue;
      ++y[c];
      const int l = label_of(y);
      if (!seen[l]) {
        seen[l] = true;
        used[c] = true;
        cell.push_back(composition(y));
        if (walk(y, cell, seen, used, depth + 1, label_of, on_cell)) return true;
        cell.pop_back();
        used[c] = false;
        seen[l] = false;
      }
      --y[c];
    }
    return false;
  }

  int n_;
  int res_;
};

std::optional<KkmResult> sperner_phase(const Problem& pb, bool allow_pierce, double& best_g,
                                       std::vector<double>& best_x) {
  const auto& opt = pb.options;
  constexpr int kMaxCellsPerResolution = 64;
  for (int res : opt.sperner_resolutions) {
    const SpernerGrid grid(pb.n, res);
    const auto points = grid_points(res, pb.n);
    std::unordered_map<std::int64_t, int> labels;
    std::optional<KkmResult> pierced;

    for (const auto& v : points) {
      const auto coords = to_coords(v, res);
      const SimplexPoint x(coords);
      const ChordSystem cs(x, pb.k);
      const CoverLabel cl = cover_label(cs, pb.bodies, opt.tolerance);
      int label = cl.region;
      if (cl.pierced) {
        if (allow_pierce && !pierced) {
          const double g = pb.g(x);
          if (g < best_g) {
            best_g = g;
            best_x = coords;
          }
          if (auto sol = snap(pb, x)) {
            KkmResult r;
            r.status = KkmResult::Status::kPierced;
            r.piercing = std::move(sol);
            r.x = coords;
            r.best_g = g;
            r.resolution = res;
            r.phase = 3;
            pierced = std::move(r);
          }
        }
        for (int i = 1; i <= pb.n && label == 0; ++i) {
          for (const auto& body : pb.bodies) {
            if (region_contains(cs, i, body)) {
              label = i;
              break;
            }
          }
        }
        if (label == 0) {
          label = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin()) + 1;
        }
      }
      labels[grid.key(SpernerGrid::cumulative(v))] = label;
    }
    if (pierced) return pierced;

    std::optional<KkmResult> found;
    int cells = 0;
    std::mt19937_64 rng(opt.seed);
    auto label_of = [&](const std::vector<int>& y) { return labels.at(grid.key(y)); };
    grid.fully_labeled(points, label_of, [&](const std::vector<std::vector<int>>& cell) {
      std::vector<double> center(pb.n, 0.0);
      for (const auto& v : cell) {
        for (int i = 0; i < pb.n; ++i) center[i] += static_cast<double>(v[i]) / res / cell.size();
      }
      normalize(center);
      if ((found = extract_at(pb, center))) return true;
      auto objective = [&](const std::vector<double>& x) { return -extraction_score(pb, x); };
      auto [score, x] = local_search(center, objective, opt.max_iterations / 4, -1e-3, rng);
      if (-score > 0.0 && (found = extract_at(pb, x))) return true;
      return ++cells >= kMaxCellsPerResolution;
    });
    if (found) {
      found->resolution = res;
      found->phase = 3;
      found->best_g = best_g;
      return found;
    }
  }
  return std::nullopt;
}

void check_arguments(const Family& family, int k, const KkmOptions& options) {
  if (k < 5) throw std::invalid_argument("find_piercing_lines requires k >= 5");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (family.empty()) throw std::invalid_argument("family is empty");
}

}  // namespace

std::optional<KkmResult> extract_witness(const Family& family, const Family& scaled, const ChordSystem& cs) {
  if (!all_arcs_positive(cs)) return std::nullopt;
  const int m = cs.chord_count();
  const int n = cs.size();
  for (int j = 0; j < m; ++j) {
    if (cs.chord_degenerate(j)) return std::nullopt;
  }
  const auto bodies = to_float(scaled);
  auto first_member = [&](int region) {
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (region_contains(cs, region, bodies[i])) return static_cast<int>(i);
    }
    return -1;
  };
  std::vector<int> tail;  // F_2 .. F_k from regions k-2 .. n
  for (int r = m; r <= n; ++r) {
    const int f = first_member(r);
    if (f < 0) return std::nullopt;
    tail.push_back(f);
  }
  const auto slack = quadrant_slacks(cs);
  for (int j = 1; j <= m - 1; ++j) {
    if (slack[j] < -1e-12) continue;
    const int head = first_member(j);
    if (head < 0) continue;
    std::vector<int> order{head};
    order.insert(order.end(), tail.begin(), tail.end());
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

    auto verdict = verify_ck(family, order);
    auto* cert = std::get_if<CkCertificate>(&verdict);
    if (!cert) continue;
    const SeparationLedger ledger = check_separations(scaled, cs, order);
    if (!ledger.all()) continue;
    KkmResult r;
    r.status = KkmResult::Status::kCkWitness;
    r.certificate = *cert;
    r.separations = ledger;
    r.x = cs.point().coords();
    return r;
  }
  return std::nullopt;
}

KkmResult find_piercing_lines(const Family& family, int k, const KkmOptions& options) {
  check_arguments(family, k, options);
  const Problem pb(family, k, options);
  double best_g = kInf;
  std::vector<double> best_x;
  if (auto r = numeric_phase(pb, best_g, best_x)) return *r;
  if (auto r = sperner_phase(pb, true, best_g, best_x)) return *r;
  KkmResult r;
  r.status = KkmResult::Status::kUnresolved;
  r.best_g = best_g;
  r.x = best_x;
  r.resolution = options.sperner_resolutions.empty() ? options.grid : options.sperner_resolutions.back();
  return r;
}

KkmResult sperner_witness(const Family& family, int k, const KkmOptions& options) {
  check_arguments(family, k, options);
  const Problem pb(family, k, options);
  double best_g = kInf;
  std::vector<double> best_x;
  if (auto r = sperner_phase(pb, false, best_g, best_x)) return *r;
  KkmResult r;
  r.status = KkmResult::Status::kUnresolved;
  r.best_g = best_g;
  r.resolution = options.sperner_resolutions.empty() ? 0 : options.sperner_resolutions.back();
  return r;
}

namespace {

nlohmann::json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return format_rational(q);
}

Rational rational_of(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(mpz_class(v.dump()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("solution line coefficient must be an integer or \"n/d\" string");
}

}  // namespace

std::string solution_to_json(const KkmResult& result) {
  nlohmann::json lines = nlohmann::json::array();
  if (result.piercing) {
    for (const Line& l : result.piercing->lines) {
      lines.push_back({{"a", rational_json(l.a())}, {"b", rational_json(l.b())}, {"c", rational_json(l.c())}});
    }
  }
  nlohmann::json doc = {{"status", to_string(result.status)}, {"lines", std::move(lines)}};
  if (result.certificate) doc["certificate"] = {{"order", result.certificate->order}};
  nlohmann::json diag = {{"resolution", result.resolution}};
  diag["best_g"] = std::isfinite(result.best_g) ? nlohmann::json(result.best_g) : nlohmann::json(nullptr);
  doc["diagnostics"] = std::move(diag);
  return doc.dump(2) + "\n";
}

std::vector<Line> solution_lines_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed solution JSON: ") + e.what());
  }
  std::vector<Line> lines;
  if (!doc.contains("lines")) return lines;
  for (const auto& l : doc["lines"]) {
    lines.emplace_back(rational_of(l.at("a")), rational_of(l.at("b")), rational_of(l.at("c")));
  }
  return lines;
}

}  // namespace ckpierce
