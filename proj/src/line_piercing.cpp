#include "ckpierce/line_piercing.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

namespace ckpierce {

namespace {

std::vector<Line> lines_through_pairs(std::vector<RationalPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Line> lines;
  if (pts.size() == 1) {
    lines.emplace_back(0, 1, pts[0].y);
    return lines;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) lines.push_back(Line::through(pts[i], pts[j]));
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

void check_subset(const Family& family, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("empty subset");
  for (int i : subset) {
    if (i < 0 || i >= static_cast<int>(family.size())) {
      throw std::invalid_argument("member index out of range");
    }
  }
}

}  // namespace

std::vector<Line> candidate_lines(const Family& family) {
  if (family.empty()) throw std::invalid_argument("candidate_lines on an empty family");
  std::vector<RationalPoint> pts;
  for (const auto& body : family.members) {
    pts.insert(pts.end(), body.vertices().begin(), body.vertices().end());
  }
  return lines_through_pairs(std::move(pts));
}

std::vector<Line> candidate_lines(const Family& family, const std::vector<int>& subset) {
  check_subset(family, subset);
  std::vector<RationalPoint> pts;
  for (int i : subset) {
    const auto& v = family.members[i].vertices();
    pts.insert(pts.end(), v.begin(), v.end());
  }
  return lines_through_pairs(std::move(pts));
}

std::optional<Line> has_line_transversal(const Family& family, const std::vector<int>& subset) {
  for (const Line& line : candidate_lines(family, subset)) {
    const bool all = std::all_of(subset.begin(), subset.end(), [&](int i) {
      return line_meets_body(line, family.members[i]);
    });
    if (all) return line;
  }
  return std::nullopt;
}

namespace {

std::pair<int, Line> best_line(const Family& family, const std::vector<Line>& lines, int through) {
  int best = -1;
  std::optional<Line> witness;
  for (const Line& line : lines) {
    if (through >= 0 && !line_meets_body(line, family.members[through])) continue;
    int hits = 0;
    for (const auto& body : family.members) hits += line_meets_body(line, body) ? 1 : 0;
    if (hits > best) {
      best = hits;
      witness = line;
    }
  }
  if (!witness) throw std::logic_error("no candidate line meets the requested member");
  return {best, *witness};
}

}  // namespace

std::pair<int, Line> max_line_hits(const Family& family) {
  return best_line(family, candidate_lines(family), -1);
}

std::pair<int, Line> max_line_hits_through(const Family& family, int through) {
  check_subset(family, {through});
  return best_line(family, candidate_lines(family), through);
}

bool verify_piercing(const Family& family, const PiercingSolution& solution) {
  if (solution.assignment.size() != family.size()) return false;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const int l = solution.assignment[m];
    if (l < 0 || l >= static_cast<int>(solution.lines.size())) return false;
    if (!line_meets_body(solution.lines[l], family.members[m])) return false;
  }
  return true;
}

namespace {

using Bits = boost::dynamic_bitset<>;

class SetCover {
 public:
  SetCover(std::vector<Bits> sets, std::size_t universe) : sets_(std::move(sets)), covering_(universe) {
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      for (auto e = sets_[s].find_first(); e != Bits::npos; e = sets_[s].find_next(e)) {
        covering_[e].push_back(static_cast<int>(s));
      }
    }
  }

  std::size_t size() const { return sets_.size(); }
  const Bits& set(std::size_t s) const { return sets_[s]; }

  bool coverable(const Bits& uncovered) const {
    for (auto e = uncovered.find_first(); e != Bits::npos; e = uncovered.find_next(e)) {
      if (covering_[e].empty()) return false;
    }
    return true;
  }

  std::vector<int> greedy(Bits uncovered) const {
    std::vector<int> picked;
    while (uncovered.any()) {
      int best = -1;
      std::size_t gain = 0;
      for (std::size_t s = 0; s < sets_.size(); ++s) {
        const std::size_t g = (sets_[s] & uncovered).count();
        if (g > gain) {
          gain = g;
          best = static_cast<int>(s);
        }
      }
      picked.push_back(best);
      uncovered -= sets_[best];
    }
    return picked;
  }

  // Can `uncovered` be covered by at most `budget` sets with index >= lo?
  bool feasible(const Bits& uncovered, int budget, int lo) const {
    if (uncovered.none()) return true;
    if (budget == 0) return false;

    // Branch on the uncovered element with the fewest usable sets.
    std::size_t branch = Bits::npos;
    std::size_t fewest = SIZE_MAX;
    for (auto e = uncovered.find_first(); e != Bits::npos; e = uncovered.find_next(e)) {
      const auto& cov = covering_[e];
      const std::size_t usable = cov.end() - std::lower_bound(cov.begin(), cov.end(), lo);
      if (usable < fewest) {
        fewest = usable;
        branch = e;
      }
    }
    if (fewest == 0) return false;

    std::size_t widest = 0;
    for (std::size_t s = lo; s < sets_.size(); ++s) widest = std::max(widest, (sets_[s] & uncovered).count());
    const std::size_t remaining = uncovered.count();
    if ((remaining + widest - 1) / widest > static_cast<std::size_t>(budget)) return false;

    const auto& cov = covering_[branch];
    std::vector<std::pair<std::size_t, int>> options;
    for (auto it = std::lower_bound(cov.begin(), cov.end(), lo); it != cov.end(); ++it) {
      options.emplace_back((sets_[*it] & uncovered).count(), *it);
    }
    std::sort(options.begin(), options.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    for (const auto& [gain, s] : options) {
      if (feasible(uncovered - sets_[s], budget - 1, lo)) return true;
    }
    return false;
  }

 private:
  std::vector<Bits> sets_;
  std::vector<std::vector<int>> covering_;  // ascending set indices per element
};

}  // namespace

std::optional<PiercingSolution> min_piercing_lines(const Family& family, int budget) {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (family.empty()) throw std::invalid_argument("min_piercing_lines on an empty family");
  const std::size_t n = family.size();

  // Coverage of every candidate, keeping only maximal sets; among equal
  // sets the first line in canonical order survives.
  const std::vector<Line> candidates = candidate_lines(family);
  std::vector<Bits> cover;
  for (const Line& line : candidates) {
    Bits b(n);
    for (std::size_t m = 0; m < n; ++m) b[m] = line_meets_body(line, family.members[m]);
    cover.push_back(std::move(b));
  }
  std::vector<int> kept;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cover.size() && !dominated; ++j) {
      if (i == j || !cover[i].is_subset_of(cover[j])) continue;
      dominated = cover[i] != cover[j] || j < i;
    }
    if (!dominated) kept.push_back(static_cast<int>(i));
  }
  std::vector<Bits> sets;
  for (int i : kept) sets.push_back(cover[i]);
  const SetCover problem(std::move(sets), n);

  Bits all(n);
  all.set();
  if (!problem.coverable(all)) throw std::logic_error("a member meets no candidate line");

  const int greedy = static_cast<int>(problem.greedy(all).size());
  int optimum = std::min(greedy, budget + 1);
  for (int r = 1; r < optimum; ++r) {
    if (problem.feasible(all, r, 0)) {
      optimum = r;
      break;
    }
  }
  if (optimum > budget) return std::nullopt;

  // Lexicographically least optimal cover.
  std::vector<int> chosen;
  Bits uncovered = all;
  int lo = 0;
  for (int pos = 0; pos < optimum; ++pos) {
    for (int s = lo; s < static_cast<int>(problem.size()); ++s) {
      if (problem.feasible(uncovered - problem.set(s), optimum - pos - 1, s + 1)) {
        chosen.push_back(s);
        uncovered -= problem.set(s);
        lo = s + 1;
        break;
      }
    }
  }
  if (static_cast<int>(chosen.size()) != optimum || uncovered.any()) {
    throw std::logic_error("set cover reconstruction failed");
  }

  PiercingSolution solution;
  for (int s : chosen) solution.lines.push_back(candidates[kept[s]]);
  solution.assignment.assign(n, -1);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t l = 0; l < solution.lines.size(); ++l) {
      if (line_meets_body(solution.lines[l], family.members[m])) {
        solution.assignment[m] = static_cast<int>(l);
        break;
      }
    }
  }
  return solution;
}

bool count_bound_check(const Family& family, int a) {
  if (!family.construction) {
    throw std::invalid_argument("count_bound_check needs a generated construction");
  }
  const int k = family.construction->k;
  return 6 * (a - 1) + 5 >= 3 * (k - 1);
}

}  // namespace ckpierce
