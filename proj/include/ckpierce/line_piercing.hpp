#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"

namespace ckpierce {

struct PiercingSolution {
  std::vector<Line> lines;
  /// assignment[m] is the index into `lines` of a line meeting member m.
  std::vector<int> assignment;
};

/// Lines through every pair of distinct vertices of the family, in
/// canonical order without duplicates. A family whose vertices all
/// coincide gets the horizontal line through that point.
std::vector<Line> candidate_lines(const Family& family);

/// Candidate lines built from the vertices of `subset` only.
std::vector<Line> candidate_lines(const Family& family, const std::vector<int>& subset);

/// First candidate line (canonical order) meeting every member of `subset`.
/// Throws std::invalid_argument for an empty subset or bad indices.
std::optional<Line> has_line_transversal(const Family& family, const std::vector<int>& subset);

/// Maximum number of members met by one line, with the first witness line.
std::pair<int, Line> max_line_hits(const Family& family);

/// As max_line_hits, restricted to lines meeting member `through`.
std::pair<int, Line> max_line_hits_through(const Family& family, int through);

/// Checks that every member meets its assigned line.
bool verify_piercing(const Family& family, const PiercingSolution& solution);

/// Exact minimum piercing by branch-and-bound set cover. Among optimal
/// covers, returns the one whose sorted line list is lexicographically
/// least over the reduced (maximal-coverage) candidate lines. nullopt when
/// more than `budget` lines are needed.
std::optional<PiercingSolution> min_piercing_lines(const Family& family, int budget);

/// 6(a-1) + 5 >= 3(k-1) for a generated construction with parameter k.
/// Throws std::invalid_argument if the family has no construction metadata.
bool count_bound_check(const Family& family, int a);

}  // namespace ckpierce
