#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"
#include "ckpierce/parallel.hpp"

namespace ckpierce {

/// True iff conv(A∪B), conv(B∪C) and conv(C∪A) have a common point.
bool is_tight_triple(const ConvexBody& a, const ConvexBody& b, const ConvexBody& c);

/// An ordered witness. `checked_pairs` holds positions (i, j) in `order`:
/// for k >= 4 each entry says conv(F_i ∪ F_i+1) and conv(F_j ∪ F_j+1) were
/// verified disjoint; for k = 3 each says F_i and F_j were verified disjoint.
struct CkCertificate {
  int k = 0;
  std::vector<int> order;
  std::vector<std::pair<int, int>> checked_pairs;
};

struct CkRejection {
  /// Violated pair of positions, as in CkCertificate::checked_pairs. For
  /// k = 3 a tight triple is reported as (-1, -1).
  std::pair<int, int> violated;
  std::string reason;
};

/// Checks the C(k) condition for `order` (k = order.size() >= 3). Throws
/// std::invalid_argument for duplicate or out-of-range indices.
std::variant<CkCertificate, CkRejection> verify_ck(const Family& family,
                                                   const std::vector<int>& order);

struct FindCkOptions {
  /// 0 means thread_count().
  int threads = 0;
};

/// Exhaustive search. Returns the lexicographically least canonical order
/// (smallest index first, order[1] < order[k-1]) or nullopt when the family
/// is C(k)-free. Throws std::invalid_argument for k < 3.
std::optional<CkCertificate> find_ck(const Family& family, int k, FindCkOptions options = {});

}  // namespace ckpierce
