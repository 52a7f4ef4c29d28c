#include "ckpierce/ck_detect.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <memory>
#include <stdexcept>

namespace ckpierce {

bool is_tight_triple(const ConvexBody& a, const ConvexBody& b, const ConvexBody& c) {
  auto ab_bc = intersect_bodies(hull_union(a, b), hull_union(b, c));
  if (!ab_bc) return false;
  return intersect_bodies(*ab_bc, hull_union(c, a)).has_value();
}

namespace {

void check_order(const Family& family, const std::vector<int>& order) {
  if (order.size() < 3) throw std::invalid_argument("a C(k) order needs at least 3 members");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate member index in order");
  }
  if (sorted.front() < 0 || sorted.back() >= static_cast<int>(family.size())) {
    throw std::invalid_argument("member index out of range");
  }
}

bool edges_nonadjacent(int i, int j, int k) {
  return i != j && (i + 1) % k != j && (j + 1) % k != i;
}

}  // namespace

std::variant<CkCertificate, CkRejection> verify_ck(const Family& family,
                                                   const std::vector<int>& order) {
  check_order(family, order);
  const int k = static_cast<int>(order.size());
  CkCertificate cert{k, order, {}};
  const auto& m = family.members;

  if (k == 3) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!bodies_disjoint(m[order[i]], m[order[j]])) {
          return CkRejection{{i, j}, "members intersect"};
        }
        cert.checked_pairs.emplace_back(i, j);
      }
    }
    if (is_tight_triple(m[order[0]], m[order[1]], m[order[2]])) {
      return CkRejection{{-1, -1}, "tight triple"};
    }
    return cert;
  }

  std::vector<ConvexBody> edges;
  for (int i = 0; i < k; ++i) edges.push_back(hull_union(m[order[i]], m[order[(i + 1) % k]]));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!edges_nonadjacent(i, j, k)) continue;
      if (!bodies_disjoint(edges[i], edges[j])) {
        return CkRejection{{i, j}, "consecutive-pair hulls intersect"};
      }
      cert.checked_pairs.emplace_back(i, j);
    }
  }
  return cert;
}

namespace {

// Shared, lazily filled tables for one search. Cache slots are written at
// most with the same value, so racing workers are harmless.
class SearchTables {
 public:
  explicit SearchTables(const Family& family) : family_(family), n_(static_cast<int>(family.size())) {
    disjoint_.assign(static_cast<std::size_t>(n_) * n_, false);
    hulls_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        const bool d = bodies_disjoint(family.members[a], family.members[b]);
        disjoint_[a * n_ + b] = disjoint_[b * n_ + a] = d;
        if (d) hulls_[a * n_ + b] = hull_union(family.members[a], family.members[b]);
      }
    }
    const std::size_t pairs = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    edge_cache_ = std::make_unique<std::atomic<signed char>[]>(pairs * pairs);
    for (std::size_t i = 0; i < pairs * pairs; ++i) edge_cache_[i] = -1;
    pairs_ = pairs;
  }

  int size() const { return n_; }
  bool members_disjoint(int a, int b) const { return disjoint_[a * n_ + b]; }

  bool edges_disjoint(int a, int b, int c, int d) const {
    const std::size_t e = pair_id(a, b);
    const std::size_t f = pair_id(c, d);
    std::atomic<signed char>& slot = edge_cache_[std::min(e, f) * pairs_ + std::max(e, f)];
    signed char v = slot.load(std::memory_order_relaxed);
    if (v < 0) {
      v = bodies_disjoint(hull(a, b), hull(c, d)) ? 1 : 0;
      slot.store(v, std::memory_order_relaxed);
    }
    return v == 1;
  }

  bool tight(int a, int b, int c) const {
    return is_tight_triple(family_.members[a], family_.members[b], family_.members[c]);
  }

 private:
  std::size_t pair_id(int a, int b) const {
    if (a > b) std::swap(a, b);
    // Row-major index into the strict upper triangle.
    return static_cast<std::size_t>(a) * (2 * n_ - a - 1) / 2 + (b - a - 1);
  }
  const ConvexBody& hull(int a, int b) const {
    return *hulls_[std::min(a, b) * n_ + std::max(a, b)];
  }

  const Family& family_;
  int n_;
  std::vector<bool> disjoint_;
  std::vector<std::optional<ConvexBody>> hulls_;
  std::unique_ptr<std::atomic<signed char>[]> edge_cache_;
  std::size_t pairs_ = 0;
};

class OrderSearch {
 public:
  OrderSearch(const SearchTables& tables, int k) : t_(tables), k_(k), seq_(k) {}

  // Lexicographically least canonical order starting with `first`.
  std::optional<std::vector<int>> run(int first) {
    seq_[0] = first;
    if (extend(1)) return seq_;
    return std::nullopt;
  }

 private:
  bool extend(int pos) {
    if (pos == k_) return true;
    for (int c = seq_[0] + 1; c < t_.size(); ++c) {
      if (pos == k_ - 1 && c < seq_[1]) continue;
      if (!admissible(pos, c)) continue;
      seq_[pos] = c;
      if (k_ == 3 ? closes_c3(pos) : edge_ok(pos)) {
        if (extend(pos + 1)) return true;
      }
    }
    return false;
  }

  bool admissible(int pos, int c) const {
    for (int s = 0; s < pos; ++s) {
      if (seq_[s] == c || !t_.members_disjoint(seq_[s], c)) return false;
    }
    return true;
  }

  bool closes_c3(int pos) const {
    return pos < 2 || !t_.tight(seq_[0], seq_[1], seq_[2]);
  }

  // Edge e_{pos-1} = (seq[pos-1], seq[pos]) against the earlier edges, the
  // nearest non-adjacent one first; at the last position also the closing
  // edge e_{k-1} = (seq[k-1], seq[0]).
  bool edge_ok(int pos) const {
    const int a = seq_[pos - 1];
    const int b = seq_[pos];
    for (int s = pos - 3; s >= 0; --s) {
      if (!t_.edges_disjoint(a, b, seq_[s], seq_[s + 1])) return false;
    }
    if (pos == k_ - 1) {
      const int z = seq_[0];
      if (!t_.edges_disjoint(b, z, seq_[1], seq_[2])) return false;
      for (int s = k_ - 3; s >= 2; --s) {
        if (!t_.edges_disjoint(b, z, seq_[s], seq_[s + 1])) return false;
      }
    }
    return true;
  }

  const SearchTables& t_;
  int k_;
  std::vector<int> seq_;
};

}  // namespace

std::optional<CkCertificate> find_ck(const Family& family, int k, FindCkOptions options) {
  if (k < 3) throw std::invalid_argument("find_ck requires k >= 3");
  const int n = static_cast<int>(family.size());
  if (n < k) return std::nullopt;

  const SearchTables tables(family);
  const int threads = options.threads > 0 ? options.threads : thread_count();

  // Each worker owns one value of the first (smallest) index; the smallest
  // first index with a witness wins, which keeps the answer deterministic.
  const int firsts = n - k + 1;
  std::vector<std::optional<std::vector<int>>> found(firsts);
  std::atomic<int> best{INT_MAX};
  parallel_for(firsts, threads, [&](int first) {
    if (first > best.load()) return;
    OrderSearch search(tables, k);
    found[first] = search.run(first);
    if (found[first]) {
      int cur = best.load();
      while (first < cur && !best.compare_exchange_weak(cur, first)) {
      }
    }
  });
  if (best.load() == INT_MAX) return std::nullopt;

  auto verdict = verify_ck(family, *found[best.load()]);
  if (auto* cert = std::get_if<CkCertificate>(&verdict)) return *cert;
  throw std::logic_error("find_ck produced an order that fails verification");
}

}  // namespace ckpierce
