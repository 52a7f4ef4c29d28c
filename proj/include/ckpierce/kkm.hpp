#pragma once

// Chord systems on the unit circle driven by a point of the simplex, the
// regions they cut out of the disk, and the search that turns them into
// either k-2 piercing lines or an ordered C(k) witness.
//
// For x in the simplex of dimension n-1 (n = 2(k-2)), the boundary points
// are f_i = (cos 2πS_i, sin 2πS_i) with S_i = x_1 + ... + x_i, and the
// chords are l_i = [f_i, f_{i+k-2}] (indices mod n, so l_i = l_{i+k-2}).
// Region i (1 <= i <= n) sits against the arc from f_{i-1} to f_i:
//   * i <= k-3: the open wedge between l_{i-1} and l_i on that arc's side;
//   * i >= k-2: the same wedge, further cut by the arc side of every
//     non-degenerate chord.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckpierce/ck_detect.hpp"
#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"
#include "ckpierce/line_piercing.hpp"

namespace ckpierce {

class SimplexPoint {
 public:
  /// Throws std::invalid_argument unless coordinates are >= -1e-12 and sum
  /// to 1 within 1e-12. Tiny negatives are clamped to zero.
  explicit SimplexPoint(std::vector<double> coords);
  static SimplexPoint barycenter(int dimension);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

class ChordSystem {
 public:
  /// Throws std::invalid_argument for k < 5 or a dimension other than 2(k-2).
  ChordSystem(const SimplexPoint& x, int k);

  int k() const { return k_; }
  /// Number of boundary points and regions, 2(k-2).
  int size() const { return n_; }
  /// Number of distinct chords, k-2.
  int chord_count() const { return n_ / 2; }
  const SimplexPoint& point() const { return x_; }

  /// f_i, index taken mod size().
  FloatPoint boundary(int i) const;
  /// Endpoints of l_i = [f_i, f_{i+k-2}].
  FloatPoint chord_start(int i) const { return boundary(i); }
  FloatPoint chord_end(int i) const { return boundary(i + chord_count()); }
  /// l_i collapses to a point when one side of it carries no mass.
  bool chord_degenerate(int i) const;
  /// Midpoint of the arc from f_{r-1} to f_r, 1 <= r <= size().
  FloatPoint arc_midpoint(int region) const;
  /// Mass of the arc from f_{r-1} to f_r.
  double arc_mass(int region) const { return x_[static_cast<std::size_t>(region - 1)]; }

 private:
  SimplexPoint x_;
  int k_;
  int n_;
  std::vector<double> cumulative_;  // S_0 .. S_n
};

/// A family member in floating point.
using FloatBody = std::vector<FloatPoint>;
std::vector<FloatBody> to_float(const Family& family);

/// Minimum slack of the body's vertices against the region's constraints
/// (chord half-planes and the open disk). Positive iff the body lies in
/// the region; -infinity for an empty region. Throws std::out_of_range for
/// a bad region index.
double region_depth(const ChordSystem& cs, int region, std::span<const FloatPoint> body);
bool region_contains(const ChordSystem& cs, int region, std::span<const FloatPoint> body);
bool region_contains(const SimplexPoint& x, int k, int region, const ConvexBody& body);

/// Distance from the body to the nearest of l_0 .. l_{k-3}.
double chord_distance(const ChordSystem& cs, std::span<const FloatPoint> body, int* nearest = nullptr);

struct CoverLabel {
  bool pierced = false;
  /// Smallest region containing a member; 0 when pierced.
  int region = 0;
};

/// Either every member lies within `tolerance` of one of l_0 .. l_{k-3}, or
/// the smallest region (with positive arc mass) containing a member.
/// Members must lie in the open unit disk. Throws std::logic_error if
/// neither holds.
CoverLabel cover_label(const ChordSystem& cs, std::span<const FloatBody> bodies, double tolerance);

/// A region among 1 .. k-3 lying inside the open quadrant of l_{k-3} and
/// l_{k-2} that contains the arc from f_0 to f_{k-3}. Throws
/// GeometryError("empty region") unless every arc has positive mass.
int quadrant_region_index(const ChordSystem& cs);

/// Exact line through the (double, hence rational) endpoints of l_i.
Line exact_chord(const ChordSystem& cs, int i);

/// The three separation clauses behind an extracted witness, checked
/// exactly: l_0 separates F_1,F_2 from F_3..F_k; l_{k-3+j} separates
/// F_j,F_{j+1} from F_{j+2}..F_k; l_{k-3} separates F_k,F_1 from
/// F_2..F_{k-1}. Each clause also checks the implied hull disjointness.
struct SeparationLedger {
  bool first_pair = false;
  bool middle_pairs = false;
  bool closing_pair = false;
  bool all() const { return first_pair && middle_pairs && closing_pair; }
};

/// `order` lists member indices F_1 .. F_k of `family` (which must be the
/// family the chord system was evaluated on).
SeparationLedger check_separations(const Family& family, const ChordSystem& cs,
                                   const std::vector<int>& order);

struct KkmOptions {
  double tolerance = 1e-6;
  /// Resolution of the barycentric grid scanned before local search.
  int grid = 8;
  /// Kuhn triangulation resolutions tried for Sperner labeling.
  std::vector<int> sperner_resolutions{4, 8, 16};
  int restarts = 16;
  int max_iterations = 3000;
  std::uint64_t seed = 0;
  /// 0 means thread_count().
  int threads = 0;
};

struct KkmResult {
  enum class Status { kPierced, kCkWitness, kUnresolved };
  Status status = Status::kUnresolved;
  std::optional<PiercingSolution> piercing;
  std::optional<CkCertificate> certificate;
  std::optional<SeparationLedger> separations;
  /// Simplex point that produced the answer (or the best one seen).
  std::vector<double> x;
  double best_g = 0.0;
  int resolution = 0;
  int phase = 0;
};

std::string to_string(KkmResult::Status status);

/// Numeric search, exact snap, then Sperner labeling with witness extraction.
/// Throws std::invalid_argument for k < 5, tolerance <= 0 or an empty family.
KkmResult find_piercing_lines(const Family& family, int k, const KkmOptions& options = {});

/// Only the Sperner labeling and witness extraction; never reports a
/// piercing.
KkmResult sperner_witness(const Family& family, int k, const KkmOptions& options = {});

/// Attempts the witness extraction at one simplex point, with `scaled`
/// the disk-normalized copy of `family`.
std::optional<KkmResult> extract_witness(const Family& family, const Family& scaled, const ChordSystem& cs);

/// Solution file: {status, lines:[{a,b,c}], certificate:{order}, diagnostics:{best_g, resolution}}.
std::string solution_to_json(const KkmResult& result);
std::vector<Line> solution_lines_from_json(const std::string& text);

}  // namespace ckpierce
