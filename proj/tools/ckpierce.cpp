// ckpierce: generate families, detect C(k), compute piercings, render SVG.
//
// Exit codes: 0 success (detect: C(k) found; pierce: lines found),
// 1 negative finding (detect: C(k)-free; pierce kkm: C(k) witness instead
// of lines; verify-lemmas: a check failed), 2 no piercing within budget or
// unresolved search, 3 usage, I/O or validation error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ckpierce/ck_detect.hpp"
#include "ckpierce/family.hpp"
#include "ckpierce/kkm.hpp"
#include "ckpierce/line_piercing.hpp"
#include "ckpierce/lowerbound.hpp"
#include "ckpierce/render.hpp"

using namespace ckpierce;

namespace {

constexpr int kError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

std::string order_string(const std::vector<int>& order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
  return s;
}

Family general_position_points(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  Family f;
  f.source = "general-position-points";
  for (int i = 0; i < n; ++i) {
    const std::vector<RationalPoint> pt{RationalPoint(i, i * i)};
    f.add(convex_hull(pt));
  }
  return f;
}

Family pentagon(int k) {
  if (k < 3) throw std::invalid_argument("k must be at least 3");
  Family f;
  f.source = "pentagon-ck";
  for (int i = 0; i < k; ++i) {
    const RationalPoint p = rational_circle_point(2 * std::numbers::pi * i / k);
    const std::vector<RationalPoint> pt{RationalPoint(p.x / 2, p.y / 2)};
    f.add(convex_hull(pt));
  }
  return f;
}

struct Config {
  std::string kind = "construction";
  std::string in;
  std::string out;
  std::string solution;
  std::string mode = "exact-min";
  int k = 5;
  int n = 4;
  int budget = -1;
  double tolerance = 1e-6;
  int grid = 8;
  std::uint64_t seed = 0;
  bool chords = false;
};

int cmd_generate(const Config& c) {
  Family f;
  if (c.kind == "construction") {
    f = build_construction(c.k);
  } else if (c.kind == "general-position-points") {
    f = general_position_points(c.n);
  } else if (c.kind == "pentagon-ck") {
    f = pentagon(c.k);
  } else {
    throw std::invalid_argument("unknown kind " + c.kind);
  }
  write_output(c.out, save_family(f));
  return 0;
}

int cmd_detect(const Config& c) {
  const Family f = load_family_file(c.in);
  if (auto cert = find_ck(f, c.k)) {
    std::cout << "C(" << c.k << ") found: " << order_string(cert->order) << "\n";
    return 0;
  }
  std::cout << "C(" << c.k << ")-free\n";
  return 1;
}

int cmd_pierce(const Config& c) {
  const Family f = load_family_file(c.in);
  KkmResult result;
  if (c.mode == "exact-min") {
    const int budget = c.budget > 0 ? c.budget : static_cast<int>(f.size());
    result.piercing = min_piercing_lines(f, budget);
    result.status = result.piercing ? KkmResult::Status::kPierced : KkmResult::Status::kUnresolved;
    if (!result.piercing) {
      std::cout << "none within budget " << budget << "\n";
      if (!c.out.empty()) write_output(c.out, solution_to_json(result));
      return 2;
    }
  } else if (c.mode == "kkm") {
    KkmOptions opt;
    opt.tolerance = c.tolerance;
    opt.grid = c.grid;
    opt.seed = c.seed;
    result = find_piercing_lines(f, c.k, opt);
  } else {
    throw std::invalid_argument("unknown mode " + c.mode);
  }
  if (!c.out.empty()) write_output(c.out, solution_to_json(result));
  switch (result.status) {
    case KkmResult::Status::kPierced:
      std::cout << result.piercing->lines.size() << " lines:\n";
      for (const Line& l : result.piercing->lines) std::cout << "  " << to_string(l) << "\n";
      if (c.budget > 0 && static_cast<int>(result.piercing->lines.size()) > c.budget) {
        std::cout << "none within budget " << c.budget << "\n";
        return 2;
      }
      return 0;
    case KkmResult::Status::kCkWitness:
      std::cout << "C(" << c.k << ") witness: " << order_string(result.certificate->order) << "\n";
      return 1;
    case KkmResult::Status::kUnresolved:
      break;
  }
  std::cout << "unresolved (best g " << result.best_g << ")\n";
  return 2;
}

int cmd_render(const Config& c) {
  const Family f = load_family_file(c.in);
  RenderOptions opt;
  if (!c.solution.empty()) opt.lines = solution_lines_from_json(read_file(c.solution));
  if (c.chords) opt.chords.emplace(SimplexPoint::barycenter(2 * (c.k - 2)), c.k);
  write_output(c.out, render_svg(f, opt));
  return 0;
}

int cmd_verify_lemmas(const Config& c) {
  const Family f = build_construction(c.k);
  bool ok = true;
  auto report = [&](const std::string& what, bool pass) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
    ok = ok && pass;
  };
  report("C(" + std::to_string(c.k) + ")-free", !find_ck(f, c.k));
  report("C(" + std::to_string(c.k + 1) + ")-free", !find_ck(f, c.k + 1));
  const int hits = max_line_hits(f).first;
  report("max line hits " + std::to_string(hits) + " <= 6", hits <= 6);
  const int through = max_line_hits_through(f, first_long_member(f)).first;
  report("hits through [p1r,p3l] " + std::to_string(through) + " <= 5", through <= 5);
  const int a = (c.k + 1) / 2 - 1;
  report("count bound fails for " + std::to_string(a) + " lines", !count_bound_check(f, a));
  report("no piercing with " + std::to_string(a) + " lines", !min_piercing_lines(f, a));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact C(k) detection and line piercing for planar convex families"};
  app.require_subcommand(1);
  Config c;

  auto* gen = app.add_subcommand("generate", "Write a fixture family");
  gen->add_option("--kind", c.kind, "construction | general-position-points | pentagon-ck")
      ->check(CLI::IsMember({"construction", "general-position-points", "pentagon-ck"}));
  gen->add_option("--k", c.k, "Parameter k");
  gen->add_option("--n", c.n, "Number of points");
  gen->add_option("--out", c.out, "Output file (stdout if omitted)");

  auto* det = app.add_subcommand("detect", "Search for a C(k) subfamily");
  det->add_option("--in", c.in, "Family file")->required();
  det->add_option("--k", c.k, "Parameter k")->check(CLI::Range(3, 1000));

  auto* pierce = app.add_subcommand("pierce", "Pierce the family with lines");
  pierce->add_option("--in", c.in, "Family file")->required();
  pierce->add_option("--mode", c.mode, "exact-min | kkm")->check(CLI::IsMember({"exact-min", "kkm"}));
  pierce->add_option("--k", c.k, "Parameter k (kkm mode)");
  pierce->add_option("--budget", c.budget, "Maximum number of lines");
  pierce->add_option("--tolerance", c.tolerance, "Numeric piercing tolerance (kkm mode)");
  pierce->add_option("--grid", c.grid, "Grid resolution (kkm mode)");
  pierce->add_option("--seed", c.seed, "Random seed (kkm mode)");
  pierce->add_option("--out", c.out, "Solution JSON file");

  auto* render = app.add_subcommand("render", "Render a family as SVG");
  render->add_option("--in", c.in, "Family file")->required();
  render->add_option("--solution", c.solution, "Solution JSON whose lines are overlaid");
  render->add_flag("--chords", c.chords, "Overlay the chord system at the barycenter");
  render->add_option("--k", c.k, "Parameter k for --chords");
  render->add_option("--out", c.out, "Output SVG (stdout if omitted)");

  auto* lemmas = app.add_subcommand("verify-lemmas", "Check the lower-bound construction's properties");
  lemmas->add_option("--k", c.k, "Parameter k")->check(CLI::Range(5, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*gen) return cmd_generate(c);
    if (*det) return cmd_detect(c);
    if (*pierce) return cmd_pierce(c);
    if (*render) return cmd_render(c);
    if (*lemmas) return cmd_verify_lemmas(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
