#pragma once

// Subcommand implementations behind tools/nashforge. Each returns its exit
// code and the text destined for stdout / stderr so they can be driven
// in-process by tests.
//
// Exit codes: 0 pass, 1 usage error, 2 verification failure, 3 infeasible input.

#include <nashforge/doubling.hpp>
#include <nashforge/io.hpp>
#include <nashforge/mesh.hpp>
#include <nashforge/parallel.hpp>
#include <nashforge/region.hpp>
#include <nashforge/smoothing.hpp>
#include <nashforge/topology.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashforge::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kFail = 2, kInfeasible = 3 };

struct CommandResult {
  int exit_code = kPass;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string cell_text(const std::optional<long long>& g) { return g ? std::to_string(*g) : "--"; }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

inline std::string csv_double(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "1,3/2,4" (or "1,3;2,4") -> {{0,2},{1,3}}.
inline EdgePartition parse_partition(std::string text) {
  std::replace(text.begin(), text.end(), ';', '/');
  EdgePartition p;
  std::stringstream classes(text);
  std::string cls;
  while (std::getline(classes, cls, '/')) {
    std::vector<std::size_t> members;
    std::stringstream items(cls);
    std::string item;
    while (std::getline(items, item, ',')) {
      const long idx = std::stol(item);
      if (idx < 1) throw std::out_of_range("partition: edge indices are 1-based");
      members.push_back(static_cast<std::size_t>(idx - 1));
    }
    p.classes.push_back(std::move(members));
  }
  return p;
}

/// Resolves the polygon/partition pair from either a JSON file or (n, s).
struct Instance {
  std::optional<ConvexPolygon> polygon;
  std::optional<EdgePartition> partition;
  CommandResult failure;
};

inline Instance resolve_instance(std::size_t n, std::size_t s, const std::string& input, const std::string& partition,
                                 bool allow_invalid) {
  Instance inst;
  if (!input.empty()) {
    auto loaded = load_polygon(input);
    inst.polygon = loaded.polygon;
    inst.partition = loaded.partition;
  } else {
    if (n < 3) {
      inst.failure = {kUsage, "", "error: --n must be at least 3\n"};
      return inst;
    }
    inst.polygon = regular_polygon(n);
  }
  if (!partition.empty()) inst.partition = parse_partition(partition);
  const std::size_t nn = inst.polygon->n();
  if (!inst.partition) {
    if (!feasible_s_range(nn).contains(s)) {
      inst.failure = {kInfeasible, "", "infeasible: s=" + std::to_string(s) + " is outside [" +
                                           std::to_string(feasible_s_range(nn).min) + ", " + std::to_string(nn) +
                                           "] for n=" + std::to_string(nn) + "\n"};
      return inst;
    }
    auto found = enumerate_valid_partitions(*inst.polygon, s, 1);
    if (found.empty()) {
      inst.failure = {kInfeasible, "", "infeasible: no compatible partition of " + std::to_string(nn) +
                                           " edges into " + std::to_string(s) + " classes\n"};
      return inst;
    }
    inst.partition = found.front();
  } else {
    try {
      inst.partition->class_of(nn);
    } catch (const std::exception& e) {
      inst.failure = {kUsage, "", std::string("error: ") + e.what() + "\n"};
      return inst;
    }
    if (!allow_invalid && !validate_partition(*inst.polygon, *inst.partition).valid) {
      std::string msg = "infeasible: partition violates the compatibility condition:";
      for (const auto& v : validate_partition(*inst.polygon, *inst.partition).violations)
        msg += " (" + std::to_string(v.class_index + 1) + "," + std::to_string(v.edge_i + 1) + "," +
               std::to_string(v.edge_j + 1) + ")";
      inst.failure = {kInfeasible, "", msg + "\n"};
    }
  }
  return inst;
}

inline Json vec_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace detail

// genus-table ----------------------------------------------------------------

struct GenusTableOptions {
  std::size_t n_max = 7;
  std::size_t s_max = 7;
  bool paper = false;
  std::string format = "csv";  // csv | markdown
};

inline std::string render_genus_csv(const GenusTable& t) {
  std::string out = "n";
  for (std::size_t s = t.s_min; s <= t.s_max; ++s) out += ",s=" + std::to_string(s);
  out += "\n";
  for (std::size_t n = t.n_min; n <= t.n_max; ++n) {
    out += std::to_string(n);
    for (std::size_t s = t.s_min; s <= t.s_max; ++s) out += "," + detail::cell_text(t.at(n, s));
    out += "\n";
  }
  return out;
}

inline std::string render_genus_markdown(const GenusTable& t) {
  std::string out = "|  |";
  std::string rule = "|---|";
  for (std::size_t s = t.s_min; s <= t.s_max; ++s) {
    out += " s=" + std::to_string(s) + " |";
    rule += "---|";
  }
  out += "\n" + rule + "\n";
  for (std::size_t n = t.n_min; n <= t.n_max; ++n) {
    out += "| n=" + std::to_string(n) + " |";
    for (std::size_t s = t.s_min; s <= t.s_max; ++s) out += " " + detail::cell_text(t.at(n, s)) + " |";
    out += "\n";
  }
  return out;
}

/// Differences between a table and the published 5 x 6 grid.
inline std::vector<std::string> diff_against_reference(const GenusTable& t) {
  std::vector<std::string> diffs;
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t s = 2; s <= 7; ++s) {
      const int ref = kReferenceGenusTable[n - 3][s - 2];
      const std::optional<long long> want = ref < 0 ? std::nullopt : std::optional<long long>(ref);
      std::optional<long long> got;
      if (n <= t.n_max && s <= t.s_max) got = t.at(n, s);
      else got = std::nullopt;
      if (got != want)
        diffs.push_back("n=" + std::to_string(n) + " s=" + std::to_string(s) + ": expected " +
                        detail::cell_text(want) + ", got " + detail::cell_text(got));
    }
  }
  return diffs;
}

inline CommandResult cmd_genus_table(GenusTableOptions opt) {
  if (opt.paper) {
    opt.n_max = 7;
    opt.s_max = 7;
  }
  if (opt.n_max < 3 || opt.s_max < 2) return {kUsage, "", "error: need --n-max >= 3 and --s-max >= 2\n"};
  if (opt.s_max > 40) return {kUsage, "", "error: --s-max above 40 is not supported\n"};
  if (opt.format != "csv" && opt.format != "markdown") return {kUsage, "", "error: --format must be csv or markdown\n"};
  const GenusTable table = genus_table(opt.n_max, opt.s_max);
  CommandResult res;

  // cross-check feasible cells against the gluing oracle where it is cheap
  for (std::size_t n = 3; n <= std::min<std::size_t>(opt.n_max, 8); ++n) {
    const ConvexPolygon polygon = regular_polygon(n);
    for (std::size_t s = 2; s <= std::min<std::size_t>(opt.s_max, n); ++s) {
      const auto g = table.at(n, s);
      if (!g) continue;
      const auto parts = enumerate_valid_partitions(polygon, s, 1);
      if (parts.empty()) {
        res.exit_code = kFail;
        res.err += "oracle: no partition for feasible cell n=" + std::to_string(n) + " s=" + std::to_string(s) + "\n";
        continue;
      }
      const GlueResult glued = glue_complex(polygon, parts.front());
      if (glued.counts.chi() != 2 - 2 * *g || glued.components != 1) {
        res.exit_code = kFail;
        res.err += "oracle: gluing disagrees with the formula at n=" + std::to_string(n) + " s=" + std::to_string(s) + "\n";
      }
    }
  }

  if (opt.paper) {
    res.out = render_genus_markdown(table);
    for (const auto& d : diff_against_reference(table)) {
      res.exit_code = kFail;
      res.err += "mismatch " + d + "\n";
    }
  } else {
    res.out = opt.format == "csv" ? render_genus_csv(table) : render_genus_markdown(table);
  }
  return res;
}

// verify-smooth --------------------------------------------------------------

struct VerifySmoothOptions {
  std::size_t n = 4;
  std::size_t s = 2;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string input;      // polygon JSON
  std::string partition;  // "1,3/2,4"
  bool allow_invalid = false;
};

inline Json smooth_report_json(const DoubledPolygon& dp, const SmoothReport& r) {
  Json j;
  j["command"] = "verify-smooth";
  j["n"] = dp.polygon.n();
  j["s"] = dp.partition.s();
  j["partition"] = partition_to_json(dp.partition);
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["threshold"] = kSmoothThreshold;
  j["pass"] = r.pass;
  j["min_sigma"] = r.min_sigma;
  Json w;
  w["x"] = detail::vec_json(r.worst_point.x);
  w["t"] = detail::vec_json(r.worst_point.t);
  w["signs"] = r.worst_point.signs;
  w["stratum"] = to_string(r.worst_stratum);
  j["worst_point"] = std::move(w);
  j["max_residual"] = r.max_residual;
  j["strata"] = {{"interior", r.interior_samples}, {"facet", r.facet_samples}, {"vertex", r.vertex_samples}};
  return j;
}

inline CommandResult cmd_verify_smooth(const VerifySmoothOptions& opt) {
  if (opt.samples < 1) return {kUsage, "", "error: --samples must be at least 1\n"};
  auto inst = detail::resolve_instance(opt.n, opt.s, opt.input, opt.partition, opt.allow_invalid);
  if (!inst.polygon || !inst.partition || inst.failure.exit_code != kPass) return inst.failure;
  const DoubledPolygon dp = double_polygon(*inst.polygon, *inst.partition, !opt.allow_invalid);
  const SmoothReport r = verify_smooth(dp, opt.samples, opt.seed, opt.threads);
  CommandResult res;
  res.out = smooth_report_json(dp, r).dump(2) + "\n";
  if (!r.pass) {
    res.exit_code = kFail;
    res.err = "FAIL: min_sigma " + detail::csv_double(r.min_sigma) + " <= threshold\n";
  }
  return res;
}

// kernel-check ---------------------------------------------------------------

struct KernelCheckOptions {
  unsigned k_max = 6;
  std::size_t grid = 100000;
  std::size_t threads = 1;
};

struct KernelCase {
  unsigned k;
  Rational a;
  TaylorCertificate taylor_zero;
  bool taylor_a = false;
  bool seam_exact = false;  // sigma(a) = 0, so f(a) = sqrt(a)
  double seam_value = 0.0;
  KernelGridCheck grid;
  bool derivative_positive = true;
  double slope = 0.0;
  bool slope_ok = false;

  bool pass() const {
    return taylor_zero.holds && taylor_a && seam_exact && grid.strictly_increasing && grid.below_sqrt &&
           grid.above_s && derivative_positive && slope_ok;
  }

  std::string first_failure() const {
    if (!taylor_zero.holds) return "taylor_at_zero";
    if (!taylor_a) return "taylor_at_a";
    if (!seam_exact) return "seam";
    if (!grid.strictly_increasing) return "monotone";
    if (!grid.below_sqrt) return "upper_bound_sqrt";
    if (!grid.above_s) return "lower_bound_s";
    if (!derivative_positive) return "derivative_positive";
    if (!slope_ok) return "local_model_slope";
    return "";
  }
};

inline KernelCase run_kernel_case(unsigned k, const Rational& a, std::size_t grid) {
  const SmoothingKernel K(a, k);
  KernelCase c{k, a, {}, false, false, 0.0, {}, true, 0.0, false};
  c.taylor_zero = taylor_at_zero_certificate(K);
  c.taylor_a = taylor_at_a_certificate(K);
  c.seam_exact = kernel_sigma_exact(K).eval(a) == 0;
  c.seam_value = kernel_eval(K, K.a_double());
  c.grid = kernel_grid_exact(K, grid);
  for (int i = 0; i < 50; ++i) {
    const double lo = std::log(1e-4);
    const double hi = std::log(K.a_double() - 1e-4);
    const double s = std::exp(lo + (hi - lo) * i / 49.0);
    if (!(kernel_derivative(K, std::min(s, K.a_double() - 1e-4)) > 0)) c.derivative_positive = false;
  }
  const double ad = K.a_double();
  const std::vector<double> radii{ad / 4, ad / 8, ad / 16, ad / 32};
  c.slope = fold_local_model_slope({K}, radii);
  c.slope_ok = c.slope >= 2.0 * k - 1.5;
  return c;
}

inline CommandResult cmd_kernel_check(const KernelCheckOptions& opt) {
  if (opt.k_max < 1) return {kUsage, "", "error: --k-max must be at least 1\n"};
  if (opt.grid < 2) return {kUsage, "", "error: --grid must be at least 2\n"};
  const std::vector<Rational> as{make_rational(1), make_rational(1, 2), make_rational(1, 4)};
  std::vector<KernelCase> cases(opt.k_max * as.size());
  // largest k first so the longest jobs start early
  parallel_for(cases.size(), opt.threads, [&](std::size_t job) {
    const std::size_t idx = cases.size() - 1 - job;
    const unsigned k = static_cast<unsigned>(idx / as.size()) + 1;
    cases[idx] = run_kernel_case(k, as[idx % as.size()], opt.grid);
  });

  CommandResult res;
  Json j;
  j["command"] = "kernel-check";
  j["k_max"] = opt.k_max;
  j["grid"] = opt.grid;
  Json list = Json::array();
  for (const auto& c : cases) {
    Json e;
    e["k"] = c.k;
    e["a"] = to_string(c.a);
    e["taylor_at_zero"] = {{"certified", c.taylor_zero.holds},
                           {"rational_part_order", c.taylor_zero.rational_part_order},
                           {"sqrt_part_order", c.taylor_zero.sqrt_part_order}};
    e["taylor_at_a"] = c.taylor_a;
    e["seam"] = {{"sigma_at_a_is_zero", c.seam_exact}, {"f_at_a", c.seam_value}, {"sqrt_a", std::sqrt(c.a.get_d())}};
    e["grid"] = {{"points", c.grid.points},
                 {"strictly_increasing", c.grid.strictly_increasing},
                 {"f_le_sqrt_s", c.grid.below_sqrt},
                 {"f_ge_s", c.grid.above_s}};
    e["derivative_positive"] = c.derivative_positive;
    e["local_model_slope"] = {{"slope", c.slope}, {"required", 2.0 * c.k - 1.5}, {"pass", c.slope_ok}};
    e["pass"] = c.pass();
    list.push_back(std::move(e));
    if (!c.pass() && res.exit_code == kPass) {
      res.exit_code = kFail;
      res.err = "FAIL k=" + std::to_string(c.k) + " a=" + to_string(c.a) + " property=" + c.first_failure() + "\n";
    }
  }
  j["cases"] = std::move(list);
  j["pass"] = res.exit_code == kPass;
  res.out = j.dump(2) + "\n";
  return res;
}

// fold-demo ------------------------------------------------------------------

struct FoldDemoOptions {
  int dim = 1;
  std::string a = "1/2";
  unsigned k = 1;
  std::size_t grid = 0;  // 0 picks 3001 (dim 1) or 200 (dim 2)
  std::string csv;       // trace output path
};

inline CommandResult cmd_fold_demo(const FoldDemoOptions& opt) {
  if (opt.dim != 1 && opt.dim != 2) return {kUsage, "", "error: --dim must be 1 or 2\n"};
  Rational a;
  try {
    a = parse_rational(opt.a);
  } catch (const std::exception& e) {
    return {kUsage, "", std::string("error: --a: ") + e.what() + "\n"};
  }
  if (!(a > 0 && a <= 1) || opt.k < 1) return {kUsage, "", "error: need 0 < a <= 1 and k >= 1\n"};
  const SmoothingKernel K(a, opt.k);
  const double ad = K.a_double();
  Json j;
  j["command"] = "fold-demo";
  j["dim"] = opt.dim;
  j["a"] = to_string(a);
  j["k"] = opt.k;
  bool pass = true;
  std::string csv;

  if (opt.dim == 1) {
    const FoldMap1D F{K};
    const std::size_t grid = opt.grid ? opt.grid : 3001;
    if (grid < 2) return {kUsage, "", "error: --grid must be at least 2\n"};
    double sup = 0.0, argmax = 0.0, min_image = INFINITY;
    bool fixes_tail = true, monotone = true;
    double prev = -INFINITY;
    csv = "x,fold1d\n";
    const double lo = -1.0, hi = 2.0;
    for (std::size_t i = 0; i < grid; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
      const double y = fold1d(F, x);
      csv += detail::csv_double(x) + "," + detail::csv_double(y) + "\n";
      if (x >= -ad / 2) min_image = std::min(min_image, y);
      if (x >= 0.0) {
        const double dev = std::abs(y - x);
        if (dev > sup) {
          sup = dev;
          argmax = x;
        }
        if (y < prev) monotone = false;
        prev = y;
      }
      if (x > ad && y != x) fixes_tail = false;
    }
    const double at_a = fold1d(F, ad);
    const bool sup_ok = sup <= ad && argmax <= ad;
    const bool image_ok = min_image >= 0.0 && fold1d(F, 0.0) == 0.0;
    j["sup_deviation_on_0_2"] = sup;
    j["argmax"] = argmax;
    j["sup_le_a"] = sup_ok;
    j["fixes_tail"] = fixes_tail;
    j["monotone_on_0_2"] = monotone;
    j["image_in_half_line"] = image_ok;
    j["value_at_a"] = at_a;
    const double r0 = ad / 4;
    const std::vector<double> radii{r0, r0 / 2, r0 / 4, r0 / 8};
    const double slope = fold_local_model_slope(F, radii);
    j["local_model_slope"] = slope;
    j["local_model_ok"] = slope >= 2.0 * opt.k - 1.5;
    pass = sup_ok && fixes_tail && monotone && image_ok && slope >= 2.0 * opt.k - 1.5;
  } else {
    const FoldMap2D F{{K, K}};
    const std::size_t grid = opt.grid ? opt.grid : 200;
    if (grid < 2) return {kUsage, "", "error: --grid must be at least 2\n"};
    const QuadrantCoverage cov = fold2d_coverage(F, grid);
    j["grid"] = grid;
    j["in_quadrant"] = cov.in_quadrant;
    j["axes_preserved"] = cov.axes_preserved;
    j["hausdorff"] = cov.hausdorff;
    j["bound"] = 2.0 * cov.step;
    pass = cov.pass();
    if (!opt.csv.empty()) {
      csv = "x,y,fx,fy\n";
      const double lo = -ad / 2, step = (2.0 - lo) / static_cast<double>(grid - 1);
      for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t m = 0; m < grid; ++m) {
          const std::array<double, 2> p{lo + step * static_cast<double>(i), lo + step * static_cast<double>(m)};
          const auto f = fold2d(F, p);
          csv += detail::csv_double(p[0]) + "," + detail::csv_double(p[1]) + "," + detail::csv_double(f[0]) + "," +
                 detail::csv_double(f[1]) + "\n";
        }
    }
  }
  j["pass"] = pass;
  CommandResult res;
  if (!opt.csv.empty()) detail::write_file(opt.csv, csv);
  res.out = j.dump(2) + "\n";
  if (!pass) {
    res.exit_code = kFail;
    res.err = "FAIL: fold invariants violated\n";
  }
  return res;
}

// mostowski-demo -------------------------------------------------------------

struct MostowskiDemoOptions {
  int dim = 1;
  unsigned depth = 8;  // rows x = 1 - 10^-j, j = 1..depth
  std::uint64_t seed = 1;
  std::string csv;
};

inline CommandResult cmd_mostowski_demo(const MostowskiDemoOptions& opt) {
  if (opt.dim != 1 && opt.dim != 2) return {kUsage, "", "error: --dim must be 1 or 2\n"};
  if (opt.depth < 1 || opt.depth > 30) return {kUsage, "", "error: --depth must lie in 1..30\n"};
  const MostowskiMap M = opt.dim == 1 ? mostowski_half_open_interval() : mostowski_open_disk();
  Json j;
  j["command"] = "mostowski-demo";
  j["dim"] = opt.dim;
  j["set"] = opt.dim == 1 ? "[0,1)" : "open unit disk";
  j["h"] = M.h.to_string();
  bool pass = true;
  Json table = Json::array();
  std::string csv = "x,last_coordinate\n";
  Rational prev_last = 0;
  for (unsigned jdx = 1; jdx <= opt.depth; ++jdx) {
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, jdx);
    const Rational x = 1 - make_rational(Integer(1), pow10);
    std::vector<Rational> pt(M.d, Rational(0));
    pt[0] = x;
    const auto img = mostowski_embed(M, std::span<const Rational>(pt));
    const Rational& last = img.back();
    // exact value of 1/h at the sample
    const bool exact = last * M.h.eval(std::span<const Rational>(pt)) == 1;
    const bool grows = jdx == 1 || last > prev_last;
    pass = pass && exact && grows;
    prev_last = last;
    table.push_back({{"x", to_string(x)}, {"last", to_string(last)}, {"exact", exact}});
    csv += to_string(x) + "," + to_string(last) + "\n";
  }
  bool boundary_rejected = false;
  try {
    std::vector<Rational> edge(M.d, Rational(0));
    edge[0] = 1;
    mostowski_embed(M, std::span<const Rational>(edge));
  } catch (const std::domain_error&) {
    boundary_rejected = true;
  }
  double roundtrip = 0.0;
  Rng rng(opt.seed);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(M.d);
    if (opt.dim == 1) {
      x[0] = rng.uniform();
    } else {
      const double r = std::sqrt(rng.uniform()) * 0.999, th = rng.uniform(0.0, 2.0 * 3.141592653589793);
      x = {r * std::cos(th), r * std::sin(th)};
    }
    const auto img = mostowski_embed(M, std::span<const double>(x));
    const auto back = mostowski_project(M, std::span<const double>(img));
    for (std::size_t c = 0; c < M.d; ++c) roundtrip = std::max(roundtrip, std::abs(back[c] - x[c]));
  }
  pass = pass && boundary_rejected && roundtrip == 0.0;
  j["escape_table"] = std::move(table);
  j["boundary_point_rejected"] = boundary_rejected;
  j["roundtrip_max_error"] = roundtrip;
  j["pass"] = pass;
  CommandResult res;
  if (!opt.csv.empty()) detail::write_file(opt.csv, csv);
  res.out = j.dump(2) + "\n";
  if (!pass) {
    res.exit_code = kFail;
    res.err = "FAIL: Mostowski demo invariants violated\n";
  }
  return res;
}

// mesh -----------------------------------------------------------------------

struct MeshOptions {
  std::size_t n = 4;
  std::size_t s = 2;
  std::size_t resolution = 4;
  std::string format = "obj";
  std::string projection = "first3";
  std::string out;  // mesh path; sidecar JSON goes to out + ".json"
  std::string input;
  std::string partition;
};

inline CommandResult cmd_mesh(const MeshOptions& opt) {
  if (opt.resolution < 1) return {kUsage, "", "error: --resolution must be at least 1\n"};
  if (opt.format != "obj" && opt.format != "ply") return {kUsage, "", "error: --format must be obj or ply\n"};
  if (opt.projection != "first3" && opt.projection != "pca")
    return {kUsage, "", "error: --projection must be first3 or pca\n"};
  auto inst = detail::resolve_instance(opt.n, opt.s, opt.input, opt.partition, false);
  if (!inst.polygon || !inst.partition || inst.failure.exit_code != kPass) return inst.failure;
  const auto& polygon = *inst.polygon;
  const auto& partition = *inst.partition;
  CommandResult res;
  TriangleMesh mesh;
  try {
    mesh = build_surface_mesh(polygon, partition, opt.resolution);
  } catch (const NonManifoldError& e) {
    return {kFail, "", std::string("FAIL: ") + e.what() + "\n"};
  }
  const MeshEuler eu = mesh_euler(mesh);
  const std::size_t n = polygon.n();
  const std::size_t s = partition.s();
  const long long expected = euler_char(n, s);
  Json j;
  j["n"] = n;
  j["s"] = s;
  j["partition"] = partition_to_json(partition);
  j["resolution"] = opt.resolution;
  j["V"] = eu.V;
  j["E"] = eu.E;
  j["F"] = eu.F;
  j["chi"] = eu.chi;
  const auto g = genus(n, s);
  if (g) j["genus"] = *g;
  else j["genus"] = nullptr;
  j["components"] = eu.components;
  j["expected_chi"] = expected;
  j["pass"] = eu.chi == expected && eu.components == 1;
  if (!opt.out.empty()) {
    export_mesh(mesh, opt.out, opt.format == "obj" ? MeshFormat::obj : MeshFormat::ply,
                opt.projection == "first3" ? Projection::first3 : Projection::pca);
    detail::write_file(opt.out + ".json", j.dump(2) + "\n");
  }
  res.out = j.dump(2) + "\n";
  if (!(eu.chi == expected && eu.components == 1)) {
    res.exit_code = kFail;
    res.err = "FAIL: mesh chi " + std::to_string(eu.chi) + " vs formula " + std::to_string(expected) + "\n";
  }
  return res;
}

}  // namespace nashforge::cli
