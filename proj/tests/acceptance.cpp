// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <nashforge/commands.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace nashforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + NASHFORGE_CLI + " " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EdgePartition first_partition(std::size_t n, std::size_t s) {
  return enumerate_valid_partitions(regular_polygon(n), s, 1).at(0);
}

Outcome table_reproduction() {
  const auto t0 = Clock::now();
  const Run r = run_cli("", "genus-table --paper");
  const double dt = seconds_since(t0);
  std::size_t cells = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind("| n=", 0) == 0) cells += static_cast<std::size_t>(std::count(line.begin(), line.end(), '|')) - 2;
  const bool ok = r.status == 0 && cells == 30 && cli::diff_against_reference(genus_table(7, 7)).empty() && dt < 1.0;
  return {ok, "exit " + std::to_string(r.status) + ", " + std::to_string(cells) + " cells, " + std::to_string(dt) + " s"};
}

Outcome oracle_agreement() {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 7; ++n) {
    const ConvexPolygon polygon = regular_polygon(n);
    for (std::size_t s = 2; s <= 7; ++s) {
      for (const auto& part : enumerate_valid_partitions(polygon, s, 100000)) {
        const GlueResult g = glue_complex(polygon, part);
        if (g.counts != cw_counts(n, s) || g.counts.chi() != euler_char(n, s) || g.components != 1 ||
            !g.vertices_in_four_faces || !g.edges_in_two_faces)
          return {false, "mismatch at n=" + std::to_string(n) + " s=" + std::to_string(s)};
        ++checked;
      }
    }
  }
  const double dt = seconds_since(t0);
  return {dt < 10.0, std::to_string(checked) + " partitions, " + std::to_string(dt) + " s"};
}

Outcome mesh_topology() {
  const auto t0 = Clock::now();
  const std::pair<std::size_t, std::size_t> cases[] = {{3, 3}, {4, 2}, {5, 3}, {6, 3}, {6, 4}};
  for (auto [n, s] : cases)
    for (std::size_t r : {2u, 4u, 8u}) {
      const MeshEuler e = mesh_euler(build_surface_mesh(regular_polygon(n), first_partition(n, s), r));
      if (e.chi != euler_char(n, s))
        return {false, "n=" + std::to_string(n) + " s=" + std::to_string(s) + " r=" + std::to_string(r) +
                           " chi=" + std::to_string(e.chi)};
    }
  const double dt = seconds_since(t0);
  return {dt < 60.0, "15 meshes, " + std::to_string(dt) + " s"};
}

Outcome smoothness() {
  const auto t0 = Clock::now();
  const std::size_t threads = default_thread_count();
  std::string detail;
  const std::pair<std::size_t, std::size_t> cases[] = {{4, 2}, {6, 3}, {7, 3}};
  for (auto [n, s] : cases) {
    const SmoothReport r = verify_smooth(double_polygon(regular_polygon(n), first_partition(n, s)), 10000, 1, threads);
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%zu,%zu) min_sigma %.3g; ", n, s, r.min_sigma);
    detail += buf;
    if (!r.pass) return {false, detail};
  }
  const SmoothReport bad =
      verify_smooth(double_polygon(regular_polygon(4), EdgePartition{{{0, 1}, {2, 3}}}, false), 10000, 1, threads);
  const bool adversarial_fails = !bad.pass && bad.worst_stratum == Stratum::vertex;
  detail += std::string("adversarial ") + (adversarial_fails ? "fails at vertex" : "not rejected");
  const double dt = seconds_since(t0);
  return {adversarial_fails && dt < 30.0, detail + ", " + std::to_string(dt) + " s"};
}

Outcome kernel_exactness() {
  const auto t0 = Clock::now();
  for (unsigned k = 1; k <= 6; ++k)
    for (const Rational& a : {make_rational(1), make_rational(1, 2), make_rational(1, 4)}) {
      const SmoothingKernel K(a, k);
      const KernelGridCheck g = kernel_grid_exact(K, 100000);
      const bool ok = taylor_at_zero_certificate(K).holds && taylor_at_a_certificate(K) && g.strictly_increasing &&
                      g.below_sqrt && g.above_s && kernel_sigma_exact(K).eval(a) == 0;
      // past a the collar is sqrt(s) by construction
      bool tail = true;
      for (int i = 0; i <= 100; ++i) {
        const double s = K.a_double() + (1.0 - K.a_double()) * i / 100.0;
        if (collar_eval(K, s) != std::sqrt(s)) tail = false;
      }
      if (!ok || !tail) return {false, "k=" + std::to_string(k) + " a=" + to_string(a)};
    }
  const double dt = seconds_since(t0);
  return {dt < 30.0, "18 kernels, 1e5-point exact grids, " + std::to_string(dt) + " s"};
}

Outcome fold_local_model() {
  std::string detail;
  const std::vector<double> radii{0.125, 0.0625, 0.03125, 0.015625};
  for (unsigned k = 1; k <= 3; ++k) {
    const double slope = fold_local_model_slope({SmoothingKernel(make_rational(1, 2), k)}, radii);
    char buf[64];
    std::snprintf(buf, sizeof buf, "k=%u slope %.3f; ", k, slope);
    detail += buf;
    if (slope < 2.0 * k - 1.5) return {false, detail};
  }
  const SmoothingKernel K(make_rational(1, 2), 2);
  const QuadrantCoverage cov = fold2d_coverage({{K, K}}, 200);
  char buf[96];
  std::snprintf(buf, sizeof buf, "2D hausdorff %.4g <= %.4g", cov.hausdorff, 2 * cov.step);
  return {cov.pass(), detail + buf};
}

Outcome chart_round_trip() {
  double worst = 0.0;
  const auto [pv, ps] = parabola_chart();
  worst = std::max(worst, chart_roundtrip(pv, ps, 1000).max_error);
  const auto [qv, qs] = quadrant_chart();
  worst = std::max(worst, chart_roundtrip(qv, qs, 1000).max_error);
  const DoubledPolygon hex = double_polygon(regular_polygon(6), first_partition(6, 3));
  worst = std::max(worst, chart_roundtrip(hex.variety, facet_chart(hex, 0), 1000).max_error);
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.3g", worst);
  return {worst <= 1e-9, buf};
}

Outcome determinism() {
  const std::string dir = "/tmp/nashforge_acceptance_" + std::to_string(::getpid());
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs[2];
  const char* envs[2] = {"NASHFORGE_THREADS=1", "NASHFORGE_THREADS=4"};
  for (int i = 0; i < 2; ++i) {
    for (int rep = 0; rep < 2; ++rep) {
      const std::string tag = dir + "/" + std::to_string(i) + "_" + std::to_string(rep);
      const std::string env = envs[i];
      auto& o = outputs[i];
      o.push_back(run_cli(env, "verify-smooth --n 7 --s 3 --samples 3000 --seed 5").out);
      o.push_back(run_cli(env, "kernel-check --k-max 3 --grid 2000").out);
      o.push_back(run_cli(env, "genus-table --n-max 9 --s-max 9").out);
      run_cli(env, "fold-demo --dim 2 --a 1/2 --k 2 --grid 50 --csv " + tag + ".csv");
      o.push_back(slurp(tag + ".csv"));
      run_cli(env, "mesh --n 6 --s 4 --resolution 3 --projection pca --out " + tag + ".obj");
      o.push_back(slurp(tag + ".obj"));
      o.push_back(slurp(tag + ".obj.json"));
    }
  }
  std::filesystem::remove_all(dir);
  const std::size_t per_run = outputs[0].size() / 2;
  for (std::size_t j = 0; j < per_run; ++j) {
    if (outputs[0][j].empty()) return {false, "empty output " + std::to_string(j)};
    for (const auto* v : {&outputs[0][j + per_run], &outputs[1][j], &outputs[1][j + per_run]})
      if (*v != outputs[0][j]) return {false, "output " + std::to_string(j) + " differs"};
  }
  return {true, std::to_string(per_run) + " artifacts identical across reruns and 1/4 threads"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 genus table reproduction", table_reproduction},
      {"2 formula/oracle agreement", oracle_agreement},
      {"3 mesh/topology agreement", mesh_topology},
      {"4 smoothness", smoothness},
      {"5 kernel exactness", kernel_exactness},
      {"6 fold local model", fold_local_model},
      {"7 chart round-trip", chart_round_trip},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
