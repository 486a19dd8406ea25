#pragma once

// The smoothing kernel f_{a,k}(s) = sigma(s) s + (1 - sigma(s)) sqrt(s) with
// sigma = (1 - (s/a)^{2k})^{2k}, the collar map built from it, the explicit
// 1D/2D folds onto a half-line / quadrant, and the Mostowski embedding.

#include <nashforge/parallel.hpp>
#include <nashforge/poly.hpp>
#include <nashforge/rational.hpp>
#include <nashforge/sqrt_ring.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

class SmoothingKernel {
 public:
  SmoothingKernel(Rational a, unsigned k) : a_(std::move(a)), k_(k) {
    if (!(a_ > 0 && a_ <= 1)) throw std::invalid_argument("SmoothingKernel: need 0 < a <= 1");
    if (k_ < 1) throw std::invalid_argument("SmoothingKernel: need k >= 1");
    a_d_ = a_.get_d();
  }

  const Rational& a() const { return a_; }
  double a_double() const { return a_d_; }
  unsigned k() const { return k_; }

  /// sigma(s) and 1 - sigma(s), the latter without cancellation near s = 0.
  std::pair<double, double> sigma_pair(double s) const {
    const double q = std::pow(s / a_d_, 2.0 * k_);
    if (q >= 1.0) return {0.0, 1.0};
    const double log_sigma = 2.0 * k_ * std::log1p(-q);
    return {std::exp(log_sigma), -std::expm1(log_sigma)};
  }

 private:
  Rational a_;
  unsigned k_;
  double a_d_;
};

inline double kernel_eval(const SmoothingKernel& K, double s) {
  if (!(s >= 0.0 && s <= K.a_double())) throw std::domain_error("kernel_eval: s must lie in [0, a]");
  const auto [sigma, rest] = K.sigma_pair(s);
  return sigma * s + rest * std::sqrt(s);
}

/// (sqrt(s) - s) 4k^2 (1 - (s/a)^{2k})^{2k-1} (s/a)^{2k-1} / a + (1 - sigma) / (2 sqrt(s)) + sigma.
inline double kernel_derivative(const SmoothingKernel& K, double s) {
  const double a = K.a_double();
  if (!(s > 0.0 && s < a)) throw std::domain_error("kernel_derivative: s must lie in (0, a)");
  const double k = K.k();
  const double ratio = s / a;
  const double q = std::pow(ratio, 2.0 * k);
  const auto [sigma, rest] = K.sigma_pair(s);
  const double root = std::sqrt(s);
  return (root - s) * 4.0 * k * k * std::pow(1.0 - q, 2.0 * k - 1.0) * std::pow(ratio, 2.0 * k - 1.0) / a +
         rest / (2.0 * root) + sigma;
}

/// t-component of the collar map: s below 0, f_{a,k} on [0, a], sqrt(s) past a.
inline double collar_eval(const SmoothingKernel& K, double s) {
  if (s < 0.0) return s;
  if (s <= K.a_double()) return kernel_eval(K, s);
  return std::sqrt(s);
}

// Exact forms ---------------------------------------------------------------

inline UniPoly kernel_sigma_exact(const SmoothingKernel& K) {
  const unsigned two_k = 2 * K.k();
  const UniPoly q = UniPoly::monomial(two_k, 1 / rational_pow(K.a(), two_k));
  return (UniPoly::constant(1) - q).pow(two_k);
}

/// f_{a,k} as the element sigma s + (1 - sigma) sqrt(s) of Q[s][sqrt(s)].
inline SqrtElem kernel_exact(const SmoothingKernel& K) {
  const UniPoly sigma = kernel_sigma_exact(K);
  return {sigma * UniPoly::s(), UniPoly::constant(1) - sigma};
}

struct TaylorCertificate {
  bool holds = false;
  int rational_part_order = -1;  // lowest power of s in the rational part
  int sqrt_part_order = -1;      // lowest power of s in the sqrt(s) part
};

/// f - s = O(s^{2k + 1/2}): s^{2k+1} divides the rational part and s^{2k}
/// divides the sqrt(s) part, so the degree-2k expansion at 0 is s.
inline TaylorCertificate taylor_at_zero_certificate(const SmoothingKernel& K) {
  const SqrtElem u = kernel_exact(K) - SqrtElem::rational_part(UniPoly::s());
  const unsigned two_k = 2 * K.k();
  TaylorCertificate c;
  c.rational_part_order = u.g0.lowest_power();
  c.sqrt_part_order = u.g1.lowest_power();
  c.holds = divisibility_check(u, UniPoly::monomial(two_k)) && u.g0.divisible_by(UniPoly::monomial(two_k + 1));
  return c;
}

/// (s - a)^{2k} divides both parts of f - sqrt(s), so f and sqrt(s) share
/// their degree 2k-1 expansion at s = a.
inline bool taylor_at_a_certificate(const SmoothingKernel& K) {
  const SqrtElem u = kernel_exact(K) - SqrtElem::sqrt_s();
  return divisibility_check(u, shifted_power(K.a(), 2 * K.k()));
}

struct KernelGridCheck {
  std::size_t points = 0;
  bool strictly_increasing = true;
  bool below_sqrt = true;  // f(s) <= sqrt(s)
  bool above_s = true;     // f(s) >= s
  long first_failure = -1;
};

/// Exact check on the grid s_i = (i/N)^2 covering [0, a] with about `points`
/// nodes. On this grid sqrt(s_i) = i/N is rational, so every comparison is
/// an integer comparison after clearing the common denominator N^2 D^{2k}.
inline KernelGridCheck kernel_grid_exact(const SmoothingKernel& K, std::size_t points) {
  if (points < 2) throw std::invalid_argument("kernel_grid_exact: need at least 2 points");
  const Integer p = K.a().get_num();
  const Integer q = K.a().get_den();
  const unsigned long two_k = 2UL * K.k();
  const Integer m = static_cast<unsigned long>(points - 1);

  // smallest N with N^2 p >= m^2 q, i.e. (m/N)^2 <= a is tight
  Integer need = (m * m * q + p - 1) / p;
  Integer N = sqrt(need);
  if (N * N < need) N += 1;
  if (N == 0) N = 1;

  Integer D;  // (p N^2)^{2k}
  Integer base = p * N * N;
  mpz_pow_ui(D.get_mpz_t(), base.get_mpz_t(), two_k);
  Integer D2k;
  mpz_pow_ui(D2k.get_mpz_t(), D.get_mpz_t(), two_k);

  KernelGridCheck out;
  Integer prev;
  Integer X, Y, F, t1, t2;
  for (unsigned long i = 0;; ++i) {
    const Integer ii = i;
    if (ii * ii * q > p * N * N) break;
    Integer qi2 = q * ii * ii;
    mpz_pow_ui(X.get_mpz_t(), qi2.get_mpz_t(), two_k);
    Integer diff = D - X;
    mpz_pow_ui(Y.get_mpz_t(), diff.get_mpz_t(), two_k);
    t1 = Y * ii * ii;
    t2 = (D2k - Y) * ii * N;
    F = t1 + t2;
    const bool ok_upper = F <= ii * N * D2k;
    const bool ok_lower = F >= ii * ii * D2k;
    const bool ok_mono = i == 0 || F > prev;
    if (!ok_upper) out.below_sqrt = false;
    if (!ok_lower) out.above_s = false;
    if (!ok_mono) out.strictly_increasing = false;
    if ((!ok_upper || !ok_lower || !ok_mono) && out.first_failure < 0) out.first_failure = static_cast<long>(i);
    prev = F;
    ++out.points;
  }
  return out;
}

// Folds ---------------------------------------------------------------------

/// Fold of R onto [0, inf) through the parabola double: x^2 below 0,
/// f_{a,k}(x)^2 on [0, a], identity past a.
struct FoldMap1D {
  SmoothingKernel kernel;
};

inline double fold1d(const FoldMap1D& F, double x) {
  if (x < 0.0) return x * x;
  if (x <= F.kernel.a_double()) {
    const double f = kernel_eval(F.kernel, x);
    return f * f;
  }
  return x;
}

/// max |fold1d(x)/x^2 - 1| over x in [-radius, radius] \ {0}.
inline double fold_local_model_check(const FoldMap1D& F, double radius, std::size_t grid = 4096) {
  if (!(radius > 0.0 && radius < F.kernel.a_double() / 2.0))
    throw std::domain_error("fold_local_model_check: radius must lie in (0, a/2)");
  double worst = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double x = radius * static_cast<double>(i) / static_cast<double>(grid);
    // fold1d(x)/x^2 = (1 + delta)^2 with delta = (1 - sigma)(x^{-1/2} - 1); negative side is exact
    const double delta = F.kernel.sigma_pair(x).second * (1.0 / std::sqrt(x) - 1.0);
    worst = std::max(worst, std::abs(delta * (2.0 + delta)));
  }
  return worst;
}

/// Least-squares slope of log(deviation) against log(radius).
inline double fold_local_model_slope(const FoldMap1D& F, std::span<const double> radii) {
  if (radii.size() < 2) throw std::invalid_argument("fold_local_model_slope: need at least two radii");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : radii) {
    const double lx = std::log(r);
    const double ly = std::log(fold_local_model_check(F, r));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(radii.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

struct FoldMap2D {
  std::array<SmoothingKernel, 2> kernels;
};

inline std::array<double, 2> fold2d(const FoldMap2D& F, std::array<double, 2> p) {
  return {fold1d({F.kernels[0]}, p[0]), fold1d({F.kernels[1]}, p[1])};
}

struct QuadrantCoverage {
  bool in_quadrant = true;
  bool axes_preserved = true;
  double hausdorff = 0.0;
  double step = 0.0;
  std::size_t grid = 0;
  bool pass() const { return in_quadrant && axes_preserved && hausdorff <= 2.0 * step; }
};

namespace detail {

/// Uniform bucket grid over [0, extent]^2 for nearest-neighbour queries.
class BucketGrid {
 public:
  BucketGrid(std::span<const std::array<double, 2>> pts, double extent, std::size_t cells)
      : pts_(pts), cells_(cells), cell_(extent / static_cast<double>(cells)), buckets_(cells * cells) {
    for (std::size_t i = 0; i < pts.size(); ++i) buckets_[index(pts[i])].push_back(i);
  }

  double nearest(const std::array<double, 2>& q) const {
    const long cx = clamp_cell(q[0]);
    const long cy = clamp_cell(q[1]);
    double best = std::numeric_limits<double>::infinity();
    const long limit = static_cast<long>(cells_);
    for (long ring = 0; ring <= limit; ++ring) {
      for (long dx = -ring; dx <= ring; ++dx) {
        for (long dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const long x = cx + dx;
          const long y = cy + dy;
          if (x < 0 || y < 0 || x >= limit || y >= limit) continue;
          for (std::size_t i : buckets_[static_cast<std::size_t>(x) * cells_ + static_cast<std::size_t>(y)]) {
            const double ddx = pts_[i][0] - q[0];
            const double ddy = pts_[i][1] - q[1];
            best = std::min(best, std::sqrt(ddx * ddx + ddy * ddy));
          }
        }
      }
      // every unvisited point is at least `ring` cells away
      if (best <= static_cast<double>(ring) * cell_) break;
    }
    return best;
  }

 private:
  long clamp_cell(double v) const {
    const long c = static_cast<long>(std::floor(v / cell_));
    return std::clamp<long>(c, 0, static_cast<long>(cells_) - 1);
  }
  std::size_t index(const std::array<double, 2>& p) const {
    return static_cast<std::size_t>(clamp_cell(p[0])) * cells_ + static_cast<std::size_t>(clamp_cell(p[1]));
  }

  std::span<const std::array<double, 2>> pts_;
  std::size_t cells_;
  double cell_;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace detail

/// Folds a grid x grid lattice over [-a/2, upper]^2 and compares the image
/// with a lattice of the open quadrant box (0, upper)^2 in Hausdorff distance.
inline QuadrantCoverage fold2d_coverage(const FoldMap2D& F, std::size_t grid = 200, double upper = 2.0) {
  if (grid < 2) throw std::invalid_argument("fold2d_coverage: grid must have at least 2 points per axis");
  QuadrantCoverage out;
  out.grid = grid;
  std::array<double, 2> lo{-F.kernels[0].a_double() / 2.0, -F.kernels[1].a_double() / 2.0};
  std::array<double, 2> step{(upper - lo[0]) / static_cast<double>(grid - 1),
                             (upper - lo[1]) / static_cast<double>(grid - 1)};
  out.step = std::max(step[0], step[1]);

  std::vector<std::array<double, 2>> image;
  image.reserve(grid * grid);
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const std::array<double, 2> p{lo[0] + step[0] * static_cast<double>(i), lo[1] + step[1] * static_cast<double>(j)};
      const auto f = fold2d(F, p);
      if (f[0] < 0.0 || f[1] < 0.0) out.in_quadrant = false;
      image.push_back(f);
    }
  }
  for (double x : {-0.7, -0.1, 0.0, 0.05, 0.3, 1.5}) {
    if (fold2d(F, {x, 0.0})[1] != 0.0 || fold2d(F, {0.0, x})[0] != 0.0) out.axes_preserved = false;
  }

  std::vector<std::array<double, 2>> target;
  target.reserve(grid * grid);
  const double tstep = upper / static_cast<double>(grid);
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j)
      target.push_back({(static_cast<double>(i) + 0.5) * tstep, (static_cast<double>(j) + 0.5) * tstep});

  const double extent = std::max(upper, 1.0) * 1.01;
  const detail::BucketGrid image_index(image, extent, grid);
  const detail::BucketGrid target_index(target, extent, grid);
  for (const auto& t : target) out.hausdorff = std::max(out.hausdorff, image_index.nearest(t));
  for (const auto& p : image) out.hausdorff = std::max(out.hausdorff, target_index.nearest(p));
  return out;
}

// Mostowski embedding -------------------------------------------------------

/// x -> (x, 1/h(x)) where h vanishes exactly on the exterior boundary of S.
struct MostowskiMap {
  std::size_t d;
  MultiPoly h;
};

inline std::vector<double> mostowski_embed(const MostowskiMap& M, std::span<const double> x) {
  const double hx = M.h.eval(x);
  if (hx == 0.0) throw std::domain_error("mostowski_embed: h vanishes at the point");
  std::vector<double> out(x.begin(), x.end());
  out.push_back(1.0 / hx);
  return out;
}

inline std::vector<Rational> mostowski_embed(const MostowskiMap& M, std::span<const Rational> x) {
  const Rational hx = M.h.eval(x);
  if (hx == 0) throw std::domain_error("mostowski_embed: h vanishes at the point");
  std::vector<Rational> out(x.begin(), x.end());
  out.push_back(1 / hx);
  return out;
}

template <class T>
std::vector<T> mostowski_project(const MostowskiMap& M, std::span<const T> p) {
  if (p.size() != M.d + 1) throw std::invalid_argument("mostowski_project: wrong dimension");
  return {p.begin(), p.begin() + static_cast<std::ptrdiff_t>(M.d)};
}

/// S = [0, 1) with h(x) = 1 - x.
inline MostowskiMap mostowski_half_open_interval() {
  return {1, MultiPoly::constant(1, 1) - MultiPoly::variable(1, 0)};
}

/// S = open unit disk, h = 1 - x^2 - y^2.
inline MostowskiMap mostowski_open_disk() {
  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  return {2, MultiPoly::constant(2, 1) - x * x - y * y};
}

}  // namespace nashforge
