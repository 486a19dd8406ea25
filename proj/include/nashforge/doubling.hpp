#pragma once

// The double D(Q) = {(x, t) : t_k^2 - h_k(x) = 0} of a corner region, its
// sheets, Jacobian rank checks and the explicit charts over it.
//
// Variables are ordered (x_1..x_d, t_1..t_l); Jacobian columns follow it.

#include <nashforge/parallel.hpp>
#include <nashforge/poly.hpp>
#include <nashforge/region.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

inline constexpr double kLiftClamp = 1e-12;
inline constexpr double kResidualTol = 1e-10;
inline constexpr double kSmoothThreshold = 1e-8;

struct SheetPoint {
  std::vector<double> x;
  std::vector<int> signs;  // -1, 0 or +1; 0 exactly on the zero set of h_k
  std::vector<double> t;
};

class DoubledVariety {
 public:
  explicit DoubledVariety(CornerRegion base) : base_(std::move(base)) {
    const std::size_t d = base_.d();
    const std::size_t l = base_.size();
    equations_.reserve(l);
    for (std::size_t k = 0; k < l; ++k) {
      const MultiPoly& h = base_.ineqs()[k];
      MultiPoly t = MultiPoly::variable(d + l, d + k);
      equations_.push_back(t * t - h.embed(d + l, 0));
      h_.emplace_back(h);
      std::vector<FloatPoly> grad;
      for (const auto& g : gradient(h)) grad.emplace_back(g);
      grad_h_.push_back(std::move(grad));
    }
  }

  const CornerRegion& base() const { return base_; }
  std::size_t base_dim() const { return base_.d(); }
  std::size_t sheet_dim() const { return base_.size(); }
  std::size_t ambient_dim() const { return base_.d() + base_.size(); }
  const std::vector<MultiPoly>& equations() const { return equations_; }

  double h(std::size_t k, std::span<const double> x) const { return h_[k](x); }
  double dh(std::size_t k, std::size_t j, std::span<const double> x) const { return grad_h_[k][j](x); }

  /// Residuals t_k^2 - h_k(x).
  std::vector<double> residuals(const SheetPoint& p) const {
    std::vector<double> r(sheet_dim());
    for (std::size_t k = 0; k < sheet_dim(); ++k) r[k] = p.t[k] * p.t[k] - h(k, p.x);
    return r;
  }

  double max_residual(const SheetPoint& p) const {
    double worst = 0.0;
    for (double r : residuals(p)) worst = std::max(worst, std::abs(r));
    return worst;
  }

 private:
  CornerRegion base_;
  std::vector<MultiPoly> equations_;
  std::vector<FloatPoly> h_;
  std::vector<std::vector<FloatPoly>> grad_h_;
};

inline DoubledVariety build_double(CornerRegion region) { return DoubledVariety(std::move(region)); }

/// (x, eps_1 sqrt(h_1(x)), ..., eps_l sqrt(h_l(x))). Values with |h_k| <= 1e-12
/// are clamped to the zero set, where the sign is forced to 0.
inline SheetPoint lift(const DoubledVariety& v, std::span<const double> x, std::span<const int> eps) {
  if (x.size() != v.base_dim()) throw std::invalid_argument("lift: base point has wrong dimension");
  if (eps.size() != v.sheet_dim()) throw std::invalid_argument("lift: sign vector has wrong length");
  SheetPoint p;
  p.x.assign(x.begin(), x.end());
  p.signs.resize(v.sheet_dim());
  p.t.resize(v.sheet_dim());
  for (std::size_t k = 0; k < v.sheet_dim(); ++k) {
    if (eps[k] != 1 && eps[k] != -1) throw std::invalid_argument("lift: signs must be +1 or -1");
    const double hk = v.h(k, x);
    if (hk < -kLiftClamp)
      throw std::domain_error("lift: point lies outside {h_" + std::to_string(k + 1) + " >= 0}");
    if (std::abs(hk) <= kLiftClamp) {
      p.signs[k] = 0;
      p.t[k] = 0.0;
    } else {
      p.signs[k] = eps[k];
      p.t[k] = eps[k] * std::sqrt(hk);
    }
  }
  return p;
}

inline std::vector<double> project(const DoubledVariety&, const SheetPoint& p) { return p.x; }

/// Row k is the gradient of t_k^2 - h_k(x) at p.
inline Eigen::MatrixXd jacobian_at(const DoubledVariety& v, const SheetPoint& p) {
  const std::size_t d = v.base_dim();
  const std::size_t l = v.sheet_dim();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(d + l));
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t j = 0; j < d; ++j)
      J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = -v.dh(k, j, p.x);
    J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d + k)) = 2.0 * p.t[k];
  }
  return J;
}

/// Smallest of the min(rows, cols) singular values.
inline double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

/// Number of distinct points over x across all 2^l sign vectors.
inline std::size_t count_distinct_lifts(const DoubledVariety& v, std::span<const double> x) {
  const std::size_t l = v.sheet_dim();
  if (l > 20) throw std::invalid_argument("count_distinct_lifts: too many sheets to enumerate");
  std::set<std::vector<double>> seen;
  std::vector<int> eps(l);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    for (std::size_t k = 0; k < l; ++k) eps[k] = (mask >> k) & 1U ? -1 : 1;
    seen.insert(lift(v, x, eps).t);
  }
  return seen.size();
}

/// A partitioned polygon with its double D_s(P_n).
struct DoubledPolygon {
  ConvexPolygon polygon;
  EdgePartition partition;
  DoubledVariety variety;
};

inline DoubledPolygon double_polygon(const ConvexPolygon& polygon, const EdgePartition& partition,
                                     bool require_valid = true) {
  return {polygon, partition, build_double(polygon_class_region(polygon, partition, require_valid))};
}

enum class Stratum { interior, facet, vertex };

inline const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::interior: return "interior";
    case Stratum::facet: return "facet";
    case Stratum::vertex: return "vertex";
  }
  return "?";
}

struct SmoothReport {
  bool pass = false;
  double min_sigma = std::numeric_limits<double>::infinity();
  SheetPoint worst_point;
  Stratum worst_stratum = Stratum::interior;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  std::size_t interior_samples = 0;
  std::size_t facet_samples = 0;
  std::size_t vertex_samples = 0;
};

namespace detail {

struct SampleOutcome {
  double sigma;
  double residual;
  SheetPoint point;
  Stratum stratum;
};

inline Point2 lerp(const Point2& a, const Point2& b, double u) {
  return {a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])};
}

}  // namespace detail

/// Stratified Jacobian rank check over D_s(P_n). Sample i falls in stratum
/// i mod 3 (interior, facet, vertex). Vertex samples cycle deterministically
/// through every (vertex, sign vector) pair; the rest draw from a per-batch
/// generator seeded by (seed, batch). The min-reduction runs in batch order,
/// so the report does not depend on the worker count.
inline SmoothReport verify_smooth(const DoubledPolygon& dp, std::size_t samples, std::uint64_t seed,
                                  std::size_t threads = 1) {
  if (samples < 1) throw std::invalid_argument("verify_smooth: need at least one sample");
  const DoubledVariety& v = dp.variety;
  const std::size_t n = dp.polygon.n();
  const std::size_t l = v.sheet_dim();
  std::vector<Point2> verts;
  for (const auto& p : dp.polygon.vertices()) verts.push_back(to_double(p));
  const std::size_t sign_patterns = std::size_t{1} << l;

  constexpr std::size_t kBatch = 512;
  const std::size_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<detail::SampleOutcome> best(batches);
  std::vector<std::size_t> strata_counts(batches * 3, 0);

  parallel_for(batches, threads, [&](std::size_t b) {
    Rng rng(splitmix64(seed ^ splitmix64(b)));
    const std::size_t lo = b * kBatch;
    const std::size_t hi = std::min(samples, lo + kBatch);
    best[b] = {std::numeric_limits<double>::infinity(), 0.0, {}, Stratum::interior};
    std::vector<int> eps(l);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto stratum = static_cast<Stratum>(i % 3);
      Point2 x{};
      switch (stratum) {
        case Stratum::interior: {
          double total = 0.0;
          x = {0.0, 0.0};
          for (const auto& vert : verts) {
            const double w = -std::log(rng.uniform_open());
            total += w;
            x[0] += w * vert[0];
            x[1] += w * vert[1];
          }
          x[0] /= total;
          x[1] /= total;
          for (auto& e : eps) e = rng.uniform() < 0.5 ? -1 : 1;
          break;
        }
        case Stratum::facet: {
          const std::size_t edge = rng.below(n);
          x = detail::lerp(verts[(edge + n - 1) % n], verts[edge], rng.uniform_open());
          for (auto& e : eps) e = rng.uniform() < 0.5 ? -1 : 1;
          break;
        }
        case Stratum::vertex: {
          const std::size_t combo = (i / 3) % (n * sign_patterns);
          x = verts[combo / sign_patterns];
          const std::size_t bits = combo % sign_patterns;
          for (std::size_t k = 0; k < l; ++k) eps[k] = (bits >> k) & 1U ? -1 : 1;
          break;
        }
      }
      ++strata_counts[b * 3 + static_cast<std::size_t>(stratum)];
      SheetPoint p = lift(v, x, eps);
      const double sigma = smallest_singular_value(jacobian_at(v, p));
      const double res = v.max_residual(p);
      best[b].residual = std::max(best[b].residual, res);
      if (sigma < best[b].sigma) best[b] = {sigma, best[b].residual, std::move(p), stratum};
    }
  });

  SmoothReport report;
  report.samples = samples;
  report.seed = seed;
  for (std::size_t b = 0; b < batches; ++b) {
    report.max_residual = std::max(report.max_residual, best[b].residual);
    if (best[b].sigma < report.min_sigma) {
      report.min_sigma = best[b].sigma;
      report.worst_point = best[b].point;
      report.worst_stratum = best[b].stratum;
    }
    report.interior_samples += strata_counts[b * 3 + 0];
    report.facet_samples += strata_counts[b * 3 + 1];
    report.vertex_samples += strata_counts[b * 3 + 2];
  }
  report.pass = report.min_sigma > kSmoothThreshold;
  return report;
}

/// Minimum smallest singular value over explicit lifted points.
inline double min_sigma_at(const DoubledVariety& v, std::span<const SheetPoint> points) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, smallest_singular_value(jacobian_at(v, p)));
  return best;
}

// ---------------------------------------------------------------------------
// Charts

/// lambda = numerator / denominator; must stay strictly positive on the chart.
struct PositiveRatio {
  MultiPoly numerator;
  MultiPoly denominator;

  double operator()(std::span<const double> x) const { return numerator.eval(x) / denominator.eval(x); }
};

/// Affine chart u(x) = A x + b on the base together with lambda_k such that
/// u_k = h_{folded[k]} * lambda_k for the first m coordinates.
struct ChartSpec {
  std::vector<std::size_t> folded;  // equation index carried by chart coordinate k < m
  Eigen::MatrixXd linear;           // A, d x d, invertible
  Eigen::VectorXd offset;           // b
  std::vector<PositiveRatio> lambdas;
  std::vector<double> box_lo;  // sampling box in chart coordinates y
  std::vector<double> box_hi;

  std::size_t m() const { return folded.size(); }
};

class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline Eigen::VectorXd to_eigen(std::span<const double> x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out(static_cast<Eigen::Index>(i)) = x[i];
  return out;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace detail

/// v(x, t) = (t_{f(1)} sqrt(lambda_1(x)), ..., t_{f(m)} sqrt(lambda_m(x)), u_{m+1}(x), ..., u_d(x)).
inline std::vector<double> chart_forward(const DoubledVariety& v, const ChartSpec& spec, const SheetPoint& p) {
  const Eigen::VectorXd u = spec.linear * detail::to_eigen(p.x) + spec.offset;
  std::vector<double> y(v.base_dim());
  for (std::size_t k = 0; k < v.base_dim(); ++k) {
    if (k < spec.m()) {
      const double lam = spec.lambdas[k](p.x);
      if (!(lam > 0)) throw ChartError("chart: lambda_" + std::to_string(k + 1) + " is not positive");
      y[k] = p.t[spec.folded[k]] * std::sqrt(lam);
    } else {
      y[k] = u(static_cast<Eigen::Index>(k));
    }
  }
  return y;
}

/// Inverse of chart_forward: x = u^{-1}(y_1^2, ..., y_m^2, y_{m+1}, ..., y_d),
/// t_{f(k)} = y_k / sqrt(lambda_k(x)), remaining t_j = sqrt(h_j(x)).
inline SheetPoint chart_inverse(const DoubledVariety& v, const ChartSpec& spec, std::span<const double> y) {
  const std::size_t d = v.base_dim();
  const std::size_t l = v.sheet_dim();
  Eigen::VectorXd target(static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k)
    target(static_cast<Eigen::Index>(k)) = k < spec.m() ? y[k] * y[k] : y[k];
  const Eigen::VectorXd xe = spec.linear.partialPivLu().solve(target - spec.offset);
  SheetPoint p;
  p.x = detail::to_std(xe);
  p.t.assign(l, 0.0);
  p.signs.assign(l, 0);
  std::vector<bool> is_folded(l, false);
  for (std::size_t k = 0; k < spec.m(); ++k) {
    const std::size_t eq = spec.folded[k];
    is_folded[eq] = true;
    const double lam = spec.lambdas[k](p.x);
    if (!(lam > 0)) throw ChartError("chart: lambda_" + std::to_string(k + 1) + " is not positive");
    p.t[eq] = y[k] / std::sqrt(lam);
    p.signs[eq] = p.t[eq] > 0 ? 1 : (p.t[eq] < 0 ? -1 : 0);
  }
  for (std::size_t j = 0; j < l; ++j) {
    if (is_folded[j]) continue;
    const double hj = v.h(j, p.x);
    if (!(hj > 0)) throw ChartError("chart: sample leaves {t_" + std::to_string(j + 1) + " > 0}");
    p.t[j] = std::sqrt(hj);
    p.signs[j] = 1;
  }
  return p;
}

struct ChartRoundtrip {
  double max_error = 0.0;       // max over both compositions
  double max_residual = 0.0;    // equations at chart_inverse outputs
  double max_factor_error = 0.0;  // |u_k - h_k lambda_k|
  std::size_t samples = 0;
};

/// Samples y in the chart box; measures |v(phi(y)) - y| and |phi(v(p)) - p|.
inline ChartRoundtrip chart_roundtrip(const DoubledVariety& v, const ChartSpec& spec, std::size_t samples,
                                      std::uint64_t seed = 1) {
  const std::size_t d = v.base_dim();
  if (spec.linear.rows() != static_cast<Eigen::Index>(d) || spec.linear.cols() != static_cast<Eigen::Index>(d))
    throw std::invalid_argument("chart_roundtrip: chart matrix has wrong shape");
  if (spec.lambdas.size() != spec.m() || spec.m() == 0 || spec.m() > d)
    throw std::invalid_argument("chart_roundtrip: need 1 <= m <= d lambdas");
  if (spec.box_lo.size() != d || spec.box_hi.size() != d)
    throw std::invalid_argument("chart_roundtrip: sampling box has wrong dimension");
  Rng rng(seed);
  ChartRoundtrip out;
  out.samples = samples;
  std::vector<double> y(d);
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < d; ++k) y[k] = rng.uniform(spec.box_lo[k], spec.box_hi[k]);
    const SheetPoint p = chart_inverse(v, spec, y);
    out.max_residual = std::max(out.max_residual, v.max_residual(p));
    const Eigen::VectorXd u = spec.linear * detail::to_eigen(p.x) + spec.offset;
    for (std::size_t k = 0; k < spec.m(); ++k) {
      const double prod = v.h(spec.folded[k], p.x) * spec.lambdas[k](p.x);
      out.max_factor_error = std::max(out.max_factor_error, std::abs(u(static_cast<Eigen::Index>(k)) - prod));
    }
    const std::vector<double> back = chart_forward(v, spec, p);
    for (std::size_t k = 0; k < d; ++k) out.max_error = std::max(out.max_error, std::abs(back[k] - y[k]));
    const SheetPoint again = chart_inverse(v, spec, back);
    for (std::size_t k = 0; k < d; ++k) out.max_error = std::max(out.max_error, std::abs(again.x[k] - p.x[k]));
    for (std::size_t k = 0; k < v.sheet_dim(); ++k)
      out.max_error = std::max(out.max_error, std::abs(again.t[k] - p.t[k]));
  }
  if (out.max_factor_error > 1e-9)
    throw ChartError("chart_roundtrip: u_k differs from h_k * lambda_k on the samples");
  return out;
}

// Built-in charts.

/// D of {x >= 0} in R: the parabola t^2 = x, u = x, lambda = 1.
inline std::pair<DoubledVariety, ChartSpec> parabola_chart() {
  CornerRegion q(1, {MultiPoly::variable(1, 0)}, {Rational(1)});
  ChartSpec spec;
  spec.folded = {0};
  spec.linear = Eigen::MatrixXd::Identity(1, 1);
  spec.offset = Eigen::VectorXd::Zero(1);
  spec.lambdas = {{MultiPoly::constant(1, 1), MultiPoly::constant(1, 1)}};
  spec.box_lo = {-2.0};
  spec.box_hi = {2.0};
  return {build_double(std::move(q)), std::move(spec)};
}

/// D of the quadrant {x >= 0, y >= 0}, chart folding the first coordinate.
inline std::pair<DoubledVariety, ChartSpec> quadrant_chart() {
  CornerRegion q(2, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)}, {Rational(1), Rational(1)});
  ChartSpec spec;
  spec.folded = {0};
  spec.linear = Eigen::MatrixXd::Identity(2, 2);
  spec.offset = Eigen::VectorXd::Zero(2);
  spec.lambdas = {{MultiPoly::constant(2, 1), MultiPoly::constant(2, 1)}};
  spec.box_lo = {-1.0, 0.01};
  spec.box_hi = {1.0, 2.0};
  return {build_double(std::move(q)), std::move(spec)};
}

/// Chart of D_s(P_n) around the middle of edge `edge`: u_1 = h_edge (so
/// lambda_1 = 1 / product of the other forms in its class), u_2 runs along the
/// edge. The box keeps u_1 <= depth^2 and u_2 in the central `span` of the edge.
inline ChartSpec facet_chart(const DoubledPolygon& dp, std::size_t edge, double depth = 0.3, double span = 0.6) {
  const std::size_t n = dp.polygon.n();
  const auto owner = dp.partition.class_of(n);
  const LinearForm& form = dp.polygon.edge(edge);
  const double a = form.coefficients[0].get_d();
  const double b = form.coefficients[1].get_d();
  ChartSpec spec;
  spec.folded = {owner[edge]};
  spec.linear.resize(2, 2);
  spec.linear << a, b, -b, a;
  spec.offset.resize(2);
  spec.offset << form.constant.get_d(), 0.0;
  MultiPoly others = MultiPoly::constant(2, 1);
  for (std::size_t i : dp.partition.classes[owner[edge]])
    if (i != edge) others *= dp.polygon.edge(i).to_poly();
  spec.lambdas = {{MultiPoly::constant(2, 1), std::move(others)}};
  const Point2 p0 = to_double(dp.polygon.vertex((edge + n - 1) % n));
  const Point2 p1 = to_double(dp.polygon.vertex(edge));
  const double s0 = -b * p0[0] + a * p0[1];
  const double s1 = -b * p1[0] + a * p1[1];
  const double mid = 0.5 * (s0 + s1);
  const double half = 0.5 * span * std::abs(s1 - s0);
  spec.box_lo = {-depth, mid - half};
  spec.box_hi = {depth, mid + half};
  return spec;
}

}  // namespace nashforge
