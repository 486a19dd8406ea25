#pragma once

// Geometric realization of D_s(P_n): a boundary-conforming triangulation of
// the polygon lifted to all 2^s sheets and glued along the zero sets.

#include <nashforge/poly.hpp>
#include <nashforge/region.hpp>
#include <nashforge/topology.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nashforge {

struct PlanarMesh {
  std::vector<ExactPoint2> points;
  std::vector<Point2> coords;
  std::vector<std::vector<std::size_t>> active_edges;  // sorted edge indices the point lies on
  std::vector<std::array<std::size_t, 3>> triangles;
};

/// Fan from the vertex centroid, each fan triangle subdivided into
/// resolution^2 triangles in exact barycentric coordinates. Boundary tags are
/// combinatorial and then confirmed by exact evaluation of the edge forms.
inline PlanarMesh triangulate_polygon(const ConvexPolygon& polygon, std::size_t resolution) {
  if (resolution < 1) throw std::invalid_argument("triangulate_polygon: resolution must be at least 1");
  const std::size_t n = polygon.n();
  const std::size_t r = resolution;
  const ExactPoint2 c = polygon.centroid();
  PlanarMesh mesh;
  std::map<ExactPoint2, std::size_t> index;

  auto intern = [&](const ExactPoint2& p, std::vector<std::size_t> tags) {
    auto [it, inserted] = index.try_emplace(p, mesh.points.size());
    if (inserted) {
      mesh.points.push_back(p);
      mesh.coords.push_back(to_double(p));
      mesh.active_edges.push_back(std::move(tags));
    } else {
      auto& have = mesh.active_edges[it->second];
      have.insert(have.end(), tags.begin(), tags.end());
      std::sort(have.begin(), have.end());
      have.erase(std::unique(have.begin(), have.end()), have.end());
    }
    return it->second;
  };

  for (std::size_t e = 0; e < n; ++e) {
    const ExactPoint2& A = polygon.vertex((e + n - 1) % n);
    const ExactPoint2& B = polygon.vertex(e);
    std::vector<std::vector<std::size_t>> id(r + 1, std::vector<std::size_t>(r + 1, 0));
    for (std::size_t a = 0; a <= r; ++a) {
      for (std::size_t b = 0; a + b <= r; ++b) {
        const Rational wa = make_rational(static_cast<long>(a), static_cast<long>(r));
        const Rational wb = make_rational(static_cast<long>(b), static_cast<long>(r));
        ExactPoint2 p{Rational(c[0] + wa * (A[0] - c[0]) + wb * (B[0] - c[0])),
                      Rational(c[1] + wa * (A[1] - c[1]) + wb * (B[1] - c[1]))};
        std::vector<std::size_t> tags;
        if (a + b == r) {
          tags.push_back(e);
          if (b == 0) tags.push_back((e + n - 1) % n);
          if (a == 0) tags.push_back((e + 1) % n);
          std::sort(tags.begin(), tags.end());
        }
        id[a][b] = intern(p, std::move(tags));
      }
    }
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; a + b < r; ++b) {
        mesh.triangles.push_back({id[a][b], id[a + 1][b], id[a][b + 1]});
        if (a + b + 1 < r) mesh.triangles.push_back({id[a + 1][b], id[a + 1][b + 1], id[a][b + 1]});
      }
    }
  }

  for (std::size_t v = 0; v < mesh.points.size(); ++v) {
    const auto& tags = mesh.active_edges[v];
    for (std::size_t e = 0; e < n; ++e) {
      const Rational h = polygon.edge(e).eval(mesh.points[v]);
      const bool tagged = std::binary_search(tags.begin(), tags.end(), e);
      if (tagged ? h != 0 : h <= 0)
        throw std::logic_error("triangulate_polygon: boundary tag disagrees with exact edge evaluation");
    }
  }
  return mesh;
}

/// Identifies lifted copies of a planar vertex: signs of active classes are masked out.
struct GlueKey {
  std::size_t base_vertex;
  std::uint32_t reduced_signs;  // bit k set means eps_k = -1; masked bits cleared
  friend auto operator<=>(const GlueKey&, const GlueKey&) = default;
};

struct TriangleMesh {
  std::size_t s = 0;
  std::vector<std::vector<double>> vertices;  // (x, y, t_1, ..., t_s)
  std::vector<std::array<std::size_t, 3>> faces;
  std::vector<GlueKey> keys;
  std::size_t planar_vertices = 0;
  std::size_t pre_glue_copies = 0;
};

class NonManifoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using EdgeKey = std::pair<std::size_t, std::size_t>;

inline EdgeKey undirected(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

inline std::map<EdgeKey, std::size_t> edge_incidence(const std::vector<std::array<std::size_t, 3>>& faces) {
  std::map<EdgeKey, std::size_t> count;
  for (const auto& f : faces)
    for (int j = 0; j < 3; ++j) ++count[undirected(f[static_cast<std::size_t>(j)], f[static_cast<std::size_t>((j + 1) % 3)])];
  return count;
}

}  // namespace detail

/// Lifts every planar vertex x to t_k = eps_k sqrt(h_{J_k}(x)) on each of the
/// 2^s sheets, merging copies with equal GlueKey. Vertex ids follow the
/// sorted key order; sheet faces with an odd number of negative signs are
/// reversed so that neighbouring sheets meet with opposite orientation.
inline TriangleMesh build_surface_mesh(const ConvexPolygon& polygon, const EdgePartition& partition,
                                       std::size_t resolution, bool require_closed = true,
                                       const std::vector<std::uint32_t>* only_sheets = nullptr) {
  if (!validate_partition(polygon, partition).valid)
    throw std::invalid_argument("build_surface_mesh: partition violates the compatibility condition");
  const std::size_t s = partition.s();
  if (s > 20) throw std::invalid_argument("build_surface_mesh: too many classes");
  const auto owner = partition.class_of(polygon.n());
  const PlanarMesh planar = triangulate_polygon(polygon, resolution);
  std::vector<FloatPoly> h;
  for (const auto& p : class_polynomials(polygon, partition)) h.emplace_back(p);

  const std::size_t nv = planar.points.size();
  std::vector<std::uint32_t> mask(nv, 0);
  std::vector<std::vector<double>> root(nv, std::vector<double>(s, 0.0));
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t e : planar.active_edges[v]) mask[v] |= std::uint32_t{1} << owner[e];
    for (std::size_t k = 0; k < s; ++k) {
      if (mask[v] & (std::uint32_t{1} << k)) continue;  // exactly on the zero set
      root[v][k] = std::sqrt(std::max(0.0, h[k](planar.coords[v])));
    }
  }

  std::vector<std::uint32_t> sheets;
  if (only_sheets) {
    sheets = *only_sheets;
  } else {
    for (std::uint32_t eps = 0; eps < (std::uint32_t{1} << s); ++eps) sheets.push_back(eps);
  }

  std::set<GlueKey> key_set;
  for (std::uint32_t eps : sheets)
    for (std::size_t v = 0; v < nv; ++v) key_set.insert({v, eps & ~mask[v]});

  TriangleMesh mesh;
  mesh.s = s;
  mesh.planar_vertices = nv;
  mesh.pre_glue_copies = nv * sheets.size();
  std::map<GlueKey, std::size_t> id;
  for (const GlueKey& key : key_set) {
    id.emplace(key, mesh.keys.size());
    mesh.keys.push_back(key);
    std::vector<double> pt{planar.coords[key.base_vertex][0], planar.coords[key.base_vertex][1]};
    for (std::size_t k = 0; k < s; ++k) {
      const bool negative = key.reduced_signs & (std::uint32_t{1} << k);
      pt.push_back(negative ? -root[key.base_vertex][k] : root[key.base_vertex][k]);
    }
    mesh.vertices.push_back(std::move(pt));
  }

  for (std::uint32_t eps : sheets) {
    const bool flip = std::popcount(eps) % 2 == 1;
    for (const auto& tri : planar.triangles) {
      std::array<std::size_t, 3> f{};
      for (std::size_t j = 0; j < 3; ++j) f[j] = id.at({tri[j], eps & ~mask[tri[j]]});
      if (flip) std::swap(f[1], f[2]);
      if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
        throw NonManifoldError("build_surface_mesh: degenerate face after gluing");
      mesh.faces.push_back(f);
    }
  }

  if (require_closed) {
    for (const auto& [edge, count] : detail::edge_incidence(mesh.faces)) {
      if (count != 2)
        throw NonManifoldError("build_surface_mesh: edge (" + std::to_string(edge.first) + ", " +
                               std::to_string(edge.second) + ") borders " + std::to_string(count) + " faces");
    }
  }
  return mesh;
}

/// One sheet, no gluing partner: a disk.
inline TriangleMesh single_sheet_mesh(const ConvexPolygon& polygon, const EdgePartition& partition,
                                      std::size_t resolution, std::uint32_t eps = 0) {
  const std::vector<std::uint32_t> one{eps};
  return build_surface_mesh(polygon, partition, resolution, false, &one);
}

struct MeshEuler {
  long long V = 0;
  long long E = 0;
  long long F = 0;
  long long chi = 0;
  std::size_t components = 0;
  bool closed = true;
};

inline MeshEuler mesh_euler(const std::vector<std::array<std::size_t, 3>>& faces, std::size_t vertex_count,
                            bool require_closed = true) {
  MeshEuler out;
  const auto incidence = detail::edge_incidence(faces);
  for (const auto& [edge, count] : incidence) {
    if (count != 2) out.closed = false;
  }
  if (require_closed && !out.closed) throw NonManifoldError("mesh_euler: mesh is not closed");
  std::set<std::size_t> used;
  for (const auto& f : faces) used.insert(f.begin(), f.end());
  for (std::size_t v : used)
    if (v >= vertex_count) throw std::out_of_range("mesh_euler: face references a missing vertex");
  out.V = static_cast<long long>(used.size());
  out.E = static_cast<long long>(incidence.size());
  out.F = static_cast<long long>(faces.size());
  out.chi = out.V - out.E + out.F;

  std::map<detail::EdgeKey, std::size_t> first_face;
  detail::UnionFind uf(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto key = detail::undirected(faces[i][j], faces[i][(j + 1) % 3]);
      auto [it, inserted] = first_face.try_emplace(key, i);
      if (!inserted) uf.unite(it->second, i);
    }
  }
  out.components = uf.components();
  return out;
}

inline MeshEuler mesh_euler(const TriangleMesh& mesh, bool require_closed = true) {
  return mesh_euler(mesh.faces, mesh.vertices.size(), require_closed);
}

// Export --------------------------------------------------------------------

enum class MeshFormat { obj, ply };
enum class Projection { first3, pca };

/// Rows are 3D positions of the mesh vertices under the chosen projection.
inline std::vector<std::array<double, 3>> project_vertices(const TriangleMesh& mesh, Projection projection) {
  std::vector<std::array<double, 3>> out;
  out.reserve(mesh.vertices.size());
  if (projection == Projection::first3) {
    for (const auto& v : mesh.vertices) out.push_back({v[0], v[1], v.size() > 2 ? v[2] : 0.0});
    return out;
  }
  const std::size_t dim = mesh.vertices.empty() ? 0 : mesh.vertices.front().size();
  const auto rows = static_cast<Eigen::Index>(mesh.vertices.size());
  Eigen::MatrixXd X(rows, static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < dim; ++j) X(i, static_cast<Eigen::Index>(j)) = mesh.vertices[static_cast<std::size_t>(i)][j];
  const Eigen::RowVectorXd mean = X.colwise().mean();
  X.rowwise() -= mean;
  const Eigen::MatrixXd cov = X.transpose() * X / std::max<double>(1.0, static_cast<double>(rows));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::MatrixXd axes(static_cast<Eigen::Index>(dim), 3);
  axes.setZero();
  for (Eigen::Index c = 0; c < 3 && c < static_cast<Eigen::Index>(dim); ++c) {
    Eigen::VectorXd axis = eig.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1 - c);
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0) axis = -axis;  // fix the eigenvector sign
    axes.col(c) = axis;
  }
  const Eigen::MatrixXd Y = X * axes;
  for (Eigen::Index i = 0; i < rows; ++i) out.push_back({Y(i, 0), Y(i, 1), Y(i, 2)});
  return out;
}

namespace detail {

inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

inline std::string render_mesh(const TriangleMesh& mesh, MeshFormat format, Projection projection) {
  const auto pos = project_vertices(mesh, projection);
  std::ostringstream os;
  if (format == MeshFormat::obj) {
    os << "# D_s(P_n) surface mesh: " << pos.size() << " vertices, " << mesh.faces.size() << " faces\n";
    for (const auto& p : pos)
      os << "v " << detail::format_double(p[0]) << ' ' << detail::format_double(p[1]) << ' '
         << detail::format_double(p[2]) << '\n';
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  } else {
    os << "ply\nformat ascii 1.0\n"
       << "element vertex " << pos.size() << "\n"
       << "property double x\nproperty double y\nproperty double z\n"
       << "element face " << mesh.faces.size() << "\n"
       << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& p : pos)
      os << detail::format_double(p[0]) << ' ' << detail::format_double(p[1]) << ' '
         << detail::format_double(p[2]) << '\n';
    for (const auto& f : mesh.faces) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
  return os.str();
}

inline void export_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format, Projection projection) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("export_mesh: cannot open '" + path + "' for writing");
  out << render_mesh(mesh, format, projection);
  if (!out) throw std::runtime_error("export_mesh: write to '" + path + "' failed");
}

struct ParsedMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> faces;
};

/// Reads back the ASCII PLY written by render_mesh.
inline ParsedMesh parse_ply(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t nv = 0, nf = 0;
  if (!std::getline(in, line) || line != "ply") throw std::runtime_error("parse_ply: missing magic");
  while (std::getline(in, line) && line != "end_header") {
    std::istringstream ls(line);
    std::string word, kind;
    ls >> word;
    if (word == "element") {
      std::size_t count = 0;
      ls >> kind >> count;
      if (kind == "vertex") nv = count;
      else if (kind == "face") nf = count;
    }
  }
  if (line != "end_header") throw std::runtime_error("parse_ply: missing end_header");
  ParsedMesh out;
  out.vertices.resize(nv);
  for (auto& v : out.vertices)
    if (!(in >> v[0] >> v[1] >> v[2])) throw std::runtime_error("parse_ply: truncated vertex list");
  out.faces.resize(nf);
  for (auto& f : out.faces) {
    int k = 0;
    if (!(in >> k >> f[0] >> f[1] >> f[2]) || k != 3) throw std::runtime_error("parse_ply: bad face record");
  }
  return out;
}

}  // namespace nashforge
