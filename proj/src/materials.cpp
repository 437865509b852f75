#include "morph/materials.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace morph {

double interpolate_property(const MaterialPair& pair, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("interpolate_property: rho outside [0, 1]");
  if (!(pair.penalization_p >= 1.0)) {
    throw std::invalid_argument("interpolate_property: penalization exponent must be >= 1");
  }
  return pair.psi1 + std::pow(rho, pair.penalization_p) * (pair.psi2 - pair.psi1);
}

void DensityField::validate() const {
  if (nx < 2 || ny < 2) throw std::invalid_argument("density field needs at least 2 x 2 samples");
  if (rho.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw std::invalid_argument("density field size does not match nx * ny");
  }
  if (!(cell_size > 0.0)) throw std::invalid_argument("density field cell_size must be positive");
  for (double r : rho) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("density values must lie in [0, 1]");
  }
}

double DensityField::sample(const Vec2& p) const {
  const double gx = std::clamp(p.x() / cell_size, 0.0, static_cast<double>(nx - 1));
  const double gy = std::clamp(p.y() / cell_size, 0.0, static_cast<double>(ny - 1));
  const int i = std::min(static_cast<int>(gx), nx - 2);
  const int j = std::min(static_cast<int>(gy), ny - 2);
  const double u = gx - i, v = gy - j;
  return (1 - u) * (1 - v) * at(i, j) + u * (1 - v) * at(i + 1, j) + u * v * at(i + 1, j + 1) +
         (1 - u) * v * at(i, j + 1);
}

namespace {

struct PolyVertex {
  std::uint32_t id;
  bool crossing;
};

// Marching-squares cell polygons over the lattice, with shared vertex ids
// for lattice corners and edge crossings.
class CellPolygons {
 public:
  CellPolygons(const DensityField& f, double level, Phase phase)
      : f_(f), level_(level), phase_(phase) {
    f.validate();
    n_corners_ = static_cast<std::uint32_t>(f.nx * f.ny);
    n_hedges_ = static_cast<std::uint32_t>((f.nx - 1) * f.ny);
  }

  // Visits every active polygon, counter-clockwise.
  template <class Fn>
  void for_each(Fn&& fn) {
    for (int j = 0; j + 1 < f_.ny; ++j) {
      for (int i = 0; i + 1 < f_.nx; ++i) cell(i, j, fn);
    }
  }

  Vec2 position(std::uint32_t id) const {
    auto it = positions_.find(id);
    return it->second;
  }

 private:
  bool active(double v) const { return phase_ == Phase::Material2 ? v >= level_ : v < level_; }

  std::uint32_t corner(int i, int j) {
    const auto id = static_cast<std::uint32_t>(j * f_.nx + i);
    positions_.try_emplace(id, Vec2(i * f_.cell_size, j * f_.cell_size));
    return id;
  }

  // Crossing on the edge from lattice point (i, j) to (i + di, j + dj).
  PolyVertex crossing(int i, int j, int di, int dj) {
    const double va = f_.at(i, j), vb = f_.at(i + di, j + dj);
    const double t = (level_ - va) / (vb - va);
    if (t <= 0.0) return {corner(i, j), false};
    if (t >= 1.0) return {corner(i + di, j + dj), false};
    const std::uint32_t id =
        di == 1 ? n_corners_ + static_cast<std::uint32_t>(j * (f_.nx - 1) + i)
                : n_corners_ + n_hedges_ + static_cast<std::uint32_t>(j * f_.nx + i);
    positions_.try_emplace(id, Vec2((i + t * di) * f_.cell_size, (j + t * dj) * f_.cell_size));
    return {id, true};
  }

  template <class Fn>
  void cell(int i, int j, Fn& fn) {
    const std::array<std::array<int, 2>, 4> c = {{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
    std::array<bool, 4> on{};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double v = f_.at(c[k][0], c[k][1]);
      on[k] = active(v);
      sum += v;
    }
    if (!on[0] && !on[1] && !on[2] && !on[3]) return;

    // Edge k runs from corner k to corner k + 1; crossings are computed on
    // the canonical lattice direction so neighbouring cells agree.
    auto edge_crossing = [&](int k) {
      switch (k) {
        case 0: return crossing(i, j, 1, 0);
        case 1: return crossing(i + 1, j, 0, 1);
        case 2: return crossing(i, j + 1, 1, 0);
        default: return crossing(i, j, 0, 1);
      }
    };

    std::vector<PolyVertex> walk;
    std::array<int, 4> corner_pos{-1, -1, -1, -1};
    std::array<int, 4> cross_pos{-1, -1, -1, -1};
    for (int k = 0; k < 4; ++k) {
      if (on[k]) {
        corner_pos[k] = static_cast<int>(walk.size());
        walk.push_back({corner(c[k][0], c[k][1]), false});
      }
      if (on[k] != on[(k + 1) % 4]) {
        cross_pos[k] = static_cast<int>(walk.size());
        walk.push_back(edge_crossing(k));
      }
    }

    const bool saddle = on[0] == on[2] && on[1] == on[3] && on[0] != on[1];
    if (saddle && !active(0.25 * sum)) {
      // Disconnected: one triangle around each active corner.
      if (on[0]) {
        emit({walk[corner_pos[0]], walk[cross_pos[0]], walk[cross_pos[3]]}, fn);
        emit({walk[cross_pos[1]], walk[corner_pos[2]], walk[cross_pos[2]]}, fn);
      } else {
        emit({walk[cross_pos[0]], walk[corner_pos[1]], walk[cross_pos[1]]}, fn);
        emit({walk[cross_pos[2]], walk[corner_pos[3]], walk[cross_pos[3]]}, fn);
      }
      return;
    }
    emit(std::move(walk), fn);
  }

  template <class Fn>
  void emit(std::vector<PolyVertex> poly, Fn& fn) {
    // Snapped crossings can repeat a corner id.
    std::vector<PolyVertex> clean;
    for (const PolyVertex& v : poly) {
      if (clean.empty() || clean.back().id != v.id) clean.push_back(v);
    }
    while (clean.size() > 1 && clean.front().id == clean.back().id) clean.pop_back();
    if (clean.size() >= 3) fn(clean);
  }

  const DensityField& f_;
  double level_;
  Phase phase_;
  std::uint32_t n_corners_ = 0;
  std::uint32_t n_hedges_ = 0;
  std::unordered_map<std::uint32_t, Vec2> positions_;
};

}  // namespace

std::vector<Polyline> extract_interface(const DensityField& field, double level, Phase phase) {
  CellPolygons cells(field, level, phase);

  // Directed interface segments, active side on the left.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> segments;
  cells.for_each([&](const std::vector<PolyVertex>& poly) {
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const PolyVertex& a = poly[k];
      const PolyVertex& b = poly[(k + 1) % poly.size()];
      if (a.crossing && b.crossing) segments.emplace_back(a.id, b.id);
    }
  });

  std::unordered_map<std::uint32_t, std::size_t> outgoing;
  std::unordered_map<std::uint32_t, std::size_t> incoming;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    outgoing.emplace(segments[s].first, s);
    incoming.emplace(segments[s].second, s);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> lines;
  auto trace = [&](std::size_t start, bool closed) {
    Polyline line;
    line.closed = closed;
    line.points.push_back(cells.position(segments[start].first));
    std::size_t s = start;
    while (!used[s]) {
      used[s] = true;
      const std::uint32_t to = segments[s].second;
      if (closed && to == segments[start].first) break;
      line.points.push_back(cells.position(to));
      auto next = outgoing.find(to);
      if (next == outgoing.end()) break;
      s = next->second;
    }
    lines.push_back(std::move(line));
  };

  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s] && incoming.count(segments[s].first) == 0) trace(s, false);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) trace(s, true);
  }
  return lines;
}

double PlanarRegion::area() const {
  double a = 0.0;
  for (const auto& t : triangles) {
    const Vec2 e1 = vertices[t[1]] - vertices[t[0]];
    const Vec2 e2 = vertices[t[2]] - vertices[t[0]];
    a += 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
  }
  return a;
}

PlanarRegion active_region(const DensityField& field, double level, Phase phase) {
  CellPolygons cells(field, level, phase);
  PlanarRegion region;
  std::unordered_map<std::uint32_t, std::uint32_t> compact;
  auto index_of = [&](std::uint32_t id) {
    auto [it, inserted] = compact.try_emplace(id, static_cast<std::uint32_t>(region.vertices.size()));
    if (inserted) region.vertices.push_back(cells.position(id));
    return it->second;
  };
  cells.for_each([&](const std::vector<PolyVertex>& poly) {
    const std::uint32_t v0 = index_of(poly[0].id);
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
      region.triangles.push_back({v0, index_of(poly[k].id), index_of(poly[k + 1].id)});
    }
  });
  return region;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) { return cross2(b - a, c - a); };
  auto on_segment = [](const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
  };
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(b - a, p - a) >= 0 && cross2(c - b, p - b) >= 0 && cross2(a - c, p - c) >= 0;
}

}  // namespace

PlanarRegion region_from_polygon(const std::vector<Vec2>& outline) {
  const std::size_t n = outline.size();
  if (n < 3) throw std::invalid_argument("region_from_polygon: need at least three vertices");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool adjacent = b == a + 1 || (a == 0 && b == n - 1);
      if (adjacent) continue;
      if (segments_intersect(outline[a], outline[(a + 1) % n], outline[b], outline[(b + 1) % n])) {
        throw std::invalid_argument("region_from_polygon: contour self-intersects");
      }
    }
  }

  PlanarRegion region;
  region.vertices = outline;
  std::vector<std::uint32_t> ring(n);
  std::iota(ring.begin(), ring.end(), 0u);
  double twice_area = 0.0;
  for (std::size_t k = 0; k < n; ++k) twice_area += cross2(outline[k], outline[(k + 1) % n]);
  if (twice_area < 0) std::reverse(ring.begin(), ring.end());
  if (twice_area == 0) throw std::invalid_argument("region_from_polygon: zero-area contour");

  while (ring.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < ring.size() && !clipped; ++k) {
      const std::uint32_t ia = ring[(k + ring.size() - 1) % ring.size()];
      const std::uint32_t ib = ring[k];
      const std::uint32_t ic = ring[(k + 1) % ring.size()];
      const Vec2 &a = outline[ia], &b = outline[ib], &c = outline[ic];
      if (cross2(b - a, c - b) <= 0) continue;  // reflex or collinear
      bool empty = true;
      for (std::uint32_t other : ring) {
        if (other == ia || other == ib || other == ic) continue;
        if (point_in_triangle(outline[other], a, b, c)) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      region.triangles.push_back({ia, ib, ic});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
    }
    if (!clipped) throw std::invalid_argument("region_from_polygon: polygon could not be triangulated");
  }
  region.triangles.push_back({ring[0], ring[1], ring[2]});
  return region;
}

TriangleMesh extrude_to_mesh(const PlanarRegion& region, double depth) {
  if (!(depth > 0.0)) throw std::invalid_argument("extrude_to_mesh: depth must be positive");
  TriangleMesh mesh;
  const auto n = static_cast<std::uint32_t>(region.vertices.size());
  mesh.vertices.reserve(2 * n);
  for (const Vec2& v : region.vertices) mesh.vertices.emplace_back(v.x(), v.y(), 0.0);
  for (const Vec2& v : region.vertices) mesh.vertices.emplace_back(v.x(), v.y(), depth);

  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& t : region.triangles) {
    mesh.faces.push_back({t[0] + n, t[1] + n, t[2] + n});  // top, +z
    mesh.faces.push_back({t[0], t[2], t[1]});              // bottom, -z
    for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
  }
  // Boundary edges have no reverse twin; the region lies on their left.
  for (const auto& [edge, count] : directed) {
    const auto [u, v] = edge;
    if (directed.count({v, u}) != 0) continue;
    for (int c = 0; c < count; ++c) {
      mesh.faces.push_back({u, v, v + n});
      mesh.faces.push_back({u, v + n, u + n});
    }
  }
  return mesh;
}

double signed_volume(const TriangleMesh& mesh) {
  double v = 0.0;
  for (const auto& f : mesh.faces) {
    v += mesh.vertices[f[0]].dot(mesh.vertices[f[1]].cross(mesh.vertices[f[2]]));
  }
  return v / 6.0;
}

MeshTopology mesh_topology(const TriangleMesh& mesh) {
  MeshTopology topo;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) ++directed[{f[k], f[(k + 1) % 3]}];
  }
  topo.edge_manifold = true;
  for (const auto& [edge, count] : directed) {
    auto twin = directed.find({edge.second, edge.first});
    if (count != 1 || twin == directed.end() || twin->second != 1) {
      topo.edge_manifold = false;
      break;
    }
  }

  std::vector<std::uint32_t> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& f : mesh.faces) {
    parent[find(f[1])] = find(f[0]);
    parent[find(f[2])] = find(f[0]);
  }

  std::map<std::uint32_t, std::size_t> component_of;
  std::vector<bool> used(mesh.vertices.size(), false);
  for (const auto& f : mesh.faces) {
    for (auto v : f) used[v] = true;
  }
  std::vector<long> verts, edges, faces;
  auto slot = [&](std::uint32_t v) {
    auto [it, inserted] = component_of.try_emplace(find(v), verts.size());
    if (inserted) {
      verts.push_back(0);
      edges.push_back(0);
      faces.push_back(0);
    }
    return it->second;
  };
  for (std::uint32_t v = 0; v < mesh.vertices.size(); ++v) {
    if (used[v]) ++verts[slot(v)];
  }
  for (const auto& f : mesh.faces) ++faces[slot(f[0])];
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> undirected;
  for (const auto& [edge, count] : directed) {
    const auto key = std::minmax(edge.first, edge.second);
    if (undirected.try_emplace({key.first, key.second}, true).second) ++edges[slot(edge.first)];
  }
  topo.components = verts.size();
  for (std::size_t c = 0; c < verts.size(); ++c) {
    topo.euler_characteristics.push_back(verts[c] - edges[c] + faces[c]);
  }
  return topo;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + b])) << (8 * b);
  return v;
}

}  // namespace

std::string export_stl(const TriangleMesh& mesh) {
  for (const Vec3& v : mesh.vertices) {
    if (!v.allFinite()) throw std::invalid_argument("export_stl: non-finite vertex coordinate");
  }
  std::string out(80, '\0');
  const std::string tag = "morph binary STL";
  std::copy(tag.begin(), tag.end(), out.begin());
  out.reserve(84 + 50 * mesh.faces.size());
  put_u32(out, static_cast<std::uint32_t>(mesh.faces.size()));
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    Vec3 normal = (b - a).cross(c - a);
    const double len = normal.norm();
    normal = len > 0.0 ? Vec3(normal / len) : Vec3::Zero();
    for (int k = 0; k < 3; ++k) put_f32(out, static_cast<float>(normal[k]));
    for (const Vec3* v : {&a, &b, &c}) {
      for (int k = 0; k < 3; ++k) put_f32(out, static_cast<float>((*v)[k]));
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

std::vector<StlTriangle> parse_stl(const std::string& bytes) {
  if (bytes.size() < 84) throw std::runtime_error("parse_stl: stream shorter than the STL header");
  const std::uint32_t count = get_u32(bytes, 80);
  if (bytes.size() != 84 + 50ull * count) {
    throw std::runtime_error("parse_stl: triangle count does not match stream length");
  }
  std::vector<StlTriangle> tris(count);
  std::size_t at = 84;
  for (auto& t : tris) {
    for (int k = 0; k < 3; ++k) t.normal[k] = std::bit_cast<float>(get_u32(bytes, at + 4 * k));
    for (int v = 0; v < 3; ++v) {
      for (int k = 0; k < 3; ++k) {
        t.vertices[v][k] = std::bit_cast<float>(get_u32(bytes, at + 12 + 12 * v + 4 * k));
      }
    }
    at += 50;
  }
  return tris;
}

}  // namespace morph
