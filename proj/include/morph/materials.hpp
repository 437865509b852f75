#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morph/kinematics.hpp"

namespace morph {

using Vec2 = Eigen::Vector2d;

// Two-phase property interpolation  psi1 + rho^p (psi2 - psi1).
// p = 3 for elastic moduli, 1 for every other property.
struct MaterialPair {
  double psi1 = 0.0;  // active material (rho = 0)
  double psi2 = 0.0;  // passive material (rho = 1)
  double penalization_p = 1.0;
};

// Throws std::domain_error for rho outside [0, 1] and
// std::invalid_argument for p < 1.
double interpolate_property(const MaterialPair& pair, double rho);

// Samples rho(i, j) sit on a lattice at (i * cell_size, j * cell_size);
// storage is row-major with row j holding constant y.
struct DensityField {
  int nx = 0;
  int ny = 0;
  std::vector<double> rho;
  double cell_size = 1.0;  // mm

  void validate() const;
  double at(int i, int j) const { return rho[static_cast<std::size_t>(j) * nx + i]; }
  double width() const { return (nx - 1) * cell_size; }
  double height() const { return (ny - 1) * cell_size; }
  // Bilinear interpolation inside the lattice rectangle.
  double sample(const Vec2& p) const;
};

// Which side of the level set is meshed. Material2 is rho >= level.
enum class Phase { Material2, Material1 };

struct Polyline {
  std::vector<Vec2> points;  // active region on the left
  bool closed = false;
};

// Marching-squares isocontour with linear edge interpolation. Saddle cells
// connect the active corners when the cell-centre average is active.
std::vector<Polyline> extract_interface(const DensityField& field, double level = 0.5,
                                        Phase phase = Phase::Material2);

// Triangulated planar region, counter-clockwise triangles.
struct PlanarRegion {
  std::vector<Vec2> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  double area() const;
};

// Region of the field on the chosen side of the level set; its boundary
// is the interface plus the active part of the lattice rectangle.
PlanarRegion active_region(const DensityField& field, double level = 0.5,
                           Phase phase = Phase::Material2);

// Ear-clipped simple polygon. Throws std::invalid_argument if the outline
// self-intersects or has fewer than three vertices.
PlanarRegion region_from_polygon(const std::vector<Vec2>& outline);

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;  // outward, counter-clockwise
};

// Prism of the region between z = 0 and z = depth.
TriangleMesh extrude_to_mesh(const PlanarRegion& region, double depth);

double signed_volume(const TriangleMesh& mesh);

struct MeshTopology {
  bool edge_manifold = false;  // every edge in exactly two faces, opposite directions
  std::size_t components = 0;
  std::vector<long> euler_characteristics;  // V - E + F per component
};

MeshTopology mesh_topology(const TriangleMesh& mesh);

struct StlTriangle {
  std::array<float, 3> normal{};
  std::array<std::array<float, 3>, 3> vertices{};
};

// Binary STL. Throws std::invalid_argument on non-finite coordinates.
std::string export_stl(const TriangleMesh& mesh);

// Throws std::runtime_error on a truncated or inconsistent stream.
std::vector<StlTriangle> parse_stl(const std::string& bytes);

}  // namespace morph
