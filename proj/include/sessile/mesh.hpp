#pragma once

#include <array>
#include <memory>
#include <vector>

#include "sessile/equilibrium.hpp"

namespace sessile {

enum class NodeTag : unsigned char { Interior, Surface, Bottom, ContactLeft, ContactRight };
enum class BoundaryTag : unsigned char { Surface, Bottom };

// Quadratic-node triangulation of the equilibrium domain. Local node order
// of a triangle: vertices 0,1,2 then midpoints of edges (0,1), (1,2), (2,0).
// Triangles with an edge on the free surface are isoparametric: their midpoint
// sits on the curve.
struct Mesh {
  std::shared_ptr<const EquilibriumShape> shape;
  int n_surface = 0;
  double delta_grade = 0.0;
  double half_arclength = 0.0;

  int n_vertices = 0;
  std::vector<std::array<double, 2>> nodes;  // vertices first, then midpoints
  std::vector<NodeTag> tag;
  std::vector<std::array<int, 6>> tri;
  std::vector<int> curved_edge;  // local edge on the surface, or -1

  struct BoundaryEdge {
    int tri = -1;
    int local_edge = -1;
    int n0 = -1, n1 = -1, nm = -1;  // endpoints ordered by increasing x1, midpoint
    BoundaryTag tag = BoundaryTag::Surface;
  };
  std::vector<BoundaryEdge> surface_edges;  // sorted by x1
  std::vector<BoundaryEdge> bottom_edges;   // sorted by x1
  int corner_left = -1, corner_right = -1;

  std::size_t n_nodes() const { return nodes.size(); }
  std::size_t n_triangles() const { return tri.size(); }
  double ell() const { return shape->ell; }
  // Vertex x1 coordinates of the surface partition, increasing.
  std::vector<double> surface_vertices_x1() const;
  // Mesh nodes on the surface, by increasing x1 (vertices and midpoints).
  std::vector<int> surface_nodes() const;
};

struct MeshQuality {
  double min_angle_deg = 0.0;
  double max_boundary_offset = 0.0;  // distance of boundary nodes from the boundary
  double chord_error = 0.0;          // max gap between curve and boundary node polyline
  double grading_ratio_min = 0.0;    // boundary edge length / graded size law near corners
  double grading_ratio_max = 0.0;
  bool conforming = true;
};

Mesh build_mesh(std::shared_ptr<const EquilibriumShape> shape, int n_surface, double delta_grade);
MeshQuality mesh_quality(const Mesh& m);

// Graded size law near the corners: h(d) for corner distance d.
double graded_size(const Mesh& m, double dist);

}  // namespace sessile
