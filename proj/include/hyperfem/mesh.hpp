#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hyperfem/material.hpp"

namespace hyperfem
{

using index_t = std::int64_t;

enum class FaceTag : std::uint8_t
{
  Interior,
  DirichletBottom, // y = 0, all components fixed
  NeumannTop,      // y = extent, traction applied
  Free
};

template <int dim>
using Point = std::array<double, dim>;

template <int dim>
struct Cell
{
  std::array<index_t, (1 << dim)> vertices; // lexicographic, x fastest
  std::array<int, dim> lattice;             // cell position in the structured grid
  std::array<FaceTag, 2 * dim> faces;       // face 2k: min side in direction k, 2k+1: max side
  int material_id = 0;                      // 0 matrix, 1 stiff inclusion
  index_t parent = -1;
};

template <int dim>
struct MeshLevel
{
  int cells_per_direction = 0;
  double extent = 0.0;
  std::vector<Point<dim>> vertices;
  std::vector<Cell<dim>> cells;

  index_t n_cells() const { return static_cast<index_t>(cells.size()); }
  Point<dim> centroid(index_t c) const;
  /// Vertex coordinates of every cell, 2^dim per cell, for MeshGeometry.
  std::vector<Point<dim>> cell_vertex_coordinates() const;
};

template <int dim>
struct MeshHierarchy
{
  double extent = 0.0;
  std::vector<MeshLevel<dim>> levels; // level 0 coarsest

  const MeshLevel<dim>& finest() const { return levels.back(); }
};

/// Two stiff inclusions of radius extent/5 centered at (0.3, 0.3[, 0.5]) and
/// (0.7, 0.7[, 0.5]) times extent.
template <int dim>
bool in_inclusion(const Point<dim>& x, double extent);

/// Nested hierarchy over [0, extent]^dim; level l has n0 * 2^l cells per
/// direction.
template <int dim>
MeshHierarchy<dim> build_hierarchy(int n0, int n_refines, double extent);

/// Continuous vector-valued Q_p numbering; dof = node * dim + component.
template <int dim>
struct DofMap
{
  int degree = 0;
  int nodes_per_direction = 0;
  index_t n_nodes = 0;
  index_t n_dofs = 0;
  int nodes_per_cell = 0;
  std::vector<index_t> cell_nodes;       // nodes_per_cell entries per cell, lexicographic
  std::vector<std::uint8_t> dirichlet;   // per dof
  std::vector<Point<dim>> support_points; // per node
  std::vector<std::array<int, dim>> node_lattice;

  std::span<const index_t> nodes_of_cell(index_t c) const
  {
    return std::span(cell_nodes).subspan(c * nodes_per_cell, nodes_per_cell);
  }

  /// Global dof indices of a cell in local component-major order.
  std::vector<index_t> cell_dofs(index_t c) const;

  /// Scatter-free gather of a global vector into component-major local storage.
  void gather(index_t c, std::span<const double> global, std::span<double> local) const
  {
    const auto nodes = nodes_of_cell(c);
    for (int comp = 0; comp < dim; ++comp)
      for (int a = 0; a < nodes_per_cell; ++a)
        local[comp * nodes_per_cell + a] = global[nodes[a] * dim + comp];
  }

  void scatter_add(index_t c, std::span<const double> local, std::span<double> global) const
  {
    const auto nodes = nodes_of_cell(c);
    for (int comp = 0; comp < dim; ++comp)
      for (int a = 0; a < nodes_per_cell; ++a)
        global[nodes[a] * dim + comp] += local[comp * nodes_per_cell + a];
  }
};

template <int dim>
DofMap<dim> distribute_dofs(const MeshLevel<dim>& level, int degree);

/// Measured (total quadrature points) / (scalar dofs) on a level.
template <int dim>
double quadrature_dof_ratio(const MeshLevel<dim>& level, int degree);

/// ((p+1) n_c / (p n_c + 1))^d.
double quadrature_dof_ratio_formula(int dim, int degree, int cells_per_direction);

/// Number of stored entries of the assembled vector-valued Q_p matrix with
/// Dirichlet rows/columns condensed to the diagonal.
template <int dim>
index_t sparse_nonzeros(const DofMap<dim>& dofs);

/// Loaded body: materials per id, traction on the top face, load steps.
template <int dim>
struct ProblemSetup
{
  MeshHierarchy<dim> mesh;
  std::vector<MaterialParams> materials; // indexed by Cell::material_id
  Point<dim> traction{};                 // T* [N/mm^2]
  int load_steps = 5;

  /// Matrix with mu = 0.4225e6 N/mm^2 and nu = 0.3, inclusions 100 times
  /// stiffer, traction 12.5e3 along (1, 0) in 2D and (12.5e3, 12.5e3, 0) in 3D.
  static ProblemSetup standard(MaterialModel model, int n0, int n_refines, double extent = 1000.0);
};

/// CSV rows "level,cells,dofs" for a hierarchy at degree p.
template <int dim>
void write_mesh_summary_csv(const MeshHierarchy<dim>& mesh, int degree, std::ostream& out);

} // namespace hyperfem
