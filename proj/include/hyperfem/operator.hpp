#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "hyperfem/fespace.hpp"
#include "hyperfem/material.hpp"
#include "hyperfem/mesh.hpp"
#include "hyperfem/qp_kernels.hpp"

namespace hyperfem
{

enum class TangentStrategy
{
  Naive,     // L formed per quadrature point from the full Hessian
  Recompute, // seeded Hessian-vector product per point, no cache
  Store,     // partial assembly: c and sigma cached per point
  SparseBaseline
};

std::string_view to_string(TangentStrategy s);
TangentStrategy parse_strategy(std::string_view name);

struct CsrMatrix
{
  index_t n_rows = 0;
  std::vector<std::int64_t> row_offsets;
  std::vector<std::int32_t> columns;
  std::vector<double> values;

  index_t nnz() const { return static_cast<index_t>(values.size()); }
  double operator()(index_t row, index_t col) const; // 0 outside the pattern
  void vmult(std::span<const double> src, std::span<double> dst) const;
  std::size_t bytes() const
  {
    return row_offsets.size() * sizeof(std::int64_t) + columns.size() * sizeof(std::int32_t) +
           values.size() * sizeof(double);
  }
};

/// Everything about one mesh level that does not depend on the state: mesh,
/// Q_p numbering, 1D basis, mapping data, materials.
template <int dim>
class Discretization
{
public:
  Discretization(const MeshLevel<dim>& level,
                 std::vector<MaterialParams> materials,
                 int degree,
                 GeometryLayout layout = GeometryLayout::PerQuadraturePoint,
                 int n_workers = 1);

  /// One parameter set per cell instead of per material id.
  static Discretization with_cell_materials(const MeshLevel<dim>& level,
                                            std::vector<MaterialParams> cell_materials,
                                            int degree,
                                            GeometryLayout layout = GeometryLayout::PerQuadraturePoint,
                                            int n_workers = 1);

  const MeshLevel<dim>& level() const { return level_; }
  const DofMap<dim>& dofs() const { return dofs_; }
  const Basis1D& basis() const { return basis_; }
  const MeshGeometry<dim>& geometry() const { return geometry_; }
  const MaterialParams& material(index_t cell) const { return cell_materials_[cell]; }
  const std::vector<MaterialParams>& cell_materials() const { return cell_materials_; }
  int degree() const { return basis_.degree(); }
  index_t n_dofs() const { return dofs_.n_dofs; }
  index_t n_cells() const { return level_.n_cells(); }
  index_t n_quadrature_points() const
  {
    return n_cells() * static_cast<index_t>(geometry_.n_qp_per_cell());
  }
  int n_workers() const { return n_workers_; }

  /// Internal minus external forces, sum_q P : grad(phi_i) JxW minus
  /// load_fraction * traction_load; Dirichlet rows zeroed.
  std::vector<double> residual(std::span<const double> u,
                               double load_fraction,
                               std::span<const double> external_load) const;

  /// sum over cells and points of Psi(F) JxW.
  double strain_energy(std::span<const double> u) const;

  /// Consistent nodal forces of a constant traction on the top face.
  std::vector<double> traction_load(const Point<dim>& traction) const;

  /// Sets constrained entries to zero.
  void zero_constrained(std::span<double> v) const;

  /// Runs body(first_cell, end_cell, dst) on contiguous cell chunks, one per
  /// worker, each with its own zeroed destination; chunks are summed in
  /// worker order.
  template <typename Body>
  void cell_loop(std::span<double> dst, Body&& body) const;

private:
  Discretization(const MeshLevel<dim>& level, int degree, GeometryLayout layout, int n_workers);

  MeshLevel<dim> level_;
  std::vector<MaterialParams> cell_materials_;
  DofMap<dim> dofs_;
  Basis1D basis_;
  MeshGeometry<dim> geometry_;
  int n_workers_ = 1;
};

/// Byte accounting of an operator, split by purpose.
struct OperatorMemory
{
  std::size_t constitutive = 0; // per-point constitutive data
  std::size_t geometry = 0;     // mapping data the operator reads
  std::size_t state = 0;        // linearization point vector
  std::size_t matrix = 0;       // sparse matrix
  std::size_t total() const { return constitutive + geometry + state + matrix; }
};

/// Tangent K(u_bar) of the residual, applied with one of four strategies.
template <int dim>
class TangentOperator
{
public:
  TangentOperator(std::shared_ptr<const Discretization<dim>> disc, TangentStrategy strategy);

  TangentStrategy strategy() const { return strategy_; }
  const Discretization<dim>& discretization() const { return *disc_; }
  index_t n_dofs() const { return disc_->n_dofs(); }
  bool prepared() const { return prepared_; }

  /// Sets the linearization point and rebuilds the strategy's caches.
  void prepare(std::span<const double> u_bar);

  /// dst = K src with constrained rows and columns acting as identity.
  void vmult(std::span<const double> src, std::span<double> dst) const;
  std::vector<double> vmult(std::span<const double> src) const;

  /// Exact diagonal; constrained entries are 1.
  std::vector<double> compute_diagonal() const;

  /// Assembled matrix with constrained rows and columns condensed.
  CsrMatrix assemble_csr() const;

  const std::vector<double>& u_bar() const { return u_bar_; }
  const std::vector<StoreQpData<double, dim>>& store_data() const { return store_; }
  const CsrMatrix& matrix() const { return csr_; }

  OperatorMemory memory() const;

private:
  void require_prepared() const;
  /// Per-point fourth-order map in unit-cell gradients (with weights).
  void unit_linearizations(index_t cell, std::vector<Tensor4<double, dim>>& out) const;

  std::shared_ptr<const Discretization<dim>> disc_;
  TangentStrategy strategy_;
  bool prepared_ = false;
  std::vector<double> u_bar_;
  std::vector<StoreQpData<double, dim>> store_;
  CsrMatrix csr_;
};

/// Nodes within the tensor-product box of cells touching each node; used as
/// the sparsity pattern of the assembled matrix.
template <int dim>
CsrMatrix sparsity_pattern(const DofMap<dim>& dofs);

} // namespace hyperfem
