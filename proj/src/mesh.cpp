#include "hyperfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hyperfem/fespace.hpp"

namespace hyperfem
{

template <int dim>
Point<dim> MeshLevel<dim>::centroid(index_t c) const
{
  Point<dim> x{};
  for (const index_t v : cells[c].vertices)
    for (int k = 0; k < dim; ++k)
      x[k] += vertices[v][k];
  for (int k = 0; k < dim; ++k)
    x[k] /= (1 << dim);
  return x;
}

template <int dim>
std::vector<Point<dim>> MeshLevel<dim>::cell_vertex_coordinates() const
{
  std::vector<Point<dim>> out;
  out.reserve(cells.size() * (1 << dim));
  for (const auto& cell : cells)
    for (const index_t v : cell.vertices)
      out.push_back(vertices[v]);
  return out;
}

template <int dim>
bool in_inclusion(const Point<dim>& x, double extent)
{
  const double r = extent / 5.0;
  for (const double center : {0.3, 0.7})
  {
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k)
    {
      const double ck = (k < 2 ? center : 0.5) * extent;
      d2 += (x[k] - ck) * (x[k] - ck);
    }
    if (d2 < r * r)
      return true;
  }
  return false;
}

namespace
{
template <int dim>
index_t lexicographic(const std::array<int, dim>& idx, int n)
{
  index_t r = 0;
  for (int k = dim - 1; k >= 0; --k)
    r = r * n + idx[k];
  return r;
}

template <int dim>
std::array<int, dim> unlex(index_t i, int n)
{
  std::array<int, dim> idx;
  for (int k = 0; k < dim; ++k)
  {
    idx[k] = static_cast<int>(i % n);
    i /= n;
  }
  return idx;
}

template <int dim>
MeshLevel<dim> build_level(int n, double extent, bool has_parent)
{
  MeshLevel<dim> level;
  level.cells_per_direction = n;
  level.extent = extent;
  const double h = extent / n;
  const index_t nv = ipow(n + 1, dim);
  level.vertices.resize(nv);
  for (index_t v = 0; v < nv; ++v)
  {
    const auto idx = unlex<dim>(v, n + 1);
    for (int k = 0; k < dim; ++k)
      level.vertices[v][k] = idx[k] == n ? extent : idx[k] * h;
  }
  const index_t nc = ipow(n, dim);
  level.cells.resize(nc);
  for (index_t c = 0; c < nc; ++c)
  {
    Cell<dim>& cell = level.cells[c];
    cell.lattice = unlex<dim>(c, n);
    for (int v = 0; v < (1 << dim); ++v)
    {
      std::array<int, dim> vi = cell.lattice;
      for (int k = 0; k < dim; ++k)
        vi[k] += (v >> k) & 1;
      cell.vertices[v] = lexicographic<dim>(vi, n + 1);
    }
    for (int k = 0; k < dim; ++k)
    {
      FaceTag lo = FaceTag::Interior, hi = FaceTag::Interior;
      if (cell.lattice[k] == 0)
        lo = k == 1 ? FaceTag::DirichletBottom : FaceTag::Free;
      if (cell.lattice[k] == n - 1)
        hi = k == 1 ? FaceTag::NeumannTop : FaceTag::Free;
      cell.faces[2 * k] = lo;
      cell.faces[2 * k + 1] = hi;
    }
    if (has_parent)
    {
      std::array<int, dim> pi;
      for (int k = 0; k < dim; ++k)
        pi[k] = cell.lattice[k] / 2;
      cell.parent = lexicographic<dim>(pi, n / 2);
    }
  }
  for (index_t c = 0; c < nc; ++c)
    level.cells[c].material_id = in_inclusion<dim>(level.centroid(c), extent) ? 1 : 0;
  return level;
}
} // namespace

template <int dim>
MeshHierarchy<dim> build_hierarchy(int n0, int n_refines, double extent)
{
  if (n0 < 1 || n_refines < 0)
    throw ConfigError("build_hierarchy: need n0 >= 1 and n_refines >= 0");
  if (!(extent > 0.0))
    throw ConfigError("build_hierarchy: extent must be positive");
  MeshHierarchy<dim> mesh;
  mesh.extent = extent;
  for (int l = 0; l <= n_refines; ++l)
    mesh.levels.push_back(build_level<dim>(n0 << l, extent, l > 0));
  return mesh;
}

template <int dim>
std::vector<index_t> DofMap<dim>::cell_dofs(index_t c) const
{
  std::vector<index_t> out(dim * nodes_per_cell);
  const auto nodes = nodes_of_cell(c);
  for (int comp = 0; comp < dim; ++comp)
    for (int a = 0; a < nodes_per_cell; ++a)
      out[comp * nodes_per_cell + a] = nodes[a] * dim + comp;
  return out;
}

template <int dim>
DofMap<dim> distribute_dofs(const MeshLevel<dim>& level, int degree)
{
  if (degree < 1)
    throw ConfigError("distribute_dofs: degree must be >= 1");
  DofMap<dim> map;
  map.degree = degree;
  const int n = level.cells_per_direction;
  const int nl = degree * n + 1; // lattice points per direction
  map.nodes_per_direction = nl;
  map.n_nodes = ipow(nl, dim);
  map.n_dofs = map.n_nodes * dim;
  map.nodes_per_cell = ipow(degree + 1, dim);
  map.cell_nodes.resize(static_cast<std::size_t>(level.n_cells()) * map.nodes_per_cell);
  for (index_t c = 0; c < level.n_cells(); ++c)
  {
    const auto& cell = level.cells[c];
    for (int a = 0; a < map.nodes_per_cell; ++a)
    {
      const auto local = unlex<dim>(a, degree + 1);
      std::array<int, dim> g;
      for (int k = 0; k < dim; ++k)
        g[k] = cell.lattice[k] * degree + local[k];
      map.cell_nodes[c * map.nodes_per_cell + a] = lexicographic<dim>(g, nl);
    }
  }
  const double h = level.extent / (static_cast<double>(n) * degree);
  map.support_points.resize(map.n_nodes);
  map.node_lattice.resize(map.n_nodes);
  map.dirichlet.assign(map.n_dofs, 0);
  for (index_t node = 0; node < map.n_nodes; ++node)
  {
    const auto idx = unlex<dim>(node, nl);
    map.node_lattice[node] = idx;
    for (int k = 0; k < dim; ++k)
      map.support_points[node][k] = idx[k] == nl - 1 ? level.extent : idx[k] * h;
    if (idx[1] == 0)
      for (int comp = 0; comp < dim; ++comp)
        map.dirichlet[node * dim + comp] = 1;
  }
  return map;
}

template <int dim>
double quadrature_dof_ratio(const MeshLevel<dim>& level, int degree)
{
  const DofMap<dim> dofs = distribute_dofs(level, degree);
  const double n_qp = static_cast<double>(level.n_cells()) * ipow(degree + 1, dim);
  return n_qp / static_cast<double>(dofs.n_nodes);
}

double quadrature_dof_ratio_formula(int dim, int degree, int cells_per_direction)
{
  const double r = static_cast<double>((degree + 1) * cells_per_direction) /
                   static_cast<double>(degree * cells_per_direction + 1);
  return std::pow(r, dim);
}

template <int dim>
index_t sparse_nonzeros(const DofMap<dim>& dofs)
{
  // Nodes coupled to a node form a tensor-product box: per direction, the
  // union of the node ranges of the cells touching that lattice coordinate.
  const int p = dofs.degree;
  const int n_cells = (dofs.nodes_per_direction - 1) / p;
  index_t nnz = 0;
  for (index_t node = 0; node < dofs.n_nodes; ++node)
  {
    const auto& x = dofs.node_lattice[node];
    if (x[1] == 0)
    {
      nnz += dim; // condensed rows keep the diagonal only
      continue;
    }
    index_t coupled = 1;
    for (int k = 0; k < dim; ++k)
    {
      int c_lo = x[k] / p, c_hi = x[k] / p;
      if (x[k] % p == 0)
        c_lo -= 1;
      c_lo = std::max(c_lo, 0);
      c_hi = std::min(c_hi, n_cells - 1);
      int lo = c_lo * p;
      const int hi = (c_hi + 1) * p;
      if (k == 1 && lo == 0)
        lo = 1; // constrained columns removed
      coupled *= hi - lo + 1;
    }
    nnz += dim * dim * coupled;
  }
  return nnz;
}

template <int dim>
ProblemSetup<dim> ProblemSetup<dim>::standard(MaterialModel model, int n0, int n_refines, double extent)
{
  ProblemSetup<dim> setup;
  setup.mesh = build_hierarchy<dim>(n0, n_refines, extent);
  const MaterialParams matrix = MaterialParams::from_shear_and_poisson(model, 0.4225e6, 0.3);
  setup.materials = {matrix, matrix.scaled(100.0)};
  setup.traction = {};
  setup.traction[0] = 12.5e3;
  if constexpr (dim == 3)
    setup.traction[1] = 12.5e3;
  setup.load_steps = 5;
  return setup;
}

template <int dim>
void write_mesh_summary_csv(const MeshHierarchy<dim>& mesh, int degree, std::ostream& out)
{
  out << "level,cells,dofs\n";
  for (std::size_t l = 0; l < mesh.levels.size(); ++l)
  {
    const DofMap<dim> dofs = distribute_dofs(mesh.levels[l], degree);
    out << l << ',' << mesh.levels[l].n_cells() << ',' << dofs.n_dofs << '\n';
  }
}

template struct MeshLevel<2>;
template struct MeshLevel<3>;
template struct DofMap<2>;
template struct DofMap<3>;
template struct ProblemSetup<2>;
template struct ProblemSetup<3>;
template bool in_inclusion<2>(const Point<2>&, double);
template bool in_inclusion<3>(const Point<3>&, double);
template MeshHierarchy<2> build_hierarchy<2>(int, int, double);
template MeshHierarchy<3> build_hierarchy<3>(int, int, double);
template DofMap<2> distribute_dofs<2>(const MeshLevel<2>&, int);
template DofMap<3> distribute_dofs<3>(const MeshLevel<3>&, int);
template double quadrature_dof_ratio<2>(const MeshLevel<2>&, int);
template double quadrature_dof_ratio<3>(const MeshLevel<3>&, int);
template index_t sparse_nonzeros<2>(const DofMap<2>&);
template index_t sparse_nonzeros<3>(const DofMap<3>&);
template void write_mesh_summary_csv<2>(const MeshHierarchy<2>&, int, std::ostream&);
template void write_mesh_summary_csv<3>(const MeshHierarchy<3>&, int, std::ostream&);

} // namespace hyperfem
