#include "hyperfem/operator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace hyperfem
{

std::string_view to_string(TangentStrategy s)
{
  switch (s)
  {
    case TangentStrategy::Naive: return "naive";
    case TangentStrategy::Recompute: return "recompute";
    case TangentStrategy::Store: return "store";
    case TangentStrategy::SparseBaseline: return "sparse";
  }
  return "unknown";
}

TangentStrategy parse_strategy(std::string_view name)
{
  if (name == "naive")
    return TangentStrategy::Naive;
  if (name == "recompute")
    return TangentStrategy::Recompute;
  if (name == "store")
    return TangentStrategy::Store;
  if (name == "sparse" || name == "csr")
    return TangentStrategy::SparseBaseline;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

double CsrMatrix::operator()(index_t row, index_t col) const
{
  const auto first = columns.begin() + row_offsets[row];
  const auto last = columns.begin() + row_offsets[row + 1];
  const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(col));
  if (it == last || *it != col)
    return 0.0;
  return values[it - columns.begin()];
}

void CsrMatrix::vmult(std::span<const double> src, std::span<double> dst) const
{
  const std::int64_t* off = row_offsets.data();
  const std::int32_t* col = columns.data();
  const double* val = values.data();
  for (index_t r = 0; r < n_rows; ++r)
  {
    double s = 0.0;
    for (std::int64_t k = off[r]; k < off[r + 1]; ++k)
      s += val[k] * src[col[k]];
    dst[r] = s;
  }
}

namespace
{
/// Unit-cell gradients of the d components of a cell vector, stored as
/// g[(c * dim + k) * n_qp + qp].
template <int dim, int degree>
struct CellKernels
{
  using SF = SumFactorization<dim, degree>;
  static constexpr int nn = SF::n_nodes;
  static constexpr int nq = SF::n_qp;
  static constexpr int n_local = dim * nn;

  static void gradients(const Basis1D& basis, const double* local, double* g)
  {
    for (int c = 0; c < dim; ++c)
      SF::gradients(basis.shape_values().data(), basis.shape_grads().data(), local + c * nn,
                    g + c * dim * nq);
  }

  static void integrate(const Basis1D& basis, const double* g, double* local)
  {
    for (int c = 0; c < dim; ++c)
      SF::integrate(basis.shape_values().data(), basis.shape_grads().data(), g + c * dim * nq,
                    local + c * nn);
  }

  HYPERFEM_INLINE static Tensor2<double, dim> load(const double* g, int qp)
  {
    Tensor2<double, dim> t;
    for (int r = 0; r < dim * dim; ++r)
      t.data[r] = g[r * nq + qp];
    return t;
  }

  HYPERFEM_INLINE static void put(const Tensor2<double, dim>& t, double* g, int qp)
  {
    for (int r = 0; r < dim * dim; ++r)
      g[r * nq + qp] = t.data[r];
  }
};

template <int dim>
void gather_array(const DofMap<dim>& dofs, index_t c, std::span<const double> global, double* local)
{
  dofs.gather(c, global, std::span<double>(local, dim * dofs.nodes_per_cell));
}

template <int dim>
void scatter_array(const DofMap<dim>& dofs, index_t c, const double* local, std::span<double> global)
{
  dofs.scatter_add(c, std::span<const double>(local, dim * dofs.nodes_per_cell), global);
}

/// Gradients of all local shape functions at all points in unit-cell
/// coordinates, [qp][a][k].
template <int dim>
std::vector<double> unit_shape_gradients(const Basis1D& basis)
{
  const int n = basis.n_dofs(), q = basis.n_q();
  const int nn = ipow(n, dim), nq = ipow(q, dim);
  std::vector<double> out(static_cast<std::size_t>(nq) * nn * dim);
  for (int qp = 0; qp < nq; ++qp)
    for (int a = 0; a < nn; ++a)
      for (int k = 0; k < dim; ++k)
      {
        double v = 1.0;
        int rq = qp, ra = a;
        for (int m = 0; m < dim; ++m)
        {
          const int iq = rq % q, ia = ra % n;
          rq /= q;
          ra /= n;
          v *= m == k ? basis.shape_grad(iq, ia) : basis.shape_value(iq, ia);
        }
        out[(static_cast<std::size_t>(qp) * nn + a) * dim + k] = v;
      }
  return out;
}
} // namespace

template <int dim>
Discretization<dim>::Discretization(const MeshLevel<dim>& level, int degree, GeometryLayout layout, int n_workers)
  : level_(level), dofs_(distribute_dofs(level, degree)), basis_(degree), n_workers_(n_workers)
{
  if (degree > max_degree<dim>)
    throw UnsupportedOrder("polynomial degree " + std::to_string(degree) + " not supported in " +
                           std::to_string(dim) + "D");
  if (n_workers < 1)
    throw ConfigError("worker count must be >= 1");
  const auto verts = level_.cell_vertex_coordinates();
  geometry_ = MeshGeometry<dim>(verts, basis_, layout);
}

template <int dim>
Discretization<dim>::Discretization(const MeshLevel<dim>& level,
                                    std::vector<MaterialParams> materials,
                                    int degree,
                                    GeometryLayout layout,
                                    int n_workers)
  : Discretization(level, degree, layout, n_workers)
{
  cell_materials_.reserve(level_.cells.size());
  for (const auto& cell : level_.cells)
  {
    if (cell.material_id < 0 || cell.material_id >= static_cast<int>(materials.size()))
      throw ConfigError("cell material id without material parameters");
    cell_materials_.push_back(materials[cell.material_id]);
  }
}

template <int dim>
Discretization<dim> Discretization<dim>::with_cell_materials(const MeshLevel<dim>& level,
                                                             std::vector<MaterialParams> cell_materials,
                                                             int degree,
                                                             GeometryLayout layout,
                                                             int n_workers)
{
  if (cell_materials.size() != level.cells.size())
    throw ConfigError("need one material per cell");
  Discretization d(level, degree, layout, n_workers);
  d.cell_materials_ = std::move(cell_materials);
  return d;
}

template <int dim>
template <typename Body>
void Discretization<dim>::cell_loop(std::span<double> dst, Body&& body) const
{
  std::fill(dst.begin(), dst.end(), 0.0);
  const index_t nc = n_cells();
  const int nw = static_cast<int>(std::min<index_t>(n_workers_, std::max<index_t>(nc, 1)));
  if (nw <= 1)
  {
    body(index_t{0}, nc, dst);
    return;
  }
  std::vector<std::vector<double>> buffers(nw - 1, std::vector<double>(dst.size(), 0.0));
  std::vector<std::exception_ptr> errors(nw);
  std::vector<std::thread> threads;
  auto chunk = [&](int w, std::span<double> out) {
    try
    {
      body(nc * w / nw, nc * (w + 1) / nw, out);
    }
    catch (...)
    {
      errors[w] = std::current_exception();
    }
  };
  for (int w = 1; w < nw; ++w)
    threads.emplace_back(chunk, w, std::span<double>(buffers[w - 1]));
  chunk(0, dst);
  for (auto& t : threads)
    t.join();
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  for (const auto& b : buffers)
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] += b[i];
}

template <int dim>
void Discretization<dim>::zero_constrained(std::span<double> v) const
{
  for (index_t i = 0; i < n_dofs(); ++i)
    if (dofs_.dirichlet[i])
      v[i] = 0.0;
}

template <int dim>
std::vector<double> Discretization<dim>::residual(std::span<const double> u,
                                                  double load_fraction,
                                                  std::span<const double> external_load) const
{
  if (static_cast<index_t>(u.size()) != n_dofs())
    throw ConfigError("residual: vector size does not match the dof count");
  std::vector<double> r(n_dofs());
  cell_loop(r, [&](index_t begin, index_t end, std::span<double> dst) {
    dispatch_degree<dim>(degree(), [&](auto p) {
      using K = CellKernels<dim, decltype(p)::value>;
      std::array<double, K::n_local> local;
      std::array<double, dim * dim * K::nq> g;
      for (index_t c = begin; c < end; ++c)
      {
        gather_array(dofs_, c, u, local.data());
        K::gradients(basis_, local.data(), g.data());
        const CellGeometry<dim> geom = geometry_.cell(c);
        const MaterialParams& params = material(c);
        for (int qp = 0; qp < K::nq; ++qp)
        {
          const Tensor2<double, dim>& jinv = geom.inv_jac(qp);
          Tensor2<double, dim> f = dot(K::load(g.data(), qp), jinv);
          for (int i = 0; i < dim; ++i)
            f(i, i) += 1.0;
          K::put(dot_transpose(pk1(params, f), jinv) * geom.jxw[qp], g.data(), qp);
        }
        K::integrate(basis_, g.data(), local.data());
        scatter_array(dofs_, c, local.data(), dst);
      }
    });
  });
  if (load_fraction != 0.0)
    for (index_t i = 0; i < n_dofs(); ++i)
      r[i] -= load_fraction * external_load[i];
  zero_constrained(r);
  return r;
}

template <int dim>
double Discretization<dim>::strain_energy(std::span<const double> u) const
{
  double energy_sum = 0.0;
  std::vector<double> local(dim * dofs_.nodes_per_cell);
  std::vector<Tensor2<double, dim>> grads(geometry_.n_qp_per_cell());
  for (index_t c = 0; c < n_cells(); ++c)
  {
    dofs_.gather(c, u, local);
    const CellGeometry<dim> geom = geometry_.cell(c);
    evaluate_gradients_sumfac<dim, double>(basis_, local, geom, grads);
    const MaterialParams& params = material(c);
    for (std::size_t qp = 0; qp < grads.size(); ++qp)
    {
      Tensor2<double, dim> f = grads[qp];
      for (int i = 0; i < dim; ++i)
        f(i, i) += 1.0;
      energy_sum += energy(params, f) * geom.jxw[qp];
    }
  }
  return energy_sum;
}

template <int dim>
std::vector<double> Discretization<dim>::traction_load(const Point<dim>& traction) const
{
  std::vector<double> f(n_dofs(), 0.0);
  const int p = degree();
  const int n = p + 1;
  const QuadratureRule1D rule = gauss_1d(n);
  const int n_face_q = ipow(n, dim - 1);
  for (index_t c = 0; c < n_cells(); ++c)
  {
    const Cell<dim>& cell = level_.cells[c];
    if (cell.faces[3] != FaceTag::NeumannTop)
      continue;
    std::array<Point<dim>, (1 << dim)> verts;
    for (int v = 0; v < (1 << dim); ++v)
      verts[v] = level_.vertices[cell.vertices[v]];
    const auto nodes = dofs_.nodes_of_cell(c);
    for (int fq = 0; fq < n_face_q; ++fq)
    {
      // face point: xi_1 = 1, remaining coordinates from the tensor rule
      std::array<double, dim> xi{};
      std::array<int, dim> qi{};
      double w = 1.0;
      int rest = fq;
      for (int k = 0; k < dim; ++k)
      {
        if (k == 1)
        {
          xi[k] = 1.0;
          continue;
        }
        qi[k] = rest % n;
        rest /= n;
        xi[k] = rule.points[qi[k]];
        w *= rule.weights[qi[k]];
      }
      const Tensor2<double, dim> jac = reference_jacobian<dim>(verts, xi);
      double measure = 0.0;
      if constexpr (dim == 2)
        measure = std::hypot(jac(0, 0), jac(1, 0));
      else
      {
        // |dx/dxi_0 x dx/dxi_2|
        const double cx = jac(1, 0) * jac(2, 2) - jac(2, 0) * jac(1, 2);
        const double cy = jac(2, 0) * jac(0, 2) - jac(0, 0) * jac(2, 2);
        const double cz = jac(0, 0) * jac(1, 2) - jac(1, 0) * jac(0, 2);
        measure = std::sqrt(cx * cx + cy * cy + cz * cz);
      }
      for (int a = 0; a < dofs_.nodes_per_cell; ++a)
      {
        double phi = 1.0;
        int ra = a;
        for (int k = 0; k < dim; ++k)
        {
          const int ia = ra % n;
          ra /= n;
          phi *= basis_.value_at(ia, xi[k]);
        }
        if (phi == 0.0)
          continue;
        for (int comp = 0; comp < dim; ++comp)
          f[nodes[a] * dim + comp] += traction[comp] * phi * w * measure;
      }
    }
  }
  zero_constrained(f);
  return f;
}

template <int dim>
CsrMatrix sparsity_pattern(const DofMap<dim>& dofs)
{
  const int p = dofs.degree;
  const int nl = dofs.nodes_per_direction;
  const int n_cells = (nl - 1) / p;
  CsrMatrix m;
  m.n_rows = dofs.n_dofs;
  m.row_offsets.assign(m.n_rows + 1, 0);
  m.columns.reserve(static_cast<std::size_t>(sparse_nonzeros(dofs)));
  std::vector<std::int32_t> row_cols;
  for (index_t node = 0; node < dofs.n_nodes; ++node)
  {
    const auto& x = dofs.node_lattice[node];
    row_cols.clear();
    if (x[1] != 0)
    {
      std::array<int, dim> lo, hi;
      for (int k = 0; k < dim; ++k)
      {
        int c_lo = x[k] / p, c_hi = x[k] / p;
        if (x[k] % p == 0)
          c_lo -= 1;
        c_lo = std::max(c_lo, 0);
        c_hi = std::min(c_hi, n_cells - 1);
        lo[k] = c_lo * p;
        hi[k] = (c_hi + 1) * p;
      }
      lo[1] = std::max(lo[1], 1);
      std::array<int, dim> idx = lo;
      while (true)
      {
        index_t other = 0;
        for (int k = dim - 1; k >= 0; --k)
          other = other * nl + idx[k];
        for (int comp = 0; comp < dim; ++comp)
          row_cols.push_back(static_cast<std::int32_t>(other * dim + comp));
        int k = 0;
        for (; k < dim; ++k)
        {
          if (++idx[k] <= hi[k])
            break;
          idx[k] = lo[k];
        }
        if (k == dim)
          break;
      }
    }
    for (int comp = 0; comp < dim; ++comp)
    {
      const index_t row = node * dim + comp;
      if (row_cols.empty())
        m.columns.push_back(static_cast<std::int32_t>(row));
      else
        m.columns.insert(m.columns.end(), row_cols.begin(), row_cols.end());
      m.row_offsets[row + 1] = static_cast<std::int64_t>(m.columns.size());
    }
  }
  m.values.assign(m.columns.size(), 0.0);
  return m;
}

template <int dim>
TangentOperator<dim>::TangentOperator(std::shared_ptr<const Discretization<dim>> disc,
                                      TangentStrategy strategy)
  : disc_(std::move(disc)), strategy_(strategy)
{
  if (!disc_)
    throw ConfigError("TangentOperator needs a discretization");
}

template <int dim>
void TangentOperator<dim>::require_prepared() const
{
  if (!prepared_)
    throw StateNotPrepared(std::string("tangent operator (") + std::string(to_string(strategy_)) +
                           ") used before prepare()");
}

template <int dim>
void TangentOperator<dim>::prepare(std::span<const double> u_bar)
{
  const Discretization<dim>& d = *disc_;
  if (static_cast<index_t>(u_bar.size()) != d.n_dofs())
    throw ConfigError("prepare: vector size does not match the dof count");
  prepared_ = false;
  u_bar_.assign(u_bar.begin(), u_bar.end());
  store_.clear();
  csr_ = CsrMatrix{};
  if (strategy_ == TangentStrategy::Store)
  {
    const std::size_t nq = d.geometry().n_qp_per_cell();
    store_.resize(static_cast<std::size_t>(d.n_cells()) * nq);
    std::vector<double> local(dim * d.dofs().nodes_per_cell);
    std::vector<Tensor2<double, dim>> grads(nq);
    for (index_t c = 0; c < d.n_cells(); ++c)
    {
      d.dofs().gather(c, u_bar_, local);
      const CellGeometry<dim> geom = d.geometry().cell(c);
      evaluate_gradients_sumfac<dim, double>(d.basis(), local, geom, grads);
      for (std::size_t qp = 0; qp < nq; ++qp)
        store_[c * nq + qp] =
          make_store_data<dim>(d.material(c), grads[qp], geom.inv_jac(static_cast<int>(qp)), geom.jxw[qp]);
    }
  }
  prepared_ = true;
  if (strategy_ == TangentStrategy::SparseBaseline)
  {
    csr_ = assemble_csr();
  }
}

namespace
{
template <int dim, int degree>
void apply_cells(const Discretization<dim>& d,
                 TangentStrategy strategy,
                 std::span<const double> u_bar,
                 const std::vector<StoreQpData<double, dim>>& store,
                 std::span<const double> src,
                 index_t begin,
                 index_t end,
                 std::span<double> dst)
{
  using K = CellKernels<dim, degree>;
  std::array<double, K::n_local> local;
  std::array<double, dim * dim * K::nq> g;
  std::array<double, dim * dim * K::nq> g_bar;
  for (index_t c = begin; c < end; ++c)
  {
    gather_array(d.dofs(), c, src, local.data());
    K::gradients(d.basis(), local.data(), g.data());
    if (strategy == TangentStrategy::Store)
    {
      const StoreQpData<double, dim>* data = store.data() + c * K::nq;
      for (int qp = 0; qp < K::nq; ++qp)
        K::put(store_qp(data[qp], K::load(g.data(), qp)), g.data(), qp);
    }
    else
    {
      gather_array(d.dofs(), c, u_bar, local.data());
      K::gradients(d.basis(), local.data(), g_bar.data());
      const CellGeometry<dim> geom = d.geometry().cell(c);
      const MaterialParams& params = d.material(c);
      for (int qp = 0; qp < K::nq; ++qp)
      {
        const Tensor2<double, dim> gb = K::load(g_bar.data(), qp);
        const Tensor2<double, dim> gd = K::load(g.data(), qp);
        if (strategy == TangentStrategy::Naive)
          K::put(naive_qp(params, gb, gd, geom.inv_jac(qp), geom.jxw[qp]), g.data(), qp);
        else
          K::put(recompute_qp(params, gb, gd, geom.inv_jac(qp), geom.jxw[qp]), g.data(), qp);
      }
    }
    K::integrate(d.basis(), g.data(), local.data());
    scatter_array(d.dofs(), c, local.data(), dst);
  }
}
} // namespace

template <int dim>
void TangentOperator<dim>::vmult(std::span<const double> src, std::span<double> dst) const
{
  require_prepared();
  const Discretization<dim>& d = *disc_;
  const index_t n = d.n_dofs();
  if (static_cast<index_t>(src.size()) != n || static_cast<index_t>(dst.size()) != n)
    throw ConfigError("vmult: vector size does not match the dof count");
  if (strategy_ == TangentStrategy::SparseBaseline)
  {
    csr_.vmult(src, dst);
    return;
  }
  std::vector<double> masked(src.begin(), src.end());
  d.zero_constrained(masked);
  d.cell_loop(dst, [&](index_t begin, index_t end, std::span<double> out) {
    dispatch_degree<dim>(d.degree(), [&](auto p) {
      apply_cells<dim, decltype(p)::value>(d, strategy_, u_bar_, store_, masked, begin, end, out);
    });
  });
  const auto& dirichlet = d.dofs().dirichlet;
  for (index_t i = 0; i < n; ++i)
    if (dirichlet[i])
      dst[i] = src[i];
}

template <int dim>
std::vector<double> TangentOperator<dim>::vmult(std::span<const double> src) const
{
  std::vector<double> dst(src.size());
  vmult(src, dst);
  return dst;
}

template <int dim>
void TangentOperator<dim>::unit_linearizations(index_t c, std::vector<Tensor4<double, dim>>& out) const
{
  const Discretization<dim>& d = *disc_;
  const std::size_t nq = d.geometry().n_qp_per_cell();
  out.resize(nq);
  if (strategy_ == TangentStrategy::Store)
  {
    for (std::size_t qp = 0; qp < nq; ++qp)
    {
      const StoreQpData<double, dim>& data = store_[c * nq + qp];
      out[qp] = unit_cell_linearization(store_linearization(data), data.to_spatial, 1.0);
    }
    return;
  }
  std::vector<double> local(dim * d.dofs().nodes_per_cell);
  std::vector<Tensor2<double, dim>> grads(nq);
  d.dofs().gather(c, u_bar_, local);
  const CellGeometry<dim> geom = d.geometry().cell(c);
  evaluate_gradients_sumfac<dim, double>(d.basis(), local, geom, grads);
  const MaterialParams& params = d.material(c);
  for (std::size_t qp = 0; qp < nq; ++qp)
  {
    Tensor4<double, dim> l;
    if (strategy_ == TangentStrategy::Recompute)
    {
      // columns of L from d^2 seeded products
      for (int col = 0; col < dim * dim; ++col)
      {
        Tensor2<double, dim> seed;
        seed.data[col] = 1.0;
        const Tensor2<double, dim> g = tangent_action(params, grads[qp], seed);
        for (int row = 0; row < dim * dim; ++row)
          l.data[row * dim * dim + col] = g.data[row];
      }
    }
    else
      l = full_tangent(params, grads[qp]);
    out[qp] = unit_cell_linearization(l, geom.inv_jac(static_cast<int>(qp)), geom.jxw[qp]);
  }
}

template <int dim>
std::vector<double> TangentOperator<dim>::compute_diagonal() const
{
  require_prepared();
  const Discretization<dim>& d = *disc_;
  const index_t n = d.n_dofs();
  std::vector<double> diag(n, 0.0);
  if (strategy_ == TangentStrategy::SparseBaseline)
  {
    for (index_t i = 0; i < n; ++i)
      diag[i] = csr_(i, i);
    return diag;
  }
  const std::vector<double> dphi = unit_shape_gradients<dim>(d.basis());
  const int nn = d.dofs().nodes_per_cell;
  const std::size_t nq = d.geometry().n_qp_per_cell();
  std::vector<Tensor4<double, dim>> lin;
  std::vector<double> local(dim * nn);
  for (index_t c = 0; c < d.n_cells(); ++c)
  {
    unit_linearizations(c, lin);
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t qp = 0; qp < nq; ++qp)
    {
      const Tensor4<double, dim>& a4 = lin[qp];
      for (int a = 0; a < nn; ++a)
      {
        const double* gp = &dphi[(qp * nn + a) * dim];
        for (int i = 0; i < dim; ++i)
        {
          double s = 0.0;
          for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l)
              s += gp[k] * a4(i, k, i, l) * gp[l];
          local[i * nn + a] += s;
        }
      }
    }
    d.dofs().scatter_add(c, local, diag);
  }
  for (index_t i = 0; i < n; ++i)
    if (d.dofs().dirichlet[i])
      diag[i] = 1.0;
  return diag;
}

template <int dim>
CsrMatrix TangentOperator<dim>::assemble_csr() const
{
  require_prepared();
  const Discretization<dim>& d = *disc_;
  CsrMatrix m = sparsity_pattern(d.dofs());
  const std::vector<double> dphi = unit_shape_gradients<dim>(d.basis());
  const int nn = d.dofs().nodes_per_cell;
  const int nl = dim * nn;
  const std::size_t nq = d.geometry().n_qp_per_cell();
  const auto& dirichlet = d.dofs().dirichlet;

  // The matrix always comes from the formed referential tangent.
  TangentOperator<dim> naive(disc_, TangentStrategy::Naive);
  naive.u_bar_ = u_bar_;
  naive.prepared_ = true;

  std::vector<Tensor4<double, dim>> lin;
  std::vector<double> ke(static_cast<std::size_t>(nl) * nl);
  std::vector<double> v(static_cast<std::size_t>(nl) * dim * dim); // [(i,a)][(j,l)]
  for (index_t c = 0; c < d.n_cells(); ++c)
  {
    naive.unit_linearizations(c, lin);
    std::fill(ke.begin(), ke.end(), 0.0);
    for (std::size_t qp = 0; qp < nq; ++qp)
    {
      const Tensor4<double, dim>& a4 = lin[qp];
      const double* gq = &dphi[qp * nn * dim];
      for (int i = 0; i < dim; ++i)
        for (int a = 0; a < nn; ++a)
          for (int j = 0; j < dim; ++j)
            for (int l = 0; l < dim; ++l)
            {
              double s = 0.0;
              for (int k = 0; k < dim; ++k)
                s += gq[a * dim + k] * a4(i, k, j, l);
              v[(i * nn + a) * dim * dim + j * dim + l] = s;
            }
      for (int r = 0; r < nl; ++r)
        for (int j = 0; j < dim; ++j)
        {
          const double* vr = &v[r * dim * dim + j * dim];
          double* kr = &ke[static_cast<std::size_t>(r) * nl + j * nn];
          for (int b = 0; b < nn; ++b)
          {
            double s = 0.0;
            for (int l = 0; l < dim; ++l)
              s += vr[l] * gq[b * dim + l];
            kr[b] += s;
          }
        }
    }
    const std::vector<index_t> cdofs = d.dofs().cell_dofs(c);
    for (int r = 0; r < nl; ++r)
    {
      const index_t row = cdofs[r];
      if (dirichlet[row])
        continue;
      const auto first = m.columns.begin() + m.row_offsets[row];
      const auto last = m.columns.begin() + m.row_offsets[row + 1];
      for (int s = 0; s < nl; ++s)
      {
        const index_t col = cdofs[s];
        if (dirichlet[col])
          continue;
        const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(col));
        m.values[it - m.columns.begin()] += ke[static_cast<std::size_t>(r) * nl + s];
      }
    }
  }
  for (index_t i = 0; i < d.n_dofs(); ++i)
    if (dirichlet[i])
      m.values[m.row_offsets[i]] = 1.0;
  return m;
}

template <int dim>
OperatorMemory TangentOperator<dim>::memory() const
{
  const Discretization<dim>& d = *disc_;
  OperatorMemory mem;
  const std::size_t n_qp = static_cast<std::size_t>(d.n_quadrature_points());
  switch (strategy_)
  {
    case TangentStrategy::Store:
      mem.constitutive = n_qp * StoreQpData<double, dim>::n_constitutive * sizeof(double);
      mem.geometry = n_qp * StoreQpData<double, dim>::n_geometry * sizeof(double);
      break;
    case TangentStrategy::Naive:
    case TangentStrategy::Recompute:
      mem.geometry = d.geometry().bytes();
      mem.state = static_cast<std::size_t>(d.n_dofs()) * sizeof(double);
      break;
    case TangentStrategy::SparseBaseline:
      mem.matrix = csr_.bytes();
      break;
  }
  return mem;
}

template class Discretization<2>;
template class Discretization<3>;
template class TangentOperator<2>;
template class TangentOperator<3>;
template CsrMatrix sparsity_pattern<2>(const DofMap<2>&);
template CsrMatrix sparsity_pattern<3>(const DofMap<3>&);

} // namespace hyperfem
