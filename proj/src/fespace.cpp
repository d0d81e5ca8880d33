#include "hyperfem/fespace.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hyperfem
{

QuadratureRule1D gauss_1d(int q)
{
  if (q < 1 || q > 12)
    throw UnsupportedOrder("Gauss rule with " + std::to_string(q) + " points not supported");
  QuadratureRule1D rule;
  rule.points.resize(q);
  rule.weights.resize(q);
  // Newton iteration on the Legendre polynomial P_q over [-1, 1]; returns
  // P_q(x) and P_q'(x).
  auto legendre = [q](double x) {
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= q; ++j)
    {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
    }
    return std::pair{p1, q * (x * p1 - p2) / (x * x - 1.0)};
  };
  for (int i = 0; i < (q + 1) / 2; ++i)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it)
    {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root; map to [0, 1] in ascending order.
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[q - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[q - 1 - i] = 0.5 * w;
  }
  if (q % 2 == 1)
    rule.points[q / 2] = 0.5;
  return rule;
}

Basis1D::Basis1D(int degree) : degree_(degree)
{
  if (degree < 1 || degree > max_degree_2d)
    throw UnsupportedOrder("basis degree " + std::to_string(degree) + " not supported");
  nodes_.resize(degree + 1);
  for (int i = 0; i <= degree; ++i)
    nodes_[i] = static_cast<double>(i) / degree;
  quad_ = gauss_1d(degree + 1);
  const int nq = n_q();
  values_.resize(nq * n_dofs());
  grads_.resize(nq * n_dofs());
  for (int k = 0; k < nq; ++k)
    for (int i = 0; i < n_dofs(); ++i)
    {
      values_[k * n_dofs() + i] = value_at(i, quad_.points[k]);
      grads_[k * n_dofs() + i] = derivative_at(i, quad_.points[k]);
    }
}

double Basis1D::value_at(int i, double x) const
{
  double r = 1.0;
  for (int j = 0; j <= degree_; ++j)
    if (j != i)
      r *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
  return r;
}

double Basis1D::derivative_at(int i, double x) const
{
  double sum = 0.0;
  for (int m = 0; m <= degree_; ++m)
  {
    if (m == i)
      continue;
    double term = 1.0 / (nodes_[i] - nodes_[m]);
    for (int j = 0; j <= degree_; ++j)
      if (j != i && j != m)
        term *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
    sum += term;
  }
  return sum;
}


template <int dim>
Tensor2<double, dim> reference_jacobian(std::span<const std::array<double, dim>> verts,
                                        const std::array<double, dim>& xi)
{
  Tensor2<double, dim> jac;
  for (int v = 0; v < (1 << dim); ++v)
  {
    std::array<double, dim> grad;
    for (int k = 0; k < dim; ++k)
    {
      double g = 1.0;
      for (int m = 0; m < dim; ++m)
      {
        const bool upper = (v >> m) & 1;
        if (m == k)
          g *= upper ? 1.0 : -1.0;
        else
          g *= upper ? xi[m] : 1.0 - xi[m];
      }
      grad[k] = g;
    }
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k)
        jac(i, k) += verts[v][i] * grad[k];
  }
  return jac;
}

template <int dim>
MeshGeometry<dim>::MeshGeometry(std::span<const std::array<double, dim>> cell_vertices,
                                const Basis1D& basis,
                                GeometryLayout layout)
  : layout_(layout)
{
  constexpr int nv = 1 << dim;
  const int nq1 = basis.n_q();
  n_cells_ = cell_vertices.size() / nv;
  n_qp_ = static_cast<std::size_t>(ipow(nq1, dim));
  const std::size_t nj = layout == GeometryLayout::PerCell ? 1 : n_qp_;
  inv_jacobian_.resize(n_cells_ * nj);
  jxw_.resize(n_cells_ * n_qp_);
  for (std::size_t c = 0; c < n_cells_; ++c)
  {
    const auto verts = cell_vertices.subspan(c * nv, nv);
    for (std::size_t qp = 0; qp < n_qp_; ++qp)
    {
      std::array<double, dim> xi;
      double w = 1.0;
      std::size_t rest = qp;
      for (int k = 0; k < dim; ++k)
      {
        const int ik = static_cast<int>(rest % nq1);
        rest /= nq1;
        xi[k] = basis.qpoints()[ik];
        w *= basis.qweights()[ik];
      }
      const Tensor2<double, dim> jac = reference_jacobian<dim>(verts, xi);
      const double detj = det(jac);
      if (!(detj > 0.0))
        throw NonPositiveJacobian("inverted or degenerate cell in mesh geometry");
      jxw_[c * n_qp_ + qp] = detj * w;
      // inverse is (xhat_k, x_A)
      if (layout == GeometryLayout::PerQuadraturePoint)
        inv_jacobian_[c * n_qp_ + qp] = inverse(jac);
      else if (qp == 0)
        inv_jacobian_[c] = inverse(jac);
    }
  }
}

namespace
{
template <int dim, int degree, typename S>
void sumfac_gradients_impl(const Basis1D& basis, std::span<const S> coeffs,
                           const CellGeometry<dim>& geom, std::span<Tensor2<S, dim>> out)
{
  using SF = SumFactorization<dim, degree>;
  std::array<S, dim * SF::n_qp> g;
  for (int c = 0; c < dim; ++c)
  {
    SF::gradients(basis.shape_values().data(), basis.shape_grads().data(),
                  coeffs.data() + c * SF::n_nodes, g.data());
    for (int qp = 0; qp < SF::n_qp; ++qp)
    {
      const Tensor2<double, dim>& jinv = geom.inv_jac(qp);
      for (int a = 0; a < dim; ++a)
      {
        S s = g[qp] * jinv(0, a);
        for (int k = 1; k < dim; ++k)
          s += g[k * SF::n_qp + qp] * jinv(k, a);
        out[qp](c, a) = s;
      }
    }
  }
}

template <int dim, int degree>
void integrate_impl(const Basis1D& basis, std::span<const Tensor2<double, dim>> qp_tensors,
                    const CellGeometry<dim>& geom, std::span<double> out)
{
  using SF = SumFactorization<dim, degree>;
  std::array<double, dim * SF::n_qp> g;
  for (int c = 0; c < dim; ++c)
  {
    for (int qp = 0; qp < SF::n_qp; ++qp)
    {
      const Tensor2<double, dim>& jinv = geom.inv_jac(qp);
      for (int k = 0; k < dim; ++k)
      {
        double s = 0.0;
        for (int a = 0; a < dim; ++a)
          s += qp_tensors[qp](c, a) * jinv(k, a);
        g[k * SF::n_qp + qp] = s * geom.jxw[qp];
      }
    }
    SF::integrate(basis.shape_values().data(), basis.shape_grads().data(), g.data(),
                  out.data() + c * SF::n_nodes);
  }
}
} // namespace

template <int dim, typename S>
void evaluate_gradients_sumfac(const Basis1D& basis, std::span<const S> cell_coeffs,
                               const CellGeometry<dim>& geom, std::span<Tensor2<S, dim>> out)
{
  dispatch_degree<dim>(basis.degree(), [&](auto p) {
    sumfac_gradients_impl<dim, decltype(p)::value, S>(basis, cell_coeffs, geom, out);
  });
}

template <int dim>
std::vector<Tensor2<double, dim>> evaluate_gradients(const Basis1D& basis,
                                                     std::span<const double> cell_coeffs,
                                                     const CellGeometry<dim>& geom)
{
  const int nn = ipow(basis.n_dofs(), dim);
  if (cell_coeffs.size() != static_cast<std::size_t>(dim * nn))
    throw ConfigError("evaluate_gradients: coefficient count does not match (p+1)^d per component");
  std::vector<Tensor2<double, dim>> out(ipow(basis.n_q(), dim));
  evaluate_gradients_sumfac<dim, double>(basis, cell_coeffs, geom, out);
  return out;
}

template <int dim>
std::vector<double> integrate_gradients(const Basis1D& basis,
                                        std::span<const Tensor2<double, dim>> qp_tensors,
                                        const CellGeometry<dim>& geom)
{
  if (qp_tensors.size() != static_cast<std::size_t>(ipow(basis.n_q(), dim)))
    throw ConfigError("integrate_gradients: need one tensor per quadrature point");
  std::vector<double> out(dim * ipow(basis.n_dofs(), dim));
  dispatch_degree<dim>(basis.degree(), [&](auto p) {
    integrate_impl<dim, decltype(p)::value>(basis, qp_tensors, geom, out);
  });
  return out;
}

template <int dim, typename S>
void evaluate_gradients_naive(const Basis1D& basis, std::span<const S> cell_coeffs,
                              const CellGeometry<dim>& geom, std::span<Tensor2<S, dim>> out)
{
  const int n = basis.n_dofs();
  const int nq = basis.n_q();
  const int nn = ipow(n, dim);
  const int nqp = ipow(nq, dim);
  // Full tensor-product gradient table, [qp][node][k].
  std::vector<double> table(static_cast<std::size_t>(nqp) * nn * dim);
  for (int qp = 0; qp < nqp; ++qp)
    for (int node = 0; node < nn; ++node)
      for (int k = 0; k < dim; ++k)
      {
        double v = 1.0;
        int rq = qp, rn = node;
        for (int m = 0; m < dim; ++m)
        {
          const int iq = rq % nq, in = rn % n;
          rq /= nq;
          rn /= n;
          v *= (m == k) ? basis.shape_grad(iq, in) : basis.shape_value(iq, in);
        }
        table[(static_cast<std::size_t>(qp) * nn + node) * dim + k] = v;
      }
  for (int qp = 0; qp < nqp; ++qp)
  {
    const Tensor2<double, dim>& jinv = geom.inv_jac(qp);
    for (int c = 0; c < dim; ++c)
    {
      std::array<S, dim> g;
      for (int k = 0; k < dim; ++k)
      {
        const double* t = &table[static_cast<std::size_t>(qp) * nn * dim + k];
        S s = cell_coeffs[c * nn] * t[0];
        for (int node = 1; node < nn; ++node)
          s += cell_coeffs[c * nn + node] * t[node * dim];
        g[k] = s;
      }
      for (int a = 0; a < dim; ++a)
      {
        S s = g[0] * jinv(0, a);
        for (int k = 1; k < dim; ++k)
          s += g[k] * jinv(k, a);
        out[qp](c, a) = s;
      }
    }
  }
}

namespace
{
template <int dim>
FlopProbe probe_impl(int degree)
{
  const Basis1D basis(degree);
  // unit cube cell
  std::vector<std::array<double, dim>> verts(1 << dim);
  for (int v = 0; v < (1 << dim); ++v)
    for (int k = 0; k < dim; ++k)
      verts[v][k] = (v >> k) & 1 ? 1.0 : 0.0;
  const MeshGeometry<dim> geom(verts, basis, GeometryLayout::PerQuadraturePoint);
  const int nn = ipow(basis.n_dofs(), dim);
  const int nqp = ipow(basis.n_q(), dim);
  std::vector<CountingScalar> coeffs(dim * nn);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    coeffs[i] = std::sin(1.0 + static_cast<double>(i));
  std::vector<Tensor2<CountingScalar, dim>> out(nqp);
  FlopProbe r;
  r.sum_factorization = count_operations([&] {
    evaluate_gradients_sumfac<dim, CountingScalar>(basis, coeffs, geom.cell(0), out);
  });
  r.naive = count_operations([&] {
    evaluate_gradients_naive<dim, CountingScalar>(basis, coeffs, geom.cell(0), out);
  });
  return r;
}
} // namespace

FlopProbe flop_complexity_probe(int degree, int dim)
{
  if (dim == 2)
    return probe_impl<2>(degree);
  if (dim == 3)
  {
    if (degree > max_degree_3d)
      throw UnsupportedOrder("degree " + std::to_string(degree) + " not supported in 3D");
    return probe_impl<3>(degree);
  }
  throw ConfigError("dimension must be 2 or 3");
}

template Tensor2<double, 2> reference_jacobian<2>(std::span<const std::array<double, 2>>,
                                                 const std::array<double, 2>&);
template Tensor2<double, 3> reference_jacobian<3>(std::span<const std::array<double, 3>>,
                                                 const std::array<double, 3>&);
template class MeshGeometry<2>;
template class MeshGeometry<3>;

#define HYPERFEM_INSTANTIATE(D)                                                                    \
  template std::vector<Tensor2<double, D>> evaluate_gradients<D>(                                  \
    const Basis1D&, std::span<const double>, const CellGeometry<D>&);                              \
  template std::vector<double> integrate_gradients<D>(                                             \
    const Basis1D&, std::span<const Tensor2<double, D>>, const CellGeometry<D>&);                  \
  template void evaluate_gradients_naive<D, double>(const Basis1D&, std::span<const double>,       \
                                                    const CellGeometry<D>&,                        \
                                                    std::span<Tensor2<double, D>>);                \
  template void evaluate_gradients_naive<D, CountingScalar>(                                       \
    const Basis1D&, std::span<const CountingScalar>, const CellGeometry<D>&,                       \
    std::span<Tensor2<CountingScalar, D>>);                                                        \
  template void evaluate_gradients_sumfac<D, double>(const Basis1D&, std::span<const double>,      \
                                                     const CellGeometry<D>&,                       \
                                                     std::span<Tensor2<double, D>>);               \
  template void evaluate_gradients_sumfac<D, CountingScalar>(                                      \
    const Basis1D&, std::span<const CountingScalar>, const CellGeometry<D>&,                       \
    std::span<Tensor2<CountingScalar, D>>);

HYPERFEM_INSTANTIATE(2)
HYPERFEM_INSTANTIATE(3)
#undef HYPERFEM_INSTANTIATE

} // namespace hyperfem
