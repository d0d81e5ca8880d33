#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hyperfem/counting_scalar.hpp"
#include "hyperfem/errors.hpp"
#include "hyperfem/tensor.hpp"

namespace hyperfem
{

inline constexpr int max_degree_2d = 8;
inline constexpr int max_degree_3d = 4;

template <int dim>
inline constexpr int max_degree = dim == 2 ? max_degree_2d : max_degree_3d;

constexpr int ipow(int base, int e)
{
  int r = 1;
  for (int k = 0; k < e; ++k)
    r *= base;
  return r;
}

struct QuadratureRule1D
{
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with q points on [0, 1]; 1 <= q <= 12.
QuadratureRule1D gauss_1d(int q);

/// Lagrange basis of degree p on equidistant support points of [0, 1],
/// tabulated at the (p+1)-point Gauss rule.
class Basis1D
{
public:
  explicit Basis1D(int degree);

  int degree() const { return degree_; }
  int n_dofs() const { return degree_ + 1; }
  int n_q() const { return static_cast<int>(quad_.points.size()); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& qpoints() const { return quad_.points; }
  const std::vector<double>& qweights() const { return quad_.weights; }

  /// Row-major [q][i] tables.
  const std::vector<double>& shape_values() const { return values_; }
  const std::vector<double>& shape_grads() const { return grads_; }
  double shape_value(int k, int i) const { return values_[k * n_dofs() + i]; }
  double shape_grad(int k, int i) const { return grads_[k * n_dofs() + i]; }

  double value_at(int i, double x) const;
  double derivative_at(int i, double x) const;

private:
  int degree_;
  std::vector<double> nodes_;
  QuadratureRule1D quad_;
  std::vector<double> values_;
  std::vector<double> grads_;
};

/// d x / d xhat of the multilinear map through 2^dim lexicographic vertices.
template <int dim>
Tensor2<double, dim> reference_jacobian(std::span<const std::array<double, dim>> verts,
                                        const std::array<double, dim>& xi);

/// Non-owning view of one cell's mapping data. Either one inverse Jacobian
/// per quadrature point or, for affine cells, a single one for the cell.
template <int dim>
struct CellGeometry
{
  std::span<const Tensor2<double, dim>> inv_jacobian;
  std::span<const double> jxw;

  const Tensor2<double, dim>& inv_jac(int q) const
  {
    return inv_jacobian.size() == 1 ? inv_jacobian[0] : inv_jacobian[q];
  }
};

enum class GeometryLayout
{
  PerQuadraturePoint,
  PerCell // one inverse Jacobian per cell; only valid for affine cells
};

/// Mapping data for every cell of a mesh level.
template <int dim>
class MeshGeometry
{
public:
  MeshGeometry() = default;

  /// `cell_vertices` holds 2^dim lexicographically ordered vertex coordinates
  /// per cell; the map is multilinear.
  MeshGeometry(std::span<const std::array<double, dim>> cell_vertices,
               const Basis1D& basis,
               GeometryLayout layout);

  CellGeometry<dim> cell(std::size_t c) const
  {
    const std::size_t nj = layout_ == GeometryLayout::PerCell ? 1 : n_qp_;
    return {std::span(inv_jacobian_).subspan(c * nj, nj), std::span(jxw_).subspan(c * n_qp_, n_qp_)};
  }

  GeometryLayout layout() const { return layout_; }
  std::size_t n_cells() const { return n_cells_; }
  std::size_t n_qp_per_cell() const { return n_qp_; }
  std::size_t bytes() const
  {
    return inv_jacobian_.size() * sizeof(Tensor2<double, dim>) + jxw_.size() * sizeof(double);
  }

private:
  GeometryLayout layout_ = GeometryLayout::PerQuadraturePoint;
  std::size_t n_cells_ = 0;
  std::size_t n_qp_ = 0;
  std::vector<Tensor2<double, dim>> inv_jacobian_;
  std::vector<double> jxw_;
};

/// Sum-factorized evaluation and integration of reference-cell gradients for
/// one scalar component on a tensor-product cell with n = q = degree + 1.
template <int dim, int degree>
struct SumFactorization
{
  static constexpr int n = degree + 1;
  static constexpr int q = degree + 1;
  static constexpr int n_nodes = ipow(n, dim);
  static constexpr int n_qp = ipow(q, dim);

  /// out[post][k][pre] (=|+=) sum_i M(k, i) in[post][i][pre], where M is
  /// either the [n_out][n_in] table or the transpose of an [n_in][n_out] one.
  template <int n_in, int n_out, int pre, int post, bool transposed, bool add, typename S>
  static void contract(const double* m, const S* in, S* out)
  {
    for (int po = 0; po < post; ++po)
    {
      const S* src = in + po * n_in * pre;
      S* dst = out + po * n_out * pre;
      for (int k = 0; k < n_out; ++k)
      {
        for (int pr = 0; pr < pre; ++pr)
        {
          S s = coeff<n_in, n_out, transposed>(m, k, 0) * src[pr];
          for (int i = 1; i < n_in; ++i)
            s += coeff<n_in, n_out, transposed>(m, k, i) * src[i * pre + pr];
          if constexpr (add)
            dst[k * pre + pr] += s;
          else
            dst[k * pre + pr] = s;
        }
      }
    }
  }

  /// grads[k * n_qp + qp] = d u / d xhat_k at each quadrature point.
  template <typename S>
  static void gradients(const double* vals, const double* ders, const S* u, S* grads)
  {
    if constexpr (dim == 2)
    {
      std::array<S, n * q> tv, td;
      contract<n, q, 1, n, false, false>(vals, u, tv.data());
      contract<n, q, 1, n, false, false>(ders, u, td.data());
      contract<n, q, q, 1, false, false>(vals, td.data(), grads);
      contract<n, q, q, 1, false, false>(ders, tv.data(), grads + n_qp);
    }
    else
    {
      std::array<S, n * n * q> tv, td;
      contract<n, q, 1, n * n, false, false>(vals, u, tv.data());
      contract<n, q, 1, n * n, false, false>(ders, u, td.data());
      std::array<S, n * q * q> tvv, tdv, tvd;
      contract<n, q, q, n, false, false>(vals, tv.data(), tvv.data());
      contract<n, q, q, n, false, false>(vals, td.data(), tdv.data());
      contract<n, q, q, n, false, false>(ders, tv.data(), tvd.data());
      contract<n, q, q * q, 1, false, false>(vals, tdv.data(), grads);
      contract<n, q, q * q, 1, false, false>(vals, tvd.data(), grads + n_qp);
      contract<n, q, q * q, 1, false, false>(ders, tvv.data(), grads + 2 * n_qp);
    }
  }

  /// Transpose of `gradients`: u = sum_k D_k^T grads_k (overwrites u).
  template <typename S>
  static void integrate(const double* vals, const double* ders, const S* grads, S* u)
  {
    if constexpr (dim == 2)
    {
      std::array<S, q * n> sd, sv;
      contract<q, n, q, 1, true, false>(vals, grads, sd.data());
      contract<q, n, q, 1, true, false>(ders, grads + n_qp, sv.data());
      contract<q, n, 1, n, true, false>(ders, sd.data(), u);
      contract<q, n, 1, n, true, true>(vals, sv.data(), u);
    }
    else
    {
      std::array<S, q * q * n> sdv, svd, svv;
      contract<q, n, q * q, 1, true, false>(vals, grads, sdv.data());
      contract<q, n, q * q, 1, true, false>(vals, grads + n_qp, svd.data());
      contract<q, n, q * q, 1, true, false>(ders, grads + 2 * n_qp, svv.data());
      std::array<S, q * n * n> rv, rd;
      contract<q, n, q, n, true, false>(vals, svv.data(), rv.data());
      contract<q, n, q, n, true, true>(ders, svd.data(), rv.data());
      contract<q, n, q, n, true, false>(vals, sdv.data(), rd.data());
      contract<q, n, 1, n * n, true, false>(vals, rv.data(), u);
      contract<q, n, 1, n * n, true, true>(ders, rd.data(), u);
    }
  }

private:
  template <int n_in, int n_out, bool transposed>
  static double coeff(const double* m, int k, int i)
  {
    if constexpr (transposed)
      return m[i * n_out + k];
    else
      return m[k * n_in + i];
  }
};

/// Calls f(std::integral_constant<int, p>{}) for the runtime degree p.
template <int dim, typename F>
decltype(auto) dispatch_degree(int degree, F&& f)
{
  static_assert(max_degree_2d == 8 && max_degree_3d == 4);
  if (degree < 1 || degree > max_degree<dim>)
    throw UnsupportedOrder("polynomial degree " + std::to_string(degree) + " not supported in " +
                           std::to_string(dim) + "D");
  switch (degree)
  {
    case 1: return f(std::integral_constant<int, 1>{});
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    default: break;
  }
  if constexpr (dim == 2)
  {
    switch (degree)
    {
      case 5: return f(std::integral_constant<int, 5>{});
      case 6: return f(std::integral_constant<int, 6>{});
      case 7: return f(std::integral_constant<int, 7>{});
      default: return f(std::integral_constant<int, 8>{});
    }
  }
  else
    return f(std::integral_constant<int, 4>{}); // unreachable
}

/// Referential gradients (d u_c / d X_A) at every quadrature point of a
/// d-component field with component-major coefficients, via sum factorization.
template <int dim>
std::vector<Tensor2<double, dim>> evaluate_gradients(const Basis1D& basis,
                                                     std::span<const double> cell_coeffs,
                                                     const CellGeometry<dim>& geom);

/// Coefficients of sum_q G_q : grad(phi_i) JxW_q; the transpose of
/// evaluate_gradients with JxW weighting.
template <int dim>
std::vector<double> integrate_gradients(const Basis1D& basis,
                                        std::span<const Tensor2<double, dim>> qp_tensors,
                                        const CellGeometry<dim>& geom);

/// Same results via per-basis-function loops, O((p+1)^(2d)) per cell. Any
/// scalar type, for operation counting.
template <int dim, typename S>
void evaluate_gradients_naive(const Basis1D& basis, std::span<const S> cell_coeffs,
                              const CellGeometry<dim>& geom, std::span<Tensor2<S, dim>> out);

template <int dim, typename S>
void evaluate_gradients_sumfac(const Basis1D& basis, std::span<const S> cell_coeffs,
                               const CellGeometry<dim>& geom, std::span<Tensor2<S, dim>> out);

struct FlopProbe
{
  OpCounts sum_factorization;
  OpCounts naive;
};

/// Operation counts of one cell's gradient evaluation (all d components,
/// including the mapping to referential gradients) on both paths.
FlopProbe flop_complexity_probe(int degree, int dim);

} // namespace hyperfem
