#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "hyperfem/fespace.hpp"

using namespace hyperfem;

namespace
{
/// Parallelogram (affine) or trapezoid cell through 2^dim lexicographic vertices.
template <int dim>
std::vector<std::array<double, dim>> cell_vertices(bool affine)
{
  std::vector<std::array<double, dim>> v(1 << dim);
  for (int k = 0; k < (1 << dim); ++k)
  {
    std::array<double, dim> xi;
    for (int d = 0; d < dim; ++d)
      xi[d] = (k >> d) & 1;
    // x = A xi + b with a sheared, stretched A
    v[k][0] = 2.0 * xi[0] + 0.3 * xi[1] + 1.0;
    v[k][1] = 0.2 * xi[0] + 1.5 * xi[1] - 0.5;
    if constexpr (dim == 3)
    {
      v[k][0] += 0.1 * xi[2];
      v[k][1] += 0.25 * xi[2];
      v[k][2] = -0.1 * xi[0] + 0.05 * xi[1] + 1.2 * xi[2];
    }
    if (!affine && xi[0] == 1 && xi[1] == 1)
      v[k][0] += 0.4;
  }
  return v;
}

template <int dim>
std::array<double, dim> map_point(const std::vector<std::array<double, dim>>& verts, const std::array<double, dim>& xi)
{
  std::array<double, dim> x{};
  for (int k = 0; k < (1 << dim); ++k)
  {
    double w = 1.0;
    for (int d = 0; d < dim; ++d)
      w *= ((k >> d) & 1) ? xi[d] : 1.0 - xi[d];
    for (int d = 0; d < dim; ++d)
      x[d] += w * verts[k][d];
  }
  return x;
}

/// Physical coordinates of the local support points.
template <int dim>
std::vector<std::array<double, dim>> support_points(const Basis1D& b, const std::vector<std::array<double, dim>>& verts)
{
  const int n = b.n_dofs();
  std::vector<std::array<double, dim>> pts(ipow(n, dim));
  for (int a = 0; a < ipow(n, dim); ++a)
  {
    std::array<double, dim> xi;
    int r = a;
    for (int d = 0; d < dim; ++d)
    {
      xi[d] = b.nodes()[r % n];
      r /= n;
    }
    pts[a] = map_point<dim>(verts, xi);
  }
  return pts;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v)
    x = dist(rng);
  return v;
}

/// sum_q JxW G_q : grad phi_i, by looping over basis functions.
template <int dim>
std::vector<double> integrate_oracle(const Basis1D& b, const std::vector<Tensor2<double, dim>>& g,
                                     const CellGeometry<dim>& geom)
{
  const int n = b.n_dofs(), q = b.n_q();
  const int nn = ipow(n, dim), nq = ipow(q, dim);
  std::vector<double> out(dim * nn, 0.0);
  for (int a = 0; a < nn; ++a)
    for (int qp = 0; qp < nq; ++qp)
    {
      std::array<double, dim> unit_grad;
      for (int k = 0; k < dim; ++k)
      {
        double v = 1.0;
        int ra = a, rq = qp;
        for (int d = 0; d < dim; ++d)
        {
          v *= d == k ? b.shape_grad(rq % q, ra % n) : b.shape_value(rq % q, ra % n);
          ra /= n;
          rq /= q;
        }
        unit_grad[k] = v;
      }
      const auto& jinv = geom.inv_jac(qp);
      for (int c = 0; c < dim; ++c)
        for (int A = 0; A < dim; ++A)
        {
          double grad = 0.0;
          for (int k = 0; k < dim; ++k)
            grad += unit_grad[k] * jinv(k, A);
          out[c * nn + a] += geom.jxw[qp] * g[qp](c, A) * grad;
        }
    }
  return out;
}

template <int dim>
double max_diff(const std::vector<Tensor2<double, dim>>& a, const std::vector<Tensor2<double, dim>>& b)
{
  double m = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q)
    for (int k = 0; k < dim * dim; ++k)
      m = std::max(m, std::abs(a[q].data[k] - b[q].data[k]));
  return m;
}

template <int dim>
void check_space(int p)
{
  CAPTURE(dim);
  CAPTURE(p);
  const Basis1D b(p);
  const int nn = ipow(p + 1, dim), nq = ipow(p + 1, dim);
  std::mt19937_64 rng(100 + p);
  for (const bool affine : {true, false})
  {
    const auto verts = cell_vertices<dim>(affine);
    const MeshGeometry<dim> geo(verts, b, GeometryLayout::PerQuadraturePoint);
    const CellGeometry<dim> geom = geo.cell(0);

    // volume
    double vol = 0.0;
    for (const double w : geom.jxw)
    {
      CHECK(w > 0.0);
      vol += w;
    }
    if (affine)
      CHECK(vol == doctest::Approx(std::abs(det(reference_jacobian<dim>(verts, {})))).epsilon(1e-12));

    // constant field
    std::vector<double> coeffs(dim * nn);
    for (int c = 0; c < dim; ++c)
      for (int a = 0; a < nn; ++a)
        coeffs[c * nn + a] = 3.0 + c;
    for (const auto& g : evaluate_gradients<dim>(b, coeffs, geom))
      for (const double x : g.data)
        CHECK(std::abs(x) <= 1e-12);

    // linear field u = A x is reproduced exactly
    Tensor2<double, dim> a_mat;
    for (auto& x : a_mat.data)
      x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const auto pts = support_points<dim>(b, verts);
    for (int c = 0; c < dim; ++c)
      for (int a = 0; a < nn; ++a)
      {
        double s = 0.0;
        for (int d = 0; d < dim; ++d)
          s += a_mat(c, d) * pts[a][d];
        coeffs[c * nn + a] = s;
      }
    for (const auto& g : evaluate_gradients<dim>(b, coeffs, geom))
      for (int k = 0; k < dim * dim; ++k)
        CHECK(std::abs(g.data[k] - a_mat.data[k]) <= 1e-12);

    // random coefficients against the naive loop
    coeffs = random_vector(dim * nn, rng);
    const auto fast = evaluate_gradients<dim>(b, coeffs, geom);
    std::vector<Tensor2<double, dim>> slow(nq);
    evaluate_gradients_naive<dim, double>(b, coeffs, geom, slow);
    CHECK(max_diff(fast, slow) <= 1e-12);

    // integration: zero, adjoint identity, naive oracle
    std::vector<Tensor2<double, dim>> zero(nq);
    for (const double x : integrate_gradients<dim>(b, zero, geom))
      CHECK(x == 0.0);
    std::vector<Tensor2<double, dim>> g(nq);
    for (auto& t : g)
      for (auto& x : t.data)
        x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const auto integrated = integrate_gradients<dim>(b, g, geom);
    double lhs = 0.0, rhs = 0.0;
    for (int qp = 0; qp < nq; ++qp)
      lhs += geom.jxw[qp] * double_contract(fast[qp], g[qp]);
    for (int i = 0; i < dim * nn; ++i)
      rhs += coeffs[i] * integrated[i];
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    const auto oracle = integrate_oracle<dim>(b, g, geom);
    for (int i = 0; i < dim * nn; ++i)
      CHECK(std::abs(integrated[i] - oracle[i]) <= 1e-12 * (1.0 + std::abs(oracle[i])));

    if (affine)
    {
      const MeshGeometry<dim> compact(verts, b, GeometryLayout::PerCell);
      CHECK(compact.bytes() < geo.bytes());
      double scale = 1.0;
      for (const auto& t : fast)
        for (const double x : t.data)
          scale = std::max(scale, std::abs(x));
      CHECK(max_diff(evaluate_gradients<dim>(b, coeffs, compact.cell(0)), fast) <= 1e-14 * scale);
      const auto ic = integrate_gradients<dim>(b, g, compact.cell(0));
      for (int i = 0; i < dim * nn; ++i)
        CHECK(std::abs(ic[i] - integrated[i]) <= 1e-14 * (1.0 + std::abs(integrated[i])));
    }
  }
}
} // namespace

TEST_CASE("Gauss rules")
{
  const auto r1 = gauss_1d(1);
  CHECK(r1.points == std::vector<double>{0.5});
  CHECK(r1.weights == std::vector<double>{1.0});
  const auto r2 = gauss_1d(2);
  CHECK(r2.points[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.points[1] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  const auto r5 = gauss_1d(5);
  double s = 0.0;
  for (int k = 0; k < 5; ++k)
    s += r5.weights[k] * std::pow(r5.points[k], 9);
  CHECK(std::abs(s - 0.1) <= 1e-14);
  for (int q = 1; q <= 12; ++q)
  {
    const auto r = gauss_1d(q);
    double sum = 0.0, moment = 0.0;
    for (int k = 0; k < q; ++k)
    {
      sum += r.weights[k];
      moment += r.weights[k] * std::pow(r.points[k], 2 * q - 1);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-14);
    CHECK(std::abs(moment - 1.0 / (2 * q)) <= 1e-13);
  }
  CHECK_THROWS_AS(gauss_1d(0), UnsupportedOrder);
  CHECK_THROWS_AS(gauss_1d(13), UnsupportedOrder);
}

TEST_CASE("1D basis tables")
{
  for (int p = 1; p <= 8; ++p)
  {
    const Basis1D b(p);
    CHECK(b.n_q() == p + 1);
    for (int k = 0; k < b.n_q(); ++k)
    {
      double sv = 0.0, sg = 0.0;
      for (int i = 0; i <= p; ++i)
      {
        sv += b.shape_value(k, i);
        sg += b.shape_grad(k, i);
      }
      CHECK(std::abs(sv - 1.0) <= 1e-14);
      CHECK(std::abs(sg) <= 1e-11);
    }
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= p; ++j)
        CHECK(b.value_at(i, b.nodes()[j]) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(Basis1D(0), UnsupportedOrder);
}

TEST_CASE("evaluation and integration 2D")
{
  for (int p = 1; p <= 8; ++p)
    check_space<2>(p);
}

TEST_CASE("evaluation and integration 3D")
{
  for (int p = 1; p <= 4; ++p)
    check_space<3>(p);
}

TEST_CASE("tensor-product polynomials of degree p are reproduced")
{
  const int p = 3;
  const Basis1D b(p);
  const auto verts = cell_vertices<2>(true);
  const MeshGeometry<2> geo(verts, b, GeometryLayout::PerCell);
  // u = xhat^3 yhat^2 in unit coordinates, referential gradient via J^-1
  const int n = p + 1;
  std::vector<double> coeffs(2 * n * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      coeffs[j * n + i] = std::pow(b.nodes()[i], 3) * std::pow(b.nodes()[j], 2);
  const auto grads = evaluate_gradients<2>(b, coeffs, geo.cell(0));
  for (int qj = 0; qj < n; ++qj)
    for (int qi = 0; qi < n; ++qi)
    {
      const double x = b.qpoints()[qi], y = b.qpoints()[qj];
      const double du_dx = 3 * x * x * y * y, du_dy = 2 * x * x * x * y;
      const auto& jinv = geo.cell(0).inv_jac(0);
      const auto& g = grads[qj * n + qi];
      CHECK(std::abs(g(0, 0) - (du_dx * jinv(0, 0) + du_dy * jinv(1, 0))) <= 1e-12);
      CHECK(std::abs(g(0, 1) - (du_dx * jinv(0, 1) + du_dy * jinv(1, 1))) <= 1e-12);
      CHECK(std::abs(g(1, 0)) <= 1e-14);
    }
}

TEST_CASE("counting scalar path is bitwise identical")
{
  const Basis1D b(3);
  const auto verts = cell_vertices<3>(false);
  const MeshGeometry<3> geo(verts, b, GeometryLayout::PerQuadraturePoint);
  std::mt19937_64 rng(5);
  const auto coeffs = random_vector(3 * 64, rng);
  std::vector<CountingScalar> counted(coeffs.begin(), coeffs.end());
  std::vector<Tensor2<double, 3>> plain(64);
  std::vector<Tensor2<CountingScalar, 3>> inst(64);
  evaluate_gradients_sumfac<3, double>(b, coeffs, geo.cell(0), plain);
  evaluate_gradients_sumfac<3, CountingScalar>(b, counted, geo.cell(0), inst);
  for (int q = 0; q < 64; ++q)
    for (int k = 0; k < 9; ++k)
      CHECK(plain[q].data[k] == inst[q].data[k].v);
}

TEST_CASE("sum factorization operation counts")
{
  for (int p = 2; p <= 4; ++p)
  {
    const auto probe = flop_complexity_probe(p, 3);
    CHECK(probe.sum_factorization.total() < probe.naive.total());
  }
  for (const int p : {2, 4})
  {
    const double ratio = static_cast<double>(flop_complexity_probe(2 * p, 2).sum_factorization.total()) /
                         static_cast<double>(flop_complexity_probe(p, 2).sum_factorization.total());
    CHECK(ratio <= 16.0);
  }
  const auto p3 = flop_complexity_probe(3, 3);
  CHECK(static_cast<double>(p3.naive.total()) / static_cast<double>(p3.sum_factorization.total()) >= 4.0);
  CHECK_THROWS_AS(flop_complexity_probe(5, 3), UnsupportedOrder);
  CHECK_THROWS_AS(flop_complexity_probe(9, 2), UnsupportedOrder);
}
