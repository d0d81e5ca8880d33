#include "doctest.h"

#include <map>

#include "fixtures.hpp"
#include "hyperfem/operator.hpp"

using namespace hyperfem;
using namespace hyperfem::testing;

namespace
{
constexpr TangentStrategy matrix_free[] = {TangentStrategy::Naive, TangentStrategy::Recompute,
                                           TangentStrategy::Store};

template <int dim>
std::map<TangentStrategy, std::vector<double>> all_strategy_products(
  const std::shared_ptr<const Discretization<dim>>& d,
  const std::vector<double>& u_bar,
  const std::vector<double>& x)
{
  std::map<TangentStrategy, std::vector<double>> out;
  for (const auto s : {TangentStrategy::Naive, TangentStrategy::Recompute, TangentStrategy::Store,
                       TangentStrategy::SparseBaseline})
  {
    TangentOperator<dim> op(d, s);
    op.prepare(u_bar);
    out[s] = op.vmult(x);
  }
  return out;
}

template <int dim>
void check_equivalence(int n0, int refines, int degree)
{
  std::mt19937_64 rng(17 + degree);
  const auto d = make_discretization<dim>(n0, refines, degree);
  const auto u_bar = random_state(*d, rng);
  const auto x = random_vector(d->n_dofs(), rng);
  const auto y = all_strategy_products<dim>(d, u_bar, x);
  for (const auto& [s1, v1] : y)
    for (const auto& [s2, v2] : y)
      CHECK(relative_difference(v1, v2) <= 1e-10);
}

template <int dim>
void check_fd(int n0, int refines, int degree, TangentStrategy strategy)
{
  std::mt19937_64 rng(5 + degree);
  const auto d = make_discretization<dim>(n0, refines, degree);
  const auto u_bar = random_state(*d, rng);
  auto x = random_state(*d, rng, 0.1);
  TangentOperator<dim> op(d, strategy);
  op.prepare(u_bar);
  const auto kx = op.vmult(x);
  const double h = 1e-6;
  std::vector<double> up = u_bar, um = u_bar;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    up[i] += h * x[i];
    um[i] -= h * x[i];
  }
  const std::vector<double> none(d->n_dofs(), 0.0);
  const auto rp = d->residual(up, 0.0, none);
  const auto rm = d->residual(um, 0.0, none);
  std::vector<double> fd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    fd[i] = (rp[i] - rm[i]) / (2 * h);
  // Constrained rows of vmult carry the identity; x vanishes there.
  CHECK(relative_difference(kx, fd) <= 1e-5);
}
} // namespace

TEST_CASE("strategy names round-trip")
{
  for (const auto s : {TangentStrategy::Naive, TangentStrategy::Recompute, TangentStrategy::Store,
                       TangentStrategy::SparseBaseline})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("dense"), ConfigError);
}

TEST_CASE("residual vanishes in the stress-free state without load")
{
  const auto d = make_discretization<2>(2, 1, 2);
  const std::vector<double> u(d->n_dofs(), 0.0);
  const auto f = d->traction_load({12.5e3, 0.0});
  const auto r = d->residual(u, 0.0, f);
  CHECK(norm(r) == 0.0);
}

TEST_CASE("residual is the gradient of the strain energy")
{
  std::mt19937_64 rng(3);
  auto run = [&](auto d) {
    const auto u = random_state(*d, rng, 0.1);
    const std::vector<double> none(d->n_dofs(), 0.0);
    const auto r = d->residual(u, 0.0, none);
    for (int trial = 0; trial < 3; ++trial)
    {
      auto x = random_vector(d->n_dofs(), rng);
      d->zero_constrained(x);
      const double h = 1e-6;
      std::vector<double> up = u, um = u;
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        up[i] += h * x[i];
        um[i] -= h * x[i];
      }
      const double fd = (d->strain_energy(up) - d->strain_energy(um)) / (2 * h);
      CHECK(std::abs(fd - dot(r, x)) <= 1e-5 * std::abs(dot(r, x)));
    }
  };
  run(make_discretization<2>(2, 0, 3));
  run(make_discretization<3>(2, 0, 2));
}

TEST_CASE("traction load matches a face-quadrature oracle")
{
  // oracle: integrals of the 1D Lagrange functions with a 12-point rule,
  // tensorized over the faces of a uniform grid
  auto run = [](auto d, auto traction) {
    constexpr int dim = std::tuple_size_v<decltype(traction)>;
    const int p = d->degree();
    const Basis1D basis(p);
    const QuadratureRule1D rule = gauss_1d(12);
    std::vector<double> w1(p + 1, 0.0);
    for (int i = 0; i <= p; ++i)
      for (std::size_t q = 0; q < rule.points.size(); ++q)
        w1[i] += rule.weights[q] * basis.value_at(i, rule.points[q]);
    const auto& dofs = d->dofs();
    const int nl = dofs.nodes_per_direction;
    const double h = d->level().extent / d->level().cells_per_direction;
    std::vector<double> oracle(d->n_dofs(), 0.0);
    for (index_t node = 0; node < dofs.n_nodes; ++node)
    {
      const auto& x = dofs.node_lattice[node];
      if (x[1] != nl - 1)
        continue;
      double w = 1.0;
      for (int k = 0; k < dim; ++k)
      {
        if (k == 1)
          continue;
        const int local = x[k] % p;
        const bool shared = local == 0 && x[k] > 0 && x[k] < nl - 1;
        w *= h * (shared ? 2.0 * w1[0] : w1[local == 0 && x[k] == nl - 1 ? p : local]);
      }
      for (int c = 0; c < dim; ++c)
        oracle[node * dim + c] = traction[c] * w;
    }
    const auto f = d->traction_load(traction);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(std::abs(f[i] - oracle[i]) <= 1e-12 * std::abs(traction[0]) * h);
    // at u = 0 the residual is the negated load
    const std::vector<double> u(d->n_dofs(), 0.0);
    const auto r = d->residual(u, 1.0, f);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(r[i] == doctest::Approx(-f[i]).epsilon(1e-12));
    // total force equals traction times area
    double total = 0.0;
    for (index_t node = 0; node < dofs.n_nodes; ++node)
      total += f[node * dim];
    CHECK(total == doctest::Approx(traction[0] * std::pow(d->level().extent, dim - 1)).epsilon(1e-12));
  };
  run(make_discretization<2>(2, 1, 3), std::array<double, 2>{12.5e3, -3.0e3});
  run(make_discretization<3>(2, 0, 2), std::array<double, 3>{12.5e3, 12.5e3, 0.0});
}

TEST_CASE("vmult is linear and rejects use before prepare")
{
  const auto d = make_discretization<2>(2, 0, 2);
  TangentOperator<2> op(d, TangentStrategy::Store);
  const std::vector<double> zero(d->n_dofs(), 0.0);
  CHECK_THROWS_AS(op.vmult(zero), StateNotPrepared);
  CHECK_THROWS_AS(op.compute_diagonal(), StateNotPrepared);
  op.prepare(zero);
  CHECK(norm(op.vmult(zero)) == 0.0);
}

TEST_CASE("stress-free preparation caches zero stress")
{
  const auto d = make_discretization<3>(2, 0, 1);
  TangentOperator<3> op(d, TangentStrategy::Store);
  op.prepare(std::vector<double>(d->n_dofs(), 0.0));
  for (const auto& data : op.store_data())
    for (const double s : data.sigma.data)
      CHECK(s == 0.0);
  CHECK(op.memory().constitutive == static_cast<std::size_t>(d->n_quadrature_points()) * 27 * 8);
}

TEST_CASE("all strategies agree (2D)")
{
  for (int p = 1; p <= 3; ++p)
    check_equivalence<2>(2, 1, p);
}

TEST_CASE("all strategies agree (3D)")
{
  for (int p = 1; p <= 2; ++p)
    check_equivalence<3>(2, 0, p);
}

TEST_CASE("tangent matches a central difference of the residual")
{
  for (const auto s : matrix_free)
  {
    check_fd<2>(2, 1, 2, s);
    check_fd<3>(2, 0, 2, s);
  }
}

TEST_CASE("operator is symmetric")
{
  std::mt19937_64 rng(11);
  const auto d = make_discretization<2>(2, 1, 3);
  const auto u_bar = random_state(*d, rng);
  auto x = random_vector(d->n_dofs(), rng);
  auto y = random_vector(d->n_dofs(), rng);
  for (const auto s : matrix_free)
  {
    TangentOperator<2> op(d, s);
    op.prepare(u_bar);
    const double a = dot(x, op.vmult(y)), b = dot(y, op.vmult(x));
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("rebuilding the Store cache follows the new state")
{
  std::mt19937_64 rng(2);
  const auto d = make_discretization<2>(2, 0, 2);
  TangentOperator<2> store(d, TangentStrategy::Store), naive(d, TangentStrategy::Naive);
  const auto x = random_vector(d->n_dofs(), rng);
  store.prepare(random_state(*d, rng));
  const auto u2 = random_state(*d, rng);
  store.prepare(u2);
  naive.prepare(u2);
  CHECK(relative_difference(naive.vmult(x), store.vmult(x)) <= 1e-10);
}

TEST_CASE("assembled matrix: product, symmetry, diagonal")
{
  std::mt19937_64 rng(23);
  const auto d = make_discretization<2>(2, 1, 2);
  const auto u_bar = random_state(*d, rng);
  TangentOperator<2> naive(d, TangentStrategy::Naive);
  naive.prepare(u_bar);
  const CsrMatrix a = naive.assemble_csr();
  CHECK(a.nnz() == sparse_nonzeros(d->dofs()));

  const auto x = random_vector(d->n_dofs(), rng);
  std::vector<double> ax(x.size());
  a.vmult(x, ax);
  CHECK(relative_difference(naive.vmult(x), ax) <= 1e-10);

  double max_entry = 0.0, max_asym = 0.0;
  for (index_t r = 0; r < a.n_rows; ++r)
    for (auto k = a.row_offsets[r]; k < a.row_offsets[r + 1]; ++k)
    {
      max_entry = std::max(max_entry, std::abs(a.values[k]));
      max_asym = std::max(max_asym, std::abs(a.values[k] - a(a.columns[k], r)));
    }
  CHECK(max_asym <= 1e-10 * max_entry);

  const auto diag_naive = naive.compute_diagonal();
  for (index_t i = 0; i < a.n_rows; ++i)
    CHECK(std::abs(diag_naive[i] - a(i, i)) <= 1e-12 * max_entry);
  for (const auto s : {TangentStrategy::Recompute, TangentStrategy::Store, TangentStrategy::SparseBaseline})
  {
    TangentOperator<2> op(d, s);
    op.prepare(u_bar);
    CHECK(relative_difference(diag_naive, op.compute_diagonal()) <= 1e-10);
  }
}

TEST_CASE("diagonal is positive in the stress-free state")
{
  const auto d = make_discretization<3>(2, 0, 2);
  TangentOperator<3> op(d, TangentStrategy::Store);
  op.prepare(std::vector<double>(d->n_dofs(), 0.0));
  for (const double x : op.compute_diagonal())
    CHECK(x > 0.0);
}

TEST_CASE("stress-free matrix equals small-strain isotropic stiffness")
{
  // Independent assembler: nested loops over points, shape functions and
  // components with L = 2 lambda I x I + mu (delta_ij delta_AB + delta_iB delta_Aj).
  constexpr int dim = 2;
  const int p = 2;
  const auto d = make_discretization<dim>(2, 1, p);
  TangentOperator<dim> op(d, TangentStrategy::Naive);
  op.prepare(std::vector<double>(d->n_dofs(), 0.0));
  const CsrMatrix a = op.assemble_csr();

  const Basis1D basis(p);
  const QuadratureRule1D rule = gauss_1d(p + 1);
  const int n = p + 1;
  const double h = d->level().extent / d->level().cells_per_direction;
  std::vector<std::vector<double>> dense(d->n_dofs(), std::vector<double>(d->n_dofs(), 0.0));
  for (index_t c = 0; c < d->n_cells(); ++c)
  {
    const MaterialParams& m = d->material(c);
    const auto dofs = d->dofs().cell_dofs(c);
    const int nn = n * n;
    for (int q0 = 0; q0 < n; ++q0)
      for (int q1 = 0; q1 < n; ++q1)
      {
        const double w = rule.weights[q0] * rule.weights[q1] * h * h;
        auto grad = [&](int a, int k) {
          const int a0 = a % n, a1 = a / n;
          const double x0 = rule.points[q0], x1 = rule.points[q1];
          return k == 0 ? basis.derivative_at(a0, x0) * basis.value_at(a1, x1) / h
                        : basis.value_at(a0, x0) * basis.derivative_at(a1, x1) / h;
        };
        for (int i = 0; i < dim; ++i)
          for (int ai = 0; ai < nn; ++ai)
            for (int j = 0; j < dim; ++j)
              for (int bj = 0; bj < nn; ++bj)
              {
                double s = 0.0;
                for (int A = 0; A < dim; ++A)
                  for (int B = 0; B < dim; ++B)
                  {
                    const double l = 2.0 * m.lambda * (i == A) * (j == B) +
                                     m.mu * ((i == j) * (A == B) + (i == B) * (A == j));
                    s += grad(ai, A) * l * grad(bj, B);
                  }
                dense[dofs[i * nn + ai]][dofs[j * nn + bj]] += s * w;
              }
      }
  }
  const auto& bc = d->dofs().dirichlet;
  double max_entry = 0.0;
  for (const auto& row : dense)
    for (const double v : row)
      max_entry = std::max(max_entry, std::abs(v));
  for (index_t r = 0; r < d->n_dofs(); ++r)
    for (index_t c = 0; c < d->n_dofs(); ++c)
    {
      const double expected = (bc[r] || bc[c]) ? (r == c ? 1.0 : 0.0) : dense[r][c];
      CHECK(std::abs(a(r, c) - expected) <= 1e-10 * max_entry);
    }
}

TEST_CASE("vmult is deterministic and worker-count independent")
{
  std::mt19937_64 rng(9);
  const auto d1 = make_discretization<2>(2, 1, 2);
  const auto d3 = make_discretization<2>(2, 1, 2, MaterialModel::Compressible,
                                         GeometryLayout::PerQuadraturePoint, 3);
  const auto u_bar = random_state(*d1, rng);
  const auto x = random_vector(d1->n_dofs(), rng);
  TangentOperator<2> op1(d1, TangentStrategy::Store), op3(d3, TangentStrategy::Store);
  op1.prepare(u_bar);
  op3.prepare(u_bar);
  const auto y1 = op1.vmult(x), y2 = op1.vmult(x);
  CHECK(y1 == y2);
  CHECK(relative_difference(y1, op3.vmult(x)) <= 1e-14);
  CHECK(op3.vmult(x) == op3.vmult(x));
}

TEST_CASE("per-cell geometry layout gives the same operator on affine meshes")
{
  std::mt19937_64 rng(4);
  const auto dq = make_discretization<3>(2, 0, 2);
  const auto dc = make_discretization<3>(2, 0, 2, MaterialModel::Split, GeometryLayout::PerCell);
  const auto dq_split = make_discretization<3>(2, 0, 2, MaterialModel::Split);
  CHECK(dc->geometry().bytes() < dq->geometry().bytes());
  const auto u_bar = random_state(*dq, rng);
  const auto x = random_vector(dq->n_dofs(), rng);
  TangentOperator<3> a(dq_split, TangentStrategy::Recompute), b(dc, TangentStrategy::Recompute);
  a.prepare(u_bar);
  b.prepare(u_bar);
  CHECK(relative_difference(a.vmult(x), b.vmult(x)) <= 1e-12);
}
