#include "doctest.h"

#include <sstream>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "hyperfem/solver.hpp"

using namespace hyperfem;
using namespace hyperfem::testing;

namespace
{
LinearMap dense_map(const Eigen::MatrixXd& a)
{
  return [&a](std::span<const double> s, std::span<double> d) {
    Eigen::Map<Eigen::VectorXd>(d.data(), d.size()) =
      a * Eigen::Map<const Eigen::VectorXd>(s.data(), s.size());
  };
}

template <int dim>
LinearMap op_map(const TangentOperator<dim>& op)
{
  return [&op](std::span<const double> s, std::span<double> d) { op.vmult(s, d); };
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng)
{
  Eigen::MatrixXd b(n, n);
  std::normal_distribution<double> dist;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b(i, j) = dist(rng);
  return b * b.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

/// Largest eigenpair of D^-1 A through the symmetric form D^-1/2 A D^-1/2.
std::pair<double, Eigen::VectorXd> top_eigenpair(const Eigen::MatrixXd& a, const std::vector<double>& diag)
{
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i)
    s[i] = 1.0 / std::sqrt(diag[i]);
  const Eigen::MatrixXd m = s.asDiagonal() * a * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd v = eig.eigenvectors().col(n - 1);
  return {eig.eigenvalues()[n - 1], s.asDiagonal() * v};
}

int mg_cg_iterations(int n0, int refines, int degree)
{
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, n0, refines);
  const auto levels = make_levels(setup, degree);
  Multigrid<2> mg(levels, TangentStrategy::Store);
  const auto& fine = *levels.back();
  mg.prepare(std::vector<double>(fine.n_dofs(), 0.0));
  const auto b = fine.traction_load(setup.traction);
  std::vector<double> x(b.size(), 0.0);
  return cg_solve(op_map(mg.fine_operator()), mg.as_map(), b, x, 1e-6).iterations;
}
} // namespace

TEST_CASE("CG with identity operator and preconditioner takes one iteration")
{
  std::mt19937_64 rng(1);
  const auto b = random_vector(20, rng);
  std::vector<double> x(20, 0.0);
  const CgResult r = cg_solve(identity_map(), identity_map(), b, x, 1e-12);
  CHECK(r.iterations == 1);
  CHECK(relative_difference(b, x) <= 1e-15);
}

TEST_CASE("CG reports non-convergence")
{
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd a = random_spd(30, rng);
  const auto b = random_vector(30, rng);
  std::vector<double> x(30, 0.0);
  CHECK_THROWS_AS(cg_solve(dense_map(a), identity_map(), b, x, 1e-14, 2), MaxIterations);
}

TEST_CASE("CG matches a dense factorization of the assembled stress-free tangent")
{
  const auto d = make_discretization<2>(2, 1, 1);
  TangentOperator<2> op(d, TangentStrategy::Store);
  op.prepare(std::vector<double>(d->n_dofs(), 0.0));
  const Eigen::MatrixXd a = to_dense(op.assemble_csr());
  const auto b = d->traction_load({12.5e3, 0.0});
  const Eigen::VectorXd ref = a.llt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
  std::vector<double> x(b.size(), 0.0);
  auto diag = std::make_shared<const std::vector<double>>(op.compute_diagonal());
  cg_solve(op_map(op), jacobi_map(diag), b, x, 1e-12);
  const std::vector<double> r(ref.data(), ref.data() + ref.size());
  CHECK(relative_difference(r, x) <= 1e-8);
}

TEST_CASE("lambda_max estimate")
{
  SUBCASE("preconditioned identity spectrum")
  {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(10, 10);
    std::vector<double> diag(10);
    for (int i = 0; i < 10; ++i)
      diag[i] = a(i, i) = i + 1.0;
    const double l = estimate_lambda_max(dense_map(a), diag);
    CHECK(l >= 0.99);
    CHECK(l <= 1.1 * 1.0 + 1e-12);
  }
  SUBCASE("random SPD against a dense eigensolver")
  {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXd a = random_spd(50, rng);
    std::vector<double> diag(50);
    for (int i = 0; i < 50; ++i)
      diag[i] = a(i, i);
    const double exact = top_eigenpair(a, diag).first;
    const double l1 = estimate_lambda_max(dense_map(a), diag);
    CHECK(l1 >= 0.9 * exact);
    CHECK(l1 == estimate_lambda_max(dense_map(a), diag));
  }
}

TEST_CASE("Chebyshev smoother")
{
  const auto d = make_discretization<2>(2, 1, 2);
  TangentOperator<2> op(d, TangentStrategy::Store);
  op.prepare(std::vector<double>(d->n_dofs(), 0.0));
  const auto diag = op.compute_diagonal();
  const double lambda = estimate_lambda_max(op_map(op), diag);
  const ChebyshevSmoother smoother(op_map(op), diag, lambda, 4);

  SUBCASE("exact solution is a fixed point")
  {
    std::mt19937_64 rng(4);
    auto x = random_vector(d->n_dofs(), rng);
    const auto b = op.vmult(x);
    auto y = x;
    smoother.smooth(b, y);
    CHECK(relative_difference(x, y) <= 1e-12);
  }
  SUBCASE("top eigenvector error is damped")
  {
    const Eigen::MatrixXd a = to_dense(op.assemble_csr());
    const auto [lmax, v] = top_eigenpair(a, diag);
    CHECK(lambda >= lmax * 0.9);
    std::vector<double> e(v.data(), v.data() + v.size());
    const std::vector<double> b(e.size(), 0.0);
    auto e1 = e;
    smoother.smooth(b, e1);
    CHECK(norm(e1) <= 0.5 * norm(e));
  }
}

TEST_CASE("Chebyshev sweeps reduce the residual monotonically")
{
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd a = random_spd(40, rng);
  std::vector<double> diag(40);
  for (int i = 0; i < 40; ++i)
    diag[i] = a(i, i);
  const LinearMap map = dense_map(a);
  const ChebyshevSmoother s(map, diag, estimate_lambda_max(map, diag), 4);
  const auto b = random_vector(40, rng);
  std::vector<double> x(40, 0.0), ax(40);
  double previous = norm(b);
  for (int sweep = 0; sweep < 10; ++sweep)
  {
    s.smooth(b, x);
    map(x, ax);
    for (int i = 0; i < 40; ++i)
      ax[i] = b[i] - ax[i];
    CHECK(norm(ax) < previous);
    previous = norm(ax);
  }
}

TEST_CASE("transfer operators")
{
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 1);
  for (int p = 1; p <= 3; ++p)
  {
    const auto levels = make_levels(setup, p);
    const Transfer<2> t(*levels[0], *levels[1]);
    const auto& coarse = *levels[0];
    const auto& fine = *levels[1];
    // affine field of degree <= p, zero on the clamped face y = 0
    auto field = [](const auto& dofs) {
      std::vector<double> v(dofs.n_dofs);
      for (index_t node = 0; node < dofs.n_nodes; ++node)
      {
        const auto& x = dofs.support_points[node];
        v[node * 2] = 3.0 * x[1] + 1e-3 * x[0] * x[1];
        v[node * 2 + 1] = -x[1] * (1.0 + 2e-3 * x[0]);
      }
      return v;
    };
    const auto vc = field(coarse.dofs());
    const auto vf = field(fine.dofs());
    std::vector<double> pf(fine.n_dofs());
    t.prolongate(vc, pf);
    CHECK(relative_difference(vf, pf) <= 1e-12);

    std::mt19937_64 rng(6 + p);
    auto xc = random_vector(coarse.n_dofs(), rng);
    auto yf = random_vector(fine.n_dofs(), rng);
    std::vector<double> pxc(fine.n_dofs()), ryf(coarse.n_dofs());
    t.prolongate(xc, pxc);
    t.restrict_vector(yf, ryf);
    const double lhs = dot(pxc, yf), rhs = dot(xc, ryf);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs) + 1e-13);

    std::vector<double> injected(coarse.n_dofs());
    t.inject(vf, injected);
    CHECK(relative_difference(vc, injected) <= 1e-14);
  }
}

TEST_CASE("constant field prolongates to the same constant away from the clamp")
{
  const auto setup = ProblemSetup<3>::standard(MaterialModel::Compressible, 1, 1);
  const auto levels = make_levels(setup, 2);
  const Transfer<3> t(*levels[0], *levels[1]);
  std::vector<double> c(levels[0]->n_dofs(), 1.0), f(levels[1]->n_dofs());
  t.prolongate(c, f);
  const auto& fd = levels[1]->dofs();
  for (index_t node = 0; node < fd.n_nodes; ++node)
    if (fd.node_lattice[node][1] > 2 * fd.degree)
      for (int comp = 0; comp < 3; ++comp)
        CHECK(f[node * 3 + comp] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("single-level multigrid is an exact preconditioner")
{
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 4, 0);
  const auto levels = make_levels(setup, 2);
  Multigrid<2> mg(levels, TangentStrategy::Recompute);
  mg.prepare(std::vector<double>(levels[0]->n_dofs(), 0.0));
  const auto b = levels[0]->traction_load(setup.traction);
  std::vector<double> x(b.size(), 0.0);
  CHECK(cg_solve(op_map(mg.fine_operator()), mg.as_map(), b, x, 1e-10).iterations <= 2);
}

TEST_CASE("V-cycle is symmetric")
{
  std::mt19937_64 rng(7);
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 2);
  const auto levels = make_levels(setup, 2);
  Multigrid<2> mg(levels, TangentStrategy::Store);
  mg.prepare(random_state(*levels.back(), rng, 0.05));
  auto b1 = random_vector(levels.back()->n_dofs(), rng);
  auto b2 = random_vector(levels.back()->n_dofs(), rng);
  std::vector<double> z1(b1.size()), z2(b2.size());
  mg.vmult(b1, z1);
  mg.vmult(b2, z2);
  const double a = dot(b2, z1), b = dot(b1, z2);
  CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
}

TEST_CASE("level operators at the stress-free state match assembled matrices")
{
  std::mt19937_64 rng(8);
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 2);
  const auto levels = make_levels(setup, 2);
  Multigrid<2> mg(levels, TangentStrategy::Store);
  mg.prepare(std::vector<double>(levels.back()->n_dofs(), 0.0));
  for (int l = 0; l < mg.n_levels(); ++l)
  {
    const auto& op = mg.level_operator(l);
    const CsrMatrix a = op.assemble_csr();
    const auto x = random_vector(op.n_dofs(), rng);
    std::vector<double> ax(x.size());
    a.vmult(x, ax);
    CHECK(relative_difference(ax, op.vmult(x)) <= 1e-10);
  }
}

TEST_CASE("multigrid beats Jacobi and is robust under refinement")
{
  const auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 2);
  const auto levels = make_levels(setup, 2);
  TangentOperator<2> op(levels.back(), TangentStrategy::Store);
  op.prepare(std::vector<double>(op.n_dofs(), 0.0));
  const auto b = levels.back()->traction_load(setup.traction);
  std::vector<double> x(b.size(), 0.0);
  auto diag = std::make_shared<const std::vector<double>>(op.compute_diagonal());
  const int jacobi = cg_solve(op_map(op), jacobi_map(diag), b, x, 1e-6, 10000).iterations;
  const int mg2 = mg_cg_iterations(2, 2, 2);
  CHECK(mg2 < jacobi);
  const int mg4 = mg_cg_iterations(2, 4, 2);
  MESSAGE("MG-CG iterations: 2 refinements " << mg2 << ", 4 refinements " << mg4 << ", Jacobi " << jacobi);
  CHECK(std::max(mg2, mg4) <= 2 * std::min(mg2, mg4));
}

TEST_CASE("Newton without load converges at once")
{
  auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 1);
  setup.traction = {0.0, 0.0};
  const NewtonResult r = newton_solve(setup, 2, TangentStrategy::Store, SolverConfig{});
  CHECK(r.log.size() == 5);
  for (const auto& rec : r.log)
    CHECK(rec.iteration == 1);
  CHECK(norm(r.u) == 0.0);
}

TEST_CASE("Newton at small load reproduces the linear solution")
{
  auto setup = ProblemSetup<2>::standard(MaterialModel::Compressible, 2, 1);
  setup.traction = {12.5, 0.0}; // 1000 times below the standard load
  SolverConfig cfg;
  cfg.load_steps = 1;
  cfg.linear_rel_tol = 1e-10;
  const NewtonResult r = newton_solve(setup, 2, TangentStrategy::Recompute, cfg);
  CHECK(r.log.size() <= 3);

  const auto levels = make_levels(setup, 2);
  TangentOperator<2> op(levels.back(), TangentStrategy::Naive);
  op.prepare(std::vector<double>(op.n_dofs(), 0.0));
  const Eigen::MatrixXd a = to_dense(op.assemble_csr());
  const auto f = levels.back()->traction_load(setup.traction);
  const Eigen::VectorXd lin = a.llt().solve(Eigen::Map<const Eigen::VectorXd>(f.data(), f.size()));
  CHECK(relative_difference(std::vector<double>(lin.data(), lin.data() + lin.size()), r.u) <= 0.01);
  for (index_t i = 0; i < levels.back()->n_dofs(); ++i)
    if (levels.back()->dofs().dirichlet[i])
      CHECK(r.u[i] == 0.0);
}

TEST_CASE("convergence log CSV")
{
  std::vector<NewtonRecord> log{{1, 1, 2.5, 0.1, 7, 1.0}, {1, 2, 1e-3, 1e-6, 9, 0.5}};
  std::ostringstream out;
  write_convergence_csv(log, out);
  CHECK(out.str().rfind("load_step,newton_iter,residual_norm,update_norm,cg_iterations,step_length\n", 0) == 0);
  CHECK(out.str().find("1,2,0.001") != std::string::npos);
}

TEST_CASE("invalid solver configuration")
{
  SolverConfig cfg;
  cfg.newton_res_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
