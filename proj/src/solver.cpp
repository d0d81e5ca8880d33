#include "hyperfem/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

namespace hyperfem
{

namespace
{
double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a)
{
  return std::sqrt(dot(a, a));
}
} // namespace

LinearMap identity_map()
{
  return [](std::span<const double> src, std::span<double> dst) {
    std::copy(src.begin(), src.end(), dst.begin());
  };
}

LinearMap jacobi_map(std::shared_ptr<const std::vector<double>> diag)
{
  return [diag = std::move(diag)](std::span<const double> src, std::span<double> dst) {
    const std::vector<double>& d = *diag;
    for (std::size_t i = 0; i < src.size(); ++i)
      dst[i] = src[i] / d[i];
  };
}

CgResult cg_solve(const LinearMap& op,
                  const LinearMap& prec,
                  std::span<const double> b,
                  std::span<double> x,
                  double rel_tol,
                  int max_iterations)
{
  const std::size_t n = b.size();
  CgResult result;
  const double b_norm = norm(b);
  if (b_norm == 0.0)
  {
    std::fill(x.begin(), x.end(), 0.0);
    return result;
  }
  std::vector<double> r(n), z(n), p(n), q(n);
  op(x, q);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = b[i] - q[i];
  double r_norm = norm(r);
  result.initial_norm = r_norm;
  const double target = rel_tol * b_norm;
  if (r_norm <= target)
  {
    result.residual_norm = r_norm;
    return result;
  }
  prec(r, z);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iterations; ++it)
  {
    op(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0))
      throw MaxIterations("cg_solve: operator not positive definite (p.Ap = " + std::to_string(pq) + ")", it);
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i)
    {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    r_norm = norm(r);
    result.iterations = it;
    result.residual_norm = r_norm;
    if (r_norm <= target)
      return result;
    prec(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i)
      p[i] = z[i] + beta * p[i];
  }
  throw MaxIterations("cg_solve: no convergence in " + std::to_string(max_iterations) +
                        " iterations (residual " + std::to_string(r_norm / b_norm) + ")",
                      max_iterations);
}

double estimate_lambda_max(const LinearMap& op, std::span<const double> diag, int iterations, double safety)
{
  const std::size_t n = diag.size();
  if (n == 0)
    return 0.0;
  std::vector<double> r(n), z(n), p(n), q(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i));
  for (std::size_t i = 0; i < n; ++i)
    z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);
  std::vector<double> alphas, betas;
  for (int it = 0; it < iterations; ++it)
  {
    op(p, q);
    const double alpha = rz / dot(p, q);
    alphas.push_back(alpha);
    for (std::size_t i = 0; i < n; ++i)
      r[i] -= alpha * q[i];
    for (std::size_t i = 0; i < n; ++i)
      z[i] = r[i] / diag[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    if (!(rz_new > 1e-30 * rz) || it + 1 == iterations)
      break;
    betas.push_back(beta);
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i)
      p[i] = z[i] + beta * p[i];
  }
  // Lanczos tridiagonal matrix from the CG coefficients
  const int m = static_cast<int>(alphas.size());
  Eigen::VectorXd main_diag(m), sub_diag(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k)
  {
    main_diag[k] = 1.0 / alphas[k] + (k > 0 ? betas[k - 1] / alphas[k - 1] : 0.0);
    if (k + 1 < m)
      sub_diag[k] = std::sqrt(betas[k]) / alphas[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(main_diag, sub_diag, Eigen::EigenvaluesOnly);
  return safety * eig.eigenvalues().maxCoeff();
}

ChebyshevSmoother::ChebyshevSmoother(LinearMap op, std::vector<double> diag, double lambda_max, int degree,
                                     double ratio)
  : op_(std::move(op)), lambda_max_(lambda_max), lambda_min_(lambda_max / ratio), degree_(degree)
{
  if (degree < 1 || !(lambda_max > 0.0) || !(ratio > 1.0))
    throw ConfigError("Chebyshev smoother needs degree >= 1, lambda_max > 0, ratio > 1");
  inv_diag_.resize(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    inv_diag_[i] = 1.0 / diag[i];
}

void ChebyshevSmoother::smooth(std::span<const double> b, std::span<double> x) const
{
  const std::size_t n = b.size();
  const double theta = 0.5 * (lambda_max_ + lambda_min_);
  const double delta = 0.5 * (lambda_max_ - lambda_min_);
  const double sigma = theta / delta;
  double rho = 1.0 / sigma;
  std::vector<double> r(n), d(n);
  op_(x, r);
  for (std::size_t i = 0; i < n; ++i)
  {
    d[i] = inv_diag_[i] * (b[i] - r[i]) / theta;
    x[i] += d[i];
  }
  for (int k = 1; k < degree_; ++k)
  {
    op_(x, r);
    const double rho_new = 1.0 / (2.0 * sigma - rho);
    const double c1 = rho_new * rho, c2 = 2.0 * rho_new / delta;
    for (std::size_t i = 0; i < n; ++i)
    {
      d[i] = c1 * d[i] + c2 * inv_diag_[i] * (b[i] - r[i]);
      x[i] += d[i];
    }
    rho = rho_new;
  }
}

template <int dim>
Transfer<dim>::Transfer(const Discretization<dim>& coarse, const Discretization<dim>& fine)
  : degree_(coarse.degree())
  , coarse_cells_(coarse.level().cells_per_direction)
  , coarse_nodes_per_dir_(coarse.dofs().nodes_per_direction)
  , fine_nodes_per_dir_(fine.dofs().nodes_per_direction)
  , n_coarse_dofs_(coarse.n_dofs())
  , n_fine_dofs_(fine.n_dofs())
  , coarse_bc_(&coarse.dofs().dirichlet)
  , fine_bc_(&fine.dofs().dirichlet)
{
  if (fine.degree() != degree_ || fine.level().cells_per_direction != 2 * coarse_cells_)
    throw ConfigError("Transfer: levels are not nested refinements with equal degree");
  const Basis1D basis(degree_);
  const int nj = 2 * degree_ + 1;
  table_.resize(static_cast<std::size_t>(nj) * (degree_ + 1));
  for (int j = 0; j < nj; ++j)
    for (int a = 0; a <= degree_; ++a)
    {
      double v = basis.value_at(a, static_cast<double>(j) / (2 * degree_));
      if (std::abs(v) < 1e-14)
        v = 0.0;
      table_[j * (degree_ + 1) + a] = v;
    }
}

template <int dim>
template <typename Visit>
void Transfer<dim>::for_each_weight(Visit&& visit) const
{
  const int p = degree_;
  const int n = p + 1;
  const int nf = fine_nodes_per_dir_;
  const index_t n_fine_nodes = n_fine_dofs_ / dim;
  const int nn = ipow(n, dim);
  for (index_t f = 0; f < n_fine_nodes; ++f)
  {
    std::array<int, dim> cell, j;
    index_t rest = f;
    for (int k = 0; k < dim; ++k)
    {
      const int x = static_cast<int>(rest % nf);
      rest /= nf;
      cell[k] = std::min(x / (2 * p), coarse_cells_ - 1);
      j[k] = x - 2 * p * cell[k];
    }
    for (int a = 0; a < nn; ++a)
    {
      double w = 1.0;
      index_t c = 0;
      int ra = a;
      std::array<int, dim> local;
      for (int k = 0; k < dim; ++k)
      {
        local[k] = ra % n;
        ra /= n;
        w *= table_[j[k] * n + local[k]];
      }
      if (w == 0.0)
        continue;
      for (int k = dim - 1; k >= 0; --k)
        c = c * coarse_nodes_per_dir_ + cell[k] * p + local[k];
      visit(f, c, w);
    }
  }
}

template <int dim>
void Transfer<dim>::prolongate(std::span<const double> coarse, std::span<double> fine) const
{
  std::fill(fine.begin(), fine.end(), 0.0);
  const auto& cbc = *coarse_bc_;
  for_each_weight([&](index_t f, index_t c, double w) {
    for (int comp = 0; comp < dim; ++comp)
      if (!cbc[c * dim + comp])
        fine[f * dim + comp] += w * coarse[c * dim + comp];
  });
  const auto& fbc = *fine_bc_;
  for (index_t i = 0; i < n_fine_dofs_; ++i)
    if (fbc[i])
      fine[i] = 0.0;
}

template <int dim>
void Transfer<dim>::restrict_vector(std::span<const double> fine, std::span<double> coarse) const
{
  std::fill(coarse.begin(), coarse.end(), 0.0);
  const auto& fbc = *fine_bc_;
  for_each_weight([&](index_t f, index_t c, double w) {
    for (int comp = 0; comp < dim; ++comp)
      if (!fbc[f * dim + comp])
        coarse[c * dim + comp] += w * fine[f * dim + comp];
  });
  const auto& cbc = *coarse_bc_;
  for (index_t i = 0; i < n_coarse_dofs_; ++i)
    if (cbc[i])
      coarse[i] = 0.0;
}

template <int dim>
void Transfer<dim>::inject(std::span<const double> fine, std::span<double> coarse) const
{
  const int nc = coarse_nodes_per_dir_;
  const index_t n_coarse_nodes = n_coarse_dofs_ / dim;
  for (index_t c = 0; c < n_coarse_nodes; ++c)
  {
    index_t rest = c, f = 0, stride = 1;
    for (int k = 0; k < dim; ++k)
    {
      f += 2 * (rest % nc) * stride;
      rest /= nc;
      stride *= fine_nodes_per_dir_;
    }
    for (int comp = 0; comp < dim; ++comp)
      coarse[c * dim + comp] = fine[f * dim + comp];
  }
}

template <int dim>
Multigrid<dim>::Multigrid(std::vector<std::shared_ptr<const Discretization<dim>>> levels,
                          TangentStrategy strategy,
                          MultigridConfig config)
  : levels_(std::move(levels)), strategy_(strategy), config_(config)
{
  if (levels_.empty())
    throw ConfigError("Multigrid needs at least one level");
  for (const auto& d : levels_)
    operators_.push_back(std::make_unique<TangentOperator<dim>>(d, strategy_));
  for (std::size_t l = 0; l + 1 < levels_.size(); ++l)
    transfers_.emplace_back(*levels_[l], *levels_[l + 1]);
  smoothers_.resize(levels_.size());
  states_.resize(levels_.size());
}

template <int dim>
void Multigrid<dim>::prepare(std::span<const double> u_fine)
{
  const int nl = n_levels();
  states_[nl - 1].assign(u_fine.begin(), u_fine.end());
  for (int l = nl - 2; l >= 0; --l)
  {
    states_[l].assign(levels_[l]->n_dofs(), 0.0);
    transfers_[l].inject(states_[l + 1], states_[l]);
  }
  for (int l = 0; l < nl; ++l)
  {
    TangentOperator<dim>& op = *operators_[l];
    op.prepare(states_[l]);
    if (l == 0)
      continue;
    std::vector<double> diag = op.compute_diagonal();
    const LinearMap map = [&op](std::span<const double> s, std::span<double> d) { op.vmult(s, d); };
    const double lambda = estimate_lambda_max(map, diag, config_.lanczos_iterations, config_.lambda_safety);
    smoothers_[l] = ChebyshevSmoother(map, std::move(diag), lambda, config_.smoother_degree,
                                      config_.smoothing_range);
  }
  const TangentOperator<dim>& coarse = *operators_[0];
  const index_t n = coarse.n_dofs();
  dense_coarse_ = n <= config_.dense_coarse_limit;
  if (dense_coarse_)
  {
    const CsrMatrix a = strategy_ == TangentStrategy::SparseBaseline ? coarse.matrix() : coarse.assemble_csr();
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (index_t r = 0; r < n; ++r)
      for (auto k = a.row_offsets[r]; k < a.row_offsets[r + 1]; ++k)
        dense(r, a.columns[k]) = a.values[k];
    // symmetrize roundoff
    dense = 0.5 * (dense + dense.transpose()).eval();
    coarse_factor_.compute(dense);
    if (coarse_factor_.info() != Eigen::Success)
      throw MaxIterations("coarse-level factorization failed: matrix not positive definite", 0);
  }
  else
    coarse_diag_ = coarse.compute_diagonal();
}

template <int dim>
void Multigrid<dim>::coarse_solve(std::span<const double> b, std::span<double> x) const
{
  if (dense_coarse_)
  {
    const Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())) = coarse_factor_.solve(bv);
    return;
  }
  std::fill(x.begin(), x.end(), 0.0);
  const TangentOperator<dim>& op = *operators_[0];
  const auto diag = std::make_shared<const std::vector<double>>(coarse_diag_);
  cg_solve([&op](std::span<const double> s, std::span<double> d) { op.vmult(s, d); }, jacobi_map(diag), b, x,
           config_.coarse_rel_tol, 10000);
}

template <int dim>
void Multigrid<dim>::cycle(int level, std::span<const double> b, std::span<double> x) const
{
  if (level == 0)
  {
    coarse_solve(b, x);
    return;
  }
  const TangentOperator<dim>& op = *operators_[level];
  const std::size_t n = b.size();
  std::fill(x.begin(), x.end(), 0.0);
  smoothers_[level].smooth(b, x);
  std::vector<double> r(n);
  op.vmult(x, r);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = b[i] - r[i];
  const Transfer<dim>& t = transfers_[level - 1];
  std::vector<double> rc(t.n_coarse()), xc(t.n_coarse()), corr(n);
  t.restrict_vector(r, rc);
  cycle(level - 1, rc, xc);
  t.prolongate(xc, corr);
  for (std::size_t i = 0; i < n; ++i)
    x[i] += corr[i];
  smoothers_[level].smooth(b, x);
}

template <int dim>
void Multigrid<dim>::vmult(std::span<const double> b, std::span<double> x) const
{
  cycle(n_levels() - 1, b, x);
}

template <int dim>
LinearMap Multigrid<dim>::as_map() const
{
  return [this](std::span<const double> b, std::span<double> x) { vmult(b, x); };
}

void SolverConfig::validate() const
{
  if (!(newton_disp_tol > 0.0) || !(newton_res_tol > 0.0) || !(linear_rel_tol > 0.0))
    throw ConfigError("solver tolerances must be positive");
  if (load_steps < 1 || max_newton < 1 || cg_max_iter < 1 || max_halvings < 0)
    throw ConfigError("solver iteration limits must be positive");
  if (multigrid.smoother_degree < 1 || !(multigrid.smoothing_range > 1.0))
    throw ConfigError("smoother degree must be >= 1 and the smoothing range > 1");
}

namespace
{
MaterialParams average(const std::vector<const MaterialParams*>& parts, CoarseMaterials mode)
{
  auto mean = [&](double MaterialParams::*field) {
    double s = mode == CoarseMaterials::Geometric ? 0.0 : 0.0;
    for (const MaterialParams* m : parts)
    {
      const double v = m->*field;
      s += mode == CoarseMaterials::Arithmetic ? v : mode == CoarseMaterials::Harmonic ? 1.0 / v : std::log(v);
    }
    s /= static_cast<double>(parts.size());
    return mode == CoarseMaterials::Arithmetic ? s : mode == CoarseMaterials::Harmonic ? 1.0 / s : std::exp(s);
  };
  MaterialParams out = *parts.front();
  out.mu = mean(&MaterialParams::mu);
  out.lambda = mean(&MaterialParams::lambda);
  out.kappa = mean(&MaterialParams::kappa);
  return out;
}
} // namespace

template <int dim>
std::vector<std::shared_ptr<const Discretization<dim>>> make_levels(const ProblemSetup<dim>& setup,
                                                                    int degree,
                                                                    int workers,
                                                                    CoarseMaterials coarse)
{
  const auto& mesh_levels = setup.mesh.levels;
  const int nl = static_cast<int>(mesh_levels.size());
  std::vector<std::shared_ptr<const Discretization<dim>>> levels(nl);
  levels[nl - 1] = std::make_shared<const Discretization<dim>>(mesh_levels[nl - 1], setup.materials, degree,
                                                               GeometryLayout::PerQuadraturePoint, workers);
  // parameters of the finest cells below each cell of the current level
  std::vector<std::vector<const MaterialParams*>> below(mesh_levels[nl - 1].cells.size());
  for (std::size_t c = 0; c < below.size(); ++c)
    below[c] = {&levels[nl - 1]->material(static_cast<index_t>(c))};
  for (int l = nl - 2; l >= 0; --l)
  {
    std::vector<std::vector<const MaterialParams*>> up(mesh_levels[l].cells.size());
    for (std::size_t c = 0; c < below.size(); ++c)
    {
      auto& dst = up[mesh_levels[l + 1].cells[c].parent];
      dst.insert(dst.end(), below[c].begin(), below[c].end());
    }
    below = std::move(up);
    if (coarse == CoarseMaterials::Centroid)
    {
      levels[l] = std::make_shared<const Discretization<dim>>(mesh_levels[l], setup.materials, degree,
                                                              GeometryLayout::PerQuadraturePoint, workers);
      continue;
    }
    std::vector<MaterialParams> params;
    params.reserve(below.size());
    for (const auto& parts : below)
      params.push_back(average(parts, coarse));
    levels[l] = std::make_shared<const Discretization<dim>>(Discretization<dim>::with_cell_materials(
      mesh_levels[l], std::move(params), degree, GeometryLayout::PerQuadraturePoint, workers));
  }
  return levels;
}

template <int dim>
NewtonResult newton_solve(const ProblemSetup<dim>& setup,
                          int degree,
                          TangentStrategy strategy,
                          const SolverConfig& config,
                          int workers)
{
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto levels = make_levels(setup, degree, workers);
  const Discretization<dim>& fine = *levels.back();
  const index_t n = fine.n_dofs();
  const std::vector<double> load = fine.traction_load(setup.traction);

  std::unique_ptr<Multigrid<dim>> mg;
  std::unique_ptr<TangentOperator<dim>> jacobi_op;
  if (config.preconditioner == Preconditioner::Multigrid)
    mg = std::make_unique<Multigrid<dim>>(levels, strategy, config.multigrid);
  else
    jacobi_op = std::make_unique<TangentOperator<dim>>(levels.back(), strategy);

  auto total_energy = [&](std::span<const double> u, double lf) {
    double external = 0.0;
    for (index_t i = 0; i < n; ++i)
      external += load[i] * u[i];
    const double internal = fine.strain_energy(u);
    return std::array<double, 2>{internal - lf * external, std::abs(internal) + std::abs(lf * external)};
  };

  NewtonResult result;
  result.u.assign(n, 0.0);
  std::vector<double>& u = result.u;
  std::vector<double> du(n), rhs(n), trial(n);
  for (int step = 1; step <= config.load_steps; ++step)
  {
    const double lf = static_cast<double>(step) / config.load_steps;
    std::vector<double> r = fine.residual(u, lf, load);
    const double r0 = norm(r);
    result.step_initial_residuals.push_back(r0);
    bool converged = false;
    for (int it = 1; it <= config.max_newton && !converged; ++it)
    {
      LinearMap op_map, prec;
      if (mg)
      {
        mg->prepare(u);
        const TangentOperator<dim>& op = mg->fine_operator();
        op_map = [&op](std::span<const double> s, std::span<double> d) { op.vmult(s, d); };
        prec = mg->as_map();
      }
      else
      {
        jacobi_op->prepare(u);
        const TangentOperator<dim>& op = *jacobi_op;
        op_map = [&op](std::span<const double> s, std::span<double> d) { op.vmult(s, d); };
        prec = jacobi_map(std::make_shared<const std::vector<double>>(op.compute_diagonal()));
      }
      for (index_t i = 0; i < n; ++i)
        rhs[i] = -r[i];
      std::fill(du.begin(), du.end(), 0.0);
      CgResult cg;
      try
      {
        cg = cg_solve(op_map, prec, rhs, du, config.linear_rel_tol, config.cg_max_iter);
      }
      catch (const MaxIterations& e)
      {
        throw NewtonDiverged(std::string("linear solve failed: ") + e.what());
      }
      fine.zero_constrained(du);

      // Backtracking: a step is taken when it lowers the total energy or,
      // where energy differences drown in roundoff near the solution, the
      // residual norm.
      const double r_norm = norm(r);
      std::array<double, 2> e0{};
      bool have_e0 = false;
      double alpha = 1.0;
      bool accepted = false;
      std::vector<double> r_trial;
      const int halvings = config.line_search ? config.max_halvings : 0;
      for (int h = 0; h <= halvings; ++h, alpha *= 0.5)
      {
        for (index_t i = 0; i < n; ++i)
          trial[i] = u[i] + alpha * du[i];
        try
        {
          r_trial = fine.residual(trial, lf, load);
          if (!config.line_search || norm(r_trial) < r_norm)
          {
            accepted = true;
            break;
          }
          if (!have_e0)
          {
            e0 = total_energy(u, lf);
            have_e0 = true;
          }
          const auto e1 = total_energy(trial, lf);
          if (e1[0] <= e0[0] - 1e-14 * (e0[1] + e1[1]))
          {
            accepted = true;
            break;
          }
        }
        catch (const NonPositiveJacobian&)
        {
          if (!config.line_search)
            break;
        }
      }
      if (!accepted)
        throw NewtonDiverged("line search failed in load step " + std::to_string(step) + ", iteration " +
                             std::to_string(it));
      u.swap(trial);
      r = std::move(r_trial);

      NewtonRecord rec;
      rec.load_step = step;
      rec.iteration = it;
      rec.residual_norm = norm(r);
      rec.update_norm = alpha * norm(du) / std::sqrt(static_cast<double>(n));
      rec.cg_iterations = cg.iterations;
      rec.step_length = alpha;
      result.log.push_back(rec);
      result.newton_iterations += 1;
      result.cg_iterations += cg.iterations;
      converged = rec.update_norm <= config.newton_disp_tol && rec.residual_norm <= config.newton_res_tol * r0;
    }
    if (!converged)
      throw NewtonDiverged("no convergence in load step " + std::to_string(step) + " after " +
                           std::to_string(config.max_newton) + " iterations");
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_convergence_csv(const std::vector<NewtonRecord>& log, std::ostream& out)
{
  out << "load_step,newton_iter,residual_norm,update_norm,cg_iterations,step_length\n";
  out.precision(17);
  for (const auto& r : log)
    out << r.load_step << ',' << r.iteration << ',' << r.residual_norm << ',' << r.update_norm << ','
        << r.cg_iterations << ',' << r.step_length << '\n';
}

template class Transfer<2>;
template class Transfer<3>;
template class Multigrid<2>;
template class Multigrid<3>;
template std::vector<std::shared_ptr<const Discretization<2>>> make_levels<2>(const ProblemSetup<2>&, int, int, CoarseMaterials);
template std::vector<std::shared_ptr<const Discretization<3>>> make_levels<3>(const ProblemSetup<3>&, int, int, CoarseMaterials);
template NewtonResult newton_solve<2>(const ProblemSetup<2>&, int, TangentStrategy, const SolverConfig&, int);
template NewtonResult newton_solve<3>(const ProblemSetup<3>&, int, TangentStrategy, const SolverConfig&, int);

} // namespace hyperfem
