#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "hyperfem/operator.hpp"

namespace hyperfem
{

/// dst = A src
using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

LinearMap identity_map();
/// dst = src / diag
LinearMap jacobi_map(std::shared_ptr<const std::vector<double>> diag);

struct CgResult
{
  int iterations = 0;
  double residual_norm = 0.0;
  double initial_norm = 0.0;
};

/// Preconditioned CG from the initial guess in x until ||b - A x|| <= rel_tol ||b||.
/// Throws MaxIterations.
CgResult cg_solve(const LinearMap& op,
                  const LinearMap& prec,
                  std::span<const double> b,
                  std::span<double> x,
                  double rel_tol,
                  int max_iterations = 2000);

/// Largest eigenvalue of diag^-1 A from the Ritz values of a fixed number of
/// preconditioned CG (Lanczos) steps with a fixed start vector, times `safety`.
double estimate_lambda_max(const LinearMap& op,
                           std::span<const double> diag,
                           int iterations = 12,
                           double safety = 1.1);

/// Chebyshev iteration on diag^-1 A targeting [lambda_max / ratio, lambda_max].
class ChebyshevSmoother
{
public:
  ChebyshevSmoother() = default;
  ChebyshevSmoother(LinearMap op, std::vector<double> diag, double lambda_max, int degree, double ratio = 15.0);

  /// `degree` operator applications starting from x.
  void smooth(std::span<const double> b, std::span<double> x) const;

  double lambda_max() const { return lambda_max_; }
  int degree() const { return degree_; }

private:
  LinearMap op_;
  std::vector<double> inv_diag_;
  double lambda_max_ = 0.0;
  double lambda_min_ = 0.0;
  int degree_ = 0;
};

/// Transfer between nested levels with the same Q_p space: prolongation is
/// the embedding (interpolation at fine support points), restriction its
/// transpose; constrained entries are zero on both sides.
template <int dim>
class Transfer
{
public:
  Transfer(const Discretization<dim>& coarse, const Discretization<dim>& fine);

  void prolongate(std::span<const double> coarse, std::span<double> fine) const;
  void restrict_vector(std::span<const double> fine, std::span<double> coarse) const;
  /// Coarse nodal values taken from the coincident fine nodes.
  void inject(std::span<const double> fine, std::span<double> coarse) const;

  index_t n_coarse() const { return n_coarse_dofs_; }
  index_t n_fine() const { return n_fine_dofs_; }

private:
  template <typename Visit>
  void for_each_weight(Visit&& visit) const;

  int degree_ = 0;
  int coarse_cells_ = 0;
  int coarse_nodes_per_dir_ = 0;
  int fine_nodes_per_dir_ = 0;
  index_t n_coarse_dofs_ = 0;
  index_t n_fine_dofs_ = 0;
  std::vector<double> table_; // l_a(j / (2p)), [j][a]
  const std::vector<std::uint8_t>* coarse_bc_ = nullptr;
  const std::vector<std::uint8_t>* fine_bc_ = nullptr;
};

struct MultigridConfig
{
  int smoother_degree = 4;
  double smoothing_range = 15.0;
  int lanczos_iterations = 12;
  double lambda_safety = 1.1;
  index_t dense_coarse_limit = 2000;
  double coarse_rel_tol = 1e-12;
};

/// Geometric multigrid V-cycle with Chebyshev-Jacobi smoothing over a
/// hierarchy of discretizations (coarsest first).
template <int dim>
class Multigrid
{
public:
  Multigrid(std::vector<std::shared_ptr<const Discretization<dim>>> levels,
            TangentStrategy strategy,
            MultigridConfig config = {});

  /// Transfers u_fine down by injection and rebuilds every level.
  void prepare(std::span<const double> u_fine);

  /// One V-cycle applied to b with zero initial guess.
  void vmult(std::span<const double> b, std::span<double> x) const;
  LinearMap as_map() const;

  int n_levels() const { return static_cast<int>(levels_.size()); }
  const TangentOperator<dim>& level_operator(int l) const { return *operators_[l]; }
  const TangentOperator<dim>& fine_operator() const { return *operators_.back(); }
  const ChebyshevSmoother& smoother(int l) const { return smoothers_[l]; }
  const Transfer<dim>& transfer(int l) const { return transfers_[l]; } // between l and l+1
  const std::vector<double>& level_state(int l) const { return states_[l]; }

private:
  void cycle(int level, std::span<const double> b, std::span<double> x) const;
  void coarse_solve(std::span<const double> b, std::span<double> x) const;

  std::vector<std::shared_ptr<const Discretization<dim>>> levels_;
  TangentStrategy strategy_;
  MultigridConfig config_;
  std::vector<std::unique_ptr<TangentOperator<dim>>> operators_;
  std::vector<Transfer<dim>> transfers_;
  std::vector<ChebyshevSmoother> smoothers_;
  std::vector<std::vector<double>> states_;
  std::vector<double> coarse_diag_;
  bool dense_coarse_ = false;
  Eigen::LLT<Eigen::MatrixXd> coarse_factor_;
};

enum class Preconditioner
{
  Multigrid,
  Jacobi
};

struct SolverConfig
{
  double newton_disp_tol = 1e-5; // ||du|| / sqrt(n) [mm]
  double newton_res_tol = 1e-8;  // relative to the residual at the start of a load step
  double linear_rel_tol = 1e-6;
  int load_steps = 5;
  int max_newton = 20;
  int cg_max_iter = 2000;
  bool line_search = true;
  int max_halvings = 10;
  Preconditioner preconditioner = Preconditioner::Multigrid;
  MultigridConfig multigrid;

  void validate() const;
};

struct NewtonRecord
{
  int load_step = 0; // 1-based
  int iteration = 0; // 1-based within the step
  double residual_norm = 0.0; // after the update
  double update_norm = 0.0;   // ||du|| / sqrt(n), after line search
  int cg_iterations = 0;
  double step_length = 1.0;
};

struct NewtonResult
{
  std::vector<double> u;
  std::vector<NewtonRecord> log;
  std::vector<double> step_initial_residuals;
  int newton_iterations = 0;
  int cg_iterations = 0;
  double seconds = 0.0;
};

/// Incremental Newton solve of the loaded problem on the finest level of
/// the hierarchy. Throws NewtonDiverged.
template <int dim>
NewtonResult newton_solve(const ProblemSetup<dim>& setup,
                          int degree,
                          TangentStrategy strategy,
                          const SolverConfig& config,
                          int workers = 1);

/// How coarse levels obtain their material parameters.
enum class CoarseMaterials
{
  Centroid,  // material id of the coarse cell itself
  Arithmetic, // mean of the moduli of the finest descendants
  Harmonic,
  Geometric
};

/// Discretizations of every level of a problem's hierarchy, coarsest first.
template <int dim>
std::vector<std::shared_ptr<const Discretization<dim>>> make_levels(const ProblemSetup<dim>& setup,
                                                                    int degree,
                                                                    int workers = 1,
                                                                    CoarseMaterials coarse = CoarseMaterials::Arithmetic);

/// "load_step,newton_iter,residual_norm,update_norm,cg_iterations,step_length"
void write_convergence_csv(const std::vector<NewtonRecord>& log, std::ostream& out);

} // namespace hyperfem
