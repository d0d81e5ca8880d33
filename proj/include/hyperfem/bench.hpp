#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "hyperfem/counting_scalar.hpp"
#include "hyperfem/operator.hpp"
#include "hyperfem/solver.hpp"

namespace hyperfem
{

struct BenchConfig
{
  MaterialModel model = MaterialModel::Compressible;
  std::vector<TangentStrategy> strategies = {TangentStrategy::Naive, TangentStrategy::Recompute,
                                             TangentStrategy::Store, TangentStrategy::SparseBaseline};
  int dim = 2;
  std::vector<int> degrees = {1, 2, 3};
  /// Refinements of the coarse mesh, one per degree or a single value for all.
  std::vector<int> refinements = {3};
  int coarse_cells = 2; // per direction
  int repetitions = 10;
  int warmups = 3;
  int workers = 1;
  /// Amplitude of the prescribed linearization state (max displacement
  /// gradient is about pi * (dim) times this).
  double state_amplitude = 0.02;
  /// Memory census counts CSR storage from the sparsity formula instead of
  /// assembling.
  bool analytic_sparse_memory = true;
  std::string output = "bench.csv";

  /// Throws ConfigError.
  void validate() const;
  int refinements_for(std::size_t degree_index) const;
};

/// Fields of a JSON object override the matching members of `base`:
/// model, strategies, dim, degrees, refinements, coarse_cells, reps,
/// warmups, workers, amplitude, out. Throws ConfigError.
BenchConfig apply_config_file(const std::filesystem::path& path, BenchConfig base);

struct BenchRecord
{
  std::string kind; // vmult, flops, memory, solve
  MaterialModel model = MaterialModel::Compressible;
  TangentStrategy strategy = TangentStrategy::Store;
  int dim = 2;
  int degree = 1;
  int levels = 1;
  int cells_per_direction = 0;
  index_t n_dofs = 0;
  index_t n_qp = 0;
  double median_seconds = 0.0;
  double throughput = 0.0; // n_dofs / median_seconds
  double constitutive_bytes_per_dof = 0.0;
  double total_bytes_per_dof = 0.0;
  double flops_per_qp = 0.0;
  double qp_dof_ratio = 0.0; // quadrature points per scalar dof
  int newton_iterations = 0;
  int cg_iterations = 0;
  double solve_seconds = 0.0;

  bool operator==(const BenchRecord&) const = default;
};

/// Displacement interpolating u_c = a L sin(pi (c + 1) x_0 / L) sin(pi x_1 / L)
/// (times sin(pi x_2 / L) in 3D) at the support points; zero on the bottom face.
template <int dim>
std::vector<double> prescribed_state(const Discretization<dim>& disc, double amplitude);

/// Median vmult time per (strategy, degree) after an equivalence guard on a
/// random direction. Throws EquivalenceFailure, ConfigError.
std::vector<BenchRecord> run_vmult_bench(const BenchConfig& config);

/// Mean per-point operation counts of each strategy's quadrature-loop body.
std::vector<BenchRecord> run_flop_census(const BenchConfig& config);

/// Byte accounting per dof.
std::vector<BenchRecord> run_memory_census(const BenchConfig& config);

/// Full load-stepped Newton solve per strategy and degree. Throws
/// NewtonDiverged; records of completed solves are in `partial` when given.
std::vector<BenchRecord> run_time_to_solution(const BenchConfig& config,
                                              const SolverConfig& solver = {},
                                              std::vector<BenchRecord>* partial = nullptr);

/// Per-point operation counts of one strategy's quadrature body for a single
/// point with the given inputs.
template <int dim>
OpCounts count_qp_body(TangentStrategy strategy,
                       const MaterialParams& params,
                       const Tensor2<double, dim>& unit_grad_ubar,
                       const Tensor2<double, dim>& unit_grad_du,
                       const Tensor2<double, dim>& inv_jac,
                       double jxw);

inline constexpr const char* csv_version = "# hyperfem-bench csv v1";

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
std::vector<BenchRecord> read_csv(std::istream& in); // throws IoError

/// Line chart of throughput against degree, one line per strategy.
void write_svg(const std::vector<BenchRecord>& records, std::ostream& out);

/// Writes `path` (CSV) and the chart next to it with extension .svg.
/// Throws ConfigError on no records, IoError.
void emit_report(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

} // namespace hyperfem
