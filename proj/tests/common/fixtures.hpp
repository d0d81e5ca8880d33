#pragma once

// Small problems and random linearization states shared by the unit and
// acceptance tests.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hyperfem/operator.hpp"

namespace hyperfem::testing
{

template <int dim>
std::shared_ptr<const Discretization<dim>> make_discretization(int n0, int n_refines, int degree,
                                                                MaterialModel model = MaterialModel::Compressible,
                                                                GeometryLayout layout = GeometryLayout::PerQuadraturePoint,
                                                                int workers = 1)
{
  const auto setup = ProblemSetup<dim>::standard(model, n0, n_refines);
  return std::make_shared<const Discretization<dim>>(setup.mesh.finest(), setup.materials, degree, layout,
                                                     workers);
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0)
{
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v)
    x = dist(rng);
  return v;
}

/// Largest entry of the referential displacement gradient over all points.
template <int dim>
double max_gradient(const Discretization<dim>& d, const std::vector<double>& u)
{
  double m = 0.0;
  std::vector<double> local(dim * d.dofs().nodes_per_cell);
  for (index_t c = 0; c < d.n_cells(); ++c)
  {
    d.dofs().gather(c, u, local);
    for (const auto& g : evaluate_gradients<dim>(d.basis(), local, d.geometry().cell(c)))
      for (const double x : g.data)
        m = std::max(m, std::abs(x));
  }
  return m;
}

/// Random admissible displacement with max |grad u| = bound.
template <int dim>
std::vector<double> random_state(const Discretization<dim>& d, std::mt19937_64& rng, double bound = 0.2)
{
  std::vector<double> u = random_vector(d.n_dofs(), rng);
  d.zero_constrained(u);
  const double m = max_gradient(d, u);
  for (auto& x : u)
    x *= bound / m;
  return u;
}

inline double norm(const std::vector<double>& v)
{
  double s = 0.0;
  for (const double x : v)
    s += x * x;
  return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline double relative_difference(const std::vector<double>& a, const std::vector<double>& b)
{
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d) / std::max(norm(a), 1e-300);
}

inline Eigen::MatrixXd to_dense(const CsrMatrix& a)
{
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n_rows, a.n_rows);
  for (index_t r = 0; r < a.n_rows; ++r)
    for (auto k = a.row_offsets[r]; k < a.row_offsets[r + 1]; ++k)
      m(r, a.columns[k]) = a.values[k];
  return m;
}

} // namespace hyperfem::testing
