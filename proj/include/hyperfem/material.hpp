#pragma once

#include <cmath>
#include <string_view>
#include <type_traits>

#include "hyperfem/autodiff.hpp"
#include "hyperfem/errors.hpp"
#include "hyperfem/tensor.hpp"

namespace hyperfem
{

enum class MaterialModel
{
  Compressible, // mu/2 (tr C - tr I - 2 log J) + lambda log^2 J
  Split         // mu/2 (tr Cbar - tr I) + kappa/2 (1/2 (J^2 - 1) - log J)
};

std::string_view to_string(MaterialModel m);
MaterialModel parse_material_model(std::string_view name);

struct MaterialParams
{
  double mu = 0.0;     // shear modulus [N/mm^2]
  double lambda = 0.0; // coefficient of log^2 J [N/mm^2]
  double kappa = 0.0;  // bulk modulus [N/mm^2]
  MaterialModel model = MaterialModel::Compressible;

  /// lambda is chosen so that 2*lambda is the classical Lame constant, since
  /// the compressible energy carries lambda (not lambda/2) in front of log^2 J.
  static MaterialParams from_shear_and_poisson(MaterialModel model, double mu, double nu);

  /// All moduli multiplied by `factor` (used for the stiff inclusions).
  MaterialParams scaled(double factor) const;
};

/// Stored per-quadrature-point constitutive data for partial assembly:
/// spatial elasticity tensor plus Cauchy stress (21 + 6 reals in 3D).
template <int dim>
struct ConstitutiveCache
{
  SymTensor4Voigt<double, dim> c_spatial;
  SymTensor2<double, dim> sigma;

  static constexpr int n_reals =
    SymTensor4Voigt<double, dim>::n_entries + SymTensor2<double, dim>::n_entries;
};

template <int dim>
struct SpatialData
{
  ConstitutiveCache<dim> cache;
  double j = 1.0;
};

/// Strain energy density as a function of the deformation gradient. Runs on
/// any scalar type with the usual arithmetic and log/pow.
template <typename T, int dim>
T energy(const MaterialParams& params, const Tensor2<T, dim>& f)
{
  using std::log;
  using std::pow;
  const T j = det(f);
  if (!(value_of(j) > 0.0))
    throw NonPositiveJacobian("det F = " + std::to_string(value_of(j)));
  const T tr_c = trace(transpose_dot(f, f));
  const double d = dim;
  if (params.model == MaterialModel::Compressible)
  {
    const T log_j = log(j);
    return 0.5 * params.mu * (tr_c - d - 2.0 * log_j) + params.lambda * (log_j * log_j);
  }
  const T log_j = log(j);
  const T iso = pow(j, -2.0 / d) * tr_c - d;
  return 0.5 * params.mu * iso + 0.5 * params.kappa * (0.5 * (j * j - 1.0) - log_j);
}

/// The same energy written in terms of the right Cauchy-Green tensor, whose
/// independent (Voigt) components are the variables.
template <typename T, int dim>
T energy_of_cauchy_green(const MaterialParams& params, const SymTensor2<T, dim>& c)
{
  using std::log;
  using std::pow;
  const T det_c = det(from_voigt(c));
  if (!(value_of(det_c) > 0.0))
    throw NonPositiveJacobian("det C = " + std::to_string(value_of(det_c)));
  T tr_c = c[0];
  for (int i = 1; i < dim; ++i)
    tr_c += c[i];
  const double d = dim;
  const T log_j = 0.5 * log(det_c);
  if (params.model == MaterialModel::Compressible)
    return 0.5 * params.mu * (tr_c - d - 2.0 * log_j) + params.lambda * (log_j * log_j);
  const T iso = pow(det_c, -1.0 / d) * tr_c - d;
  return 0.5 * params.mu * iso + 0.5 * params.kappa * (0.5 * (det_c - 1.0) - log_j);
}

namespace detail
{
template <int dim, typename S>
std::array<S, dim * dim> deformation_gradient_entries(const Tensor2<S, dim>& h_bar)
{
  std::array<S, dim * dim> x = h_bar.data;
  for (int i = 0; i < dim; ++i)
    x[i * dim + i] = x[i * dim + i] + 1.0;
  return x;
}

template <int dim>
auto energy_of_entries(const MaterialParams& params)
{
  return [&params](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Tensor2<T, dim> f;
    f.data = x;
    return energy(params, f);
  };
}
} // namespace detail

/// P = dPsi/dF, one gradient sweep over the d^2 entries of F.
template <typename S, int dim>
Tensor2<S, dim> pk1(const MaterialParams& params, const Tensor2<S, dim>& f)
{
  const auto r = ad::gradient<dim * dim, S>(detail::energy_of_entries<dim>(params), f.data);
  Tensor2<S, dim> p;
  p.data = r.gradient;
  return p;
}

/// G = L(F) : dh with F = I + h_bar, using dh as the AD seed; L is never formed.
template <typename S, int dim>
Tensor2<S, dim> tangent_action(const MaterialParams& params,
                               const Tensor2<S, dim>& h_bar,
                               const Tensor2<S, dim>& dh)
{
  const auto r = ad::seeded_hvp<dim * dim, S>(detail::energy_of_entries<dim>(params),
                                              detail::deformation_gradient_entries(h_bar),
                                              dh.data);
  Tensor2<S, dim> g;
  g.data = r.hvp;
  return g;
}

/// L = d^2 Psi / dF dF at F = I + h_bar, indexed (i, A, j, B).
template <typename S, int dim>
Tensor4<S, dim> full_tangent(const MaterialParams& params, const Tensor2<S, dim>& h_bar)
{
  const auto r = ad::full_hessian<dim * dim, S>(detail::energy_of_entries<dim>(params),
                                                detail::deformation_gradient_entries(h_bar));
  Tensor4<S, dim> l;
  for (int row = 0; row < dim * dim; ++row)
    for (int col = 0; col < dim * dim; ++col)
      l.data[row * dim * dim + col] = r.hessian[row][col];
  return l;
}

/// Cauchy stress and spatial elasticity tensor c = push_forward(4 d^2Psi/dCdC) / J
/// at F = I + h_bar.
template <int dim>
SpatialData<dim> spatial_data(const MaterialParams& params, const Tensor2<double, dim>& h_bar)
{
  Tensor2<double, dim> f = h_bar;
  for (int i = 0; i < dim; ++i)
    f(i, i) += 1.0;
  const double j = det(f);
  if (!(j > 0.0))
    throw NonPositiveJacobian("det F = " + std::to_string(j));

  SpatialData<dim> out;
  out.j = j;

  const Tensor2<double, dim> tau = dot_transpose(pk1(params, f), f);
  out.cache.sigma = to_voigt(tau * (1.0 / j));

  constexpr int nv = n_voigt<dim>;
  const SymTensor2<double, dim> c = to_voigt(transpose_dot(f, f));
  const auto h = ad::full_hessian<nv>(
    [&params](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::value_type;
      SymTensor2<T, dim> cv;
      cv.data = x;
      return energy_of_cauchy_green(params, cv);
    },
    c.data);

  // Off-diagonal Voigt variables stand for two tensor entries each.
  SymTensor4Voigt<double, dim> material;
  for (int a = 0; a < nv; ++a)
    for (int b = a; b < nv; ++b)
    {
      const double ma = a < dim ? 1.0 : 2.0;
      const double mb = b < dim ? 1.0 : 2.0;
      material(a, b) = 4.0 * h.hessian[a][b] / (ma * mb);
    }

  const Tensor4<double, dim> pushed = push_forward(from_voigt(material), f);
  out.cache.c_spatial = to_voigt(pushed);
  for (auto& x : out.cache.c_spatial.data)
    x /= j;
  return out;
}

} // namespace hyperfem
