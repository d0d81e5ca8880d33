#pragma once

// Quadrature-loop bodies of the tangent operator. Inputs and outputs are
// gradients with respect to unit-cell coordinates; each body maps them to
// referential/spatial gradients, applies the linearized constitutive law,
// and maps the result back including the quadrature weight. They are
// templates over the scalar type so the FLOP census runs the very code the
// operator executes.

#include "hyperfem/material.hpp"
#include "hyperfem/tensor.hpp"

namespace hyperfem
{

/// Per-quadrature-point data of the partial-assembly (Store) strategy. The
/// effective measure JxW * det F is folded into c and sigma, so a point
/// costs 27 + 9 reals in 3D.
template <typename S, int dim>
struct StoreQpData
{
  SymTensor4Voigt<S, dim> c_spatial; // times JxW * J
  SymTensor2<S, dim> sigma;          // times JxW * J
  Tensor2<S, dim> to_spatial;        // unit-cell gradient -> spatial gradient: J_ref^-1 . F^-1

  static constexpr int n_constitutive = ConstitutiveCache<dim>::n_reals;
  static constexpr int n_geometry = dim * dim;
  static constexpr int n_reals = n_constitutive + n_geometry;
};

/// Store data at F = I + h_bar for a point with unit-cell inverse Jacobian
/// `inv_jac` and weight `jxw`.
template <int dim>
StoreQpData<double, dim> make_store_data(const MaterialParams& params,
                                         const Tensor2<double, dim>& h_bar,
                                         const Tensor2<double, dim>& inv_jac,
                                         double jxw)
{
  const SpatialData<dim> sd = spatial_data(params, h_bar);
  Tensor2<double, dim> f = h_bar;
  for (int i = 0; i < dim; ++i)
    f(i, i) += 1.0;
  StoreQpData<double, dim> out;
  const double measure = jxw * sd.j;
  out.c_spatial = sd.cache.c_spatial;
  for (auto& x : out.c_spatial.data)
    x *= measure;
  out.sigma = sd.cache.sigma;
  for (auto& x : out.sigma.data)
    x *= measure;
  out.to_spatial = dot(inv_jac, inverse(f));
  return out;
}

/// Forms L(F) explicitly from the full Hessian, then contracts.
template <typename S, int dim>
Tensor2<S, dim> naive_qp(const MaterialParams& params,
                         const Tensor2<S, dim>& unit_grad_ubar,
                         const Tensor2<S, dim>& unit_grad_du,
                         const Tensor2<double, dim>& inv_jac,
                         double jxw)
{
  const Tensor2<S, dim> inv_jac_s = cast_tensor<S>(inv_jac);
  const Tensor2<S, dim> h_bar = dot(unit_grad_ubar, inv_jac_s);
  const Tensor2<S, dim> dh = dot(unit_grad_du, inv_jac_s);
  const Tensor2<S, dim> g = contract42(full_tangent(params, h_bar), dh);
  return dot_transpose(g, inv_jac_s) * jxw;
}

/// G = L : dh by a seeded second-order AD sweep; L is never formed.
template <typename S, int dim>
Tensor2<S, dim> recompute_qp(const MaterialParams& params,
                             const Tensor2<S, dim>& unit_grad_ubar,
                             const Tensor2<S, dim>& unit_grad_du,
                             const Tensor2<double, dim>& inv_jac,
                             double jxw)
{
  const Tensor2<S, dim> inv_jac_s = cast_tensor<S>(inv_jac);
  const Tensor2<S, dim> h_bar = dot(unit_grad_ubar, inv_jac_s);
  const Tensor2<S, dim> dh = dot(unit_grad_du, inv_jac_s);
  const Tensor2<S, dim> g = tangent_action(params, h_bar, dh);
  return dot_transpose(g, inv_jac_s) * jxw;
}

/// Contraction with a precomputed linearization L (diagonal and matrix assembly).
template <typename S, int dim>
Tensor2<S, dim> linearized_qp(const Tensor4<S, dim>& l,
                              const Tensor2<S, dim>& unit_grad_du,
                              const Tensor2<double, dim>& inv_jac,
                              double jxw)
{
  const Tensor2<S, dim> inv_jac_s = cast_tensor<S>(inv_jac);
  const Tensor2<S, dim> g = contract42(l, dot(unit_grad_du, inv_jac_s));
  return dot_transpose(g, inv_jac_s) * jxw;
}

/// Partial assembly in the current configuration:
/// g = c : sym(grad du) + grad du . sigma, tested with the spatial gradient.
/// Independent of the material model.
template <typename S, int dim>
HYPERFEM_INLINE Tensor2<S, dim> store_qp(const StoreQpData<S, dim>& data, const Tensor2<S, dim>& unit_grad_du)
{
  const Tensor2<S, dim> grad = dot(unit_grad_du, data.to_spatial);
  const SymTensor2<S, dim> material = sym_apply(data.c_spatial, to_voigt(grad));
  Tensor2<S, dim> g = dot(grad, from_voigt(data.sigma));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) += material(i, j);
  return dot_transpose(g, data.to_spatial);
}

/// The linear map unit_grad_du -> qp output as a fourth-order tensor
/// A(i,k,j,l), built from a referential or spatial linearization `l`
/// through the gradient map `m` (grad = unit_grad . m) and a scale.
template <int dim>
Tensor4<double, dim> unit_cell_linearization(const Tensor4<double, dim>& l,
                                             const Tensor2<double, dim>& m,
                                             double scale)
{
  Tensor4<double, dim> half; // (i, k, j, b)
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < dim; ++j)
        for (int b = 0; b < dim; ++b)
        {
          double s = 0.0;
          for (int a = 0; a < dim; ++a)
            s += m(k, a) * l(i, a, j, b);
          half(i, k, j, b) = s;
        }
  Tensor4<double, dim> out;
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < dim; ++j)
        for (int q = 0; q < dim; ++q)
        {
          double s = 0.0;
          for (int b = 0; b < dim; ++b)
            s += half(i, k, j, b) * m(q, b);
          out(i, k, j, q) = s * scale;
        }
  return out;
}

/// Spatial linearization of the Store kernel: c_iajb + delta_ij sigma_ba.
template <int dim>
Tensor4<double, dim> store_linearization(const StoreQpData<double, dim>& data)
{
  Tensor4<double, dim> l = from_voigt(data.c_spatial);
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        l(i, a, i, b) += data.sigma(b, a);
  return l;
}

} // namespace hyperfem
