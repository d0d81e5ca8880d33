#pragma once

#include <array>
#include <cmath>
#include <type_traits>

#include "hyperfem/errors.hpp"
#include "hyperfem/scalar.hpp"

namespace hyperfem
{

template <int dim>
concept SupportedDim = (dim == 2 || dim == 3);

/// Number of independent components of a symmetric second-order tensor.
template <int dim>
inline constexpr int n_voigt = dim * (dim + 1) / 2;

/// Voigt ordering 11,22,33,23,13,12 (3D) and 11,22,12 (2D).
template <int dim>
constexpr std::array<int, 2> voigt_pair(int a)
{
  if constexpr (dim == 3)
  {
    constexpr int rows[6] = {0, 1, 2, 1, 0, 0};
    constexpr int cols[6] = {0, 1, 2, 2, 2, 1};
    return {rows[a], cols[a]};
  }
  else
  {
    constexpr int rows[3] = {0, 1, 0};
    constexpr int cols[3] = {0, 1, 1};
    return {rows[a], cols[a]};
  }
}

template <int dim>
constexpr int voigt_index(int i, int j)
{
  if (i == j)
    return i;
  if constexpr (dim == 3)
    return 6 - i - j; // (1,2)->3, (0,2)->4, (0,1)->5
  else
    return 2;
}

/// Dense d x d tensor, row-major storage of (i, A).
template <typename T, int dim>
  requires SupportedDim<dim>
struct Tensor2
{
  static constexpr int n_entries = dim * dim;

  std::array<T, n_entries> data{};

  constexpr T& operator()(int i, int j) { return data[i * dim + j]; }
  constexpr const T& operator()(int i, int j) const { return data[i * dim + j]; }

  static constexpr Tensor2 identity()
  {
    Tensor2 t;
    for (int i = 0; i < dim; ++i)
      t(i, i) = T(1.0);
    return t;
  }

  Tensor2& operator+=(const Tensor2& o)
  {
    for (int k = 0; k < n_entries; ++k)
      data[k] += o.data[k];
    return *this;
  }

  Tensor2& operator-=(const Tensor2& o)
  {
    for (int k = 0; k < n_entries; ++k)
      data[k] -= o.data[k];
    return *this;
  }

  friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
  friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }

  friend Tensor2 operator-(const Tensor2& a)
  {
    Tensor2 r;
    for (int k = 0; k < n_entries; ++k)
      r.data[k] = -a.data[k];
    return r;
  }

  template <typename S>
  friend Tensor2 operator*(const Tensor2& a, const S& s)
  {
    Tensor2 r;
    for (int k = 0; k < n_entries; ++k)
      r.data[k] = a.data[k] * s;
    return r;
  }

  template <typename S>
  friend Tensor2 operator*(const S& s, const Tensor2& a)
  {
    return a * s;
  }
};

/// Symmetric tensor in Voigt order, unweighted components.
template <typename T, int dim>
  requires SupportedDim<dim>
struct SymTensor2
{
  static constexpr int n_entries = n_voigt<dim>;

  std::array<T, n_entries> data{};

  constexpr T& operator[](int a) { return data[a]; }
  constexpr const T& operator[](int a) const { return data[a]; }
  constexpr const T& operator()(int i, int j) const { return data[voigt_index<dim>(i, j)]; }
};

/// Fourth-order tensor indexed (i, A, j, B).
template <typename T, int dim>
  requires SupportedDim<dim>
struct Tensor4
{
  static constexpr int n_entries = dim * dim * dim * dim;

  std::array<T, n_entries> data{};

  constexpr T& operator()(int i, int a, int j, int b)
  {
    return data[((i * dim + a) * dim + j) * dim + b];
  }
  constexpr const T& operator()(int i, int a, int j, int b) const
  {
    return data[((i * dim + a) * dim + j) * dim + b];
  }
};

/// Upper triangle of the Voigt matrix of a tensor with minor and major
/// symmetries: 21 numbers in 3D, 6 in 2D.
template <typename T, int dim>
  requires SupportedDim<dim>
struct SymTensor4Voigt
{
  static constexpr int n = n_voigt<dim>;
  static constexpr int n_entries = n * (n + 1) / 2;

  std::array<T, n_entries> data{};

  static constexpr int index(int a, int b)
  {
    if (a > b)
    {
      const int t = a;
      a = b;
      b = t;
    }
    return a * n - a * (a - 1) / 2 + (b - a);
  }

  constexpr T& operator()(int a, int b) { return data[index(a, b)]; }
  constexpr const T& operator()(int a, int b) const { return data[index(a, b)]; }
};

/// Entry-wise conversion, e.g. double -> AD or counting scalar.
template <typename S, typename T, int dim>
Tensor2<S, dim> cast_tensor(const Tensor2<T, dim>& t)
{
  if constexpr (std::is_same_v<S, T>)
    return t;
  else
  {
    Tensor2<S, dim> r;
    for (int k = 0; k < dim * dim; ++k)
      r.data[k] = S(t.data[k]);
    return r;
  }
}

template <typename T, int dim>
T trace(const Tensor2<T, dim>& t)
{
  T r = t(0, 0);
  for (int i = 1; i < dim; ++i)
    r += t(i, i);
  return r;
}

template <typename T, int dim>
T det(const Tensor2<T, dim>& t)
{
  if constexpr (dim == 2)
    return t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  else
    return t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) -
           t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0)) +
           t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0));
}

template <typename T, int dim>
Tensor2<T, dim> transpose(const Tensor2<T, dim>& t)
{
  Tensor2<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      r(i, j) = t(j, i);
  return r;
}

/// Single contraction a . b.
template <typename T, int dim>
HYPERFEM_INLINE Tensor2<T, dim> dot(const Tensor2<T, dim>& a, const Tensor2<T, dim>& b)
{
  Tensor2<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
    {
      T s = a(i, 0) * b(0, j);
      for (int k = 1; k < dim; ++k)
        s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

/// a . b^T
template <typename T, int dim>
HYPERFEM_INLINE Tensor2<T, dim> dot_transpose(const Tensor2<T, dim>& a, const Tensor2<T, dim>& b)
{
  Tensor2<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
    {
      T s = a(i, 0) * b(j, 0);
      for (int k = 1; k < dim; ++k)
        s += a(i, k) * b(j, k);
      r(i, j) = s;
    }
  return r;
}

/// a^T . b
template <typename T, int dim>
Tensor2<T, dim> transpose_dot(const Tensor2<T, dim>& a, const Tensor2<T, dim>& b)
{
  Tensor2<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
    {
      T s = a(0, i) * b(0, j);
      for (int k = 1; k < dim; ++k)
        s += a(k, i) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

template <typename T, int dim>
T double_contract(const Tensor2<T, dim>& a, const Tensor2<T, dim>& b)
{
  T s = a.data[0] * b.data[0];
  for (int k = 1; k < Tensor2<T, dim>::n_entries; ++k)
    s += a.data[k] * b.data[k];
  return s;
}

/// Inverse by adjugate; throws SingularTensor when |det| <= 1e-14.
template <typename T, int dim>
Tensor2<T, dim> inverse(const Tensor2<T, dim>& t)
{
  const T d = det(t);
  if (!(std::abs(value_of(d)) > 1e-14))
    throw SingularTensor("tensor inverse: determinant is (numerically) zero");
  const T inv_d = T(1.0) / d;
  Tensor2<T, dim> r;
  if constexpr (dim == 2)
  {
    r(0, 0) = t(1, 1) * inv_d;
    r(0, 1) = -t(0, 1) * inv_d;
    r(1, 0) = -t(1, 0) * inv_d;
    r(1, 1) = t(0, 0) * inv_d;
  }
  else
  {
    r(0, 0) = (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) * inv_d;
    r(0, 1) = (t(0, 2) * t(2, 1) - t(0, 1) * t(2, 2)) * inv_d;
    r(0, 2) = (t(0, 1) * t(1, 2) - t(0, 2) * t(1, 1)) * inv_d;
    r(1, 0) = (t(1, 2) * t(2, 0) - t(1, 0) * t(2, 2)) * inv_d;
    r(1, 1) = (t(0, 0) * t(2, 2) - t(0, 2) * t(2, 0)) * inv_d;
    r(1, 2) = (t(0, 2) * t(1, 0) - t(0, 0) * t(1, 2)) * inv_d;
    r(2, 0) = (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0)) * inv_d;
    r(2, 1) = (t(0, 1) * t(2, 0) - t(0, 0) * t(2, 1)) * inv_d;
    r(2, 2) = (t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0)) * inv_d;
  }
  return r;
}

/// Symmetric part, packed.
template <typename T, int dim>
HYPERFEM_INLINE SymTensor2<T, dim> to_voigt(const Tensor2<T, dim>& t)
{
  SymTensor2<T, dim> r;
  for (int a = 0; a < n_voigt<dim>; ++a)
  {
    const auto [i, j] = voigt_pair<dim>(a);
    r[a] = (i == j) ? t(i, i) : T(0.5) * (t(i, j) + t(j, i));
  }
  return r;
}

template <typename T, int dim>
HYPERFEM_INLINE Tensor2<T, dim> from_voigt(const SymTensor2<T, dim>& s)
{
  Tensor2<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      r(i, j) = s(i, j);
  return r;
}

/// Picks c_ijkl for i<=j, k<=l; assumes minor and major symmetries.
template <typename T, int dim>
SymTensor4Voigt<T, dim> to_voigt(const Tensor4<T, dim>& c)
{
  SymTensor4Voigt<T, dim> r;
  for (int a = 0; a < n_voigt<dim>; ++a)
    for (int b = a; b < n_voigt<dim>; ++b)
    {
      const auto [i, j] = voigt_pair<dim>(a);
      const auto [k, l] = voigt_pair<dim>(b);
      r(a, b) = c(i, j, k, l);
    }
  return r;
}

template <typename T, int dim>
Tensor4<T, dim> from_voigt(const SymTensor4Voigt<T, dim>& c)
{
  Tensor4<T, dim> r;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          r(i, j, k, l) = c(voigt_index<dim>(i, j), voigt_index<dim>(k, l));
  return r;
}

/// (l : h)_iA = sum_jB l_iAjB h_jB
template <typename T, int dim>
Tensor2<T, dim> contract42(const Tensor4<T, dim>& l, const Tensor2<T, dim>& h)
{
  constexpr int n = dim * dim;
  Tensor2<T, dim> r;
  for (int row = 0; row < n; ++row)
  {
    T s = l.data[row * n] * h.data[0];
    for (int col = 1; col < n; ++col)
      s += l.data[row * n + col] * h.data[col];
    r.data[row] = s;
  }
  return r;
}

/// result_ijkl = f_iA f_jB f_kC f_lD c_ABCD, as four single-index sweeps.
template <typename T, int dim>
Tensor4<T, dim> push_forward(const Tensor4<T, dim>& c, const Tensor2<T, dim>& f)
{
  // Each sweep transforms the leading index and rotates it to the back, so
  // after four sweeps the index order is restored.
  auto sweep = [&f](const Tensor4<T, dim>& in) {
    Tensor4<T, dim> out;
    for (int b = 0; b < dim; ++b)
      for (int c2 = 0; c2 < dim; ++c2)
        for (int d = 0; d < dim; ++d)
          for (int i = 0; i < dim; ++i)
          {
            T s = f(i, 0) * in(0, b, c2, d);
            for (int a = 1; a < dim; ++a)
              s += f(i, a) * in(a, b, c2, d);
            out(b, c2, d, i) = s;
          }
    return out;
  };
  return sweep(sweep(sweep(sweep(c))));
}

/// Voigt matrix-vector product with factor 2 on the shear slots of e, so
/// the result equals the full contraction c : e.
template <typename T, int dim>
HYPERFEM_INLINE SymTensor2<T, dim> sym_apply(const SymTensor4Voigt<T, dim>& c, const SymTensor2<T, dim>& e)
{
  constexpr int n = n_voigt<dim>;
  std::array<T, n> weighted;
  for (int b = 0; b < n; ++b)
    weighted[b] = (b < dim) ? e[b] : T(2.0) * e[b];
  SymTensor2<T, dim> r;
  for (int a = 0; a < n; ++a)
  {
    T s = c(a, 0) * weighted[0];
    for (int b = 1; b < n; ++b)
      s += c(a, b) * weighted[b];
    r[a] = s;
  }
  return r;
}

} // namespace hyperfem
