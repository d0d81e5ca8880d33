#pragma once

#include <array>
#include <cmath>
#include <string>
#include <type_traits>
#include <utility>

#include "hyperfem/errors.hpp"
#include "hyperfem/scalar.hpp"

namespace hyperfem
{

/// Forward-mode dual number with N derivative slots over base scalar T.
///
/// T may itself be a Dual, which gives second-order jets: Dual<Dual<double, 1>, N>
/// carries f, its gradient, and the gradient's derivative along one seed.
template <typename T, int N>
struct Dual
{
  T val{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}
  constexpr Dual(const T& v) requires(!std::is_same_v<T, double>) : val(v) {}
  constexpr Dual(const T& v, const std::array<T, N>& grad) : val(v), d(grad) {}

  Dual& operator+=(const Dual& o)
  {
    val += o.val;
    for (int k = 0; k < N; ++k)
      d[k] += o.d[k];
    return *this;
  }
  Dual& operator-=(const Dual& o)
  {
    val -= o.val;
    for (int k = 0; k < N; ++k)
      d[k] -= o.d[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& a, const Dual& b)
  {
    Dual r = a;
    return r += b;
  }
  friend Dual operator-(const Dual& a, const Dual& b)
  {
    Dual r = a;
    return r -= b;
  }
  friend Dual operator-(const Dual& a)
  {
    Dual r;
    r.val = -a.val;
    for (int k = 0; k < N; ++k)
      r.d[k] = -a.d[k];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b)
  {
    Dual r;
    r.val = a.val * b.val;
    for (int k = 0; k < N; ++k)
      r.d[k] = a.val * b.d[k] + a.d[k] * b.val;
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b)
  {
    Dual r;
    const T inv = T(1.0) / b.val;
    r.val = a.val * inv;
    for (int k = 0; k < N; ++k)
      r.d[k] = (a.d[k] - r.val * b.d[k]) * inv;
    return r;
  }

  // Mixed operations with plain constants skip the derivative products.
  friend Dual operator+(const Dual& a, double b)
  {
    Dual r = a;
    r.val += b;
    return r;
  }
  friend Dual operator+(double a, const Dual& b) { return b + a; }
  friend Dual operator-(const Dual& a, double b)
  {
    Dual r = a;
    r.val -= b;
    return r;
  }
  friend Dual operator-(double a, const Dual& b)
  {
    Dual r = -b;
    r.val += a;
    return r;
  }
  friend Dual operator*(const Dual& a, double b)
  {
    Dual r;
    r.val = a.val * b;
    for (int k = 0; k < N; ++k)
      r.d[k] = a.d[k] * b;
    return r;
  }
  friend Dual operator*(double a, const Dual& b) { return b * a; }
  friend Dual operator/(const Dual& a, double b)
  {
    Dual r;
    r.val = a.val / b;
    for (int k = 0; k < N; ++k)
      r.d[k] = a.d[k] / b;
    return r;
  }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

  friend bool operator<(const Dual& a, const Dual& b) { return value_of(a) < value_of(b); }
  friend bool operator>(const Dual& a, const Dual& b) { return value_of(a) > value_of(b); }
  friend bool operator<=(const Dual& a, const Dual& b) { return value_of(a) <= value_of(b); }
  friend bool operator>=(const Dual& a, const Dual& b) { return value_of(a) >= value_of(b); }
};

template <typename T, int N>
double value_of(const Dual<T, N>& x)
{
  return value_of(x.val);
}

namespace detail
{
// f(x) with derivative fp = f'(x.val) propagated to every slot.
template <typename T, int N>
Dual<T, N> chain(const Dual<T, N>& x, const T& fx, const T& fp)
{
  Dual<T, N> r;
  r.val = fx;
  for (int k = 0; k < N; ++k)
    r.d[k] = fp * x.d[k];
  return r;
}
} // namespace detail

template <typename T, int N>
Dual<T, N> log(const Dual<T, N>& x)
{
  if (!(value_of(x) > 0.0))
    throw DomainError("log of non-positive value " + std::to_string(value_of(x)));
  using std::log;
  return detail::chain(x, T(log(x.val)), T(T(1.0) / x.val));
}

template <typename T, int N>
Dual<T, N> exp(const Dual<T, N>& x)
{
  using std::exp;
  const T e = exp(x.val);
  return detail::chain(x, e, e);
}

template <typename T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x)
{
  if (value_of(x) < 0.0)
    throw DomainError("sqrt of negative value " + std::to_string(value_of(x)));
  using std::sqrt;
  const T s = sqrt(x.val);
  return detail::chain(x, s, T(T(0.5) / s));
}

template <typename T, int N>
Dual<T, N> pow(const Dual<T, N>& x, double e)
{
  if (!(value_of(x) > 0.0) && e != std::floor(e))
    throw DomainError("pow of non-positive base with fractional exponent");
  using std::pow;
  const T pm1 = pow(x.val, e - 1.0);
  return detail::chain(x, T(pm1 * x.val), T(pm1 * e));
}

namespace ad
{

template <typename S, int N>
struct GradientResult
{
  S value;
  std::array<S, N> gradient;
};

template <typename S, int N>
struct HvpResult
{
  S value;
  std::array<S, N> gradient;
  std::array<S, N> hvp;
};

template <typename S, int N>
struct HessianResult
{
  S value;
  std::array<S, N> gradient;
  std::array<std::array<S, N>, N> hessian;
};

/// f(x) and its gradient in one sweep of N-slot dual arithmetic. f must be
/// a generic callable taking std::array<Scalar, N> for any scalar type.
template <int N, typename S = double, typename F>
GradientResult<S, N> gradient(F&& f, const std::array<S, N>& x)
{
  using D = Dual<S, N>;
  std::array<D, N> xd;
  for (int i = 0; i < N; ++i)
  {
    xd[i].val = x[i];
    xd[i].d[i] = S(1.0);
  }
  const D y = f(std::as_const(xd));
  return {y.val, y.d};
}

/// f(x), grad f(x) and H(x) v without forming H: forward-over-forward with
/// the seed v on the inner single-slot level.
template <int N, typename S = double, typename F>
HvpResult<S, N> seeded_hvp(F&& f, const std::array<S, N>& x, const std::array<S, N>& v)
{
  using Inner = Dual<S, 1>;
  using D = Dual<Inner, N>;
  std::array<D, N> xd;
  for (int i = 0; i < N; ++i)
  {
    xd[i].val.val = x[i];
    xd[i].val.d[0] = v[i];
    xd[i].d[i].val = S(1.0);
  }
  const D y = f(std::as_const(xd));
  HvpResult<S, N> r;
  r.value = y.val.val;
  for (int i = 0; i < N; ++i)
  {
    r.gradient[i] = y.d[i].val;
    r.hvp[i] = y.d[i].d[0];
  }
  return r;
}

/// Dense Hessian via N-by-N nested duals.
template <int N, typename S = double, typename F>
HessianResult<S, N> full_hessian(F&& f, const std::array<S, N>& x)
{
  using Inner = Dual<S, N>;
  using D = Dual<Inner, N>;
  std::array<D, N> xd;
  for (int i = 0; i < N; ++i)
  {
    xd[i].val.val = x[i];
    xd[i].val.d[i] = S(1.0);
    xd[i].d[i].val = S(1.0);
  }
  const D y = f(std::as_const(xd));
  HessianResult<S, N> r;
  r.value = y.val.val;
  for (int i = 0; i < N; ++i)
  {
    r.gradient[i] = y.d[i].val;
    for (int j = 0; j < N; ++j)
      r.hessian[i][j] = y.d[i].d[j];
  }
  return r;
}

} // namespace ad
} // namespace hyperfem
