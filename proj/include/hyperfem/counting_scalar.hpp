#pragma once

#include <cmath>
#include <cstdint>

#include "hyperfem/scalar.hpp"

namespace hyperfem
{

struct OpCounts
{
  std::uint64_t adds = 0; // additions and subtractions
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;
  std::uint64_t specials = 0; // log, exp, sqrt, pow

  std::uint64_t total() const { return adds + muls + divs + specials; }

  OpCounts& operator+=(const OpCounts& o)
  {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    specials += o.specials;
    return *this;
  }
};

/// Real number that tallies every floating-point operation applied to it in
/// a per-thread counter. Results are bitwise identical to plain doubles.
struct CountingScalar
{
  double v = 0.0;

  constexpr CountingScalar() = default;
  constexpr CountingScalar(double x) : v(x) {}

  static OpCounts& counter()
  {
    thread_local OpCounts counts;
    return counts;
  }
  static void reset() { counter() = OpCounts{}; }

  CountingScalar& operator+=(const CountingScalar& o)
  {
    ++counter().adds;
    v += o.v;
    return *this;
  }
  CountingScalar& operator-=(const CountingScalar& o)
  {
    ++counter().adds;
    v -= o.v;
    return *this;
  }
  CountingScalar& operator*=(const CountingScalar& o)
  {
    ++counter().muls;
    v *= o.v;
    return *this;
  }
  CountingScalar& operator/=(const CountingScalar& o)
  {
    ++counter().divs;
    v /= o.v;
    return *this;
  }

  friend CountingScalar operator+(CountingScalar a, const CountingScalar& b) { return a += b; }
  friend CountingScalar operator-(CountingScalar a, const CountingScalar& b) { return a -= b; }
  friend CountingScalar operator*(CountingScalar a, const CountingScalar& b) { return a *= b; }
  friend CountingScalar operator/(CountingScalar a, const CountingScalar& b) { return a /= b; }
  // Sign flips are not counted.
  friend CountingScalar operator-(const CountingScalar& a) { return CountingScalar(-a.v); }

  friend bool operator<(const CountingScalar& a, const CountingScalar& b) { return a.v < b.v; }
  friend bool operator>(const CountingScalar& a, const CountingScalar& b) { return a.v > b.v; }
  friend bool operator<=(const CountingScalar& a, const CountingScalar& b) { return a.v <= b.v; }
  friend bool operator>=(const CountingScalar& a, const CountingScalar& b) { return a.v >= b.v; }
  friend bool operator==(const CountingScalar& a, const CountingScalar& b) { return a.v == b.v; }
};

constexpr double value_of(const CountingScalar& x) { return x.v; }

inline CountingScalar log(const CountingScalar& x)
{
  ++CountingScalar::counter().specials;
  return std::log(x.v);
}
inline CountingScalar exp(const CountingScalar& x)
{
  ++CountingScalar::counter().specials;
  return std::exp(x.v);
}
inline CountingScalar sqrt(const CountingScalar& x)
{
  ++CountingScalar::counter().specials;
  return std::sqrt(x.v);
}
inline CountingScalar pow(const CountingScalar& x, double e)
{
  ++CountingScalar::counter().specials;
  return std::pow(x.v, e);
}
inline double abs(const CountingScalar& x) { return std::abs(x.v); }

/// Operation counts of `fn()` on this thread.
template <typename Fn>
OpCounts count_operations(Fn&& fn)
{
  CountingScalar::reset();
  fn();
  return CountingScalar::counter();
}

} // namespace hyperfem
