#pragma once

// Small tensor routines called once per quadrature point inside the cell
// loops; GCC otherwise tends to leave them out of line there.
#define HYPERFEM_INLINE [[gnu::always_inline]] inline

namespace hyperfem
{

// Underlying real value of a (possibly augmented) scalar. Augmented scalar
// types (dual numbers, counting scalars) provide their own overload found by
// argument-dependent lookup.
constexpr double value_of(double x) { return x; }

} // namespace hyperfem
