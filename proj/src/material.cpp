#include "hyperfem/material.hpp"

#include <string>

namespace hyperfem
{

std::string_view to_string(MaterialModel m)
{
  return m == MaterialModel::Compressible ? "compressible" : "split";
}

MaterialModel parse_material_model(std::string_view name)
{
  if (name == "compressible" || name == "nh")
    return MaterialModel::Compressible;
  if (name == "split" || name == "nh-split")
    return MaterialModel::Split;
  throw ConfigError("unknown material model '" + std::string(name) + "'");
}

MaterialParams MaterialParams::from_shear_and_poisson(MaterialModel model, double mu, double nu)
{
  if (!(mu > 0.0))
    throw ConfigError("shear modulus must be positive");
  if (!(nu > 0.0 && nu < 0.5))
    throw ConfigError("Poisson ratio must lie in (0, 0.5)");
  MaterialParams p;
  p.model = model;
  p.mu = mu;
  p.lambda = mu * nu / (1.0 - 2.0 * nu);
  p.kappa = 2.0 * mu * (1.0 + nu) / (3.0 * (1.0 - 2.0 * nu));
  return p;
}

MaterialParams MaterialParams::scaled(double factor) const
{
  MaterialParams p = *this;
  p.mu *= factor;
  p.lambda *= factor;
  p.kappa *= factor;
  return p;
}

} // namespace hyperfem
