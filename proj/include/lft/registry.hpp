#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lft/dynamics.hpp"

namespace lft {

/// Closed-form self-maps of the disk that are not LFTs. Logs and square
/// roots use the principal branch (cut along the negative reals); every
/// argument they receive from a point of the disk lies in the right
/// half-plane, so the cut is never crossed.
struct NamedMap {
  std::string name;
  std::string formula;
  Evaluable eval;
};

/// square           z^2
/// exp_half_cayley  exp(-(1/2) (1+z)/(1-z))
/// log_spiral       (1/2) e^{-pi^2/log 2} exp((2 pi i/log 2) Log(1/(1-z)))
/// sqrt_cayley      (sqrt(T)-1)/(sqrt(T)+1), T = (1+z)/(1-z)
/// odd_cubic        (z+z^3)/2
const std::vector<NamedMap>& map_registry();

/// Throws UnknownMapName.
const NamedMap& lookup_map(std::string_view name);

}  // namespace lft
