#pragma once

#include "sumprod/ring.hpp"

namespace sumprod {

struct CatalogEntry {
  std::string name;
  RingSpec spec;
};

/// Desk-scale ring catalog: Z/q for q <= 64, proper prime-power fields
/// GF(p^k) <= 64, F_p x F_p for p <= 7, M_2(F_2) and M_2(F_3).
std::vector<CatalogEntry> ring_catalog();

}  // namespace sumprod
