#include "sumprod/catalog.hpp"

namespace sumprod {

std::vector<CatalogEntry> ring_catalog() {
  std::vector<CatalogEntry> out;
  for (std::uint64_t q = 1; q <= 64; ++q)
    out.push_back({"z" + std::to_string(q), RingSpec::cyclic(q)});
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t k = 2;; ++k) {
      std::uint64_t n = 1;
      for (std::uint32_t i = 0; i < k; ++i) n *= p;
      if (n > 64) break;
      out.push_back({"gf" + std::to_string(n), RingSpec::galois(p, k)});
    }
  }
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    out.push_back({"p" + std::to_string(p) + "x" + std::to_string(p),
                   RingSpec::product({RingSpec::cyclic(p), RingSpec::cyclic(p)})});
  out.push_back({"m2_2", RingSpec::matrix(2, RingSpec::cyclic(2))});
  out.push_back({"m2_3", RingSpec::matrix(2, RingSpec::cyclic(3))});
  return out;
}

}  // namespace sumprod
