#include <cstdlib>
#include <cstring>

#include "sumprod/kernels.hpp"
#include "sumprod/util.hpp"

namespace sumprod::kernels {

std::vector<const Ops*> available_ops() {
  std::vector<const Ops*> v;
  v.push_back(&scalar_ops());
  if (const Ops* a = avx2_ops()) v.push_back(a);
  if (const Ops* n = neon_ops()) v.push_back(n);
  return v;
}

namespace {

const Ops& select() {
  if (const char* env = std::getenv("SUMPROD_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return scalar_ops();
    if (std::strcmp(env, "avx2") == 0) {
      const Ops* a = avx2_ops();
      require(a != nullptr, Errc::ConfigParse, "SUMPROD_KERNEL=avx2 but AVX2 unavailable");
      return *a;
    }
    if (std::strcmp(env, "neon") == 0) {
      const Ops* n = neon_ops();
      require(n != nullptr, Errc::ConfigParse, "SUMPROD_KERNEL=neon but NEON unavailable");
      return *n;
    }
    if (std::strcmp(env, "auto") != 0)
      fail(Errc::ConfigParse, std::string("unknown SUMPROD_KERNEL value: ") + env);
  }
  if (const Ops* a = avx2_ops()) return *a;
  if (const Ops* n = neon_ops()) return *n;
  return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& sel = select();
  return sel;
}

}  // namespace sumprod::kernels
