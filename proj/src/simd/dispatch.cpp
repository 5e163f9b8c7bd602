#include "evo/simd/bitkernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace evo::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
  case Isa::Scalar: return "scalar";
  case Isa::Avx2: return "avx2";
  case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::Scalar: return true;
  case Isa::Avx2:
#if defined(EVO_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  case Isa::Neon:
#if defined(EVO_HAVE_NEON)
    return true; // baseline on aarch64
#else
    return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (isa_available(isa)) out.push_back(isa);
  return out;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("SIMD variant '" + std::string(isa_name(isa)) + "' is not available on this host");
  switch (isa) {
#if defined(EVO_HAVE_AVX2)
  case Isa::Avx2: return avx2::table();
#endif
#if defined(EVO_HAVE_NEON)
  case Isa::Neon: return neon::table();
#endif
  default: return scalar::table();
  }
}

namespace {

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("EVO_SIMD")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (want == isa_name(isa)) return isa_available(isa) ? kernels(isa) : scalar::table();
  }
  const auto isas = available_isas();
  return kernels(isas.back());
}

} // namespace

const KernelTable& active_kernels() {
  static const KernelTable& chosen = select_kernels();
  return chosen;
}

} // namespace evo::simd
