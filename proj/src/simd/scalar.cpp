#include "evo/simd/bitkernels.hpp"

#include <bit>

namespace evo::simd::scalar {
namespace {

unsigned classify(const Word* a, const Word* b, std::size_t words) {
  Word outside = 0;
  Word inside = 0;
  for (std::size_t i = 0; i < words; ++i) {
    outside |= a[i] & ~b[i];
    inside |= a[i] & b[i];
  }
  return (outside ? kHasOutside : 0u) | (inside ? kHasInside : 0u);
}

bool any_and(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_andnot(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void or_to(Word* dst, const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] = a[i] | b[i];
}

std::size_t popcount(const Word* a, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

} // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::Scalar, classify, any_and, any_andnot, or_into, or_to, popcount};
  return t;
}

} // namespace evo::simd::scalar
