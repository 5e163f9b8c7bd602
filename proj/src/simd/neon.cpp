#include "evo/simd/bitkernels.hpp"

#include <arm_neon.h>

#include <bit>

namespace evo::simd::neon {
namespace {

inline bool nonzero(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

unsigned classify(const Word* a, const Word* b, std::size_t words) {
  uint64x2_t outside = vdupq_n_u64(0);
  uint64x2_t inside = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    const uint64x2_t va = vld1q_u64(a + i);
    const uint64x2_t vb = vld1q_u64(b + i);
    outside = vorrq_u64(outside, vbicq_u64(va, vb));
    inside = vorrq_u64(inside, vandq_u64(va, vb));
  }
  Word out_tail = 0;
  Word in_tail = 0;
  for (; i < words; ++i) {
    out_tail |= a[i] & ~b[i];
    in_tail |= a[i] & b[i];
  }
  return ((out_tail || nonzero(outside)) ? kHasOutside : 0u) | ((in_tail || nonzero(inside)) ? kHasInside : 0u);
}

bool any_and(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2)
    if (nonzero(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_andnot(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2)
    if (nonzero(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void or_to(Word* dst, const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < words; ++i) dst[i] = a[i] | b[i];
}

std::size_t popcount(const Word* a, std::size_t words) {
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
    n += vaddvq_u8(bytes);
  }
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

} // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::Neon, classify, any_and, any_andnot, or_into, or_to, popcount};
  return t;
}

} // namespace evo::simd::neon
