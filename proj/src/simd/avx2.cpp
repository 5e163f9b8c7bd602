// Compiled with -mavx2; only reached after a runtime CPU check.
#include "evo/simd/bitkernels.hpp"

#include <immintrin.h>

#include <bit>

namespace evo::simd::avx2 {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

unsigned classify(const Word* a, const Word* b, std::size_t words) {
  __m256i outside = _mm256_setzero_si256();
  __m256i inside = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = load(a + i);
    const __m256i vb = load(b + i);
    outside = _mm256_or_si256(outside, _mm256_andnot_si256(vb, va));
    inside = _mm256_or_si256(inside, _mm256_and_si256(va, vb));
  }
  Word out_tail = 0;
  Word in_tail = 0;
  for (; i < words; ++i) {
    out_tail |= a[i] & ~b[i];
    in_tail |= a[i] & b[i];
  }
  const bool has_out = out_tail || !_mm256_testz_si256(outside, outside);
  const bool has_in = in_tail || !_mm256_testz_si256(inside, inside);
  return (has_out ? kHasOutside : 0u) | (has_in ? kHasInside : 0u);
}

bool any_and(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_andnot(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  // testc(b, a) is 1 iff (~b & a) == 0
  for (; i + 4 <= words; i += 4)
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return true;
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void or_to(Word* dst, const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < words; ++i) dst[i] = a[i] | b[i];
}

// Nibble lookup popcount (Mula).
std::size_t popcount(const Word* a, std::size_t words) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i v = load(a + i);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  std::size_t n = static_cast<std::size_t>(_mm256_extract_epi64(acc, 0)) +
                  static_cast<std::size_t>(_mm256_extract_epi64(acc, 1)) +
                  static_cast<std::size_t>(_mm256_extract_epi64(acc, 2)) +
                  static_cast<std::size_t>(_mm256_extract_epi64(acc, 3));
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

} // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::Avx2, classify, any_and, any_andnot, or_into, or_to, popcount};
  return t;
}

} // namespace evo::simd::avx2
