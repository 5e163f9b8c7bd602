#pragma once

// Word-parallel bitset kernels used by the exact solver.
//
// Every kernel exists as a portable scalar reference and, where the target
// allows it, as an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// chosen once at runtime from the host CPU; tests call each table directly
// and require bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace evo::simd {

using Word = std::uint64_t;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

// Result bits of `classify`.
inline constexpr unsigned kHasOutside = 1u; // a & ~b != 0
inline constexpr unsigned kHasInside = 2u;  // a &  b != 0

struct KernelTable {
  Isa isa;
  // Returns kHasOutside | kHasInside flags for `a` against `b`.
  unsigned (*classify)(const Word* a, const Word* b, std::size_t words);
  bool (*any_and)(const Word* a, const Word* b, std::size_t words);
  bool (*any_andnot)(const Word* a, const Word* b, std::size_t words);
  // dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  // dst = a | b
  void (*or_to)(Word* dst, const Word* a, const Word* b, std::size_t words);
  std::size_t (*popcount)(const Word* a, std::size_t words);
};

namespace scalar {
const KernelTable& table();
}
#if defined(EVO_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif
#if defined(EVO_HAVE_NEON)
namespace neon {
const KernelTable& table();
}
#endif

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Every ISA usable on this host, scalar first.
std::vector<Isa> available_isas();

/// Kernel table for a specific ISA. Throws std::invalid_argument when the
/// ISA is unavailable on this host.
const KernelTable& kernels(Isa isa);

/// Best available table. The environment variable EVO_SIMD=scalar|avx2|neon
/// overrides the choice (an unavailable request falls back to scalar).
const KernelTable& active_kernels();

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline void set_bit(std::span<Word> words, std::size_t bit) {
  words[bit >> 6] |= Word{1} << (bit & 63);
}

inline void clear_bit(std::span<Word> words, std::size_t bit) {
  words[bit >> 6] &= ~(Word{1} << (bit & 63));
}

inline bool test_bit(std::span<const Word> words, std::size_t bit) {
  return (words[bit >> 6] >> (bit & 63)) & 1u;
}

} // namespace evo::simd
