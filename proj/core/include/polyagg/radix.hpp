#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polyagg {

/// Letters are 1-based: an alphabet of size n holds 1..n.
using Letter = int;
using Word = std::vector<Letter>;

/// Largest explicit space (|Sigma^m| for predicates, n^p for tables).
inline constexpr std::uint64_t kExplicitCap = std::uint64_t{1} << 24;

/// Largest alphabet representable in a table cell.
inline constexpr int kMaxAlphabet = 255;

/// base^exp, saturating at `cap + 1` once the value exceeds `cap`.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp,
                             std::uint64_t cap = UINT64_MAX - 1);

/// Mixed-radix index: sum_t (x_t - 1) * n^t with t = 0 the least significant
/// digit. Throws DimensionError when a letter is outside 1..n.
std::uint64_t encode(std::span<const Letter> word, int n);

/// Inverse of encode for words of the given length.
Word decode(std::uint64_t index, int length, int n);
void decode_into(std::uint64_t index, int n, std::span<Letter> out);

/// Throws DimensionError unless `word` has the given length and letters 1..n.
void check_word(std::span<const Letter> word, int length, int n, const char* what);

}  // namespace polyagg
