#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spreclone {

using Value = std::uint8_t;       // element of the base set A = {0, ..., k-1}
using TupleIndex = std::uint32_t;  // position of a tuple in A^m

/// Hard ceiling on k^m for any table or bitset the library materializes.
inline constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 20;

/// k^m, or 0 when it would exceed kMaxTableSize.
std::uint64_t checked_power(int k, int m);

/// Lexicographic tuple codec: encode(a_1..a_m) = sum a_i * k^(m-i), so the
/// first coordinate is the most significant digit.
TupleIndex encode(std::span<const Value> tuple, int k);
std::vector<Value> decode(TupleIndex index, int k, int m);

/// Digit `row` (0-based, row 0 = first coordinate) of a tuple index.
inline Value digit(TupleIndex index, int k, int m, int row) {
  for (int r = m - 1; r > row; --r) index /= static_cast<TupleIndex>(k);
  return static_cast<Value>(index % static_cast<TupleIndex>(k));
}

}  // namespace spreclone
