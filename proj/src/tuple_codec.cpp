#include "spreclone/tuple_codec.hpp"

namespace spreclone {

std::uint64_t checked_power(int k, int m) {
  std::uint64_t result = 1;
  for (int i = 0; i < m; ++i) {
    result *= static_cast<std::uint64_t>(k);
    if (result > kMaxTableSize) return 0;
  }
  return result;
}

TupleIndex encode(std::span<const Value> tuple, int k) {
  TupleIndex index = 0;
  for (Value a : tuple) index = index * static_cast<TupleIndex>(k) + a;
  return index;
}

std::vector<Value> decode(TupleIndex index, int k, int m) {
  std::vector<Value> tuple(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<Value>(index % static_cast<TupleIndex>(k));
    index /= static_cast<TupleIndex>(k);
  }
  return tuple;
}

}  // namespace spreclone
