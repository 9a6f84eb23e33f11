#pragma once

#include <random>
#include <string>
#include <vector>

#include "spreclone/monoid.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone::testing {

inline SignedOp op(const Monoid& monoid, int k, const std::string& signum, std::vector<int> values) {
  std::vector<Value> v(values.begin(), values.end());
  return SignedOp(k, monoid.parse_signum(signum), std::move(v));
}

inline Relation rel(int k, int m, const std::vector<std::vector<int>>& tuples) {
  std::vector<std::vector<Value>> t;
  for (const auto& x : tuples) t.emplace_back(x.begin(), x.end());
  return Relation::from_tuples(k, m, t);
}

inline Relation leq() { return rel(2, 2, {{0, 0}, {0, 1}, {1, 1}}); }
inline Relation geq() { return rel(2, 2, {{0, 0}, {1, 0}, {1, 1}}); }

/// (≤, ≥) over Z2.
inline SRelation leq_geq() { return SRelation({leq(), geq()}); }

inline SignedOp random_op(std::mt19937_64& rng, const Monoid& monoid, int k, int arity) {
  const std::size_t size = checked_power(k, arity);
  std::uniform_int_distribution<int> value(0, k - 1);
  std::uniform_int_distribution<int> elem(0, static_cast<int>(monoid.size()) - 1);
  std::vector<Value> values(size);
  for (auto& v : values) v = static_cast<Value>(value(rng));
  Signum signum(static_cast<std::size_t>(arity));
  for (auto& s : signum) s = static_cast<Elem>(elem(rng));
  return SignedOp(k, std::move(signum), std::move(values));
}

inline Relation random_relation(std::mt19937_64& rng, int k, int m, double density) {
  Relation r(k, m);
  std::bernoulli_distribution pick(density);
  for (std::size_t i = 0; i < r.universe_size(); ++i)
    if (pick(rng)) r.insert(static_cast<TupleIndex>(i));
  return r;
}

inline SRelation random_s_relation(std::mt19937_64& rng, const Monoid& monoid, int k, int m, double density = 0.5) {
  std::vector<Relation> parts;
  for (std::size_t s = 0; s < monoid.size(); ++s) parts.push_back(random_relation(rng, k, m, density));
  return SRelation(std::move(parts));
}

}  // namespace spreclone::testing
