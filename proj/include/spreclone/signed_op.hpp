#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spreclone/monoid.hpp"
#include "spreclone/tuple_codec.hpp"

namespace spreclone {

using Signum = std::vector<Elem>;
/// A permutation of the base set A, pi[a] = image of a.
using ValuePermutation = std::vector<Value>;

/// Arity soft cap for operations built by the closure engines.
inline constexpr int kDefaultOpArityCap = 6;

/// An unsigned operation A^n -> A stored as a value table in tuple-index order.
class Operation {
 public:
  Operation() = default;
  Operation(int k, int arity, std::vector<Value> values);

  static Operation from_function(int k, int arity, const std::function<Value(std::span<const Value>)>& fn);
  /// p_i^(n), with i 0-based.
  static Operation projection(int k, int arity, int position);
  static Operation constant(int k, int arity, Value c);

  int domain_size() const { return k_; }
  int arity() const { return arity_; }
  std::size_t table_size() const { return values_.size(); }
  const std::vector<Value>& values() const { return values_; }
  Value at(TupleIndex index) const { return values_[index]; }
  /// Throws ArityMismatch when args.size() != arity().
  Value eval(std::span<const Value> args) const;

  /// Index of the projection this table equals, or -1.
  int projection_position() const;
  bool is_essential(int position) const;

  auto operator<=>(const Operation&) const = default;

 private:
  int k_ = 0;
  int arity_ = 0;
  std::vector<Value> values_;
};

/// An S-operation: an operation table together with a signum in S^n.
class SignedOp {
 public:
  SignedOp() = default;
  SignedOp(Operation table, Signum signum);
  SignedOp(int k, Signum signum, std::vector<Value> values);

  const Operation& table() const { return table_; }
  const Signum& signum() const { return signum_; }
  int domain_size() const { return table_.domain_size(); }
  int arity() const { return table_.arity(); }
  Value eval(std::span<const Value> args) const { return table_.eval(args); }
  /// Sgn(f), the set of signum entries.
  ElemSet signum_set() const;

  /// Signum is compared first so that sorted containers follow the
  /// enumeration order (arity, signum, table).
  std::strong_ordering operator<=>(const SignedOp& other) const;
  bool operator==(const SignedOp& other) const = default;

 private:
  Operation table_;
  Signum signum_;
};

// The S-preclone primitives. Positions are 0-based throughout.

/// Cyclic shift: (ζf)(x1..xn) = f(x2..xn, x1), signum (s_n, s_1..s_{n-1}).
SignedOp zeta(const SignedOp& f);
/// Swap of the first two arguments and their signa.
SignedOp tau(const SignedOp& f);
/// New fictitious first argument with signum s.
SignedOp nabla(Elem s, const SignedOp& f);
/// Identification of the first two arguments when their signa agree, else f.
SignedOp delta(const SignedOp& f);
/// (f∘g)(x1..x_{m+n-1}) = f(g(x1..xm), x_{m+1}..), signum (s'_1 s_1, .., s'_m s_1, s_2, .., s_n).
SignedOp compose(const Monoid& monoid, const SignedOp& f, const SignedOp& g);

/// id_A with signum (s).
SignedOp identity(int k, Elem s);
/// (p_i^(n))^λ; throws BadSignum unless λ_i is the unit.
SignedOp projection(const Monoid& monoid, int k, int arity, int position, Signum signum);
bool is_trivial_projection(const Monoid& monoid, const SignedOp& f);

// Derived constructions, realized as sequences of the primitives above.

/// Argument i of f becomes argument perm[i] of the result.
SignedOp permute_arguments(const SignedOp& f, std::span<const int> perm);
/// Identifies arguments i < j (kept at position i); f unchanged if their signa differ.
SignedOp identify_arguments(const SignedOp& f, int i, int j);
/// Inserts a fictitious argument with signum s at `position`.
SignedOp add_fictitious(const SignedOp& f, int position, Elem s);
/// f(g_1(X_1), .., g_n(X_n)) on disjoint variable blocks.
SignedOp general_compose(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs);

/// Direct table evaluation of general composition; reference for the above.
SignedOp general_compose_direct(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs);
/// h(x) = f(g_1(x), .., g_p(x)) with all g_i on the same n variables. The
/// signum entries sgn(g_i)_x · sgn(f)_i must agree for every i, else BadSignum.
SignedOp superpose(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs);

/// f is a minor of g: f(a_1..a_n) = g(a_σ(1)..a_σ(m)) for some σ. Signa ignored.
bool is_minor(const Operation& f, const Operation& g);

/// f^π(x) = π(f(π^{-1}x)), signum unchanged.
SignedOp pi_dual(const SignedOp& f, const ValuePermutation& pi);
Operation pi_dual(const Operation& f, const ValuePermutation& pi);
/// Same table, signum mapped entrywise by the monoid automorphism h.
SignedOp h_map(const SignedOp& f, const Permutation& h);

/// Injective byte encoding of (k, arity, signum, values).
std::string canonical_key(const SignedOp& f);
SignedOp from_canonical_key(const std::string& key);

struct SignedOpHash {
  std::size_t operator()(const SignedOp& f) const;
};

/// Number of SignedOps of the given arity: |S|^n * k^(k^n), or 0 on overflow.
std::uint64_t count_signed_ops(std::size_t monoid_size, int k, int arity);
/// Visits every SignedOp of the arity in enumeration order: signum in codec
/// order over S^n, then table index (first table entry most significant).
/// Stops early when the visitor returns false.
void for_each_signed_op(std::size_t monoid_size, int k, int arity, const std::function<bool(const SignedOp&)>& visit);
/// Every Signum of length n in codec order.
std::vector<Signum> all_signa(std::size_t monoid_size, int arity);
std::vector<Operation> all_operations(int k, int arity);

}  // namespace spreclone
