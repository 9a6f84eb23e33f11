#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spreclone/monoid.hpp"
#include "spreclone/signed_op.hpp"
#include "spreclone/tuple_codec.hpp"

namespace spreclone {

/// Block label per row, normalized so labels appear in first-occurrence
/// order (0, then the next new label 1, ...).
using Partition = std::vector<int>;

/// Relations with k^m above this are rejected by the default caps.
inline constexpr std::uint64_t kSoftTableSize = std::uint64_t{1} << 16;

/// A classical m-ary relation over A as a bitset indexed by the tuple codec.
/// The empty relation keeps its arity.
class Relation {
 public:
  Relation() = default;
  /// Empty relation; throws ArityCapExceeded when k^m exceeds the hard limit.
  Relation(int k, int arity);

  static Relation full(int k, int arity);
  static Relation from_tuples(int k, int arity, const std::vector<std::vector<Value>>& tuples);
  /// δ_ε = { a : a_i = a_j whenever i and j share a block }.
  static Relation diagonal(int k, const Partition& eps);

  int domain_size() const { return k_; }
  int arity() const { return arity_; }
  std::size_t universe_size() const { return universe_; }

  bool contains(TupleIndex index) const { return ((words_[index >> 6] >> (index & 63)) & 1U) != 0; }
  bool contains(std::span<const Value> tuple) const;
  void insert(TupleIndex index) { words_[index >> 6] |= std::uint64_t{1} << (index & 63); }
  void insert(std::span<const Value> tuple);
  void erase(TupleIndex index) { words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63)); }

  std::size_t count() const;
  bool empty() const;
  bool is_full() const { return count() == universe_; }
  /// Member indices in increasing codec order.
  std::vector<TupleIndex> members() const;
  std::vector<std::vector<Value>> tuples() const;
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = __builtin_ctzll(word);
        fn(static_cast<TupleIndex>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  bool is_subset_of(const Relation& other) const;
  Relation& operator|=(const Relation& other);
  Relation& operator&=(const Relation& other);

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const Relation&) const = default;
  std::strong_ordering operator<=>(const Relation& other) const;

 private:
  int k_ = 0;
  int arity_ = 0;
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Classical elementary operations. For arity 1, zeta/tau/pr return the input.
Relation zeta(const Relation& r);
Relation tau(const Relation& r);
Relation pr(const Relation& r);
Relation product(const Relation& a, const Relation& b);
/// a ∧ b; the empty relation of a's arity when the arities differ.
Relation meet(const Relation& a, const Relation& b);
Relation join(const Relation& a, const Relation& b);
/// { (a_{z_1}, .., a_{z_t}) : a ∈ r } with 0-based rows; throws BadRowIndex.
Relation pr_rows(const Relation& r, std::span<const int> rows);
Relation pi_dual(const Relation& r, const ValuePermutation& pi);

Partition normalize_partition(std::span<const int> labels);
/// The partition ε with r = δ_ε, if r is a diagonal relation.
std::optional<Partition> diagonal_partition(const Relation& r);
/// Every partition of {0..m-1} in normalized form.
std::vector<Partition> all_partitions(int m);

/// An S-relation: one Relation per monoid element, all of the same arity.
class SRelation {
 public:
  SRelation() = default;
  /// All parts empty.
  SRelation(int k, int arity, std::size_t monoid_size);
  explicit SRelation(std::vector<Relation> parts);
  static SRelation uniform(const Relation& r, std::size_t monoid_size);

  int domain_size() const { return parts_.front().domain_size(); }
  int arity() const { return parts_.front().arity(); }
  std::size_t monoid_size() const { return parts_.size(); }
  const Relation& part(Elem s) const { return parts_[s]; }
  Relation& part(Elem s) { return parts_[s]; }
  const std::vector<Relation>& parts() const { return parts_; }

  /// Partwise inclusion.
  bool is_subset_of(const SRelation& other) const;
  /// Total number of (tuple, s) entries in the listing form.
  std::size_t listing_size() const;

  bool operator==(const SRelation&) const = default;
  auto operator<=>(const SRelation&) const = default;

 private:
  std::vector<Relation> parts_;
};

/// Per-s partition, or nullopt for the empty part ⊤.
struct DiagonalSpec {
  int arity = 0;
  std::vector<std::optional<Partition>> parts;
};

SRelation zeta(const SRelation& r);
SRelation tau(const SRelation& r);
SRelation pr(const SRelation& r);
SRelation product(const SRelation& a, const SRelation& b);
SRelation meet(const SRelation& a, const SRelation& b);
SRelation join(const SRelation& a, const SRelation& b);
SRelation pr_rows(const SRelation& r, std::span<const int> rows);
/// result_s = r_{s·v}.
SRelation mu(const Monoid& monoid, const SRelation& r, Elem v);
/// result_s = ⋂ { r_x : x·v = s }, A^m for an empty intersection.
SRelation self_intersect(const Monoid& monoid, const SRelation& r, Elem v);
/// result_s = ⋂ { r_x : x ∈ M_s }; throws InvalidFamily unless condition (*) holds.
SRelation m_self_intersect(const Monoid& monoid, const SRelation& r, const MFamily& family);

/// δ^S: the all-Δ_A family of the given arity (2 by default).
SRelation delta_S(const Monoid& monoid, int k, int arity = 2);
/// Throws BadPartition for malformed partitions.
SRelation make_diagonal(const Monoid& monoid, int k, const DiagonalSpec& spec);
/// Each part is a diagonal or empty, and Ss ⊆ St implies part_s ⊆ part_t.
bool is_s_diagonal(const Monoid& monoid, const SRelation& r);

SRelation pi_dual(const SRelation& r, const ValuePermutation& pi);
/// result_s = r_{h^{-1}(s)}.
SRelation h_map(const SRelation& r, const Permutation& h);

/// Column f(r_1, .., r_n) for columns in A^m given by codec index.
TupleIndex apply_op(const Operation& f, std::span<const TupleIndex> columns, int m);

/// The listing form: every (column, s) pair, parts in element order and
/// columns in codec order within a part.
struct Listing {
  std::vector<TupleIndex> columns;
  Signum signum;
};
Listing listing(const SRelation& r);

std::string canonical_key(const SRelation& r);

struct SRelationHash {
  std::size_t operator()(const SRelation& r) const;
};

}  // namespace spreclone
