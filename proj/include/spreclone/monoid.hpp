#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spreclone {

using Elem = std::uint8_t;       // index of a monoid element
using ElemSet = std::uint32_t;   // subset of the monoid as a bitmask over indices
using Permutation = std::vector<Elem>;

inline constexpr std::size_t kMaxMonoidSize = 16;

inline bool contains(ElemSet set, Elem x) { return ((set >> x) & 1U) != 0; }
inline ElemSet singleton(Elem x) { return ElemSet{1} << x; }

/// A family (M_s) of subsets of S indexed by S, as consumed by the
/// M-self-intersection. `valid` records whether s'·M_s ⊆ M_{s's} holds.
struct MFamily {
  std::vector<ElemSet> sets;
  bool valid = false;

  bool operator==(const MFamily&) const = default;
};

/// One failed axiom instance found by Monoid::validate.
struct MonoidViolation {
  enum class Kind { NonAssociative, BadUnit, MalformedTable } kind;
  std::string detail;
};

/// A validated finite monoid given by its multiplication table. Elements are
/// referred to by index; names only matter at the I/O boundary.
class Monoid {
 public:
  /// Validates a name-level description. Throws Error listing every violated
  /// axiom instance (the error kind is that of the first violation).
  static Monoid validate(std::vector<std::string> names, std::string_view unit,
                         const std::vector<std::vector<std::string>>& table);
  /// Same, for an index table; table[a][b] is the index of a·b.
  static Monoid validate(std::vector<std::string> names, int unit,
                         const std::vector<std::vector<int>>& table);
  /// All axiom violations of an index table, without throwing.
  static std::vector<MonoidViolation> violations(std::size_t size, int unit,
                                                 const std::vector<std::vector<int>>& table);

  static Monoid trivial();
  static Monoid z2();
  static Monoid z3();
  static Monoid sprime();
  static Monoid shat();
  /// Builtins by name: "trivial", "z2", "z3", "sprime", "shat".
  static std::optional<Monoid> builtin(std::string_view name);
  static std::vector<std::string> builtin_names();

  std::size_t size() const { return names_.size(); }
  Elem unit() const { return unit_; }
  Elem mul(Elem a, Elem b) const { return table_[a * size() + b]; }
  ElemSet all() const { return size() == 32 ? ~ElemSet{0} : (ElemSet{1} << size()) - 1; }

  const std::string& name(Elem x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Elem> index_of(std::string_view name) const;
  /// Parses a comma-separated signum literal such as "+,-,+".
  std::vector<Elem> parse_signum(std::string_view literal) const;

  /// St = { s·t : s ∈ S }.
  ElemSet left_ideal(Elem t) const;
  /// I(S) = { s : ∃ t, t·s = e }.
  ElemSet invertibles() const;
  bool is_group() const { return invertibles() == all(); }
  /// Two-sided inverse of an invertible element.
  std::optional<Elem> inverse(Elem x) const;
  /// M^v_s = { x : x·v = s }.
  MFamily m_family(Elem v) const;
  /// T^v = ({s·v})_s, the family realizing index translation by v.
  MFamily translation_family(Elem v) const;
  bool check_m_condition(const MFamily& family) const;
  /// x·M for a subset M.
  ElemSet left_mul(Elem x, ElemSet set) const;
  /// All monoid automorphisms, identity first, the rest in lexicographic order.
  std::vector<Permutation> automorphisms() const;

  bool operator==(const Monoid& other) const {
    return names_ == other.names_ && unit_ == other.unit_ && table_ == other.table_;
  }

 private:
  Monoid(std::vector<std::string> names, Elem unit, std::vector<Elem> table)
      : names_(std::move(names)), unit_(unit), table_(std::move(table)) {}

  std::vector<std::string> names_;
  Elem unit_ = 0;
  std::vector<Elem> table_;
};

/// Inverse of a permutation of {0..n-1}.
Permutation inverse_permutation(const Permutation& p);

}  // namespace spreclone
