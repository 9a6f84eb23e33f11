#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spreclone/galois.hpp"
#include "spreclone/monoid.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone {

/// An S-preclone known either by generators (membership decided through the
/// cached Γ oracle) or only by its bounded fragment, e.g. SPol ρ. Equality of
/// handles always means equality of fragments at the op cap.
class PrecloneHandle {
 public:
  static PrecloneHandle generated(const Monoid& monoid, int k, std::vector<SignedOp> generators, int op_cap);
  static PrecloneHandle from_fragment(const Monoid& monoid, int k, std::vector<SignedOp> fragment, int op_cap);

  const Monoid& monoid() const { return *monoid_; }
  int domain_size() const { return k_; }
  int op_cap() const { return op_cap_; }
  bool has_generators() const { return oracle_ != nullptr; }
  const std::vector<SignedOp>& generators() const { return generators_; }
  /// All members of arity ≤ op_cap, in enumeration order.
  const std::vector<SignedOp>& fragment() const { return fragment_; }

  /// Decided by the oracle when generators are known, else by fragment lookup
  /// (false above the cap).
  bool contains(const SignedOp& f) const;
  bool fragment_subset_of(const PrecloneHandle& other) const;
  bool same_fragment(const PrecloneHandle& other) const { return fragment_ == other.fragment_; }
  /// Least canonical key among the generators (or the fragment), for ordering reports.
  std::string least_key() const;

 private:
  PrecloneHandle() = default;

  std::shared_ptr<const Monoid> monoid_;
  int k_ = 0;
  int op_cap_ = 0;
  std::vector<SignedOp> generators_;
  std::shared_ptr<const MembershipOracle> oracle_;
  std::vector<SignedOp> fragment_;
};

/// All SignedOps of arity 1..op_cap in enumeration order; CapExceeded above 2^24.
std::vector<SignedOp> all_signed_ops(const Monoid& monoid, int k, int op_cap);
/// The S-operations that are trivial projections, up to op_cap.
std::vector<SignedOp> trivial_projections(const Monoid& monoid, int k, int op_cap);

/// max(x, y) ⊕ 1 (addition mod k) with signum (e, e).
SignedOp webb_operation(const Monoid& monoid, int k);

struct GenerationReport {
  std::uint64_t checked = 0;
  std::vector<SignedOp> failures;
  std::uint64_t random_checked = 0;
  std::vector<SignedOp> random_failures;
  bool ok() const { return failures.empty() && random_failures.empty(); }
};

/// Checks that {m^(e,e)} ∪ {id^s} generates every SignedOp up to op_cap, plus
/// `random_count` seeded random ops of arity op_cap + 1.
GenerationReport sheffer_generation_check(const Monoid& monoid, int k, int op_cap, int random_count = 0,
                                          std::uint64_t seed = 0);

struct RelationalGenerationReport {
  std::vector<SRelation> relations;
  std::vector<SignedOp> spol;
  std::vector<SignedOp> extras;  // members of spol that are not trivial projections
  std::size_t trivial_expected = 0;
  bool ok() const { return extras.empty() && spol.size() == trivial_expected; }
};

/// (Δ, ∇, .., ∇), (≤, .., ≤), (≠, .., ≠) over k ≥ 3 (UnsupportedDomain for
/// smaller k): their spol up to op_cap should be exactly the trivial projections.
RelationalGenerationReport relational_generation_check(const Monoid& monoid, int k, int op_cap);
std::vector<SRelation> relational_generators(const Monoid& monoid, int k);

struct MinimalClass {
  PrecloneHandle handle;           // generated by the least member
  std::vector<SignedOp> members;   // enumerated nontrivial ops generating the same preclone
};

struct MinimalReport {
  int op_cap = 0;
  int search_arity = 0;  // min(op_cap, |A|^2·|S|)
  std::size_t candidates = 0;
  std::vector<MinimalClass> minimal;
};

/// Candidate atoms: classes of mutually generating nontrivial ops that
/// generate no strictly smaller nontrivial enumerated op.
MinimalReport minimal_search(const Monoid& monoid, int k, int op_cap);

/// The five Boolean maximal-clone witness relations: {0}, {1}, ≤, ≠, and x⊕y⊕z = u.
std::vector<std::pair<std::string, Relation>> boolean_maximal_witnesses();

struct MaximalCandidate {
  SRelation relation;
  std::vector<std::string> part_labels;  // per s: witness name, "diag", or "empty"
  PrecloneHandle handle;
  std::size_t merged = 1;  // raw candidates with the same fragment
  bool full = false;       // fragment equals every SignedOp up to the cap
};

struct MaximalReport {
  int op_cap = 0;
  std::size_t raw_candidates = 0;
  std::vector<MaximalCandidate> candidates;  // deduplicated by fragment
  /// inclusion[i][j]: fragment i ⊆ fragment j.
  std::vector<std::vector<bool>> inclusion;
  /// Candidates that are proper and not strictly below another candidate.
  std::vector<std::size_t> maximal;
  int expected_count = 9;
};

/// Candidates SPol ρ with every part a diagonal, empty, or a witness relation
/// of the shared arity (1, 2 or 4). UnsupportedDomain unless k = 2.
MaximalReport maximal_candidates(const Monoid& monoid, int k, int op_cap);

/// Ψ(C): generators f^(e,..,e).
PrecloneHandle psi_embed(const Monoid& monoid, int k, std::span<const Operation> clone_generators, int op_cap);
/// Φ(C): {f^(e,..,e)} ∪ {id^s} for groups, every decoration of every
/// generator together with {id^s} otherwise.
PrecloneHandle phi_embed(const Monoid& monoid, int k, std::span<const Operation> clone_generators, int op_cap);
/// Strips signa: the generator tables (or the fragment tables), deduplicated.
std::vector<Operation> phi_inverse(const PrecloneHandle& handle);

/// Images of the handle under every π in `pis` combined with every h in
/// `hs`, deduplicated by fragment, in first-seen order.
std::vector<PrecloneHandle> symmetry_orbit(const PrecloneHandle& handle, std::span<const ValuePermutation> pis,
                                           std::span<const Permutation> hs);

}  // namespace spreclone
