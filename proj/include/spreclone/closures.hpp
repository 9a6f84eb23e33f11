#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spreclone/galois.hpp"
#include "spreclone/monoid.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone {

struct PrecloneOptions {
  int arity_cap = 3;
  /// Extra arity allowed for intermediate terms; nullopt picks 0 for groups
  /// and 2 otherwise.
  std::optional<int> slack;
  /// Stop (unsaturated) once this many members exist at any arity.
  std::size_t member_budget = 200000;
  /// Stop (unsaturated) after this many rule applications.
  std::uint64_t work_budget = 20000000;
  /// For non-group monoids, rerun with one more unit of slack and mark the
  /// levels that did not change as saturated.
  bool confirm_saturation = true;
};

/// A bounded piece of ⟨F⟩: all members found up to the arity cap, in
/// enumeration order (arity, signum, table).
struct PrecloneFragment {
  int domain_size = 0;
  int arity_cap = 0;
  int slack = 0;
  std::vector<SignedOp> members;
  /// saturated[n-1]: level n is complete.
  std::vector<bool> saturated;
  bool budget_exhausted = false;

  bool saturated_at(int arity) const { return arity >= 1 && arity <= arity_cap && saturated[static_cast<std::size_t>(arity - 1)]; }
  std::vector<int> saturated_arities() const;
  bool contains(const SignedOp& f) const;
  std::size_t count_at(int arity) const;
};

/// Worklist closure of F ∪ {id^e} under ζ, τ, Δ, ∇^s, ∘ and superposition
/// f(g_1(x), .., g_p(x)) of a generator f with signum-consistent members,
/// keeping intermediates up to arity_cap + slack. Every member is a genuine
/// element of ⟨F⟩. Throws CapExceeded when k^(cap+slack) exceeds the hard limit.
PrecloneFragment preclone_generate(const Monoid& monoid, int k, std::span<const SignedOp> generators,
                                   const PrecloneOptions& options = {});

struct RelCloneOptions {
  int arity_cap = 3;
  /// Extra arity for intermediates; nullopt means arity_cap.
  std::optional<int> slack;
  std::size_t member_budget = 200000;
};

struct RelCloneFragment {
  int domain_size = 0;
  int arity_cap = 0;
  int slack = 0;
  /// Members up to the arity cap, ordered by arity then canonical order.
  std::vector<SRelation> members;
  bool saturated = false;

  std::vector<SRelation> at_arity(int arity) const;
  bool contains(const SRelation& r) const;
};

/// Worklist closure of Q ∪ {δ^S} under ζ, τ, pr, ×, ∧, μ_v and ⊓^v.
RelCloneFragment relclone_generate(const Monoid& monoid, int k, std::span<const SRelation> relations,
                                   const RelCloneOptions& options = {});

/// Every S-diagonal of arity m, in enumeration order of their specs.
std::vector<SRelation> s_diagonals_all(const Monoid& monoid, int k, int arity);

/// Intersection of the fragment members of ρ's arity that contain ρ.
/// Throws Unsaturated if the fragment did not reach its fixed point.
SRelation gamma_Q(const RelCloneFragment& fragment, const SRelation& rho);

struct TheoremIDiscrepancy {
  SignedOp op;
  bool in_fragment = false;
  bool in_gamma = false;
};

struct TheoremIReport {
  int op_cap = 0;
  int slack = 0;
  std::uint64_t candidates = 0;
  std::uint64_t fragment_members = 0;
  std::uint64_t gamma_members = 0;
  std::vector<int> saturated_arities;
  /// Soundness failures (fragment member outside Γ) and, on saturated
  /// arities, any disagreement.
  std::vector<TheoremIDiscrepancy> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};

TheoremIReport verify_theorem_I(const Monoid& monoid, int k, std::span<const SignedOp> generators, int op_cap,
                                const PrecloneOptions& options = {});

struct TheoremIIRound {
  int op_cap = 0;
  std::size_t spol_size = 0;
  std::size_t sinv_size = 0;
  bool contained = false;              // relclone fragment ⊆ sinv(spol(Q))
  std::vector<SRelation> difference;   // sinv(spol(Q)) minus the fragment
};

struct TheoremIIReport {
  int rel_cap = 0;
  bool fragment_saturated = false;
  std::size_t fragment_size = 0;
  std::vector<TheoremIIRound> rounds;  // one per op cap 1..op_cap
  /// Containment at every cap and an empty difference at the largest one.
  bool ok() const;
};

TheoremIIReport verify_theorem_II(const Monoid& monoid, int k, std::span<const SRelation> relations, int op_cap,
                                  int rel_cap, const RelCloneOptions& options = {});

}  // namespace spreclone
