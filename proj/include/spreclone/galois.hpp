#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "spreclone/monoid.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone {

/// A failed inclusion f(ρ_{s_1 s}, .., ρ_{s_n s}) ⊆ ρ_s: the columns chosen
/// from the parts and their image, which lies outside ρ_s.
struct PreservationWitness {
  Elem violated_s = 0;
  int relation_arity = 0;
  std::vector<TupleIndex> columns;
  TupleIndex image = 0;
};

std::optional<PreservationWitness> find_violation(const Monoid& monoid, const SignedOp& f, const SRelation& rho);
/// f S-preserves ρ. Throws DomainMismatch on different base sets.
bool preserves(const Monoid& monoid, const SignedOp& f, const SRelation& rho);

/// Classical f(σ, .., σ) ⊆ σ.
bool preserves_classical(const Operation& f, const Relation& sigma);

struct RelationPair {
  Relation source;
  Relation target;
};
/// f(source, .., source) ⊆ target.
bool preserves_pair(const Operation& f, const RelationPair& pair);

/// χ^λ together with its columns κ_1..κ_n (codec indices over A^{k^n}).
struct ChiRelation {
  SRelation relation;
  std::vector<TupleIndex> columns;
};
/// Throws ArityCapExceeded when k^(k^n) exceeds the hard table limit.
ChiRelation chi(const Monoid& monoid, int k, const Signum& lambda);

struct ClosureReport {
  SRelation result;
  /// Number of steps ρ^(i) -> ρ^(i+1) that added something.
  int iterations = 0;
};

enum class GammaStrategy {
  SemiNaive,  // each step only combines tuples involving the last step's additions
  Naive,      // each step recombines the whole previous iterate
};

/// Γ_F(ρ), the least S-relation above ρ invariant under every member of F.
ClosureReport gamma_closure(const Monoid& monoid, std::span<const SignedOp> generators, const SRelation& rho,
                            GammaStrategy strategy = GammaStrategy::SemiNaive);

struct MembershipResult {
  bool member = false;
  /// Present when member is false.
  std::optional<PreservationWitness> witness;
};

enum class MembershipMode {
  Column,        // g(κ_1..κ_n) ∈ Γ_F(χ^λ)_e
  Preservation,  // g S-preserves Γ_F(χ^λ) checked for every s and column choice
};

/// g ∈ ⟨F⟩ decided through Γ_F(χ^sgn(g)).
MembershipResult membership(const Monoid& monoid, const SignedOp& g, std::span<const SignedOp> generators,
                            MembershipMode mode = MembershipMode::Column);

/// Membership oracle for a fixed generator set, caching Γ_F(χ^λ) per signum.
/// Safe to query concurrently.
class MembershipOracle {
 public:
  MembershipOracle(Monoid monoid, int k, std::vector<SignedOp> generators);

  const Monoid& monoid() const { return monoid_; }
  int domain_size() const { return k_; }
  const std::vector<SignedOp>& generators() const { return generators_; }

  MembershipResult test(const SignedOp& g) const;
  bool contains(const SignedOp& g) const { return test(g).member; }
  /// Γ_F(χ^λ), computed once per λ.
  const SRelation& gamma_chi(const Signum& lambda) const;

 private:
  Monoid monoid_;
  int k_;
  std::vector<SignedOp> generators_;
  mutable std::mutex mutex_;
  mutable std::map<Signum, std::unique_ptr<SRelation>> cache_;
};

/// Default ceiling on the number of candidates spol/sinv will enumerate.
inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 24;

/// Every SignedOp of arity 1..op_cap preserving all of Q, in enumeration
/// order. Throws CapExceeded when the candidate count exceeds `limit`.
std::vector<SignedOp> spol(const Monoid& monoid, int k, std::span<const SRelation> relations, int op_cap,
                           std::uint64_t limit = kDefaultEnumerationLimit);

/// Number of S-relations of arity m, or 0 when above 2^63.
std::uint64_t count_s_relations(std::size_t monoid_size, int k, int arity);
/// Visits every S-relation of the arity: parts in element order, each part
/// ordered by its member bitmask, the first part most significant.
void for_each_s_relation(std::size_t monoid_size, int k, int arity, const std::function<bool(const SRelation&)>& visit);
/// Every S-relation of arity 1..rel_cap invariant under all of F.
std::vector<SRelation> sinv(const Monoid& monoid, int k, std::span<const SignedOp> generators, int rel_cap,
                            std::uint64_t limit = kDefaultEnumerationLimit);

/// f° ∈ ⟨F°⟩ as a classical clone, via the trivial-monoid specialization.
bool underlying_clone_membership(const Operation& f, std::span<const SignedOp> generators);

/// { f° : f ∈ F, Sgn(f) = {s} }, sorted and deduplicated.
std::vector<Operation> s_part(std::span<const SignedOp> ops, Elem s);

/// An op of the set together with a minor of it (arity ≤ cap) missing from the set.
struct MinorViolation {
  Operation source;
  std::vector<int> sigma;  // argument i of `source` reads variable sigma[i] of the minor
  Operation minor;
};
/// Checks that the set contains h(x_1..x_m) = f(x_σ(1)..x_σ(n)) for every
/// member f and every σ into m ≤ cap variables.
std::optional<MinorViolation> minor_closure_violation(std::span<const Operation> ops, int cap);

/// The e-part contains the projections and is closed under ζ, τ, Δ, ∇ and ∘
/// whenever results stay within arity `cap` (a clone, restricted to the fragment).
bool e_part_is_clone(const Monoid& monoid, std::span<const SignedOp> ops, int cap);

/// pr_z(Γ_F(χ^λ)) for the listing signum λ of ρ and the rows z matching
/// ρ's columns; equals ρ whenever ρ is invariant under F.
SRelation reconstruct_from_chi(const Monoid& monoid, std::span<const SignedOp> generators, const SRelation& rho);

}  // namespace spreclone
