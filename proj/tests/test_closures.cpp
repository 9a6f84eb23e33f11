#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "spreclone/closures.hpp"
#include "spreclone/error.hpp"
#include "spreclone/galois.hpp"
#include "spreclone/lattice_tools.hpp"

using namespace spreclone;
using spreclone::testing::leq_geq;
using spreclone::testing::op;
using spreclone::testing::random_op;
using spreclone::testing::rel;

namespace {

const Monoid kZ2 = Monoid::z2();

std::vector<SRelation> diagonals_up_to(const Monoid& m, int k, int cap) {
  std::vector<SRelation> out;
  for (int a = 1; a <= cap; ++a)
    for (auto& d : s_diagonals_all(m, k, a)) out.push_back(std::move(d));
  return out;
}

bool same_set(std::vector<SRelation> a, std::vector<SRelation> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TEST_CASE("empty generator set yields the trivial projections") {
  for (const auto& name : {"z2", "sprime"}) {
    const auto m = *Monoid::builtin(name);
    PrecloneOptions options;
    options.arity_cap = 3;
    const auto frag = preclone_generate(m, 2, std::vector<SignedOp>{}, options);
    CHECK(frag.members == trivial_projections(m, 2, 3));
    CHECK(frag.saturated_arities() == std::vector<int>{1, 2, 3});
  }
}

TEST_CASE("negation with the odd signum") {
  const std::vector<SignedOp> F{op(kZ2, 2, "-", {1, 0})};
  PrecloneOptions options;
  options.arity_cap = 2;
  const auto frag = preclone_generate(kZ2, 2, F, options);
  std::vector<SignedOp> unary;
  for (const auto& f : frag.members)
    if (f.arity() == 1) unary.push_back(f);
  CHECK(unary == std::vector<SignedOp>{op(kZ2, 2, "+", {0, 1}), op(kZ2, 2, "-", {1, 0})});
  for (const auto& f : frag.members) CHECK(membership(kZ2, f, F).member);
}

TEST_CASE("the Sheffer pair generates every binary signed op") {
  const std::vector<SignedOp> F{op(kZ2, 2, "+,+", {1, 0, 0, 0}), op(kZ2, 2, "-", {0, 1})};
  PrecloneOptions options;
  options.arity_cap = 2;
  const auto frag = preclone_generate(kZ2, 2, F, options);
  CHECK(frag.members.size() == 72);
}

TEST_CASE("term closure is sound against the chi oracle") {
  std::mt19937_64 rng(31);
  for (const auto& name : {"z2", "sprime", "shat"}) {
    const auto m = *Monoid::builtin(name);
    for (int i = 0; i < 3; ++i) {
      std::vector<SignedOp> F{random_op(rng, m, 2, 2)};
      PrecloneOptions options;
      options.arity_cap = 2;
      const auto frag = preclone_generate(m, 2, F, options);
      MembershipOracle oracle(m, 2, F);
      for (const auto& f : frag.members) CHECK(oracle.contains(f));
    }
  }
}

TEST_CASE("term closure matches chi membership at a small cap") {
  const std::vector<SignedOp> F{op(kZ2, 2, "-", {1, 0})};
  const auto report = verify_theorem_I(kZ2, 2, F, 2);
  CHECK(report.ok());
  CHECK(report.candidates == 72);
  CHECK(report.fragment_members == report.gamma_members);

  const auto trivial = verify_theorem_I(kZ2, 2, trivial_projections(kZ2, 2, 2), 2);
  CHECK(trivial.ok());
  CHECK(trivial.gamma_members == trivial_projections(kZ2, 2, 2).size());
}

TEST_CASE("relational clone of the empty set is the diagonals") {
  RelCloneOptions options;
  options.arity_cap = 2;
  const auto a = relclone_generate(kZ2, 2, std::vector<SRelation>{}, options);
  CHECK(a.saturated);
  CHECK(same_set(a.members, diagonals_up_to(kZ2, 2, 2)));
  const std::vector<SRelation> d{delta_S(kZ2, 2)};
  CHECK(relclone_generate(kZ2, 2, d, options).members == a.members);
}

TEST_CASE("relational clone contains index translates") {
  RelCloneOptions options;
  options.arity_cap = 2;
  const std::vector<SRelation> Q{leq_geq()};
  const auto frag = relclone_generate(kZ2, 2, Q, options);
  CHECK(frag.contains(leq_geq()));
  CHECK(frag.contains(mu(kZ2, leq_geq(), 1)));
  for (const auto& r : frag.members) CHECK(r.arity() <= 2);
  CHECK(frag.at_arity(2).size() + frag.at_arity(1).size() == frag.members.size());
}

TEST_CASE("diagonal enumeration") {
  CHECK(s_diagonals_all(kZ2, 2, 2).size() == 3);
  const auto sp = Monoid::sprime();
  const auto unary = s_diagonals_all(sp, 2, 1);
  CHECK(unary.size() == 3);
  for (const auto& d : unary) CHECK(is_s_diagonal(sp, d));
  const auto binary = s_diagonals_all(sp, 2, 2);
  CHECK(std::find(binary.begin(), binary.end(), delta_S(sp, 2)) != binary.end());
}

TEST_CASE("smallest member of the relational clone above a relation") {
  RelCloneOptions options;
  options.arity_cap = 2;
  const auto frag = relclone_generate(kZ2, 2, std::vector<SRelation>{}, options);
  const SRelation r({rel(2, 2, {{0, 1}}), Relation(2, 2)});
  CHECK(gamma_Q(frag, r) == SRelation::uniform(Relation::full(2, 2), 2));
  CHECK(gamma_Q(frag, delta_S(kZ2, 2)) == delta_S(kZ2, 2));
  CHECK(r.is_subset_of(gamma_Q(frag, r)));
}

TEST_CASE("relational clone of the poset relation matches sinv of spol") {
  const std::vector<SRelation> Q{leq_geq()};
  const auto report = verify_theorem_II(kZ2, 2, Q, 3, 2);
  CHECK(report.ok());
  REQUIRE(report.rounds.size() == 3);
  CHECK(report.rounds.back().difference.empty());

  const auto empty = verify_theorem_II(kZ2, 2, std::vector<SRelation>{}, 2, 2);
  CHECK(empty.ok());
}
