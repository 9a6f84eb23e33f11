#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "spreclone/closures.hpp"
#include "spreclone/error.hpp"
#include "spreclone/galois.hpp"
#include "spreclone/lattice_tools.hpp"

using namespace spreclone;
using spreclone::testing::leq;
using spreclone::testing::leq_geq;
using spreclone::testing::op;
using spreclone::testing::random_op;
using spreclone::testing::random_s_relation;
using spreclone::testing::rel;

namespace {

const Monoid kZ2 = Monoid::z2();

SignedOp not_minus() { return op(kZ2, 2, "-", {1, 0}); }
SignedOp not_plus() { return op(kZ2, 2, "+", {1, 0}); }

}  // namespace

TEST_CASE("preservation examples") {
  const auto r = leq_geq();
  CHECK(preserves(kZ2, op(kZ2, 2, "+,+", {0, 0, 0, 1}), r));
  CHECK_FALSE(preserves(kZ2, not_plus(), r));
  CHECK(preserves(kZ2, not_minus(), r));
  const auto w = find_violation(kZ2, not_plus(), r);
  REQUIRE(w.has_value());
  CHECK(w->violated_s == 0);
  CHECK_FALSE(r.part(0).contains(w->image));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto q = random_s_relation(rng, Monoid::shat(), 2, 2);
    const auto p = projection(Monoid::shat(), 2, 3, 1, Signum{2, 0, 1});
    CHECK(preserves(Monoid::shat(), p, q));
  }
  CHECK_THROWS_AS(preserves(kZ2, not_plus(), SRelation::uniform(Relation::full(3, 1), 2)), Error);
}

TEST_CASE("constant unit signum reduces to classical preservation") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_op(rng, kZ2, 2, 2);
    const auto e = SignedOp(f.table(), Signum{0, 0});
    const auto sigma = spreclone::testing::random_relation(rng, 2, 2, 0.5);
    CHECK(preserves(kZ2, e, SRelation::uniform(sigma, 2)) == preserves_classical(f.table(), sigma));
  }
  CHECK(preserves_classical(Operation::projection(2, 3, 2), leq()));
  CHECK_FALSE(preserves_classical(Operation(2, 1, {1, 0}), leq()));
  CHECK(preserves_pair(Operation(2, 1, {1, 0}), RelationPair{leq(), Relation::full(2, 2)}));
}

TEST_CASE("chi relations") {
  const auto c = chi(kZ2, 2, kZ2.parse_signum("+,-"));
  CHECK(c.relation.arity() == 4);
  CHECK(c.columns == std::vector<TupleIndex>{encode(std::vector<Value>{0, 0, 1, 1}, 2), encode(std::vector<Value>{0, 1, 0, 1}, 2)});
  CHECK(c.relation.part(0).members() == std::vector<TupleIndex>{c.columns[0]});
  CHECK(c.relation.part(1).members() == std::vector<TupleIndex>{c.columns[1]});

  const auto u = chi(kZ2, 3, Signum{0});
  CHECK(u.relation.arity() == 3);
  CHECK(u.relation.part(0).members() == std::vector<TupleIndex>{encode(std::vector<Value>{0, 1, 2}, 3)});
  CHECK(u.relation.part(1).empty());

  CHECK(listing(c.relation).signum == Signum{0, 1});
  CHECK_THROWS_AS(chi(kZ2, 2, Signum{0, 0, 0, 0, 0}), Error);
}

TEST_CASE("gamma closure") {
  const auto rho = chi(kZ2, 2, Signum{0}).relation;
  CHECK(gamma_closure(kZ2, std::vector<SignedOp>{}, rho).result == rho);
  const std::vector<SignedOp> F{not_minus()};
  const auto g = gamma_closure(kZ2, F, rho);
  CHECK(g.result.part(0) == rel(2, 2, {{0, 1}}));
  CHECK(g.result.part(1) == rel(2, 2, {{1, 0}}));
  CHECK(gamma_closure(kZ2, F, g.result).result == g.result);
}

TEST_CASE("semi-naive and naive gamma agree") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 15; ++i) {
    const auto& m = i % 2 == 0 ? kZ2 : Monoid::sprime();
    std::vector<SignedOp> F{random_op(rng, m, 2, 2), random_op(rng, m, 2, 1)};
    const auto rho = random_s_relation(rng, m, 2, 3, 0.15);
    const auto a = gamma_closure(m, F, rho, GammaStrategy::SemiNaive);
    const auto b = gamma_closure(m, F, rho, GammaStrategy::Naive);
    CHECK(a.result == b.result);
    CHECK(a.iterations == b.iterations);
    CHECK(rho.is_subset_of(a.result));
    for (const auto& f : F) CHECK(preserves(m, f, a.result));
  }
}

TEST_CASE("membership") {
  const std::vector<SignedOp> F{not_minus()};
  CHECK(membership(kZ2, not_minus(), F).member);
  CHECK(membership(kZ2, op(kZ2, 2, "+", {0, 1}), F).member);
  const auto r = membership(kZ2, not_plus(), F);
  CHECK_FALSE(r.member);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->violated_s == 0);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    std::vector<SignedOp> G{random_op(rng, kZ2, 2, 2)};
    const auto g = random_op(rng, kZ2, 2, 2);
    CHECK(membership(kZ2, g, G, MembershipMode::Column).member ==
          membership(kZ2, g, G, MembershipMode::Preservation).member);
  }

  MembershipOracle oracle(kZ2, 2, F);
  CHECK(oracle.contains(not_minus()));
  CHECK_FALSE(oracle.contains(not_plus()));
  CHECK(&oracle.gamma_chi(Signum{1}) == &oracle.gamma_chi(Signum{1}));
}

TEST_CASE("spol and sinv") {
  const std::vector<SRelation> none;
  CHECK(spol(kZ2, 2, none, 2).size() == 8 + 64);

  const std::vector<SRelation> Q{leq_geq()};
  const auto unary = spol(kZ2, 2, Q, 1);
  const std::vector<SignedOp> expected{op(kZ2, 2, "+", {0, 0}), op(kZ2, 2, "+", {0, 1}), op(kZ2, 2, "+", {1, 1}),
                                       op(kZ2, 2, "-", {0, 0}), op(kZ2, 2, "-", {1, 0}), op(kZ2, 2, "-", {1, 1})};
  CHECK(unary == expected);

  const auto everything = all_signed_ops(kZ2, 2, 2);
  const auto inv = sinv(kZ2, 2, everything, 2);
  std::vector<SRelation> diagonals;
  for (int m = 1; m <= 2; ++m)
    for (auto& d : s_diagonals_all(kZ2, 2, m)) diagonals.push_back(d);
  CHECK(inv.size() == diagonals.size());
  for (const auto& d : diagonals) CHECK(std::find(inv.begin(), inv.end(), d) != inv.end());

  CHECK(count_s_relations(2, 2, 2) == 256);
  std::size_t n = 0;
  for_each_s_relation(2, 2, 1, [&](const SRelation&) {
    ++n;
    return true;
  });
  CHECK(n == 16);
  CHECK_THROWS_AS(spol(kZ2, 2, Q, 3, 100), Error);
}

TEST_CASE("bounded galois laws") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 5; ++i) {
    std::vector<SignedOp> F{random_op(rng, kZ2, 2, 2)};
    const auto inv = sinv(kZ2, 2, F, 2);
    const auto pol = spol(kZ2, 2, inv, 2);
    for (const auto& f : F) CHECK(std::binary_search(pol.begin(), pol.end(), f));

    std::vector<SRelation> Q{random_s_relation(rng, kZ2, 2, 2)};
    const auto p = spol(kZ2, 2, Q, 2);
    const auto back = sinv(kZ2, 2, p, 2);
    CHECK(std::find(back.begin(), back.end(), Q[0]) != back.end());
  }
}

TEST_CASE("underlying clone membership") {
  const std::vector<SignedOp> monotone{op(kZ2, 2, "+,+", {0, 0, 0, 1}), op(kZ2, 2, "+,+", {0, 1, 1, 1}),
                                       op(kZ2, 2, "+", {0, 0}), op(kZ2, 2, "-", {1, 1})};
  CHECK_FALSE(underlying_clone_membership(Operation(2, 1, {1, 0}), monotone));
  CHECK(underlying_clone_membership(Operation(2, 2, {0, 0, 0, 1}), monotone));
  CHECK(underlying_clone_membership(Operation::projection(2, 2, 1), monotone));
  CHECK(underlying_clone_membership(Operation(2, 3, {0, 0, 0, 1, 0, 1, 1, 1}), monotone));
}

TEST_CASE("fragment structure of spol outputs") {
  const std::vector<SRelation> Q{leq_geq()};
  const auto pol = spol(kZ2, 2, Q, 2);
  for (Elem s = 0; s < 2; ++s) CHECK_FALSE(minor_closure_violation(s_part(pol, s), 2).has_value());
  CHECK(e_part_is_clone(kZ2, pol, 2));

  const std::vector<Operation> broken{Operation(2, 2, {1, 0, 0, 0})};
  const auto v = minor_closure_violation(broken, 2);
  REQUIRE(v.has_value());
  CHECK(v->minor.arity() <= 2);

  const auto trivial = trivial_projections(kZ2, 2, 2);
  const auto e = s_part(trivial, 0);
  CHECK(e.size() == 3);
}

TEST_CASE("reconstruction through chi") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 10; ++i) {
    std::vector<SignedOp> F{random_op(rng, kZ2, 2, 2)};
    const auto inv = sinv(kZ2, 2, F, 2);
    for (const auto& rho : inv) {
      if (listing(rho).columns.size() > 3) continue;
      CHECK(reconstruct_from_chi(kZ2, F, rho) == rho);
    }
  }
}
