#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "spreclone/cli.hpp"
#include "spreclone/error.hpp"
#include "spreclone/io.hpp"

using namespace spreclone;
using spreclone::testing::leq_geq;
using spreclone::testing::op;

namespace {

const Monoid kZ2 = Monoid::z2();
const std::string kData = SPRECLONE_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spreclone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("monoid files round-trip") {
  for (const auto& name : Monoid::builtin_names()) {
    const auto m = *Monoid::builtin(name);
    CHECK(io::monoid_from_json(io::to_json(m)) == m);
  }
  CHECK(io::load_monoid("sprime") == Monoid::sprime());
  CHECK_THROWS_AS(io::load_monoid("/nonexistent/monoid.json"), Error);
  const auto bad = io::Json::parse(R"({"elements":["a","b"],"unit":"a","table":[["a","a"],["b","b"]]})");
  CHECK_THROWS_AS(io::monoid_from_json(bad), Error);
}

TEST_CASE("op and relation files round-trip") {
  const auto f = op(kZ2, 2, "+,-", {1, 0, 0, 1});
  CHECK(io::op_from_json(io::to_json(f, kZ2), kZ2) == f);
  const auto r = leq_geq();
  CHECK(io::relation_from_json(io::to_json(r, kZ2), kZ2) == r);
  const auto sparse = io::Json::parse(R"({"domain_size":2,"arity":1,"parts":{"-":[[1]]}})");
  const auto s = io::relation_from_json(sparse, kZ2);
  CHECK(s.part(0).empty());
  CHECK(s.part(1).count() == 1);
  const auto bad_signum = io::Json::parse(R"({"domain_size":2,"arity":1,"signum":["x"],"values":[0,1]})");
  CHECK_THROWS_AS(io::op_from_json(bad_signum, kZ2), Error);
  const auto short_signum = io::Json::parse(R"({"domain_size":2,"arity":2,"signum":["+"],"values":[0,1,1,0]})");
  CHECK_THROWS_AS(io::op_from_json(short_signum, kZ2), Error);
  CHECK(io::ops_from_json(io::Json::array({io::to_json(f, kZ2), io::to_json(f, kZ2)}), kZ2).size() == 2);
}

TEST_CASE("check subcommand") {
  auto r = run({"check", "--monoid", "z2", "--op", kData + "/not_minus.json", "--rel", kData + "/leq_geq.json",
                "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("preserved") != std::string::npos);
  r = run({"check", "--op", kData + "/not_plus.json", "--rel", kData + "/leq_geq.json"});
  CHECK(r.code == 1);
  const auto j = io::Json::parse(r.out);
  CHECK(j["checks"][0]["witness"]["violated_s"] == "+");
}

TEST_CASE("member subcommand") {
  const auto r = run({"member", "--monoid", "z2", "--gen", kData + "/not_minus.json", "--op", kData + "/not_plus.json"});
  CHECK(r.code == 1);
  const auto j = io::Json::parse(r.out);
  CHECK(j["results"][0].contains("witness"));
  const auto ok = run({"member", "--gen", kData + "/not_minus.json", "--op", kData + "/not_minus.json"});
  CHECK(ok.code == 0);
}

TEST_CASE("chi subcommand") {
  const auto r = run({"chi", "--monoid", "z2", "--signum", "+,-"});
  REQUIRE(r.code == 0);
  const auto j = io::Json::parse(r.out);
  const auto rel = io::relation_from_json(j["relation"], kZ2);
  CHECK(rel.arity() == 4);
  CHECK(rel.part(0).tuples() == std::vector<std::vector<Value>>{{0, 0, 1, 1}});
  CHECK(rel.part(1).tuples() == std::vector<std::vector<Value>>{{0, 1, 0, 1}});
}

TEST_CASE("output is deterministic and round-trips") {
  const std::vector<std::string> args{"spol", "--rel", kData + "/leq_geq.json", "--op-cap", "2"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = io::Json::parse(a.out);
  const auto ops = io::ops_from_json(j["members"], kZ2);
  CHECK(ops.size() == j["count"].get<std::size_t>());

  const auto d = run({"diagonals", "--rel-cap", "2"});
  const auto dj = io::Json::parse(d.out);
  CHECK(io::relations_from_json(dj["levels"][1]["members"], kZ2).size() == 3);

  const auto g = run({"gen-relclone", "--rel", kData + "/leq_geq.json", "--rel-cap", "2"});
  CHECK(g.code == 0);
  const auto gj = io::Json::parse(g.out);
  CHECK(gj["saturated_arities"] == io::Json::array({1, 2}));
  CHECK(io::relations_from_json(gj["members"], kZ2).size() == gj["count"].get<std::size_t>());
}

TEST_CASE("property subcommands report through the exit code") {
  CHECK(run({"verify-thm1", "--gen", kData + "/not_minus.json", "--op-cap", "2"}).code == 0);
  CHECK(run({"verify-thm2", "--rel", kData + "/leq_geq.json", "--op-cap", "3", "--rel-cap", "2"}).code == 0);
  CHECK(run({"sheffer", "--op-cap", "2", "--random", "3"}).code == 0);
  CHECK(run({"embed", "psi", "--clone", kData + "/boolean_clone.json", "--op-cap", "2"}).code == 0);
  CHECK(run({"orbit", "--gen", kData + "/and_plus.json", "--op-cap", "2"}).code == 0);
  const auto dual = run({"dual", "--pi", "1,0", "--rel", kData + "/leq_geq.json"});
  CHECK(dual.code == 0);
  const auto dj = io::Json::parse(dual.out);
  CHECK(io::relation_from_json(dj["relations"][0], kZ2) == pi_dual(leq_geq(), ValuePermutation{1, 0}));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"check", "--op", kData + "/not_minus.json"}).code == 2);
  const auto cap = run({"diagonals", "--k", "4", "--rel-cap", "11"});
  CHECK(cap.code == 2);
  CHECK(cap.err.find("2^20") != std::string::npos);
  CHECK(run({"chi", "--monoid", "nosuch", "--signum", "+"}).code == 2);
  CHECK(run({"embed", "tau", "--clone", kData + "/boolean_clone.json"}).code == 2);
  CHECK(run({"check", "--help"}).code == 0);
}
