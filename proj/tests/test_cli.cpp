#include <catch_amalgamated.hpp>

#include "gnk/cli.hpp"

using namespace gnk;
using namespace gnk::cli;

namespace {

Report go(std::string sub, std::string group, std::vector<std::string> words,
          bool trace = false) {
  Request r;
  r.subcommand = std::move(sub);
  r.group = std::move(group);
  r.words = std::move(words);
  r.trace = trace;
  return run(r);
}

}  // namespace

TEST_CASE("present") {
  Request r;
  r.subcommand = "present";
  r.n = 3;
  r.k = 2;
  auto rep = run(r);
  CHECK(rep.body["generators"].size() == 3);
  CHECK(rep.exit_code == 0);
  r.n = 4;
  r.k = 3;
  CHECK(run(r).body["counts"]["tetrahedron"] == 12);
}

TEST_CASE("word problems") {
  auto g43 = go("wp", "g43", {"dabcdabc"}, true);
  CHECK(g43.body["verdict"] == "Trivial");
  CHECK(g43.body["certificate"]["checked"] == true);
  CHECK(go("wp", "g43", {"dbd"}).body["verdict"] == "NonTrivial");

  auto h4 = go("wp", "h4", {"ababcdcdbabadcdc"}, true);
  CHECK(h4.body["verdict"] == "Trivial");
  CHECK(h4.body["certificate"]["checked"] == true);
  CHECK(go("wp", "h4", {"ababcdcd"}).body["verdict"] == "NonTrivial");

  auto g54 = go("wp", "g54", {"b1b2b3b4b5b1b2b3b4b5"}, true);
  CHECK(g54.body["verdict"] == "Trivial");
  CHECK(g54.body["elimination"]["checked"] == true);
  CHECK(go("wp", "g54", {"b5"}).body["verdict"] == "NonTrivial");
  CHECK(go("wp", "h3", {"abba"}).body["verdict"] == "Trivial");
}

TEST_CASE("conjugacy") {
  auto rep = go("conj", "g43", {"abc", "cba"});
  CHECK(rep.body["verdict"] == "Conjugate");
  CHECK(rep.body["witness"] == "d");
  auto no = go("conj", "g43", {"a", "b"});
  CHECK(no.body["verdict"] == "NotConjugate");
  CHECK(no.body["certificate"]["kind"] == "quotient");
}

TEST_CASE("other subcommands") {
  Request r;
  r.subcommand = "reduce-h";
  r.words = {"dabcd"};
  CHECK(run(r).body["witness"] == "cba");
  r.subcommand = "index-map";
  r.words = {"dbd"};
  CHECK(run(r).body["witness"] == "c00 c01");
  CHECK(go("amalgam-nf", "", {"dabcd"}).body["witness"] == "cba");
  auto st = go("stallings", "", {"x", "yzY"});
  CHECK(st.body["rank"] == 2);
  CHECK(render(st, Format::dot).find("digraph") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(go("wp", "g99", {"a"}), UsageError);
  CHECK_THROWS_AS(go("wp", "g43", {"aq"}), UsageError);
  CHECK_THROWS_AS(go("frobnicate", "", {}), UsageError);
  Request r;
  r.subcommand = "conj";
  r.group = "g43";
  r.words = {"a", "b"};
  r.bound = 0;
  CHECK_THROWS_AS(run(r), UsageError);
  CHECK_THROWS_AS(render(go("wp", "g43", {"a"}), Format::dot), UsageError);
}

TEST_CASE("output is deterministic") {
  auto a = render(go("conj", "g43", {"abcd", "dabc"}, true), Format::json);
  auto b = render(go("conj", "g43", {"abcd", "dabc"}, true), Format::json);
  CHECK(a == b);
  CHECK(render(go("wp", "g43", {"abc"}), Format::text).find("verdict: NonTrivial") == 0);
}
