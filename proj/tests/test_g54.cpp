#include <catch_amalgamated.hpp>

#include <random>

#include "gnk/g54.hpp"

using namespace gnk;
using namespace gnk::h4;

namespace {

Word random_word(std::mt19937& rng, std::size_t max_len, unsigned letters = 4) {
  Word w(rng() % (max_len + 1));
  for (auto& l : w) {
    l = static_cast<Letter>(rng() % letters);
  }
  return w;
}

Word commutator_relator(std::mt19937& rng) {
  auto const& rels = presentation().presentation.relators;
  std::vector<Word> long_rels;
  for (auto const& r : rels) {
    if (r.size() > 2) {
      long_rels.push_back(r);
    }
  }
  return long_rels[rng() % long_rels.size()];
}

}  // namespace

TEST_CASE("cell relators are rotations of H_4 relators") {
  auto const& idx = presentation().index;
  for (auto const& t : cell_types()) {
    CHECK(idx.find(cell_relator(t)).has_value());
    CHECK(t.p == concat(Word{t.s}, reversed(t.q), Word{t.s}));
  }
  CHECK(presentation().presentation.relators.size() == 7);
}

TEST_CASE("corner language") {
  auto const& t1 = cell_types()[0];
  auto f = corner_language_parse(parse("baba"), t1);
  REQUIRE(f);
  CHECK(*f == CornerFactorization{{false, 1}});
  CHECK(print(*opposite_label(parse("baba"), t1)) == "cababc");
  CHECK(print(*opposite_label(parse("cababcbaba"), t1)) == "babacababc");
  CHECK_FALSE(corner_language_parse(parse("ab"), t1));
  auto g = corner_language_parse(parse("cababababc"), t1);
  REQUIRE(g);
  CHECK(*g == CornerFactorization{{true, 2}});

  std::mt19937 rng(51);
  for (auto const& t : cell_types()) {
    for (int i = 0; i < 200; ++i) {
      CornerFactorization h;
      for (int j = 0; j < 3; ++j) {
        int e = static_cast<int>(rng() % 3) + 1;
        h.push_back({j % 2 == 1, rng() % 2 ? e : -e});
      }
      Word u = corner_word(h, t);
      auto back = corner_language_parse(u, t);
      REQUIRE(back);
      REQUIRE(*back == h);
      REQUIRE(*opposite_label(*opposite_label(u, t), t) == u);
    }
  }
}

TEST_CASE("quick obstructions") {
  auto ab = quick_obstruction(parse("ababcdcd"));
  REQUIRE(ab);
  CHECK(ab->kind == "retraction");
  CHECK(quick_obstruction(parse("a"))->kind == "abelianization");
  CHECK_FALSE(quick_obstruction(parse("ababcdcdbabadcdc")));
  CHECK(retractions_verified());
}

TEST_CASE("h4 examples") {
  CHECK(h4_is_trivial(Word{}).verdict == Verdict::trivial);
  CHECK(h4_is_trivial(parse("dd")).verdict == Verdict::trivial);
  CHECK(h4_is_trivial(parse("ababcdcd")).verdict == Verdict::nontrivial);
  for (auto const& r : presentation().presentation.relators) {
    auto res = h4_is_trivial(r);
    INFO(print(r));
    REQUIRE(res.verdict == Verdict::trivial);
    auto chk = check_certificate(presentation().presentation, res.certificate);
    INFO(chk.reason);
    REQUIRE(chk.ok);
  }
}

TEST_CASE("h4 finds products of conjugated relators") {
  std::mt19937 rng(52);
  auto const& p = presentation().presentation;
  for (int t = 0; t < 50; ++t) {
    Word w;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      Word g = random_word(rng, 4);
      Word r = commutator_relator(rng);
      if (rng() % 2) {
        r = reversed(r);
      }
      w = concat(w, reversed(g), r, g);
    }
    w = free_reduce(w);
    auto res = h4_is_trivial(w);
    INFO(print(w) << " nodes " << res.nodes);
    REQUIRE(res.verdict == Verdict::trivial);
    auto chk = check_certificate(p, res.certificate);
    INFO(chk.reason);
    REQUIRE(chk.ok);
  }
}

TEST_CASE("h4 agrees with breadth-first search on short words") {
  std::mt19937 rng(53);
  auto const& p = presentation().presentation;
  std::vector<Word> inputs;
  for (int t = 0; t < 300; ++t) {
    inputs.push_back(free_reduce(random_word(rng, 12)));
  }
  // Trivial words: rotated relator conjugates of length <= 20.
  while (inputs.size() < 500) {
    Word g = random_word(rng, 3);
    Word w = free_reduce(concat(reversed(g), commutator_relator(rng), g));
    w = rotate_left(w, rng() % (w.size() + 1));
    if (w.size() <= 20) {
      inputs.push_back(w);
    }
    inputs.push_back(free_reduce(concat(random_word(rng, 2), random_word(rng, 2))));
  }
  int decided = 0;
  for (auto const& w : inputs) {
    auto res = h4_is_trivial(w);
    // Obstructed words are provably nontrivial; the oracle cannot decide them.
    NaiveSearchResult bfs;
    if (!quick_obstruction(w)) {
      bfs = naive_trivial_search(p, w, 20000, 32);
    }
    INFO(print(w));
    if (bfs.trivial) {
      ++decided;
      REQUIRE(res.verdict == Verdict::trivial);
    }
    REQUIRE_FALSE((res.verdict == Verdict::nontrivial && bfs.trivial));
    if (res.verdict == Verdict::trivial) {
      REQUIRE(check_certificate(p, res.certificate).ok);
    }
  }
  CHECK(decided > 10);
}

TEST_CASE("G_5^4 word problem") {
  using g54::wp_g54;
  CHECK(wp_g54(g54::parse("abcdeabcde")).verdict == Verdict::trivial);
  CHECK(wp_g54(g54::parse("e")).verdict == Verdict::nontrivial);
  CHECK(wp_g54(Word{}).verdict == Verdict::trivial);

  std::mt19937 rng(54);
  auto const& p = gk1k_presentation(4);
  for (int t = 0; t < 100; ++t) {
    Word u = random_word(rng, 10, 5);
    Word v = random_word(rng, 10, 5);
    Word const& r = p.relators[rng() % p.relators.size()];
    auto a = wp_g54(concat(u, v));
    auto b = wp_g54(concat(u, r, v));
    INFO(g54::print(u) << " | " << g54::print(v));
    REQUIRE(a.verdict == b.verdict);
    if (a.elimination) {
      REQUIRE(check_certificate(p, *a.elimination).ok);
    }
  }
}
