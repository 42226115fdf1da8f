#include <catch_amalgamated.hpp>

#include <random>

#include "gnk/indexmap.hpp"

using namespace gnk;

namespace {

Word wk(std::string_view s, int k) {
  return parse_word(s, Alphabet::letters(static_cast<std::size_t>(k + 1)));
}

std::string pk(Word const& w, int k) {
  return print_word(w, Alphabet::letters(static_cast<std::size_t>(k + 1)));
}

Word random_word(std::mt19937& rng, int k, std::size_t max_len) {
  Word w(rng() % (max_len + 1));
  for (auto& l : w) {
    l = static_cast<Letter>(rng() % static_cast<unsigned>(k + 1));
  }
  return w;
}

// Index of one occurrence computed straight from the counting definition.
std::string index_by_hand(Word const& prefix, int k) {
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (Letter l : prefix) {
    if (l < k) {
      counts[l] ^= 1;
    }
  }
  if (counts.back() == 1) {
    for (auto& c : counts) {
      c ^= 1;
    }
  }
  std::string s;
  for (int j = 0; j + 1 < k; ++j) {
    s += counts[static_cast<std::size_t>(j)] ? '1' : '0';
  }
  return s;
}

}  // namespace

TEST_CASE("index map examples") {
  CHECK(index_map(wk("dbd", 3), 3).str() == "c00 c01");
  CHECK(index_sequence(wk("dabcd", 3), 3).str() == "c00 c00");
  CHECK(index_map(wk("dabcd", 3), 3).empty());
  CHECK(index_map(wk("abc", 3), 3).empty());
  CHECK(index_map(wk("e", 4), 4).str() == "c000");
}

TEST_CASE("index sequence matches the counting definition") {
  std::mt19937 rng(31);
  for (int k = 2; k <= 5; ++k) {
    for (int t = 0; t < 200; ++t) {
      Word w = random_word(rng, k, 20);
      auto seq = index_sequence(w, k);
      std::size_t occ = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == k) {
          Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          REQUIRE(seq.letters.at(occ++).str() == index_by_hand(prefix, k));
        }
      }
      REQUIRE(occ == seq.size());
    }
  }
}

TEST_CASE("index map is invariant under relators") {
  std::mt19937 rng(32);
  for (int k : {3, 4}) {
    auto const& p = gk1k_presentation(k);
    for (int t = 0; t < 1000; ++t) {
      Word u = random_word(rng, k, 12);
      Word v = random_word(rng, k, 12);
      Word const& r = p.relators[rng() % p.relators.size()];
      REQUIRE(index_map(concat(u, r, v), k) == index_map(concat(u, v), k));
    }
  }
}

TEST_CASE("elimination examples") {
  auto e = eliminate_last_letter(wk("dabcd", 3), 3);
  CHECK(pk(e.result, 3) == "cba");
  CHECK(check_certificate(gk1k_presentation(3), e.certificate).ok);

  auto f = eliminate_last_letter(wk("dababd", 3), 3);
  CHECK(pk(f.result, 3) == "cbabac");
  CHECK(check_certificate(gk1k_presentation(3), f.certificate).ok);

  CHECK(eliminate_last_letter(wk("dd", 3), 3).result.empty());

  try {
    eliminate_last_letter(wk("dbd", 3), 3);
    FAIL("expected an obstruction");
  } catch (NotInH const& err) {
    CHECK(err.obstruction().str() == "c00 c01");
  }
}

TEST_CASE("elimination on random f-trivial words") {
  std::mt19937 rng(33);
  for (int k = 2; k <= 5; ++k) {
    int done = 0;
    while (done < 100) {
      Word w = random_word(rng, k, 24);
      if (!index_map(w, k).empty()) {
        continue;
      }
      ++done;
      auto e = eliminate_last_letter(w, k);
      REQUIRE(std::find(e.result.begin(), e.result.end(), k) == e.result.end());
      REQUIRE(e.certificate.start == w);
      REQUIRE(e.certificate.end == e.result);
      auto chk = check_certificate(gk1k_presentation(k), e.certificate);
      INFO(chk.reason);
      REQUIRE(chk.ok);
    }
  }
}

TEST_CASE("H membership") {
  auto no = h_membership(wk("dbd", 3), 3);
  CHECK_FALSE(no.in_h);
  CHECK(no.obstruction.str() == "c00 c01");

  auto yes = h_membership(wk("dabcd", 3), 3);
  CHECK(yes.in_h);
  CHECK(pk(yes.rewritten, 3) == "cba");

  CHECK_FALSE(h_membership(wk("e", 4), 4).in_h);
}

TEST_CASE("sign states") {
  CHECK(tilde_membership(Word{}, 3));
  CHECK(tilde_membership(wk("aa", 3), 3));
  CHECK_FALSE(tilde_membership(wk("a", 3), 3));
  CHECK(sign_state(wk("a", 3), 3).signs() == std::vector<int>{-1, 1, 1});
  // b_k flips the normalised coordinate, i.e. every other one.
  CHECK(sign_state(wk("c", 3), 3).signs() == std::vector<int>{-1, -1, 1});
  CHECK(tilde_membership(wk("d", 3), 3));
  CHECK(tilde_membership(wk("dd", 3), 3));
}

TEST_CASE("sign state is a monoid action and defines a subgroup") {
  std::mt19937 rng(34);
  for (int k = 2; k <= 5; ++k) {
    std::set<std::uint32_t> reached;
    for (int t = 0; t < 500; ++t) {
      Word u = random_word(rng, k, 15);
      Word v = random_word(rng, k, 15);
      auto su = sign_state(u, k);
      REQUIRE(sign_state(concat(u, v), k) == sign_state_from(su, v));
      reached.insert(su.flipped);
      if (tilde_membership(u, k) && tilde_membership(v, k)) {
        REQUIRE(tilde_membership(concat(u, v), k));
      }
      if (tilde_membership(u, k)) {
        REQUIRE(tilde_membership(reversed(u), k));
      }
    }
    // 2^(k-1) states: the index of the subgroup.
    CHECK(reached.size() == (1U << (k - 1)));
  }
}
