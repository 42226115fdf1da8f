// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "gnk/freegroup.hpp"
#include "gnk/g43.hpp"
#include "gnk/g43_conjugacy.hpp"
#include "gnk/g54.hpp"
#include "gnk/indexmap.hpp"
#include "gnk/presentations.hpp"

using namespace gnk;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, std::string const& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Word random_word(std::mt19937& rng, std::size_t max_len, unsigned letters) {
  Word w(rng() % (max_len + 1));
  for (auto& l : w) {
    l = static_cast<Letter>(rng() % letters);
  }
  return w;
}

// Every reduced word over `letters` generators up to the given length.
void for_each_reduced(unsigned letters, std::size_t max_len,
                      std::function<void(Word const&)> const& f) {
  Word w;
  std::function<void()> rec = [&] {
    f(w);
    if (w.size() == max_len) {
      return;
    }
    for (Letter l = 0; l < letters; ++l) {
      if (w.empty() || w.back() != l) {
        w.push_back(l);
        rec();
        w.pop_back();
      }
    }
  };
  rec();
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long choose(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

Outcome presentation_counts() {
  Outcome o;
  for (int n = 3; n <= 7; ++n) {
    for (int k = 2; k < n; ++k) {
      GnkRelatorCounts c;
      auto p = generate_gnk(n, k, &c);
      long long expect = factorial(k + 1) * choose(n, k + 1) / 2;
      o.require(static_cast<long long>(c.tetrahedron) == expect,
                "tetrahedron count for n=" + std::to_string(n) + " k=" + std::to_string(k));
      o.require(static_cast<long long>(p.generator_count()) == choose(n, k), "generator count");
    }
  }
  // G_3^2 = <a,b,c | a^2, b^2, c^2, (abc)^2> up to rotation and reversal.
  auto g32 = generate_gnk(3, 2);
  for (auto const& r : g32.relators) {
    o.require(r.size() == 2 || cyclic_key(r) == cyclic_key(Word{0, 1, 2, 0, 1, 2}), "G_3^2 relator");
  }
  // G_4^3: four involutions and the squares of the orderings of a, b, c, d.
  auto g43 = generate_gnk(4, 3);
  o.require(g43.relators.size() == 4 + 12, "G_4^3 relator count");
  o.require(RelatorIndex(g43.relators).find(Word{0, 1, 2, 3, 0, 1, 2, 3}).has_value(),
            "(abcd)^2 in G_4^3");
  return o;
}

Outcome index_map_invariance() {
  Outcome o;
  std::mt19937 rng(101);
  for (int k : {3, 4}) {
    auto const& p = gk1k_presentation(k);
    for (int t = 0; t < 1000; ++t) {
      Word w = random_word(rng, 20, static_cast<unsigned>(k + 1));
      Word const& r = p.relators[rng() % p.relators.size()];
      std::size_t at = rng() % (w.size() + 1);
      Word g(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
      g = concat(g, r, Word(w.begin() + static_cast<std::ptrdiff_t>(at), w.end()));
      o.require(index_map(g, k) == index_map(w, k), "index map changed by a relator");
    }
  }
  return o;
}

Outcome elimination() {
  Outcome o;
  auto const& p = gk1k_presentation(3);
  std::mt19937 rng(102);
  int done = 0;
  while (done < 200) {
    Word w = random_word(rng, 24, 4);
    if (!index_map(w, 3).empty()) {
      continue;
    }
    ++done;
    auto e = eliminate_last_letter(w, 3);
    o.require(std::find(e.result.begin(), e.result.end(), g43::D) == e.result.end(), "d left over");
    o.require(check_certificate(p, e.certificate).ok, "elimination certificate");
    o.require(g43::amalgam_reduce(concat(w, reversed(e.result))).word.empty(),
              "elimination changed the element");
  }
  o.require(g43::print(eliminate_last_letter(g43::parse("dabcd"), 3).result) == "cba", "dabcd");
  return o;
}

Outcome g43_word_problem() {
  Outcome o;
  std::mt19937 rng(103);
  for (int t = 0; t < 10000; ++t) {
    Word w = random_word(rng, 30, 4);
    o.require(g43::wp_index_route(w) == g43::wp_amalgam_route(w), "routes disagree");
  }
  auto const& rels = g43::presentation().presentation.relators;
  for (int t = 0; t < 1000; ++t) {
    // Conjugated relators, then relators inserted at random positions.
    Word w;
    for (int i = 0; i < 3; ++i) {
      Word g = random_word(rng, 6, 4);
      w = concat(w, reversed(g), rels[rng() % rels.size()], g);
    }
    for (int i = 0; i < 3; ++i) {
      std::size_t at = rng() % (w.size() + 1);
      Word g(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
      w = concat(g, rels[rng() % rels.size()], Word(w.begin() + static_cast<std::ptrdiff_t>(at), w.end()));
    }
    o.require(g43::wp_g43(w), "garbled trivial word rejected");
  }
  int odd = 0;
  while (odd < 1000) {
    Word w = random_word(rng, 30, 4);
    std::array<int, 4> parity{};
    for (Letter l : w) {
      parity.at(l) ^= 1;
    }
    if (parity == std::array<int, 4>{}) {
      continue;
    }
    ++odd;
    o.require(!g43::wp_g43(w), "odd parity word accepted");
  }
  return o;
}

Outcome g43_conjugacy() {
  using K = g43::ConjugacyVerdict::Kind;
  Outcome o;
  auto v1 = g43::conjugacy_g43(g43::parse("abc"), g43::parse("cba"));
  o.require(v1.kind == K::conjugate && g43::recheck(g43::parse("abc"), g43::parse("cba"), v1),
            "abc ~ cba");
  auto v2 = g43::conjugacy_g43(g43::parse("a"), g43::parse("b"));
  o.require(v2.kind == K::not_conjugate && v2.certificate &&
                v2.certificate->kind == g43::NonConjugacyCertificate::Kind::quotient,
            "a, b quotient certificate");
  std::vector<Word> conjugators;
  for_each_reduced(4, 8, [&](Word const& g) { conjugators.push_back(g); });
  std::mt19937 rng(104);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, 6, 4);
    Word v = random_word(rng, 6, 4);
    if (t % 2 == 0) {
      // Half the pairs are conjugate by construction.
      Word g = random_word(rng, 4, 4);
      v = free_reduce(concat(reversed(g), w, g));
    }
    auto verdict = g43::conjugacy_g43(w, v);
    if (verdict.kind == K::conjugate) {
      o.require(g43::equal_g43(concat(reversed(verdict.witness), w, verdict.witness), v),
                "witness fails");
    } else if (verdict.kind == K::not_conjugate) {
      for (auto const& g : conjugators) {
        if (g43::equal_g43(concat(reversed(g), w, g), v)) {
          o.require(false, "NotConjugate contradicted for " + g43::print(w) + ", " + g43::print(v));
          break;
        }
      }
    }
  }
  return o;
}

Outcome fixed_subgroups() {
  Outcome o;
  fg::Names names;
  auto inv = fg::FreeEndomorphism::inversion(3);
  auto fix_inv = fg::fix_subgroup_bounded(inv, 6);
  // Exhaustive: inversion fixes no nontrivial reduced word.
  bool any_fixed = false;
  fg::for_each_reduced_word(3, 6, [&](fg::SignedWord const& w) {
    if (!w.empty() && fg::apply(inv, w) == w) {
      any_fixed = true;
    }
    return true;
  });
  o.require(fix_inv.edge_count() == 0 && !any_fixed, "inversion fixed subgroup not trivial");
  fg::FreeEndomorphism swap;
  swap.rank = 3;
  swap.images = {names.parse("y"), names.parse("x"), names.parse("z")};
  auto fix_swap = fg::fix_subgroup_bounded(swap, 4);
  o.require(fix_swap.contains(names.parse("z")), "swap fixed subgroup lacks z");
  o.require(fix_swap.contains(names.parse("xy")), "swap fixed subgroup lacks xy (xy maps to yx)");
  return o;
}

Outcome h4_decision() {
  using h4::Verdict;
  Outcome o;
  auto const& p = h4::presentation().presentation;
  std::vector<Word> commutators;
  for (auto const& r : p.relators) {
    if (r.size() > 2) {
      commutators.push_back(r);
      auto res = h4::h4_is_trivial(r);
      std::size_t md = h4::d_count(r);
      o.require(res.verdict == Verdict::trivial && check_certificate(p, res.certificate).ok &&
                    res.cells_used <= 4 * md * md,
                "relator " + h4::print(r));
    }
  }
  std::mt19937 rng(105);
  for (int t = 0; t < 50; ++t) {
    Word w;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      Word g = random_word(rng, 4, 4);
      Word r = commutators[rng() % commutators.size()];
      w = concat(w, reversed(g), rng() % 2 ? r : reversed(r), g);
    }
    auto res = h4::h4_is_trivial(free_reduce(w));
    o.require(res.verdict == Verdict::trivial && check_certificate(p, res.certificate).ok,
              "product " + h4::print(free_reduce(w)));
  }
  o.require(h4::h4_is_trivial(h4::parse("ababcdcd")).verdict == Verdict::nontrivial, "(ab)^2(cd)^2");
  int certified = 0;
  while (certified < 100) {
    Word w = free_reduce(random_word(rng, 20, 4));
    auto obs = h4::quick_obstruction(w);
    if (!obs || obs->kind != "retraction") {
      continue;
    }
    ++certified;
    o.require(h4::h4_is_trivial(w).verdict == Verdict::nontrivial, "retraction word");
  }
  // The oracle only ever proves triviality, and words caught by a quick
  // obstruction are nontrivial, so only the remaining words need both.
  std::size_t checked = 0;
  std::size_t decided = 0;
  for_each_reduced(4, 12, [&](Word const& w) {
    if (!o.ok || h4::quick_obstruction(w)) {
      return;
    }
    ++checked;
    auto bfs = naive_trivial_search(p, w, 50000, 28);
    auto res = h4::h4_is_trivial(w);
    if (bfs.trivial) {
      ++decided;
      o.require(res.verdict == Verdict::trivial, "BFS proves " + h4::print(w) + " trivial");
    }
    o.require(!(res.verdict == Verdict::nontrivial && bfs.trivial), "contradiction");
  });
  if (o.ok) {
    o.note = std::to_string(checked) + " unobstructed words of length <= 12, " +
             std::to_string(decided) + " decided by BFS";
  }
  return o;
}

Outcome g54_pipeline() {
  using h4::Verdict;
  Outcome o;
  o.require(g54::wp_g54(g54::parse("abcdeabcde")).verdict == Verdict::trivial, "(b1b2b3b4b5)^2");
  o.require(g54::wp_g54(g54::parse("e")).verdict == Verdict::nontrivial, "b5");
  std::mt19937 rng(106);
  int obstructed = 0;
  while (obstructed < 100) {
    Word w = random_word(rng, 20, 5);
    if (index_map(w, 4).empty()) {
      continue;
    }
    ++obstructed;
    o.require(g54::wp_g54(w).verdict == Verdict::nontrivial, "obstructed word");
  }
  auto const& p = gk1k_presentation(4);
  for (int t = 0; t < 100; ++t) {
    Word w = random_word(rng, 16, 5);
    Word const& r = p.relators[rng() % p.relators.size()];
    std::size_t at = rng() % (w.size() + 1);
    Word g(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
    g = concat(g, r, Word(w.begin() + static_cast<std::ptrdiff_t>(at), w.end()));
    auto a = g54::wp_g54(w);
    auto b = g54::wp_g54(g);
    o.require(a.verdict == b.verdict && a.verdict != Verdict::unknown,
              "verdict changed by a relator: " + g54::print(w));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    char const* name;
    Outcome (*run)();
  };
  Criterion const criteria[] = {
      {1, "presentation counts", presentation_counts},
      {2, "index map invariance", index_map_invariance},
      {3, "elimination correctness", elimination},
      {4, "G_4^3 word problem cross-validation", g43_word_problem},
      {5, "G_4^3 conjugacy", g43_conjugacy},
      {6, "bounded fixed subgroups", fixed_subgroups},
      {7, "H_4 decision", h4_decision},
      {8, "G_5^4 pipeline", g54_pipeline},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.note.empty() ? "" : ": ", o.note.c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
