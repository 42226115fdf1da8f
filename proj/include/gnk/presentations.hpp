// Presentations of G_n^k, the conjectured presentations of H_k, homomorphism
// checks, the certificate checker and a bounded breadth-first triviality
// search used as an independent oracle.

#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "words.hpp"

namespace gnk {

struct Presentation {
  std::string name;
  Alphabet alphabet;
  std::vector<Word> relators;

  std::size_t generator_count() const noexcept { return alphabet.size(); }
};

namespace detail {

inline void add_involutions(Presentation& p) {
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    auto l = static_cast<Letter>(i);
    p.relators.push_back({l, l});
  }
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0;
  }
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace detail

// (k+1)! * C(n, k+1) / 2
inline long long tetrahedron_relation_count(int n, int k) {
  long long f = 1;
  for (int i = 2; i <= k + 1; ++i) {
    f *= i;
  }
  return f * detail::binomial(n, k + 1) / 2;
}

struct GnkRelatorCounts {
  std::size_t involution = 0;
  std::size_t tetrahedron = 0;
  std::size_t far_commutativity = 0;
};

// Relators are listed as: involutions, tetrahedron relators (one per ordered
// (k+1)-tuple modulo reversal, written L.L), far commutativity (m m' m m').
inline Presentation generate_gnk(int n, int k, GnkRelatorCounts* counts = nullptr) {
  if (k < 2 || n <= k) {
    throw Error("generate_gnk: need n > k >= 2");
  }
  if (n > 9) {
    throw Error("generate_gnk: n > 9 not supported by multiindex names");
  }
  Presentation p;
  p.name = "G_" + std::to_string(n) + "^" + std::to_string(k);
  p.alphabet = Alphabet::multiindexed(n, k);
  detail::add_involutions(p);
  GnkRelatorCounts c;
  c.involution = p.relators.size();

  // (k+1)-subsets, lexicographic.
  Multiindex s(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) {
    s[static_cast<std::size_t>(i)] = i + 1;
  }
  while (true) {
    Multiindex u = s;
    do {
      Multiindex rev(u.rbegin(), u.rend());
      if (u < rev) {
        Word l;
        for (std::size_t j = 0; j < u.size(); ++j) {
          Multiindex m;
          for (std::size_t t = 0; t < u.size(); ++t) {
            if (t != j) {
              m.push_back(u[t]);
            }
          }
          std::sort(m.begin(), m.end());
          l.push_back(*p.alphabet.find(m));
        }
        p.relators.push_back(concat(l, l));
        ++c.tetrahedron;
      }
    } while (std::next_permutation(u.begin(), u.end()));

    int i = k;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= k; ++j) {
      s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  auto const& mi = p.alphabet.multiindices();
  for (std::size_t a = 0; a < mi.size(); ++a) {
    for (std::size_t b = a + 1; b < mi.size(); ++b) {
      Multiindex common;
      std::set_intersection(mi[a].begin(), mi[a].end(), mi[b].begin(),
                            mi[b].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) < k - 1) {
        auto x = static_cast<Letter>(a);
        auto y = static_cast<Letter>(b);
        p.relators.push_back({x, y, x, y});
        ++c.far_commutativity;
      }
    }
  }
  if (counts) {
    *counts = c;
  }
  return p;
}

// <a,b,c,d | squares, (abcd)^2, (acdb)^2, (adbc)^2>, the three-relator
// presentation of G_4^3.
inline Presentation reduced_g43() {
  Presentation p;
  p.name = "G_4^3 (reduced)";
  p.alphabet = Alphabet::multiindexed(4, 3);
  detail::add_involutions(p);
  for (Word l : {Word{0, 1, 2, 3}, Word{0, 2, 3, 1}, Word{0, 3, 1, 2}}) {
    p.relators.push_back(concat(l, l));
  }
  return p;
}

// <b_1..b_k | b_i^2, [(b_i b_j)^2, (b_m b_l)^2] for {i,j,m,l} distinct>.
// Proven for k = 4; conjectural for k >= 5.
inline Presentation generate_hk_conjectured(int k) {
  if (k < 3) {
    throw Error("generate_hk_conjectured: need k >= 3");
  }
  if (k > 26) {
    throw Error("generate_hk_conjectured: k > 26 not supported");
  }
  Presentation p;
  p.name = "H_" + std::to_string(k);
  p.alphabet = Alphabet::letters(static_cast<std::size_t>(k));
  detail::add_involutions(p);
  auto sq = [](Letter x, Letter y) { return Word{x, y, x, y}; };
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int m = j + 1; m < k; ++m) {
        for (int l = m + 1; l < k; ++l) {
          auto I = static_cast<Letter>(i), J = static_cast<Letter>(j),
               M = static_cast<Letter>(m), L = static_cast<Letter>(l);
          std::pair<Word, Word> const pairings[] = {
              {sq(I, J), sq(M, L)}, {sq(I, M), sq(J, L)}, {sq(I, L), sq(J, M)}};
          for (auto const& [x, y] : pairings) {
            p.relators.push_back(concat(x, y, inverse(x), inverse(y)));
          }
        }
      }
    }
  }
  return p;
}

// Relators deduplicated up to rotation and reversal (first occurrence kept).
inline std::vector<Word> distinct_cyclic_relators(Presentation const& p) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto const& r : p.relators) {
    if (seen.insert(cyclic_key(r)).second) {
      out.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

using TrivialityOracle = std::function<bool(Word const&)>;

struct HomomorphismSpec {
  Presentation const* source = nullptr;
  // images[i] is the image of generator i, a word in the target's letters.
  std::vector<Word> images;
  TrivialityOracle target_trivial;
};

struct HomomorphismCheck {
  bool ok = true;
  std::optional<std::size_t> failing_relator;
};

inline Word apply_substitution(Word const& w, std::vector<Word> const& images) {
  Word out;
  for (Letter l : w) {
    auto const& img = images.at(l);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

inline HomomorphismCheck verify_homomorphism(HomomorphismSpec const& spec) {
  if (!spec.source || spec.images.size() != spec.source->alphabet.size()) {
    throw Error("verify_homomorphism: every generator needs an image");
  }
  for (std::size_t i = 0; i < spec.source->relators.size(); ++i) {
    if (!spec.target_trivial(apply_substitution(spec.source->relators[i], spec.images))) {
      return {false, i};
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Certificate checking, independent of whoever produced the certificate.

struct CertificateCheck {
  bool ok = false;
  std::size_t failed_step = 0;
  std::string reason;
};

namespace detail {

inline bool is_rotation_of(Word const& a, Word const& b) {
  if (a.size() != b.size()) {
    return false;
  }
  if (a.empty()) {
    return true;
  }
  Word doubled = concat(b, b);
  return std::search(doubled.begin(), doubled.end(), a.begin(), a.end()) !=
         doubled.end();
}

}  // namespace detail

inline CertificateCheck check_certificate(Presentation const& p,
                                          DerivationCertificate const& cert) {
  Word w = cert.start;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    auto const& s = cert.steps[i];
    if (s.kind == RewriteStep::Kind::rotate) {
      if (!cert.cyclic) {
        return {false, i, "rotation step in an equality certificate"};
      }
      w = rotate_left(w, s.position);
      continue;
    }
    if (s.relator >= p.relators.size()) {
      return {false, i, "relator index out of range"};
    }
    if (s.position + s.removed.size() > w.size() ||
        !std::equal(s.removed.begin(), s.removed.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(s.position))) {
      return {false, i, "removed subword does not match"};
    }
    Word cyc = concat(s.removed, reversed(s.inserted));
    Word const& r = p.relators[s.relator];
    if (!detail::is_rotation_of(cyc, r) && !detail::is_rotation_of(cyc, reversed(r))) {
      return {false, i, "step is not an application of the cited relator"};
    }
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(s.position),
            w.begin() + static_cast<std::ptrdiff_t>(s.position + s.removed.size()));
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(s.position),
             s.inserted.begin(), s.inserted.end());
  }
  if (w != cert.end) {
    return {false, cert.steps.size(), "final word does not match"};
  }
  return {true, 0, {}};
}

// ---------------------------------------------------------------------------
// Bounded breadth-first triviality search.

struct NaiveSearchResult {
  bool trivial = false;
  std::optional<DerivationCertificate> certificate;
  std::size_t explored = 0;
};

// Explores words reachable by replacing a nonempty subword u by u' where
// u . u'^R is a rotation of a relator or of its reversal, each state freely
// reduced.  Gives up (not trivial) after `max_states` states; states longer
// than `max_len` are discarded.
inline NaiveSearchResult naive_trivial_search(Presentation const& p, Word const& w,
                                              std::size_t max_states,
                                              std::size_t max_len) {
  RelatorIndex index(p.relators);
  NaiveSearchResult result;

  std::vector<Word> rotations;
  {
    std::set<Word> seen;
    for (auto const& r : p.relators) {
      if (r.size() == 2 && r[0] == r[1]) {
        continue;
      }
      for (Word const& base : {r, reversed(r)}) {
        for (std::size_t o = 0; o < base.size(); ++o) {
          Word rot = rotate_left(base, o);
          if (seen.insert(rot).second) {
            rotations.push_back(std::move(rot));
          }
        }
      }
    }
  }

  struct Node {
    Word word;
    std::size_t parent;
    std::vector<RewriteStep> steps;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> visited;
  auto key = [](Word const& x) { return std::string(x.begin(), x.end()); };

  Derivation first(w, index);
  first.free_reduce();
  nodes.push_back({first.current(), 0, first.steps()});
  visited.emplace(key(first.current()), 0);

  auto finish = [&](std::size_t id) {
    std::vector<std::size_t> path;
    for (std::size_t n = id; n != 0; n = nodes[n].parent) {
      path.push_back(n);
    }
    path.push_back(0);
    DerivationCertificate cert;
    cert.start = w;
    cert.end = nodes[id].word;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      auto const& st = nodes[*it].steps;
      cert.steps.insert(cert.steps.end(), st.begin(), st.end());
    }
    result.trivial = true;
    result.certificate = std::move(cert);
  };

  if (nodes[0].word.empty()) {
    finish(0);
    result.explored = 1;
    return result;
  }

  std::deque<std::size_t> queue{0};
  while (!queue.empty() && result.explored < max_states) {
    std::size_t id = queue.front();
    queue.pop_front();
    ++result.explored;
    Word const cur = nodes[id].word;
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      for (auto const& r : rotations) {
        std::size_t match = 0;
        while (match < r.size() && pos + match < cur.size() &&
               cur[pos + match] == r[match]) {
          ++match;
        }
        for (std::size_t j = 1; j <= match; ++j) {
          Word inserted(r.begin() + static_cast<std::ptrdiff_t>(j), r.end());
          inserted = reversed(inserted);
          Derivation d(cur, index);
          d.replace(pos, j, inserted);
          d.free_reduce();
          if (d.current().size() > max_len) {
            continue;
          }
          auto [it, fresh] = visited.emplace(key(d.current()), nodes.size());
          if (!fresh) {
            continue;
          }
          nodes.push_back({d.current(), id, d.steps()});
          if (d.current().empty()) {
            finish(nodes.size() - 1);
            return result;
          }
          queue.push_back(nodes.size() - 1);
        }
      }
    }
  }
  return result;
}

}  // namespace gnk
