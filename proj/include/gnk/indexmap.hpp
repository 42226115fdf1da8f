// The index map G_{k+1}^k -> Z_2^{*2^(k-1)}, membership in H_k (the subgroup
// of words avoiding the last generator b_{k+1}), constructive elimination of
// b_{k+1}, and the sign-state automaton of the finite-index subgroup.
//
// Words are over b_1..b_{k+1}, letters 0..k; letter k is b_{k+1}.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace gnk {

// Bit j holds coordinate j+1 of a length-(k-1) index string.
struct IndexString {
  std::uint32_t bits = 0;
  int length = 0;

  std::string str() const {
    std::string s;
    for (int j = 0; j < length; ++j) {
      s += ((bits >> j) & 1U) ? '1' : '0';
    }
    return s;
  }

  friend bool operator==(IndexString const&, IndexString const&) = default;
  friend auto operator<=>(IndexString const&, IndexString const&) = default;
};

// Word in the free product of 2^(k-1) copies of Z_2.
struct FreeProductWord {
  int k = 0;
  std::vector<IndexString> letters;

  bool empty() const noexcept { return letters.empty(); }
  std::size_t size() const noexcept { return letters.size(); }

  std::string str() const {
    if (letters.empty()) {
      return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i > 0) {
        s += ' ';
      }
      s += "c" + letters[i].str();
    }
    return s;
  }

  friend bool operator==(FreeProductWord const&, FreeProductWord const&) = default;
};

inline void check_index_alphabet(Word const& w, int k) {
  if (k < 2 || k > 20) {
    throw Error("index map: k out of range");
  }
  for (Letter l : w) {
    if (l > k) {
      throw Error("index map: letter outside b_1..b_" + std::to_string(k + 1));
    }
  }
}

// Index of every occurrence of b_{k+1}, unreduced.
inline FreeProductWord index_sequence(Word const& w, int k) {
  check_index_alphabet(w, k);
  FreeProductWord out;
  out.k = k;
  std::uint32_t counts = 0;
  std::uint32_t const all = (1U << k) - 1U;
  std::uint32_t const last = 1U << (k - 1);
  for (Letter l : w) {
    if (l == k) {
      std::uint32_t s = counts;
      if (s & last) {
        s ^= all;
      }
      out.letters.push_back({s & (last - 1U), k - 1});
    } else {
      counts ^= 1U << l;
    }
  }
  return out;
}

inline FreeProductWord reduce(FreeProductWord const& w) {
  FreeProductWord out;
  out.k = w.k;
  for (auto const& c : w.letters) {
    if (!out.letters.empty() && out.letters.back() == c) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(c);
    }
  }
  return out;
}

inline FreeProductWord index_map(Word const& w, int k) {
  return reduce(index_sequence(w, k));
}

struct IndexedPresentation {
  Presentation presentation;
  RelatorIndex index;
};

// Full G_{k+1}^k presentation, built once per k.
inline IndexedPresentation const& gk1k(int k) {
  static std::mutex mutex;
  static std::map<int, IndexedPresentation> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) {
    Presentation p = generate_gnk(k + 1, k);
    RelatorIndex idx(p.relators);
    it = cache.emplace(k, IndexedPresentation{std::move(p), std::move(idx)}).first;
  }
  return it->second;
}

inline Presentation const& gk1k_presentation(int k) { return gk1k(k).presentation; }

class NotInH : public Error {
 public:
  explicit NotInH(FreeProductWord obstruction)
      : Error("word is not in H_k: index map is " + obstruction.str()),
        obstruction_(std::move(obstruction)) {}
  FreeProductWord const& obstruction() const noexcept { return obstruction_; }

 private:
  FreeProductWord obstruction_;
};

struct Elimination {
  Word result;
  DerivationCertificate certificate;
};

namespace detail {

// Letters of {0..k-1} missing from `used`, descending.
inline Word complement_descending(Word const& used, int k) {
  Word out;
  for (int l = k - 1; l >= 0; --l) {
    if (std::find(used.begin(), used.end(), static_cast<Letter>(l)) == used.end()) {
      out.push_back(static_cast<Letter>(l));
    }
  }
  return out;
}

// b_{k+1} T  ->  P^R T^R b_{k+1} P^R  where P is the complement of T, since
// P b_{k+1} T contains every generator once and is therefore an involution.
inline std::size_t pass_through(Derivation& d, std::size_t pos, std::size_t len, int k) {
  auto const& cur = d.current();
  Word t(cur.begin() + static_cast<std::ptrdiff_t>(pos + 1),
         cur.begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
  Word prev = complement_descending(t, k);
  Word inserted = concat(prev, reversed(t), Word{static_cast<Letter>(k)}, prev);
  d.replace(pos, len + 1, inserted);
  return pos + prev.size() + t.size();
}

}  // namespace detail

// Rewrites a word with trivial index map into an equal word without
// b_{k+1}.  Repeatedly takes the leftmost adjacent pair of occurrences with
// equal index and shortens the segment between them.
inline Elimination eliminate_last_letter(Word const& w, int k) {
  FreeProductWord f = index_map(w, k);
  if (!f.empty()) {
    throw NotInH(f);
  }
  auto const last = static_cast<Letter>(k);
  Derivation d(w, gk1k(k).index);
  while (true) {
    d.free_reduce();
    Word const& cur = d.current();
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == last) {
        pos.push_back(i);
      }
    }
    if (pos.empty()) {
      break;
    }
    FreeProductWord seq = index_sequence(cur, k);
    std::size_t pair = pos.size();
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
      if (seq.letters[i] == seq.letters[i + 1]) {
        pair = i;
        break;
      }
    }
    if (pair == pos.size()) {
      throw Error("eliminate_last_letter: no cancelling pair (internal)");
    }
    std::size_t p0 = pos[pair];
    Word segment(cur.begin() + static_cast<std::ptrdiff_t>(p0 + 1),
                 cur.begin() + static_cast<std::ptrdiff_t>(pos[pair + 1]));
    std::size_t repeat = segment.size();
    for (std::size_t q = 1; q < segment.size() && repeat == segment.size(); ++q) {
      for (std::size_t j = 0; j < q; ++j) {
        if (segment[j] == segment[q]) {
          repeat = q;
          break;
        }
      }
    }
    if (repeat == segment.size()) {
      // Distinct letters of equal parity: empty or a permutation of b_1..b_k.
      if (!segment.empty()) {
        d.replace(p0, segment.size() + 1,
                  concat(reversed(segment), Word{last}));
      }
      d.replace(p0 + segment.size(), 2, {});
      continue;
    }
    std::size_t p1 = detail::pass_through(d, p0, repeat, k);
    // After the first pass the letters following b_{k+1} are P^R y, again
    // distinct; passing through them leaves the complement T \ {y}.
    std::size_t p_len = static_cast<std::size_t>(k) - repeat;
    detail::pass_through(d, p1, p_len + 1, k);
  }
  return {d.current(), d.certificate()};
}

struct HMembership {
  bool in_h = false;
  Word rewritten;
  DerivationCertificate certificate;
  FreeProductWord obstruction;
};

inline HMembership h_membership(Word const& w, int k) {
  HMembership out;
  out.obstruction = index_map(w, k);
  if (!out.obstruction.empty()) {
    return out;
  }
  auto e = eliminate_last_letter(w, k);
  out.in_h = true;
  out.rewritten = std::move(e.result);
  out.certificate = std::move(e.certificate);
  return out;
}

// Signs of the first k coordinates, normalised so coordinate k is +1; bit j
// set means coordinate j+1 is -1.
struct SignState {
  int k = 0;
  std::uint32_t flipped = 0;

  std::vector<int> signs() const {
    std::vector<int> s;
    for (int j = 0; j < k; ++j) {
      s.push_back(((flipped >> j) & 1U) ? -1 : 1);
    }
    return s;
  }

  friend bool operator==(SignState const&, SignState const&) = default;
};

inline SignState sign_state_from(SignState s, Word const& w) {
  std::uint32_t const all = (1U << s.k) - 1U;
  std::uint32_t const last = 1U << (s.k - 1);
  for (Letter l : w) {
    if (l > s.k) {
      throw Error("sign_state: letter out of range");
    }
    s.flipped ^= l == s.k ? all : (1U << l);
    if (s.flipped & last) {
      s.flipped ^= all;
    }
  }
  return s;
}

inline SignState sign_state(Word const& w, int k) {
  check_index_alphabet(w, k);
  return sign_state_from(SignState{k, 0}, w);
}

inline bool tilde_membership(Word const& w, int k) {
  return sign_state(w, k).flipped == 0;
}

}  // namespace gnk
