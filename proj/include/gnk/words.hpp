// Involutive words: alphabets, free reduction, cyclic operations, text syntax.
//
// Every generator in this library squares to the identity, so the inverse of
// a word is its reversal and free reduction only ever deletes adjacent equal
// letters.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gnk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// k-subset of {1..n}, stored sorted.
using Multiindex = std::vector<int>;

class Alphabet {
 public:
  Alphabet() = default;

  // Single-letter alphabet a, b, c, ... of the given size (size <= 26).
  static Alphabet letters(std::size_t size) {
    if (size > 26) {
      throw Error("letter alphabet limited to 26 generators");
    }
    Alphabet result;
    for (std::size_t i = 0; i < size; ++i) {
      result.names_.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    return result;
  }

  // Alphabet of all k-subsets of {1..n} in lexicographic order.  Letter
  // aliases a, b, c, ... are used when there are at most 26 generators.
  static Alphabet multiindexed(int n, int k) {
    Alphabet result;
    result.n_ = n;
    result.k_ = k;
    Multiindex m(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      m[static_cast<std::size_t>(i)] = i + 1;
    }
    while (true) {
      result.multi_.push_back(m);
      int i = k - 1;
      while (i >= 0 && m[static_cast<std::size_t>(i)] == n - k + i + 1) {
        --i;
      }
      if (i < 0) {
        break;
      }
      ++m[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        m[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
    bool const alias = result.multi_.size() <= 26;
    for (std::size_t i = 0; i < result.multi_.size(); ++i) {
      result.names_.push_back(alias ? std::string(1, static_cast<char>('a' + i))
                                    : multiindex_token(result.multi_[i]));
    }
    return result;
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::string const& name(Letter l) const { return names_.at(l); }
  std::vector<std::string> const& names() const noexcept { return names_; }
  bool has_multiindices() const noexcept { return !multi_.empty(); }
  Multiindex const& multiindex(Letter l) const { return multi_.at(l); }
  std::vector<Multiindex> const& multiindices() const noexcept { return multi_; }
  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

  bool single_letter_names() const noexcept {
    return std::all_of(names_.begin(), names_.end(),
                       [](std::string const& s) { return s.size() == 1; });
  }

  std::optional<Letter> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        return static_cast<Letter>(i);
      }
    }
    return std::nullopt;
  }

  std::optional<Letter> find(Multiindex const& m) const {
    for (std::size_t i = 0; i < multi_.size(); ++i) {
      if (multi_[i] == m) {
        return static_cast<Letter>(i);
      }
    }
    return std::nullopt;
  }

  static std::string multiindex_token(Multiindex const& m) {
    std::string s = "a_";
    for (int i : m) {
      s += std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Multiindex> multi_;
  int n_ = 0;
  int k_ = 0;
};

inline bool is_freely_reduced(Word const& w) {
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

inline Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Inverse of an involutive word.
inline Word inverse(Word const& w) { return reversed(w); }

inline Word concat(Word a, Word const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <typename... Ws>
Word concat(Word a, Word const& b, Ws const&... rest) {
  return concat(concat(std::move(a), b), rest...);
}

inline Word multiply(Word const& a, Word const& b) {
  return free_reduce(concat(a, b));
}

inline Word rotate_left(Word w, std::size_t k) {
  if (!w.empty()) {
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k % w.size()),
                w.end());
  }
  return w;
}

inline bool is_cyclically_reduced(Word const& w) {
  return is_freely_reduced(w) && (w.size() <= 1 || w.front() != w.back());
}

// Least rotation in lexicographic order of letter indices.
inline Word least_rotation(Word const& w) {
  Word best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r = rotate_left(w, i);
    if (r < best) {
      best = std::move(r);
    }
  }
  return best;
}

// A cyclically reduced word up to rotation; the stored representative is the
// least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(Word const& w) {
    if (!is_cyclically_reduced(w)) {
      throw Error("cyclic word must be cyclically reduced");
    }
    letters_ = least_rotation(w);
  }

  Word const& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend bool operator==(CyclicWord const&, CyclicWord const&) = default;
  friend auto operator<=>(CyclicWord const&, CyclicWord const&) = default;

 private:
  Word letters_;
};

struct CyclicReduction {
  CyclicWord core;
  // w == conjugator^R . core_rotation . conjugator where core_rotation is the
  // peeled middle of w (not necessarily the least rotation).
  Word conjugator;
  Word peeled;
};

// Peel matching end letters: w = conjugator^R . peeled . conjugator, freely.
inline CyclicReduction cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  Word conj;
  while (hi - lo >= 2 && r[lo] == r[hi - 1]) {
    conj.push_back(r[lo]);
    ++lo;
    --hi;
  }
  Word peeled(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
  // conj was collected outside-in, so w = conj . peeled . conj^R; the
  // returned conjugator is the word c with w = c^R . peeled . c.
  return CyclicReduction{CyclicWord(peeled), reversed(conj), peeled};
}

inline std::vector<Word> cyclic_permutations(Word const& w) {
  if (!is_cyclically_reduced(w)) {
    throw Error("cyclic_permutations: word is not cyclically reduced");
  }
  std::vector<Word> out;
  if (w.empty()) {
    out.push_back(w);
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word r = rotate_left(w, i);
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<Word> cyclic_permutations(CyclicWord const& w) {
  return cyclic_permutations(w.letters());
}

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

inline Letter parse_multiindex_token(std::string_view tok, std::size_t pos,
                                     Alphabet const& alphabet) {
  // tok looks like "a_123"
  if (tok.size() < 3 || tok[0] != 'a' || tok[1] != '_') {
    throw Error("mixed notation in token '" + std::string(tok) +
                "' at position " + std::to_string(pos));
  }
  if (!alphabet.has_multiindices()) {
    throw Error("alphabet has no multiindex names (token at position " +
                std::to_string(pos) + ")");
  }
  Multiindex m;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    char c = tok[i];
    if (c < '1' || c > '9') {
      throw Error("mixed notation in token '" + std::string(tok) +
                  "' at position " + std::to_string(pos));
    }
    m.push_back(c - '0');
  }
  if (static_cast<int>(m.size()) != alphabet.k()) {
    throw Error("multiindex '" + std::string(tok) + "' has cardinality " +
                std::to_string(m.size()) + ", expected " +
                std::to_string(alphabet.k()));
  }
  std::sort(m.begin(), m.end());
  if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
    throw Error("multiindex '" + std::string(tok) + "' repeats an index");
  }
  auto l = alphabet.find(m);
  if (!l) {
    throw Error("multiindex '" + std::string(tok) + "' out of range");
  }
  return *l;
}

}  // namespace detail

// Accepts single-letter aliases ("dabcd"), whitespace separated multiindex
// tokens ("a_123 a_124"), or "1" for the empty word.
inline Word parse_word(std::string_view text, Alphabet const& alphabet) {
  Word out;
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    if (detail::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !detail::is_space(text[j])) {
      ++j;
    }
    std::string_view tok = text.substr(i, j - i);
    if (tok == "1" && !any && text.find_first_not_of(" \t\r\n", j) ==
                                  std::string_view::npos) {
      return out;
    }
    any = true;
    if (tok.find('_') != std::string_view::npos) {
      out.push_back(detail::parse_multiindex_token(tok, i, alphabet));
    } else if (auto whole = alphabet.find(tok); whole && tok.size() > 1) {
      out.push_back(*whole);
    } else {
      for (std::size_t p = 0; p < tok.size(); ++p) {
        auto l = alphabet.find(tok.substr(p, 1));
        if (!l) {
          throw Error("unknown letter '" + std::string(1, tok[p]) +
                      "' at position " + std::to_string(i + p));
        }
        out.push_back(*l);
      }
    }
    i = j;
  }
  return out;
}

inline std::string print_word(Word const& w, Alphabet const& alphabet) {
  if (w.empty()) {
    return "1";
  }
  std::string s;
  bool const compact = alphabet.single_letter_names();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) {
      s += ' ';
    }
    s += alphabet.name(w[i]);
  }
  return s;
}

inline std::vector<std::string> word_names(Word const& w,
                                           Alphabet const& alphabet) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (Letter l : w) {
    out.push_back(alphabet.name(l));
  }
  return out;
}

}  // namespace gnk
