// G_4^3 = <a,b,c,d> as the amalgam A *_C B with A = <a,b,c> (three
// involutions), C = <x=abc, y=bca, z=cab> free of rank 3, and B = C x| <d>
// where d inverts x, y and z.  C is normal with quotient (Z2+Z2) * Z2.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "freegroup.hpp"
#include "indexmap.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace gnk::g43 {

inline constexpr Letter A = 0;
inline constexpr Letter B = 1;
inline constexpr Letter C = 2;
inline constexpr Letter D = 3;

inline Alphabet const& alphabet() {
  static Alphabet const al = Alphabet::multiindexed(4, 3);
  return al;
}

inline IndexedPresentation const& presentation() { return gk1k(3); }

inline Word parse(std::string_view text) { return parse_word(text, alphabet()); }
inline std::string print(Word const& w) { return print_word(w, alphabet()); }

inline void check_letters(Word const& w) {
  for (Letter l : w) {
    if (l > D) {
      throw Error("G_4^3 word uses a letter outside a, b, c, d");
    }
  }
}

// Class in A/C = Z2+Z2 of the d-free letters: a -> 1, b -> 2, c -> 3.
inline unsigned parity(Word const& w) {
  unsigned p = 0;
  for (Letter l : w) {
    if (l != D) {
      p ^= l + 1U;
    }
  }
  return p;
}

inline std::pair<int, int> coset_class(Word const& w) {
  unsigned p = parity(w);
  return {static_cast<int>(p & 1U), static_cast<int>((p >> 1) & 1U)};
}

// Membership in C for words over a, b, c.
inline bool in_c(Word const& a_word) { return parity(a_word) == 0; }

// ---------------------------------------------------------------- C basis

inline fg::Names const& basis_names() {
  static fg::Names const n(std::vector<char>{'x', 'y', 'z', 't'});
  return n;
}

// x = abc, y = bca, z = cab.
inline Word basis_word(fg::SignedLetter l) {
  static std::array<Word, 3> const words{Word{A, B, C}, Word{B, C, A}, Word{C, A, B}};
  Word w = words.at(static_cast<std::size_t>(fg::basis_of(l)));
  return fg::exponent_of(l) > 0 ? w : reversed(w);
}

inline Word expand(fg::SignedWord const& w) {
  Word out;
  for (auto l : w.letters) {
    out = concat(std::move(out), basis_word(l));
  }
  return out;
}

namespace detail {

// Coset representative letter for a parity class (none for the trivial one).
inline std::optional<Letter> coset_rep(unsigned p) {
  if (p == 0) {
    return std::nullopt;
  }
  return static_cast<Letter>(p - 1);
}

// Schreier generator r . l . rep(r + l)^-1, as a basis letter (0 if trivial).
inline fg::SignedLetter schreier(unsigned r, Letter l) {
  // Rows: coset 1..3 (a, b, c); columns: letter a, b, c.
  static constexpr std::array<std::array<int, 3>, 3> table{{
      {0, 1, -2},   // a: aa=1, abc=x, acb=y^-1
      {-3, 0, 2},   // b: bac=z^-1, bb=1, bca=y
      {3, -1, 0},   // c: cab=z, cba=x^-1, cc=1
  }};
  if (r == 0) {
    return 0;
  }
  return table[r - 1][l];
}

}  // namespace detail

// Schreier rewriting of a d-free word of C.
inline fg::SignedWord rewrite_a_word(Word const& w) {
  fg::SignedWord out;
  unsigned r = 0;
  for (Letter l : w) {
    if (l == D) {
      throw Error("rewrite_a_word: word contains d");
    }
    if (auto g = detail::schreier(r, l); g != 0) {
      out.letters.push_back(g);
    }
    r ^= l + 1U;
  }
  if (r != 0) {
    throw Error("rewrite_into_C_basis: word is not in C (coset " +
                std::to_string(r) + ")");
  }
  return fg::reduce(out);
}

// ------------------------------------------------------------ amalgam form

struct AmalgamForm {
  Word word;
  // Maximal d-free segments; there are d_count + 1 of them, ends may be empty.
  std::vector<Word> a_parts;
  std::size_t d_count = 0;
  bool d_reduced = false;
  DerivationCertificate certificate;
};

namespace detail {

// d s d -> phi_d(s) for s in C starting at position pos (the first d).  The
// segment is split into Schreier pieces r l rep^-1 by inserting squares, the
// trivial pieces are deleted, and each d B d is replaced by B^R using the
// relator (dB)^2.
inline void fold_d_pair(Derivation& der, std::size_t pos, std::size_t len) {
  Word seg(der.current().begin() + static_cast<std::ptrdiff_t>(pos + 1),
           der.current().begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
  // Insert rep.rep after every letter but the last.
  unsigned r = 0;
  std::size_t at = pos + 1;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    r ^= seg[i] + 1U;
    at += 1;
    if (i + 1 < seg.size()) {
      if (auto rep = coset_rep(r)) {
        der.insert(at, Word{*rep, *rep});
        at += 2;
      }
    }
  }
  // Pieces now read r l rep; drop the squares, keep the basis words.
  std::vector<Word> basis;
  r = 0;
  at = pos + 1;
  for (Letter l : seg) {
    unsigned next = r ^ (l + 1U);
    std::size_t piece = (r != 0 ? 1U : 0U) + 1U + (next != 0 ? 1U : 0U);
    if (piece == 2) {
      der.replace(at, 2, {});
    } else if (piece == 3) {
      auto const& cur = der.current();
      basis.emplace_back(cur.begin() + static_cast<std::ptrdiff_t>(at),
                         cur.begin() + static_cast<std::ptrdiff_t>(at + 3));
      at += 3;
    }
    r = next;
  }
  if (basis.empty()) {
    der.replace(pos, 2, {});
    return;
  }
  for (std::size_t q = 0; q < basis.size(); ++q) {
    if (q + 1 < basis.size()) {
      der.insert(pos + 4, Word{D, D});
    }
    der.replace(pos, 5, reversed(basis[q]));
    pos += 3;
  }
}

inline std::vector<std::size_t> d_positions(Word const& w) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == D) {
      pos.push_back(i);
    }
  }
  return pos;
}

inline std::vector<Word> split_on_d(Word const& w) {
  std::vector<Word> parts(1);
  for (Letter l : w) {
    if (l == D) {
      parts.emplace_back();
    } else {
      parts.back().push_back(l);
    }
  }
  return parts;
}

}  // namespace detail

inline AmalgamForm amalgam_reduce(Word const& w) {
  check_letters(w);
  Derivation der(w, presentation().index);
  while (true) {
    der.free_reduce();
    auto pos = detail::d_positions(der.current());
    bool changed = false;
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
      Word seg(der.current().begin() + static_cast<std::ptrdiff_t>(pos[i] + 1),
               der.current().begin() + static_cast<std::ptrdiff_t>(pos[i + 1]));
      if (in_c(seg)) {
        detail::fold_d_pair(der, pos[i], seg.size());
        changed = true;
        break;
      }
    }
    if (!changed) {
      break;
    }
  }
  AmalgamForm out;
  out.word = der.current();
  out.a_parts = detail::split_on_d(out.word);
  out.d_count = out.a_parts.size() - 1;
  out.d_reduced = true;
  out.certificate = der.certificate();
  return out;
}

// --------------------------------------------------------------- word problem

struct WordProblemResult {
  bool trivial = false;
  AmalgamForm form;
  // Index-map route: obstruction when nonzero, else the d-free rewrite.
  FreeProductWord index_image;
  Word eliminated;
};

// Route 1: the index map detects words outside <a,b,c> = Z2*Z2*Z2; inside,
// b_4 = d is eliminated and the result freely reduced.
inline bool wp_index_route(Word const& w, FreeProductWord* image = nullptr,
                           Word* eliminated = nullptr) {
  auto f = index_map(w, 3);
  if (image) {
    *image = f;
  }
  if (!f.empty()) {
    return false;
  }
  Word e = free_reduce(eliminate_last_letter(w, 3).result);
  if (eliminated) {
    *eliminated = e;
  }
  return e.empty();
}

// Route 2: amalgam normal form.  Any surviving d is a syllable of a reduced
// alternating product, so the element is nontrivial.
inline bool wp_amalgam_route(Word const& w, AmalgamForm* form = nullptr) {
  AmalgamForm f = amalgam_reduce(w);
  bool trivial = f.word.empty();
  if (form) {
    *form = std::move(f);
  }
  return trivial;
}

inline WordProblemResult wp_g43_detailed(Word const& w) {
  WordProblemResult r;
  bool route1 = wp_index_route(w, &r.index_image, &r.eliminated);
  bool route2 = wp_amalgam_route(w, &r.form);
  if (route1 != route2) {
    throw Error("wp_g43: routes disagree on " + print(w));
  }
  r.trivial = route1;
  return r;
}

inline bool wp_g43(Word const& w) { return wp_amalgam_route(w) && wp_index_route(w); }

inline bool equal_g43(Word const& u, Word const& v) {
  return wp_g43(concat(u, reversed(v)));
}

// Basis expression of an element of C given by any word over a, b, c, d.
inline fg::SignedWord rewrite_into_C_basis(Word const& w) {
  AmalgamForm f = amalgam_reduce(w);
  if (f.d_count != 0) {
    throw Error("rewrite_into_C_basis: word is not in C");
  }
  return rewrite_a_word(f.word);
}

// h -> w^-1 h w on the basis x, y, z.
inline fg::FreeEndomorphism conj_action(Word const& w) {
  check_letters(w);
  fg::FreeEndomorphism e;
  e.rank = 3;
  Word r = reversed(w);
  for (int i = 0; i < 3; ++i) {
    e.images.push_back(
        rewrite_into_C_basis(concat(r, basis_word(fg::make_letter(i, 1)), w)));
  }
  return e;
}

// ---------------------------------------------------------------- quotient

// Element of G/C = V * Z2 as alternating syllables: 1, 2, 3 are the nonzero
// elements of V = Z2+Z2 (images of a, b, c) and 4 is the image of d.
struct QuotientWord {
  std::vector<std::uint8_t> syllables;

  bool trivial() const noexcept { return syllables.empty(); }
  friend bool operator==(QuotientWord const&, QuotientWord const&) = default;

  // Representative word over a, b, c, d.
  Word representative() const {
    Word w;
    for (auto s : syllables) {
      w.push_back(s == 4 ? D : static_cast<Letter>(s - 1));
    }
    return w;
  }
};

inline QuotientWord quotient_image(Word const& w) {
  check_letters(w);
  QuotientWord q;
  auto& s = q.syllables;
  for (Letter l : w) {
    std::uint8_t x = l == D ? 4 : static_cast<std::uint8_t>(l + 1);
    if (!s.empty() && s.back() == 4 && x == 4) {
      s.pop_back();
    } else if (!s.empty() && s.back() != 4 && x != 4) {
      s.back() = static_cast<std::uint8_t>(s.back() ^ x);
      if (s.back() == 0) {
        s.pop_back();
      }
    } else {
      s.push_back(x);
    }
  }
  return q;
}

inline bool quotient_wp(Word const& w) { return quotient_image(w).trivial(); }

// Cyclically reduced syllable sequence.
inline QuotientWord quotient_cyclic(QuotientWord q) {
  auto& s = q.syllables;
  while (s.size() >= 2) {
    bool const front_d = s.front() == 4;
    bool const back_d = s.back() == 4;
    if (front_d != back_d) {
      break;
    }
    if (front_d) {
      s.erase(s.begin());
      s.pop_back();
    } else {
      s.front() = static_cast<std::uint8_t>(s.front() ^ s.back());
      s.pop_back();
      if (s.front() == 0) {
        s.erase(s.begin());
      }
    }
  }
  return q;
}

// Free-product conjugacy: cyclically reduced syllable sequences agree up to
// rotation; single syllables must be equal (both factors are abelian).
inline bool quotient_conjugacy(Word const& w, Word const& v) {
  auto a = quotient_cyclic(quotient_image(w)).syllables;
  auto b = quotient_cyclic(quotient_image(v)).syllables;
  if (a.size() != b.size()) {
    return false;
  }
  if (a.size() <= 1) {
    return a == b;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::rotate(a.begin(), a.begin() + 1, a.end());
    if (a == b) {
      return true;
    }
  }
  return false;
}

}  // namespace gnk::g43
