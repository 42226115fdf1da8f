// Word problem in H_4 = <a,b,c,d | squares, [(ab)^2,(cd)^2], [(ac)^2,(bd)^2],
// [(ad)^2,(bc)^2]> by boundary search over cell contractions, and the word
// problem in G_5^4 by reduction to H_4.
//
// Over H_3 = <a,b,c> = Z2*Z2*Z2 every relator reads P dsd Q dsd for one of
// three cell types (s, Q, P = s Q^-1 s), so conjugation by D = dsd swaps Q
// and sQs.  A corner label u in <P> * <Q> has opposite label u' (swap P and
// Q) and D u D = u'^-1.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "indexmap.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace gnk::h4 {

inline constexpr Letter A = 0;
inline constexpr Letter B = 1;
inline constexpr Letter C = 2;
inline constexpr Letter D = 3;

inline IndexedPresentation const& presentation() {
  static IndexedPresentation const p = [] {
    Presentation h = generate_hk_conjectured(4);
    RelatorIndex idx(h.relators);
    return IndexedPresentation{std::move(h), std::move(idx)};
  }();
  return p;
}

inline Alphabet const& alphabet() { return presentation().presentation.alphabet; }
inline Word parse(std::string_view text) { return parse_word(text, alphabet()); }
inline std::string print(Word const& w) { return print_word(w, alphabet()); }

struct CellType {
  int tag;
  Letter s;
  Word q;  // short corner power, e.g. baba
  Word p;  // long corner, s q^-1 s, e.g. cababc
};

inline std::array<CellType, 3> const& cell_types() {
  static std::array<CellType, 3> const types{{
      {1, C, Word{B, A, B, A}, Word{C, A, B, A, B, C}},
      {2, B, Word{C, A, C, A}, Word{B, A, C, A, C, B}},
      {3, A, Word{B, C, B, C}, Word{A, C, B, C, B, A}},
  }};
  return types;
}

inline CellType const& cell_type_of_short(Letter s) {
  for (auto const& t : cell_types()) {
    if (t.s == s) {
      return t;
    }
  }
  throw Error("no cell type with short corner " + std::to_string(s));
}

// The cell relator P d s d Q d s d.
inline Word cell_relator(CellType const& t) {
  return concat(t.p, Word{D, t.s, D}, t.q, Word{D, t.s, D});
}

inline bool h3_trivial(Word const& w) {
  for (Letter l : w) {
    if (l == D) {
      throw Error("h3_trivial: word contains d");
    }
  }
  return free_reduce(w).empty();
}

// ------------------------------------------------------------ corner language

// P^exponent (long) or Q^exponent.
struct CornerFactor {
  bool long_corner = false;
  int exponent = 0;
  friend bool operator==(CornerFactor const&, CornerFactor const&) = default;
};

using CornerFactorization = std::vector<CornerFactor>;

inline Word corner_word(CornerFactorization const& f, CellType const& t) {
  Word out;
  for (auto const& x : f) {
    Word q = x.exponent > 0 ? t.q : reversed(t.q);
    // P^n = s Q^-n s
    if (x.long_corner) {
      q = reversed(q);
    }
    Word power;
    for (int i = 0; i < (x.exponent < 0 ? -x.exponent : x.exponent); ++i) {
      power = concat(std::move(power), q);
    }
    if (x.long_corner) {
      power = concat(Word{t.s}, power, Word{t.s});
    }
    out = concat(std::move(out), power);
  }
  return free_reduce(out);
}

namespace detail {

// Nonzero n with chunk == q^n, if any.
inline std::optional<int> power_of(Word const& chunk, Word const& q) {
  if (chunk.empty() || chunk.size() % q.size() != 0) {
    return std::nullopt;
  }
  Word qi = reversed(q);
  for (auto const& [base, sign] : {std::pair{q, 1}, std::pair{qi, -1}}) {
    bool ok = true;
    for (std::size_t i = 0; i < chunk.size() && ok; ++i) {
      ok = chunk[i] == base[i % base.size()];
    }
    if (ok) {
      return sign * static_cast<int>(chunk.size() / q.size());
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Factorization of a freely reduced H_3 word in <P> * <Q>.  Reduced elements
// are plain concatenations Q^m0 (s Q^n1 s) Q^m1 ..., so the word splits on
// the letter s.
inline std::optional<CornerFactorization> corner_language_parse(Word const& u,
                                                                CellType const& t) {
  if (!is_freely_reduced(u)) {
    return std::nullopt;
  }
  CornerFactorization out;
  std::size_t i = 0;
  while (i < u.size()) {
    if (u[i] == t.s) {
      std::size_t j = i + 1;
      while (j < u.size() && u[j] != t.s) {
        ++j;
      }
      if (j == u.size()) {
        return std::nullopt;
      }
      auto n = detail::power_of(Word(u.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                     u.begin() + static_cast<std::ptrdiff_t>(j)),
                                t.q);
      if (!n) {
        return std::nullopt;
      }
      out.push_back({true, -*n});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < u.size() && u[j] != t.s) {
        ++j;
      }
      auto n = detail::power_of(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                                     u.begin() + static_cast<std::ptrdiff_t>(j)),
                                t.q);
      if (!n) {
        return std::nullopt;
      }
      out.push_back({false, *n});
      i = j;
    }
  }
  return out;
}

inline CornerFactorization opposite(CornerFactorization f) {
  for (auto& x : f) {
    x.long_corner = !x.long_corner;
  }
  return f;
}

inline std::optional<Word> opposite_label(Word const& u, CellType const& t) {
  auto f = corner_language_parse(u, t);
  if (!f) {
    return std::nullopt;
  }
  return corner_word(opposite(*f), t);
}

// Single syllables P^{+-1}, Q^{+-1} of a factorization, in order.
inline std::vector<CornerFactor> syllables(CornerFactorization const& f) {
  std::vector<CornerFactor> out;
  for (auto const& x : f) {
    for (int i = 0; i < (x.exponent < 0 ? -x.exponent : x.exponent); ++i) {
      out.push_back({x.long_corner, x.exponent < 0 ? -1 : 1});
    }
  }
  return out;
}

// D y D for a single syllable y, i.e. the inverse opposite label.
inline Word conj_by_cell(CornerFactor y, CellType const& t) {
  return corner_word({{!y.long_corner, -y.exponent}}, t);
}

// --------------------------------------------------------- quick certificates

struct Obstruction {
  // "abelianization" or "retraction"
  std::string kind;
  std::string detail;
  Word image;
};

// Kill one letter: H_4 -> Z2*Z2*Z2 on the other three.
inline Word kill_letter(Word const& w, Letter killed) {
  Word out;
  for (Letter l : w) {
    if (l != killed) {
      out.push_back(l);
    }
  }
  return free_reduce(out);
}

inline bool retractions_verified() {
  static bool const ok = [] {
    auto const& p = presentation().presentation;
    for (Letter k = 0; k < 4; ++k) {
      std::vector<Word> images;
      for (Letter l = 0; l < 4; ++l) {
        images.push_back(l == k ? Word{} : Word{l});
      }
      HomomorphismSpec spec{&p, images, [](Word const& x) { return free_reduce(x).empty(); }};
      if (!verify_homomorphism(spec).ok) {
        return false;
      }
    }
    return true;
  }();
  return ok;
}

inline std::optional<Obstruction> quick_obstruction(Word const& w) {
  std::array<int, 4> parity{};
  for (Letter l : w) {
    parity.at(l) ^= 1;
  }
  if (parity != std::array<int, 4>{}) {
    std::string v;
    for (int x : parity) {
      v += static_cast<char>('0' + x);
    }
    return Obstruction{"abelianization", "image " + v + " in Z2^4", {}};
  }
  if (!retractions_verified()) {
    throw Error("H_4 retractions failed verification");
  }
  for (Letter k : {D, C, B, A}) {
    Word img = kill_letter(w, k);
    if (!img.empty()) {
      return Obstruction{"retraction",
                         std::string("killing ") + alphabet().name(k) +
                             " leaves a nontrivial element of Z2*Z2*Z2",
                         img};
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------- the search

enum class Verdict { trivial, nontrivial, unknown };

inline char const* to_string(Verdict v) {
  switch (v) {
    case Verdict::trivial: return "Trivial";
    case Verdict::nontrivial: return "NonTrivial";
    case Verdict::unknown: return "Unknown";
  }
  return "?";
}

struct Options {
  // Cell budget; 4 |w|_d^2 when absent.
  std::optional<std::size_t> budget;
  std::size_t node_cap = 300000;
  // Extra letters allowed over the input length in intermediate words.
  std::size_t length_slack = 24;
};

struct Result {
  Verdict verdict = Verdict::unknown;
  // Cyclic certificate from the input to the empty word (Trivial only).
  DerivationCertificate certificate;
  std::optional<Obstruction> obstruction;
  std::size_t budget = 0;
  std::size_t cells_used = 0;
  std::size_t nodes = 0;
  bool node_cap_hit = false;
};

inline std::size_t d_count(Word const& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), D));
}

namespace detail {

struct Move {
  Word result;
  std::vector<RewriteStep> steps;
};

// Segment j lies strictly between the j-th d and the next one, cyclically.
inline std::vector<std::size_t> d_positions(Word const& w) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == D) {
      pos.push_back(i);
    }
  }
  return pos;
}

inline Word segment(Word const& w, std::vector<std::size_t> const& pos, std::size_t j) {
  std::size_t from = pos[j] + 1;
  std::size_t to = pos[(j + 1) % pos.size()];
  Word s;
  for (std::size_t i = from % w.size(); i != to; i = (i + 1) % w.size()) {
    s.push_back(w[i]);
  }
  return s;
}

// d l d -> s d phi(l) d s, one relator step per syllable of l.
inline Move peel_long(Word const& w, std::size_t d_at, CornerFactorization const& f,
                      CellType const& t) {
  Derivation der(w, presentation().index, true);
  der.rotate(d_at);
  // Split powers of P into single syllables: s Q^-n s -> (s Q^-1 s)^n.
  std::size_t pos = 1;
  for (auto const& x : f) {
    int n = x.exponent < 0 ? -x.exponent : x.exponent;
    if (x.long_corner) {
      pos += 1;
      for (int i = 0; i < n; ++i) {
        pos += t.q.size();
        if (i + 1 < n) {
          der.insert(pos, Word{t.s, t.s});
          pos += 2;
        }
      }
      pos += 1;
    } else {
      pos += t.q.size() * static_cast<std::size_t>(n);
    }
  }
  auto ys = syllables(f);
  pos = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    std::size_t len = ys[i].long_corner ? t.p.size() : t.q.size();
    if (i + 1 < ys.size()) {
      der.insert(pos + 1 + len, Word{D, D});
    }
    Word image = conj_by_cell(ys[i], t);
    der.replace(pos, len + 2, concat(Word{t.s, D}, image, Word{D, t.s}));
    pos += 4 + image.size();
  }
  der.cyclic_reduce();
  return {der.current(), der.steps()};
}

// d s d -> phi(u) d s d u^-1, one relator step per syllable of u.
inline Move peel_short(Word const& w, std::size_t d_at, CornerFactorization const& u,
                       CellType const& t) {
  Derivation der(w, presentation().index, true);
  der.rotate(d_at);
  std::size_t pos = 0;
  for (auto const& y : syllables(u)) {
    Word image = conj_by_cell(y, t);
    Word inv = reversed(corner_word({y}, t));
    der.replace(pos, 3, concat(image, Word{D, t.s, D}, inv));
    pos += image.size();
  }
  der.cyclic_reduce();
  return {der.current(), der.steps()};
}

// Factorizations of every syllable-prefix of the longest parsable prefix.
inline std::vector<CornerFactorization> prefix_parses(Word const& x, CellType const& t) {
  std::vector<CornerFactorization> out;
  for (std::size_t len = x.size(); len >= 4; --len) {
    if (auto f = corner_language_parse(Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len)), t)) {
      out.push_back(*f);
    }
  }
  return out;
}

inline CornerFactorization inverse(CornerFactorization f) {
  std::reverse(f.begin(), f.end());
  for (auto& x : f) {
    x.exponent = -x.exponent;
  }
  return f;
}

// Candidate corner labels u for the short-corner contraction at a d s d with
// left neighbour segment `left` and right neighbour segment `right`: short
// products, labels cancelling into the right segment (u^-1 right), and labels
// whose image phi(u) cancels into the left segment.
inline std::vector<CornerFactorization> short_candidates(Word const& left, Word const& right,
                                                         CellType const& t) {
  std::vector<CornerFactorization> out;
  auto add = [&](CornerFactorization f) {
    if (!f.empty() && std::find(out.begin(), out.end(), f) == out.end()) {
      out.push_back(std::move(f));
    }
  };
  for (auto const& f : prefix_parses(right, t)) {
    add(f);
  }
  // left ends with phi(u)^-1 = opposite(u).
  Word rl = reversed(left);
  for (auto const& f : prefix_parses(rl, t)) {
    // f parses a prefix of left^R, i.e. a suffix of left read backwards.
    add(opposite(inverse(f)));
  }
  for (bool lc : {false, true}) {
    for (int e : {1, -1}) {
      add({{lc, e}});
    }
  }
  return out;
}

class Searcher {
 public:
  Searcher(Options const& opt, std::size_t max_len) : opt_(opt), max_len_(max_len) {}

  std::size_t nodes() const noexcept { return nodes_; }
  bool cap_hit() const noexcept { return cap_hit_; }

  // Depth-first search with `cells` remaining; fills `path` on success.
  bool run(Word const& w, std::size_t cells, std::vector<std::vector<RewriteStep>>& path) {
    if (w.empty()) {
      return true;
    }
    if (cells == 0 || cap_hit_) {
      return false;
    }
    auto pos = d_positions(w);
    if (pos.empty()) {
      return false;
    }
    std::string key = state_key(w);
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= cells) {
      return false;
    }
    if (++nodes_ > opt_.node_cap) {
      cap_hit_ = true;
      return false;
    }
    for (auto& m : moves(w, pos)) {
      if (m.result.size() > max_len_) {
        continue;
      }
      path.push_back(std::move(m.steps));
      if (run(m.result, cells - 1, path)) {
        return true;
      }
      path.pop_back();
      if (cap_hit_) {
        return false;
      }
    }
    auto& slot = failed_[key];
    slot = std::max(slot, cells);
    return false;
  }

 private:
  static std::string state_key(Word const& w) {
    Word k = least_rotation(w);
    return std::string(k.begin(), k.end());
  }

  std::vector<Move> moves(Word const& w, std::vector<std::size_t> const& pos) const {
    std::vector<Move> out;
    std::size_t const m = pos.size();
    for (std::size_t j = 0; j < m; ++j) {
      Word seg = segment(w, pos, j);
      for (auto const& t : cell_types()) {
        if (auto f = corner_language_parse(seg, t); f && !f->empty()) {
          out.push_back(peel_long(w, pos[j], *f, t));
        }
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      Word seg = segment(w, pos, j);
      if (seg.size() != 1) {
        continue;
      }
      auto const& t = cell_type_of_short(seg[0]);
      Word left = segment(w, pos, (j + m - 1) % m);
      Word right = segment(w, pos, (j + 1) % m);
      for (auto const& u : short_candidates(left, right, t)) {
        out.push_back(peel_short(w, pos[j], u, t));
      }
    }
    // Prefer moves that shorten the word.
    std::stable_sort(out.begin(), out.end(), [](Move const& a, Move const& b) {
      return a.result.size() < b.result.size();
    });
    return out;
  }

  Options opt_;
  std::size_t max_len_;
  std::size_t nodes_ = 0;
  bool cap_hit_ = false;
  std::unordered_map<std::string, std::size_t> failed_;
};

}  // namespace detail

inline Result h4_is_trivial(Word const& w, Options const& opt = {}) {
  for (Letter l : w) {
    if (l > D) {
      throw Error("H_4 word uses a letter outside a, b, c, d");
    }
  }
  Result r;
  Derivation start(w, presentation().index, true);
  start.cyclic_reduce();
  Word const& core = start.current();
  std::size_t const md = d_count(core);
  r.budget = opt.budget.value_or(4 * md * md);
  if (auto obs = quick_obstruction(core)) {
    r.verdict = Verdict::nontrivial;
    r.obstruction = std::move(obs);
    return r;
  }
  std::vector<std::vector<RewriteStep>> path;
  bool found = core.empty();
  detail::Searcher search(opt, w.size() + opt.length_slack);
  // Iterative deepening on the number of contracted cells.
  for (std::size_t cells = 1; !found && cells <= r.budget && !search.cap_hit(); ++cells) {
    path.clear();
    found = search.run(core, cells, path);
  }
  r.nodes = search.nodes();
  r.node_cap_hit = search.cap_hit();
  if (!found) {
    r.verdict = Verdict::unknown;
    return r;
  }
  r.verdict = Verdict::trivial;
  r.cells_used = path.size();
  r.certificate = start.certificate();
  for (auto const& steps : path) {
    r.certificate.steps.insert(r.certificate.steps.end(), steps.begin(), steps.end());
  }
  r.certificate.end = Word{};
  return r;
}

}  // namespace gnk::h4

namespace gnk::g54 {

inline Alphabet const& alphabet() {
  static Alphabet const al = Alphabet::multiindexed(5, 4);
  return al;
}

inline Word parse(std::string_view text) { return parse_word(text, alphabet()); }
inline std::string print(Word const& w) { return print_word(w, alphabet()); }

struct Result {
  h4::Verdict verdict = h4::Verdict::unknown;
  FreeProductWord index_image;
  // Elimination of b_5 (G_5^4 relators), then the H_4 search.
  std::optional<DerivationCertificate> elimination;
  Word h4_word;
  std::optional<h4::Result> h4;
};

// b_1..b_4 of G_5^4 generate H_4, with b_i -> letter i.
inline Result wp_g54(Word const& w, h4::Options const& opt = {}) {
  Result r;
  r.index_image = index_map(w, 4);
  if (!r.index_image.empty()) {
    r.verdict = h4::Verdict::nontrivial;
    return r;
  }
  auto e = eliminate_last_letter(w, 4);
  r.h4_word = e.result;
  r.elimination = std::move(e.certificate);
  r.h4 = h4::h4_is_trivial(r.h4_word, opt);
  r.verdict = r.h4->verdict;
  return r;
}

}  // namespace gnk::g54
