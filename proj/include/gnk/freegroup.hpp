// Free groups of finite rank: reduced signed words, endomorphisms, Stallings
// subgroup graphs, bounded fixed subgroups, abelianized lattice certificates
// and bounded twisted-conjugacy search.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "words.hpp"

namespace gnk::fg {

// A letter is +(i+1) for basis element i and -(i+1) for its inverse.
using SignedLetter = int;

inline int basis_of(SignedLetter l) { return (l > 0 ? l : -l) - 1; }
inline int exponent_of(SignedLetter l) { return l > 0 ? 1 : -1; }
inline SignedLetter make_letter(int basis, int exponent) {
  return exponent > 0 ? basis + 1 : -(basis + 1);
}

struct SignedWord {
  std::vector<SignedLetter> letters;

  SignedWord() = default;
  SignedWord(std::initializer_list<SignedLetter> l) : letters(l) {}
  explicit SignedWord(std::vector<SignedLetter> l) : letters(std::move(l)) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }

  friend bool operator==(SignedWord const&, SignedWord const&) = default;
  friend auto operator<=>(SignedWord const&, SignedWord const&) = default;
};

inline bool is_reduced(SignedWord const& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w.letters[i] == -w.letters[i - 1]) {
      return false;
    }
  }
  return true;
}

inline SignedWord reduce(SignedWord const& w) {
  SignedWord out;
  out.letters.reserve(w.size());
  for (SignedLetter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -l) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

inline SignedWord multiply(SignedWord const& a, SignedWord const& b) {
  SignedWord out = a;
  for (SignedLetter l : b.letters) {
    if (!out.letters.empty() && out.letters.back() == -l) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

template <typename... Ws>
SignedWord multiply(SignedWord const& a, SignedWord const& b, Ws const&... rest) {
  return multiply(multiply(a, b), rest...);
}

inline SignedWord invert(SignedWord const& w) {
  SignedWord out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(-*it);
  }
  return out;
}

inline SignedWord power(SignedWord const& w, int n) {
  SignedWord base = n < 0 ? invert(w) : w;
  SignedWord out;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) {
    out = multiply(out, base);
  }
  return out;
}

inline SignedWord letter_word(int basis, int exponent = 1) {
  return SignedWord{make_letter(basis, exponent)};
}

// Cyclically reduced core and the conjugator c with w = c^-1 core c.
inline std::pair<SignedWord, SignedWord> cyclic_reduce(SignedWord const& w) {
  SignedWord r = reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  std::vector<SignedLetter> c;
  while (hi - lo >= 2 && r.letters[lo] == -r.letters[hi - 1]) {
    c.push_back(r.letters[hi - 1]);
    ++lo;
    --hi;
  }
  SignedWord core(std::vector<SignedLetter>(r.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                            r.letters.begin() + static_cast<std::ptrdiff_t>(hi)));
  std::reverse(c.begin(), c.end());
  return {core, SignedWord(std::move(c))};
}

// Exact conjugacy in a free group: g with g^-1 u g = v, if any.
inline std::optional<SignedWord> conjugator(SignedWord const& u, SignedWord const& v) {
  auto [cu, ku] = cyclic_reduce(u);
  auto [cv, kv] = cyclic_reduce(v);
  if (cu.size() != cv.size()) {
    return std::nullopt;
  }
  // u = ku^-1 cu ku, v = kv^-1 cv kv.
  for (std::size_t i = 0; i < std::max<std::size_t>(cu.size(), 1); ++i) {
    SignedWord rot;
    SignedWord prefix;
    for (std::size_t j = 0; j < cu.size(); ++j) {
      rot.letters.push_back(cu.letters[(i + j) % cu.size()]);
    }
    for (std::size_t j = 0; j < i; ++j) {
      prefix.letters.push_back(cu.letters[j]);
    }
    if (rot == cv) {
      // prefix^-1 cu prefix = rot
      return multiply(invert(ku), prefix, kv);
    }
  }
  return std::nullopt;
}

// Single-character names; the inverse of `x` prints as `X`.
class Names {
 public:
  Names() : Names(std::vector<char>{'x', 'y', 'z', 't'}) {}
  explicit Names(std::vector<char> chars) : chars_(std::move(chars)) {}

  std::string print(SignedWord const& w) const {
    if (w.empty()) {
      return "1";
    }
    std::string s;
    for (SignedLetter l : w.letters) {
      auto b = static_cast<std::size_t>(basis_of(l));
      char c = b < chars_.size() ? chars_[b] : '?';
      s += l > 0 ? c : static_cast<char>(c - 'a' + 'A');
    }
    return s;
  }

  SignedWord parse(std::string_view text) const {
    SignedWord w;
    if (text == "1") {
      return w;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == ' ') {
        continue;
      }
      bool inv = c >= 'A' && c <= 'Z';
      char lower = inv ? static_cast<char>(c - 'A' + 'a') : c;
      auto it = std::find(chars_.begin(), chars_.end(), lower);
      if (it == chars_.end()) {
        throw Error("unknown free-group letter '" + std::string(1, c) +
                    "' at position " + std::to_string(i));
      }
      w.letters.push_back(make_letter(static_cast<int>(it - chars_.begin()), inv ? -1 : 1));
    }
    return reduce(w);
  }

 private:
  std::vector<char> chars_;
};

// Visits every reduced word of length <= max_len in shortlex order.
// Returning false from the visitor stops the enumeration.
inline void for_each_reduced_word(int rank, std::size_t max_len,
                                  std::function<bool(SignedWord const&)> const& visit) {
  std::vector<SignedWord> layer{SignedWord{}};
  if (!visit(layer[0])) {
    return;
  }
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<SignedWord> next;
    for (auto const& w : layer) {
      for (int b = 0; b < rank; ++b) {
        for (int e : {1, -1}) {
          SignedLetter l = make_letter(b, e);
          if (!w.empty() && w.letters.back() == -l) {
            continue;
          }
          SignedWord x = w;
          x.letters.push_back(l);
          if (!visit(x)) {
            return;
          }
          next.push_back(std::move(x));
        }
      }
    }
    layer = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Endomorphisms

struct FreeEndomorphism {
  int rank = 0;
  std::vector<SignedWord> images;
  // Set only once a two-sided inverse has been exhibited.
  bool automorphism_verified = false;

  static FreeEndomorphism identity(int rank) {
    FreeEndomorphism e;
    e.rank = rank;
    for (int i = 0; i < rank; ++i) {
      e.images.push_back(letter_word(i));
    }
    e.automorphism_verified = true;
    return e;
  }

  // x_i -> x_i^-1 for every basis letter.
  static FreeEndomorphism inversion(int rank) {
    FreeEndomorphism e;
    e.rank = rank;
    for (int i = 0; i < rank; ++i) {
      e.images.push_back(letter_word(i, -1));
    }
    e.automorphism_verified = true;
    return e;
  }

  friend bool operator==(FreeEndomorphism const& a, FreeEndomorphism const& b) {
    return a.rank == b.rank && a.images == b.images;
  }
};

inline SignedWord apply(FreeEndomorphism const& e, SignedWord const& w) {
  SignedWord out;
  for (SignedLetter l : w.letters) {
    auto const& img = e.images.at(static_cast<std::size_t>(basis_of(l)));
    out = multiply(out, l > 0 ? img : invert(img));
  }
  return out;
}

// (f o g)(w) = f(g(w)).
inline FreeEndomorphism compose(FreeEndomorphism const& f, FreeEndomorphism const& g) {
  FreeEndomorphism out;
  out.rank = g.rank;
  for (auto const& img : g.images) {
    out.images.push_back(apply(f, img));
  }
  out.automorphism_verified = f.automorphism_verified && g.automorphism_verified;
  return out;
}

// Looks for preimages of the basis among words of length <= max_len and
// checks both composites are the identity.
inline std::optional<FreeEndomorphism> find_inverse(FreeEndomorphism const& e,
                                                    std::size_t max_len = 5) {
  FreeEndomorphism inv;
  inv.rank = e.rank;
  inv.images.resize(static_cast<std::size_t>(e.rank));
  std::vector<bool> found(static_cast<std::size_t>(e.rank), false);
  int remaining = e.rank;
  for_each_reduced_word(e.rank, max_len, [&](SignedWord const& w) {
    SignedWord img = apply(e, w);
    if (img.size() == 1 && img.letters[0] > 0) {
      auto b = static_cast<std::size_t>(basis_of(img.letters[0]));
      if (!found[b]) {
        found[b] = true;
        inv.images[b] = w;
        --remaining;
      }
    }
    return remaining > 0;
  });
  if (remaining > 0) {
    return std::nullopt;
  }
  auto id = FreeEndomorphism::identity(e.rank);
  if (!(compose(e, inv) == id) || !(compose(inv, e) == id)) {
    return std::nullopt;
  }
  inv.automorphism_verified = true;
  return inv;
}

inline bool verify_automorphism(FreeEndomorphism& e, std::size_t max_len = 5) {
  if (!e.automorphism_verified) {
    e.automorphism_verified = find_inverse(e, max_len).has_value();
  }
  return e.automorphism_verified;
}

// ---------------------------------------------------------------------------
// Stallings graphs

class SubgroupGraph {
 public:
  struct Edge {
    int from;
    int label;
    int to;
    friend bool operator==(Edge const&, Edge const&) = default;
    friend auto operator<=>(Edge const&, Edge const&) = default;
  };

  explicit SubgroupGraph(int rank = 0) : rank_(rank) { new_vertex(); }

  int rank() const noexcept { return rank_; }
  int basepoint() const noexcept { return 0; }
  std::size_t vertex_count() const noexcept { return adj_.size(); }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (auto const& a : adj_) {
      for (int l = 0; l < rank_; ++l) {
        n += a[slot(l, 1)] >= 0 ? 1 : 0;
      }
    }
    return n;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      for (int l = 0; l < rank_; ++l) {
        int t = adj_[v][slot(l, 1)];
        if (t >= 0) {
          out.push_back({static_cast<int>(v), l, t});
        }
      }
    }
    return out;
  }

  // Target of reading letter l at v, or -1.
  int follow(int v, SignedLetter l) const {
    return adj_[static_cast<std::size_t>(v)][slot(basis_of(l), exponent_of(l))];
  }

  std::optional<int> read(SignedWord const& w, int from = 0) const {
    int v = from;
    for (SignedLetter l : w.letters) {
      v = follow(v, l);
      if (v < 0) {
        return std::nullopt;
      }
    }
    return v;
  }

  bool contains(SignedWord const& w) const {
    auto end = read(reduce(w));
    return end && *end == basepoint();
  }

  // Rank of the represented subgroup, E - V + 1 on the connected graph.
  long long subgroup_rank() const {
    return static_cast<long long>(edge_count()) - static_cast<long long>(vertex_count()) + 1;
  }

  // Canonical form: vertices renumbered in breadth-first order from the
  // basepoint, edges sorted.  Equal for isomorphic based graphs.
  std::vector<Edge> canonical_edges() const {
    std::vector<int> order(adj_.size(), -1);
    std::queue<int> q;
    order[0] = 0;
    int next = 1;
    q.push(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (std::size_t s = 0; s < static_cast<std::size_t>(2 * rank_); ++s) {
        int t = adj_[static_cast<std::size_t>(v)][s];
        if (t >= 0 && order[static_cast<std::size_t>(t)] < 0) {
          order[static_cast<std::size_t>(t)] = next++;
          q.push(t);
        }
      }
    }
    std::vector<Edge> out;
    for (auto const& e : edges()) {
      out.push_back({order[static_cast<std::size_t>(e.from)], e.label,
                     order[static_cast<std::size_t>(e.to)]});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Removes hanging trees away from the basepoint.
  void trim_to_core() {
    bool changed = true;
    std::vector<bool> dead(adj_.size(), false);
    while (changed) {
      changed = false;
      for (std::size_t v = 1; v < adj_.size(); ++v) {
        if (dead[v]) {
          continue;
        }
        int degree = 0;
        for (int t : adj_[v]) {
          degree += t >= 0 ? 1 : 0;
        }
        if (degree <= 1) {
          for (std::size_t s = 0; s < adj_[v].size(); ++s) {
            int t = adj_[v][s];
            if (t >= 0) {
              adj_[static_cast<std::size_t>(t)][s ^ 1U] = -1;
              adj_[v][s] = -1;
            }
          }
          dead[v] = true;
          changed = true;
        }
      }
    }
    compact(dead);
  }

  std::string to_dot(Names const& names = Names()) const {
    std::ostringstream os;
    os << "digraph subgroup {\n  node [shape=circle];\n  0 [shape=doublecircle];\n";
    for (auto const& e : edges()) {
      os << "  " << e.from << " -> " << e.to << " [label=\""
         << names.print(letter_word(e.label)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  // Folds the bouquet of loops labelled by `generators` at the basepoint.
  static SubgroupGraph build(int rank, std::vector<SignedWord> const& generators) {
    std::vector<Edge> raw;
    int vertices = 1;
    for (auto const& w : generators) {
      SignedWord r = reduce(w);
      int v = 0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        int t = i + 1 == r.size() ? 0 : vertices++;
        SignedLetter l = r.letters[i];
        if (l > 0) {
          raw.push_back({v, basis_of(l), t});
        } else {
          raw.push_back({t, basis_of(l), v});
        }
        v = t;
      }
    }
    std::vector<int> parent(static_cast<std::size_t>(vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return false;
      }
      if (b < a) {
        std::swap(a, b);
      }
      parent[static_cast<std::size_t>(b)] = a;
      return true;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<int, std::size_t>, int> seen;
      for (auto const& e : raw) {
        int u = find(e.from);
        int v = find(e.to);
        auto [it1, fresh1] = seen.emplace(std::make_pair(u, slot(e.label, 1)), v);
        if (!fresh1 && find(it1->second) != v) {
          changed |= unite(it1->second, v);
        }
        u = find(e.from);
        v = find(e.to);
        auto [it2, fresh2] = seen.emplace(std::make_pair(v, slot(e.label, -1)), u);
        if (!fresh2 && find(it2->second) != u) {
          changed |= unite(it2->second, u);
        }
      }
    }
    std::vector<int> remap(static_cast<std::size_t>(vertices), -1);
    SubgroupGraph g(rank);
    for (int v = 1; v < vertices; ++v) {
      if (find(v) == v) {
        remap[static_cast<std::size_t>(v)] = g.new_vertex();
      }
    }
    remap[0] = 0;
    for (auto const& e : raw) {
      int u = remap[static_cast<std::size_t>(find(e.from))];
      int v = remap[static_cast<std::size_t>(find(e.to))];
      g.adj_[static_cast<std::size_t>(u)][slot(e.label, 1)] = v;
      g.adj_[static_cast<std::size_t>(v)][slot(e.label, -1)] = u;
    }
    return g;
  }

  // True when no vertex has two edges with the same label and direction.
  bool is_folded() const {
    std::vector<std::vector<int>> count(adj_.size(),
                                        std::vector<int>(static_cast<std::size_t>(2 * rank_), 0));
    for (auto const& e : edges()) {
      if (++count[static_cast<std::size_t>(e.from)][slot(e.label, 1)] > 1 ||
          ++count[static_cast<std::size_t>(e.to)][slot(e.label, -1)] > 1) {
        return false;
      }
    }
    return true;
  }

 private:
  static std::size_t slot(int label, int exponent) {
    return static_cast<std::size_t>(2 * label + (exponent > 0 ? 0 : 1));
  }

  int new_vertex() {
    adj_.emplace_back(static_cast<std::size_t>(2 * rank_), -1);
    return static_cast<int>(adj_.size()) - 1;
  }

  void compact(std::vector<bool> const& dead) {
    std::vector<int> remap(adj_.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (!dead[v]) {
        remap[v] = next++;
      }
    }
    std::vector<std::vector<int>> adj;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (dead[v]) {
        continue;
      }
      auto row = adj_[v];
      for (int& t : row) {
        if (t >= 0) {
          t = remap[static_cast<std::size_t>(t)];
        }
      }
      adj.push_back(std::move(row));
    }
    adj_ = std::move(adj);
  }

  int rank_;
  std::vector<std::vector<int>> adj_;
};

inline SubgroupGraph stallings_build(int rank, std::vector<SignedWord> const& generators) {
  return SubgroupGraph::build(rank, generators);
}

// A word g such that g^-1 . special . g is accepted, found as the inverse of
// the label of a special-free path from the basepoint to a vertex carrying a
// special self-loop.
inline std::optional<SignedWord> graph_find_special_loop(SubgroupGraph const& g,
                                                         int special) {
  std::vector<std::optional<SignedWord>> path(g.vertex_count());
  std::queue<int> q;
  path[0] = SignedWord{};
  q.push(0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (g.follow(v, make_letter(special, 1)) == v) {
      SignedWord result = invert(*path[static_cast<std::size_t>(v)]);
      SignedWord check = multiply(invert(result), letter_word(special), result);
      if (!g.contains(check)) {
        throw Error("graph_find_special_loop: postcondition violated");
      }
      return result;
    }
    for (int b = 0; b < g.rank(); ++b) {
      if (b == special) {
        continue;
      }
      for (int e : {1, -1}) {
        SignedLetter l = make_letter(b, e);
        int t = g.follow(v, l);
        if (t >= 0 && !path[static_cast<std::size_t>(t)]) {
          SignedWord p = *path[static_cast<std::size_t>(v)];
          p.letters.push_back(l);
          path[static_cast<std::size_t>(t)] = std::move(p);
          q.push(t);
        }
      }
    }
  }
  return std::nullopt;
}

// Subgroup generated by the fixed words of length <= radius.  A subgroup of
// Fix(e); not claimed to be all of it.
inline SubgroupGraph fix_subgroup_bounded(FreeEndomorphism const& e, std::size_t radius) {
  std::vector<SignedWord> fixed;
  for_each_reduced_word(e.rank, radius, [&](SignedWord const& w) {
    if (!w.empty() && apply(e, w) == w) {
      fixed.push_back(w);
    }
    return true;
  });
  return stallings_build(e.rank, fixed);
}

// ---------------------------------------------------------------------------
// Abelianization

using IntVector = std::vector<long long>;

inline IntVector abelianize(int rank, SignedWord const& w) {
  IntVector v(static_cast<std::size_t>(rank), 0);
  for (SignedLetter l : w.letters) {
    v[static_cast<std::size_t>(basis_of(l))] += exponent_of(l);
  }
  return v;
}

// Sublattice of Z^dim spanned by columns, kept in lower-triangular column
// echelon form: column j has its first nonzero (positive) entry at pivot row
// pivots[j], strictly increasing in j; entries of earlier columns in a pivot
// row are reduced into [0, pivot).
class AbelianLattice {
 public:
  AbelianLattice(std::size_t dim, std::vector<IntVector> columns) : dim_(dim) {
    std::size_t col = 0;
    for (std::size_t row = 0; row < dim_ && col < columns.size(); ++row) {
      // gcd-eliminate row `row` across columns[col..]
      while (true) {
        std::size_t best = columns.size();
        for (std::size_t j = col; j < columns.size(); ++j) {
          if (columns[j][row] != 0 &&
              (best == columns.size() || abs64(columns[j][row]) < abs64(columns[best][row]))) {
            best = j;
          }
        }
        if (best == columns.size()) {
          break;
        }
        std::swap(columns[col], columns[best]);
        bool done = true;
        for (std::size_t j = col + 1; j < columns.size(); ++j) {
          if (columns[j][row] != 0) {
            long long q = columns[j][row] / columns[col][row];
            axpy(columns[j], -q, columns[col]);
            if (columns[j][row] != 0) {
              done = false;
            }
          }
        }
        if (done) {
          break;
        }
      }
      if (col < columns.size() && columns[col][row] != 0) {
        if (columns[col][row] < 0) {
          for (auto& x : columns[col]) {
            x = -x;
          }
        }
        pivots_.push_back(row);
        ++col;
      }
    }
    columns.resize(col);
    columns_ = std::move(columns);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        long long p = columns_[j][pivots_[j]];
        long long x = columns_[i][pivots_[j]];
        long long q = floor_div(x, p);
        axpy(columns_[i], -q, columns_[j]);
      }
    }
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::vector<IntVector> const& columns() const noexcept { return columns_; }
  std::vector<std::size_t> const& pivots() const noexcept { return pivots_; }

  bool contains(IntVector v) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      std::size_t row = pivots_[j];
      for (std::size_t r = (j == 0 ? 0 : pivots_[j - 1] + 1); r < row; ++r) {
        if (v[r] != 0) {
          return false;
        }
      }
      long long p = columns_[j][row];
      if (v[row] % p != 0) {
        return false;
      }
      axpy(v, -(v[row] / p), columns_[j]);
    }
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  }

 private:
  static long long abs64(long long x) { return x < 0 ? -x : x; }

  static long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
      --q;
    }
    return q;
  }

  static void axpy(IntVector& y, long long a, IntVector const& x) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      long long prod = 0;
      if (__builtin_mul_overflow(a, x[i], &prod) || __builtin_add_overflow(y[i], prod, &y[i])) {
        throw Error("AbelianLattice: integer overflow");
      }
    }
  }

  std::size_t dim_;
  std::vector<IntVector> columns_;
  std::vector<std::size_t> pivots_;
};

// Column j is the abelianized image of basis element j.
inline std::vector<IntVector> abelian_matrix(FreeEndomorphism const& e) {
  std::vector<IntVector> cols;
  for (auto const& img : e.images) {
    cols.push_back(abelianize(e.rank, img));
  }
  return cols;
}

struct AbelianCertificate {
  bool passes = true;  // false: certified not twisted-conjugate
  IntVector difference;
  std::vector<IntVector> lattice_columns;
};

// Necessary condition for e(g)^-1 u g = v:  v_ab - u_ab in Im(I - e_ab).
inline AbelianCertificate abelian_twisted_certificate(FreeEndomorphism const& e,
                                                      SignedWord const& u,
                                                      SignedWord const& v) {
  auto m = abelian_matrix(e);
  auto const n = static_cast<std::size_t>(e.rank);
  std::vector<IntVector> cols(n, IntVector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      cols[j][i] = (i == j ? 1 : 0) - m[j][i];
    }
  }
  AbelianLattice lattice(n, cols);
  IntVector diff = abelianize(e.rank, v);
  IntVector au = abelianize(e.rank, u);
  for (std::size_t i = 0; i < n; ++i) {
    diff[i] -= au[i];
  }
  return {lattice.contains(diff), diff, lattice.columns()};
}

inline bool is_twisted_conjugator(FreeEndomorphism const& e, SignedWord const& u,
                                  SignedWord const& v, SignedWord const& g) {
  return multiply(invert(apply(e, g)), u, g) == reduce(v);
}

// Exhaustive search over reduced g with |g| <= bound for e(g)^-1 u g = v,
// split as g = p q:  e(p)^-1 u p == e(q) v q^-1.
inline std::optional<SignedWord> twisted_conjugate_bounded(FreeEndomorphism const& e,
                                                           SignedWord const& u,
                                                           SignedWord const& v,
                                                           std::size_t bound) {
  std::size_t left_len = (bound + 1) / 2;
  std::size_t right_len = bound / 2;
  std::map<SignedWord, SignedWord> left;
  for_each_reduced_word(e.rank, left_len, [&](SignedWord const& p) {
    left.emplace(multiply(invert(apply(e, p)), u, p), p);
    return true;
  });
  std::optional<SignedWord> found;
  for_each_reduced_word(e.rank, right_len, [&](SignedWord const& q) {
    auto it = left.find(multiply(apply(e, q), v, invert(q)));
    if (it != left.end()) {
      SignedWord g = multiply(it->second, q);
      if (is_twisted_conjugator(e, u, v, g)) {
        found = g;
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace gnk::fg
