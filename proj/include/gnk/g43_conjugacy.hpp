// Conjugacy in G_4^3 with certificates.  Definite answers are exact: a
// Conjugate verdict carries a witness re-verified by the word problem, and a
// NotConjugate verdict carries a recomputable obstruction.  Searches that
// exhaust their bound report Unknown.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "freegroup.hpp"
#include "g43.hpp"

namespace gnk::g43 {

inline constexpr std::size_t default_bound = 12;

// ------------------------------------------------------------ cyclic cores

enum class CoreType { trivial, in_c, factor_a, factor_b, generic };

inline char const* to_string(CoreType t) {
  switch (t) {
    case CoreType::trivial: return "trivial";
    case CoreType::in_c: return "C";
    case CoreType::factor_a: return "A";
    case CoreType::factor_b: return "B";
    case CoreType::generic: return "generic";
  }
  return "?";
}

// core = conjugator^R . w . conjugator, cyclically reduced in the amalgam.
struct CyclicCore {
  Word core;
  Word conjugator;
  CoreType type = CoreType::trivial;
  // Number of syllables of the cyclic alternating form (0 for trivial).
  std::size_t length = 0;
};

inline CyclicCore cyclic_core(Word const& w) {
  CyclicCore out;
  Word cur = amalgam_reduce(w).word;
  Word& t = out.conjugator;
  auto rotate_by = [&](std::size_t k) {
    t = concat(std::move(t), Word(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k)));
    cur = rotate_left(cur, k);
  };
  while (true) {
    while (cur.size() >= 2 && cur.front() == cur.back()) {
      t.push_back(cur.front());
      cur = Word(cur.begin() + 1, cur.end() - 1);
    }
    auto pos = detail::d_positions(cur);
    if (pos.size() < 2) {
      break;
    }
    Word wrap(cur.begin() + static_cast<std::ptrdiff_t>(pos.back() + 1), cur.end());
    wrap.insert(wrap.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos.front()));
    if (!in_c(wrap)) {
      break;
    }
    rotate_by(pos.back());
    cur = amalgam_reduce(cur).word;
  }
  auto pos = detail::d_positions(cur);
  if (cur.empty()) {
    out.type = CoreType::trivial;
  } else if (pos.empty()) {
    out.type = in_c(cur) ? CoreType::in_c : CoreType::factor_a;
    out.length = 1;
  } else if (pos.size() == 1 && in_c(cur)) {
    // s d with s in C: rotate the d to the end.
    rotate_by(pos.front() + 1);
    Word s = free_reduce(Word(cur.begin(), cur.end() - 1));
    cur = concat(s, Word{D});
    out.type = CoreType::factor_b;
    out.length = 1;
  } else {
    // Start at a syllable boundary so the wrapped A-part is contiguous.
    rotate_by(pos.back() + 1);
    cur = free_reduce(cur);
    pos = detail::d_positions(cur);
    out.type = CoreType::generic;
    out.length = 2 * pos.size();
  }
  out.core = std::move(cur);
  return out;
}

// Offsets in a generic core at which an alternating syllable starts.
inline std::vector<std::size_t> syllable_starts(Word const& core) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < core.size(); ++i) {
    bool const is_d = core[i] == D;
    bool const prev_d = core[(i + core.size() - 1) % core.size()] == D;
    if (is_d || prev_d) {
      starts.push_back(i);
    }
  }
  return starts;
}

// ---------------------------------------------------------------- verdicts

struct NonConjugacyCertificate {
  enum class Kind { quotient, abelian_lattice, syllable_type, cyclic_normal_form };
  Kind kind = Kind::quotient;
  std::string detail;
};

inline char const* to_string(NonConjugacyCertificate::Kind k) {
  using K = NonConjugacyCertificate::Kind;
  switch (k) {
    case K::quotient: return "quotient";
    case K::abelian_lattice: return "abelian-lattice";
    case K::syllable_type: return "syllable-type";
    case K::cyclic_normal_form: return "cyclic-normal-form";
  }
  return "?";
}

struct ConjugacyVerdict {
  enum class Kind { conjugate, not_conjugate, unknown };
  Kind kind = Kind::unknown;
  // g with g^-1 w g = v.
  Word witness;
  std::optional<NonConjugacyCertificate> certificate;
  std::size_t bound = default_bound;
  std::vector<std::string> trace;
};

inline char const* to_string(ConjugacyVerdict::Kind k) {
  switch (k) {
    case ConjugacyVerdict::Kind::conjugate: return "Conjugate";
    case ConjugacyVerdict::Kind::not_conjugate: return "NotConjugate";
    case ConjugacyVerdict::Kind::unknown: return "Unknown";
  }
  return "?";
}

struct ConjugacyOptions {
  std::size_t bound = default_bound;
  // Radius of the fixed-subgroup enumeration on C * <t>.
  std::size_t fix_radius = 4;
  // Longest quotient coset representative tried for two elements of C.
  std::size_t quotient_radius = 8;
};

// --------------------------------------------------------- twisted solving

struct TwistedResult {
  std::optional<fg::SignedWord> solution;
  bool certified_impossible = false;
  std::string route;
};

// Solve e(g)^-1 u g = v in C by: abelian obstruction, bounded search, and
// the fixed subgroup of h -> v^-1 e'(h) v on C * <t> with e'(t) = u t u^-1,
// which contains g^-1 t g exactly for the solutions g.
inline TwistedResult solve_twisted(fg::FreeEndomorphism const& e, fg::SignedWord const& u,
                                   fg::SignedWord const& v, ConjugacyOptions const& opt) {
  TwistedResult r;
  if (!fg::abelian_twisted_certificate(e, u, v).passes) {
    r.certified_impossible = true;
    r.route = "abelian";
    return r;
  }
  if (auto g = fg::twisted_conjugate_bounded(e, u, v, opt.bound)) {
    r.solution = g;
    r.route = "search";
    return r;
  }
  fg::FreeEndomorphism psi;
  psi.rank = 4;
  for (auto const& img : e.images) {
    psi.images.push_back(fg::multiply(fg::invert(v), img, v));
  }
  psi.images.push_back(
      fg::multiply(fg::invert(v), u, fg::letter_word(3), fg::invert(u), v));
  auto graph = fg::fix_subgroup_bounded(psi, opt.fix_radius);
  if (auto g = fg::graph_find_special_loop(graph, 3)) {
    if (fg::is_twisted_conjugator(e, u, v, *g)) {
      r.solution = g;
      r.route = "fixed-subgroup";
    }
  }
  return r;
}

// ----------------------------------------------- action of G/C on C^ab

using Matrix3 = std::array<long long, 9>;  // column-major

inline Matrix3 abelian_action(Word const& w) {
  auto cols = fg::abelian_matrix(conj_action(w));
  Matrix3 m{};
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      m[3 * j + i] = cols[j][i];
    }
  }
  return m;
}

inline Matrix3 mat_mul(Matrix3 const& a, Matrix3 const& b) {
  Matrix3 c{};
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      long long s = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        s += a[3 * k + i] * b[3 * j + k];
      }
      c[3 * j + i] = s;
    }
  }
  return c;
}

// The image of G in GL_3(Z) acting on C^ab; empty if it exceeds the cap.
inline std::vector<Matrix3> const& abelian_action_group() {
  static std::vector<Matrix3> const group = [] {
    std::vector<Matrix3> gens;
    for (Letter l : {A, B, C, D}) {
      gens.push_back(abelian_action(Word{l}));
    }
    std::set<Matrix3> seen{Matrix3{1, 0, 0, 0, 1, 0, 0, 0, 1}};
    std::vector<Matrix3> frontier(seen.begin(), seen.end());
    while (!frontier.empty() && seen.size() <= 10000) {
      std::vector<Matrix3> next;
      for (auto const& m : frontier) {
        for (auto const& g : gens) {
          Matrix3 p = mat_mul(m, g);
          if (seen.insert(p).second) {
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
    return frontier.empty() ? std::vector<Matrix3>(seen.begin(), seen.end())
                            : std::vector<Matrix3>{};
  }();
  return group;
}

inline fg::IntVector act(Matrix3 const& m, fg::IntVector const& v) {
  fg::IntVector out(3, 0);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] += m[3 * j + i] * v[j];
    }
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

namespace detail {

inline std::string vec_str(fg::IntVector const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s + ")";
}

inline ConjugacyVerdict not_conjugate(NonConjugacyCertificate::Kind k, std::string detail,
                                      std::vector<std::string> trace) {
  ConjugacyVerdict r;
  r.kind = ConjugacyVerdict::Kind::not_conjugate;
  r.certificate = NonConjugacyCertificate{k, std::move(detail)};
  r.trace = std::move(trace);
  return r;
}

// Quotient normal forms of length <= radius, shortlex, as words.
inline std::vector<Word> quotient_representatives(std::size_t radius) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (auto const& r : layer) {
      bool const last_d = !r.empty() && r.back() == D;
      bool const last_a = !r.empty() && r.back() != D;
      if (!last_a) {
        for (Letter l : {A, B, C}) {
          next.push_back(concat(r, Word{l}));
        }
      }
      if (!last_d) {
        next.push_back(concat(r, Word{D}));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace detail

// Cheap obstructions only; shared by the pipeline and by recheck.
inline std::optional<NonConjugacyCertificate> cheap_obstruction(Word const& w, Word const& v) {
  using K = NonConjugacyCertificate::Kind;
  if (!quotient_conjugacy(w, v)) {
    return NonConjugacyCertificate{
        K::quotient, "images " + print(quotient_cyclic(quotient_image(w)).representative()) +
                         " and " + print(quotient_cyclic(quotient_image(v)).representative()) +
                         " are not conjugate in (Z2+Z2)*Z2"};
  }
  auto cw = cyclic_core(w);
  auto cv = cyclic_core(v);
  if (cw.type != cv.type || cw.length != cv.length) {
    return NonConjugacyCertificate{
        K::syllable_type, std::string("cyclic cores of type ") + to_string(cw.type) + "/" +
                              std::to_string(cw.length) + " and " + to_string(cv.type) + "/" +
                              std::to_string(cv.length)};
  }
  if (cw.type == CoreType::factor_a) {
    auto rots = cyclic_permutations(cw.core);
    if (std::find(rots.begin(), rots.end(), cv.core) == rots.end()) {
      return NonConjugacyCertificate{K::cyclic_normal_form,
                                     "cyclic words " + print(cw.core) + " and " + print(cv.core) +
                                         " differ in Z2*Z2*Z2"};
    }
  }
  if (cw.type == CoreType::in_c) {
    auto const& group = abelian_action_group();
    if (!group.empty()) {
      auto aw = fg::abelianize(3, rewrite_a_word(cw.core));
      auto av = fg::abelianize(3, rewrite_a_word(cv.core));
      bool hit = false;
      for (auto const& m : group) {
        hit = hit || act(m, aw) == av;
      }
      if (!hit) {
        return NonConjugacyCertificate{
            K::abelian_lattice, detail::vec_str(av) + " is not in the orbit of " +
                                    detail::vec_str(aw) + " under the action on C^ab"};
      }
    }
  }
  if (cw.type == CoreType::factor_b) {
    auto s = rewrite_a_word(Word(cw.core.begin(), cw.core.end() - 1));
    auto s2 = rewrite_a_word(Word(cv.core.begin(), cv.core.end() - 1));
    auto inv = fg::FreeEndomorphism::inversion(3);
    auto c0 = fg::abelian_twisted_certificate(inv, fg::invert(s), fg::invert(s2));
    auto c1 = fg::abelian_twisted_certificate(inv, fg::apply(inv, s), s2);
    if (!c0.passes && !c1.passes) {
      return NonConjugacyCertificate{K::abelian_lattice,
                                     "both B-case twisted instances fail mod Im(I - M)"};
    }
  }
  if (cw.type == CoreType::generic) {
    std::string detail = "rotations:";
    for (auto p : syllable_starts(cw.core)) {
      Word rot = rotate_left(cw.core, p);
      if (!(quotient_image(rot) == quotient_image(cv.core))) {
        continue;
      }
      auto e = conj_action(rot);
      auto c = rewrite_into_C_basis(concat(reversed(rot), cv.core));
      auto cert = fg::abelian_twisted_certificate(e, fg::SignedWord{}, c);
      if (cert.passes) {
        return std::nullopt;
      }
      detail += " " + std::to_string(p) + detail::vec_str(cert.difference);
    }
    return NonConjugacyCertificate{K::abelian_lattice, detail};
  }
  return std::nullopt;
}

inline ConjugacyVerdict conjugacy_g43(Word const& w, Word const& v,
                                      ConjugacyOptions const& opt = {}) {
  check_letters(w);
  check_letters(v);
  std::vector<std::string> trace;
  auto finish = [&](Word g, std::string route) {
    g = free_reduce(g);
    if (!equal_g43(concat(reversed(g), w, g), v)) {
      throw Error("conjugacy_g43: witness failed verification (" + route + ")");
    }
    trace.push_back("witness " + print(g) + " verified by the word problem");
    ConjugacyVerdict r;
    r.kind = ConjugacyVerdict::Kind::conjugate;
    r.witness = std::move(g);
    r.bound = opt.bound;
    r.trace = trace;
    return r;
  };
  if (equal_g43(w, v)) {
    trace.push_back("equal elements");
    return finish({}, "equal");
  }
  if (auto cert = cheap_obstruction(w, v)) {
    trace.push_back(std::string("certificate: ") + to_string(cert->kind));
    auto r = detail::not_conjugate(cert->kind, cert->detail, trace);
    r.bound = opt.bound;
    return r;
  }
  auto cw = cyclic_core(w);
  auto cv = cyclic_core(v);
  trace.push_back("cores " + print(cw.core) + " and " + print(cv.core) + " of type " +
                  to_string(cw.type));
  // g = tw . g' . tv^R where g'^-1 core_w g' = core_v.
  auto lift = [&](Word const& inner) {
    return concat(cw.conjugator, inner, reversed(cv.conjugator));
  };
  std::optional<Word> inner;
  switch (cw.type) {
    case CoreType::trivial:
      inner = Word{};
      break;
    case CoreType::factor_a: {
      for (std::size_t i = 0; i < cw.core.size() && !inner; ++i) {
        if (rotate_left(cw.core, i) == cv.core) {
          inner = Word(cw.core.begin(), cw.core.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
      break;
    }
    case CoreType::factor_b: {
      auto s = rewrite_a_word(Word(cw.core.begin(), cw.core.end() - 1));
      auto s2 = rewrite_a_word(Word(cv.core.begin(), cv.core.end() - 1));
      auto inv = fg::FreeEndomorphism::inversion(3);
      auto r0 = solve_twisted(inv, fg::invert(s), fg::invert(s2), opt);
      trace.push_back("B-case, no d in conjugator: " +
                      (r0.solution ? r0.route : std::string("none")));
      if (r0.solution) {
        inner = expand(*r0.solution);
        break;
      }
      auto r1 = solve_twisted(inv, fg::apply(inv, s), s2, opt);
      trace.push_back("B-case, conjugator ends in d: " +
                      (r1.solution ? r1.route : std::string("none")));
      if (r1.solution) {
        inner = concat(expand(*r1.solution), Word{D});
      }
      break;
    }
    case CoreType::generic: {
      for (auto p : syllable_starts(cw.core)) {
        Word rot = rotate_left(cw.core, p);
        if (!(quotient_image(rot) == quotient_image(cv.core))) {
          continue;
        }
        auto e = conj_action(rot);
        auto c = rewrite_into_C_basis(concat(reversed(rot), cv.core));
        auto r = solve_twisted(e, fg::SignedWord{}, c, opt);
        trace.push_back("rotation " + std::to_string(p) + ": " +
                        (r.solution ? r.route
                                    : r.certified_impossible ? "abelian obstruction"
                                                             : "none within bound"));
        if (r.solution) {
          inner = concat(Word(cw.core.begin(), cw.core.begin() + static_cast<std::ptrdiff_t>(p)),
                         expand(*r.solution));
          break;
        }
      }
      break;
    }
    case CoreType::in_c: {
      auto target = rewrite_a_word(cv.core);
      for (auto const& r : detail::quotient_representatives(opt.quotient_radius)) {
        auto moved = rewrite_into_C_basis(concat(reversed(r), cw.core, r));
        if (auto h = fg::conjugator(moved, target)) {
          trace.push_back("C-case via coset representative " + print(r));
          inner = concat(r, expand(*h));
          break;
        }
      }
      break;
    }
  }
  if (inner) {
    return finish(lift(*inner), to_string(cw.type));
  }
  trace.push_back("bound exhausted");
  ConjugacyVerdict r;
  r.kind = ConjugacyVerdict::Kind::unknown;
  r.bound = opt.bound;
  r.trace = std::move(trace);
  return r;
}

// Re-validates a verdict from scratch.
inline bool recheck(Word const& w, Word const& v, ConjugacyVerdict const& verdict) {
  switch (verdict.kind) {
    case ConjugacyVerdict::Kind::conjugate:
      return equal_g43(concat(reversed(verdict.witness), w, verdict.witness), v);
    case ConjugacyVerdict::Kind::not_conjugate: {
      if (!verdict.certificate) {
        return false;
      }
      auto again = cheap_obstruction(w, v);
      return again && again->kind == verdict.certificate->kind;
    }
    case ConjugacyVerdict::Kind::unknown:
      return true;
  }
  return false;
}

}  // namespace gnk::g43
