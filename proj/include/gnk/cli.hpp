// Request dispatch and report rendering for the gnk command-line tool.
// Kept apart from argument parsing so tests can drive it directly.

#pragma once

#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "certificate.hpp"
#include "freegroup.hpp"
#include "g43.hpp"
#include "g43_conjugacy.hpp"
#include "g54.hpp"
#include "indexmap.hpp"
#include "presentations.hpp"
#include "words.hpp"

namespace gnk::cli {

inline constexpr char const* version = "0.1.0";

using Json = nlohmann::ordered_json;

enum class Format { json, text, dot };

struct Request {
  std::string subcommand;
  std::string group;
  std::vector<std::string> words;
  int n = 0;
  int k = 3;
  int rank = 3;
  std::optional<long long> bound;
  std::optional<long long> budget;
  Format format = Format::json;
  bool trace = false;
};

struct Report {
  int exit_code = 0;
  Json body;
  // Graphviz text for dot output.
  std::string dot;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::size_t positive(std::optional<long long> v, std::size_t fallback,
                            char const* what) {
  if (!v) {
    return fallback;
  }
  if (*v <= 0) {
    throw UsageError(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(*v);
}

// b1..b9 tokens are accepted for single-letter alphabets.
inline std::string letters_from_b(std::string const& text) {
  static std::regex const b(R"(b([1-9]))");
  std::string out;
  std::sregex_iterator it(text.begin(), text.end(), b), end;
  if (it == end) {
    return text;
  }
  std::size_t last = 0;
  for (; it != end; ++it) {
    out += text.substr(last, static_cast<std::size_t>(it->position()) - last);
    out += static_cast<char>('a' + ((*it)[1].str()[0] - '1'));
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  return out + text.substr(last);
}

inline Word parse_in(Alphabet const& al, std::string const& text) {
  try {
    return parse_word(letters_from_b(text), al);
  } catch (Error const& e) {
    throw UsageError(std::string("parse error: ") + e.what());
  }
}

inline Json certificate_json(DerivationCertificate const& c, Presentation const& p) {
  Alphabet const& al = p.alphabet;
  Json steps = Json::array();
  for (auto const& s : c.steps) {
    Json j;
    if (s.kind == RewriteStep::Kind::rotate) {
      j["kind"] = "rotate";
      j["shift"] = s.position;
    } else {
      j["kind"] = "relator";
      j["position"] = s.position;
      j["removed"] = print_word(s.removed, al);
      j["inserted"] = print_word(s.inserted, al);
      j["relator"] = print_word(p.relators.at(s.relator), al);
    }
    steps.push_back(std::move(j));
  }
  auto chk = check_certificate(p, c);
  Json out;
  out["cyclic"] = c.cyclic;
  out["start"] = print_word(c.start, al);
  out["end"] = print_word(c.end, al);
  out["checked"] = chk.ok;
  out["steps"] = std::move(steps);
  return out;
}

inline void need_words(Request const& r, std::size_t count) {
  if (r.words.size() != count) {
    throw UsageError(r.subcommand + " expects " + std::to_string(count) + " word(s)");
  }
}

inline Report present(Request const& r) {
  if (r.k < 2 || r.n <= r.k) {
    throw UsageError("present needs n > k >= 2");
  }
  GnkRelatorCounts counts;
  Presentation p = generate_gnk(r.n, r.k, &counts);
  Report rep;
  rep.body["verdict"] = "Presentation";
  rep.body["n"] = r.n;
  rep.body["k"] = r.k;
  Json gens = Json::array();
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    gens.push_back(p.alphabet.name(static_cast<Letter>(i)));
  }
  rep.body["generators"] = std::move(gens);
  Json rels = Json::array();
  for (auto const& w : p.relators) {
    rels.push_back(print_word(w, p.alphabet));
  }
  rep.body["relators"] = std::move(rels);
  rep.body["counts"] = {{"involution", counts.involution},
                        {"tetrahedron", counts.tetrahedron},
                        {"far_commutativity", counts.far_commutativity}};
  return rep;
}

inline Report wp(Request const& r) {
  need_words(r, 1);
  Report rep;
  auto decided = [&](char const* verdict) {
    rep.body["verdict"] = verdict;
    rep.exit_code = std::string(verdict) == "Unknown" ? 2 : 0;
  };
  if (r.group == "h3") {
    Word w = parse_in(Alphabet::letters(3), r.words[0]);
    decided(free_reduce(w).empty() ? "Trivial" : "NonTrivial");
    if (!free_reduce(w).empty()) {
      rep.body["witness"] = print_word(free_reduce(w), Alphabet::letters(3));
    }
  } else if (r.group == "g43") {
    Word w = parse_in(g43::alphabet(), r.words[0]);
    auto res = g43::wp_g43_detailed(w);
    decided(res.trivial ? "Trivial" : "NonTrivial");
    if (!res.index_image.empty()) {
      rep.body["witness"] = "index image " + res.index_image.str();
    } else if (!res.trivial) {
      rep.body["witness"] = "amalgam normal form " + g43::print(res.form.word);
    }
    if (r.trace) {
      rep.body["certificate"] = certificate_json(res.form.certificate,
                                                 g43::presentation().presentation);
    }
  } else if (r.group == "h4" || r.group == "g54") {
    h4::Options opt;
    if (r.budget) {
      opt.budget = positive(r.budget, 0, "--budget");
    }
    std::optional<h4::Result> h;
    if (r.group == "h4") {
      h = h4::h4_is_trivial(parse_in(h4::alphabet(), r.words[0]), opt);
      decided(to_string(h->verdict));
    } else {
      auto res = g54::wp_g54(parse_in(g54::alphabet(), r.words[0]), opt);
      decided(to_string(res.verdict));
      if (!res.index_image.empty()) {
        rep.body["witness"] = "index image " + res.index_image.str();
      }
      if (r.trace && res.elimination) {
        rep.body["elimination"] = certificate_json(*res.elimination, gk1k_presentation(4));
        rep.body["h4_word"] = h4::print(res.h4_word);
      }
      h = res.h4;
    }
    if (h) {
      rep.body["bound"] = h->budget;
      if (h->obstruction) {
        rep.body["witness"] = h->obstruction->kind + ": " + h->obstruction->detail;
      }
      if (h->verdict == h4::Verdict::unknown) {
        rep.body["nodes"] = h->nodes;
      }
      if (r.trace && h->verdict == h4::Verdict::trivial) {
        rep.body["certificate"] = certificate_json(h->certificate, h4::presentation().presentation);
      }
    }
  } else {
    throw UsageError("unknown group '" + r.group + "' (expected g43, g54, h3 or h4)");
  }
  return rep;
}

inline Report conj(Request const& r) {
  if (r.group != "g43") {
    throw UsageError("conj supports group g43 only");
  }
  need_words(r, 2);
  g43::ConjugacyOptions opt;
  opt.bound = positive(r.bound, opt.bound, "--bound");
  Word w = parse_in(g43::alphabet(), r.words[0]);
  Word v = parse_in(g43::alphabet(), r.words[1]);
  auto res = g43::conjugacy_g43(w, v, opt);
  Report rep;
  rep.body["verdict"] = to_string(res.kind);
  rep.exit_code = res.kind == g43::ConjugacyVerdict::Kind::unknown ? 2 : 0;
  if (res.kind == g43::ConjugacyVerdict::Kind::conjugate) {
    rep.body["witness"] = g43::print(res.witness);
  }
  if (res.certificate) {
    rep.body["certificate"] = {{"kind", to_string(res.certificate->kind)},
                               {"detail", res.certificate->detail}};
  }
  rep.body["bound"] = res.bound;
  if (r.trace) {
    rep.body["trace"] = res.trace;
  }
  return rep;
}

inline void check_k(int k) {
  if (k < 2 || k > 25) {
    throw UsageError("--k must be between 2 and 25");
  }
}

inline Report reduce_h(Request const& r) {
  need_words(r, 1);
  check_k(r.k);
  Alphabet al = Alphabet::letters(static_cast<std::size_t>(r.k + 1));
  auto res = h_membership(parse_in(al, r.words[0]), r.k);
  Report rep;
  rep.body["verdict"] = res.in_h ? "InH" : "NotInH";
  if (res.in_h) {
    rep.body["witness"] = print_word(res.rewritten, al);
    if (r.trace) {
      rep.body["certificate"] = certificate_json(res.certificate, gk1k_presentation(r.k));
    }
  } else {
    rep.body["witness"] = res.obstruction.str();
  }
  return rep;
}

inline Report index_map_cmd(Request const& r) {
  need_words(r, 1);
  check_k(r.k);
  Alphabet al = Alphabet::letters(static_cast<std::size_t>(r.k + 1));
  Word w = parse_in(al, r.words[0]);
  Report rep;
  auto img = index_map(w, r.k);
  rep.body["verdict"] = img.empty() ? "Trivial" : "NonTrivial";
  rep.body["witness"] = img.str();
  if (r.trace) {
    rep.body["sequence"] = index_sequence(w, r.k).str();
  }
  return rep;
}

inline Report amalgam_nf(Request const& r) {
  need_words(r, 1);
  auto f = g43::amalgam_reduce(parse_in(g43::alphabet(), r.words[0]));
  Report rep;
  rep.body["verdict"] = f.word.empty() ? "Trivial" : "NonTrivial";
  rep.body["witness"] = g43::print(f.word);
  Json parts = Json::array();
  for (auto const& p : f.a_parts) {
    parts.push_back(g43::print(p));
  }
  rep.body["a_parts"] = std::move(parts);
  rep.body["d_count"] = f.d_count;
  if (r.trace) {
    rep.body["certificate"] = certificate_json(f.certificate, g43::presentation().presentation);
  }
  return rep;
}

inline Report stallings(Request const& r) {
  if (r.words.empty()) {
    throw UsageError("stallings expects at least one generator");
  }
  if (r.rank < 1 || r.rank > 4) {
    throw UsageError("--rank must be between 1 and 4");
  }
  fg::Names names;
  std::vector<fg::SignedWord> gens;
  for (auto const& s : r.words) {
    try {
      gens.push_back(names.parse(s));
    } catch (Error const& e) {
      throw UsageError(std::string("parse error: ") + e.what());
    }
  }
  auto g = fg::stallings_build(r.rank, gens);
  Report rep;
  rep.body["verdict"] = "Graph";
  rep.body["rank"] = g.subgroup_rank();
  Json edges = Json::array();
  for (auto const& e : g.canonical_edges()) {
    fg::SignedWord label;
    label.letters.push_back(fg::make_letter(e.label, 1));
    edges.push_back({e.from, names.print(label), e.to});
  }
  rep.body["edges"] = std::move(edges);
  rep.dot = g.to_dot(names);
  return rep;
}

}  // namespace detail

inline Report run(Request const& r) {
  Report rep;
  if (r.subcommand == "present") {
    rep = detail::present(r);
  } else if (r.subcommand == "wp") {
    rep = detail::wp(r);
  } else if (r.subcommand == "conj") {
    rep = detail::conj(r);
  } else if (r.subcommand == "reduce-h") {
    rep = detail::reduce_h(r);
  } else if (r.subcommand == "index-map") {
    rep = detail::index_map_cmd(r);
  } else if (r.subcommand == "amalgam-nf") {
    rep = detail::amalgam_nf(r);
  } else if (r.subcommand == "stallings") {
    rep = detail::stallings(r);
  } else {
    throw UsageError("unknown subcommand '" + r.subcommand + "'");
  }
  rep.body["version"] = version;
  return rep;
}

inline std::string render(Report const& rep, Format f) {
  if (f == Format::dot) {
    if (rep.dot.empty()) {
      throw UsageError("dot output is available for stallings only");
    }
    return rep.dot;
  }
  if (f == Format::json) {
    return rep.body.dump(2) + "\n";
  }
  std::ostringstream out;
  for (auto const& [key, value] : rep.body.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return out.str();
}

}  // namespace gnk::cli
