// gnk: word and conjugacy problems in the groups G_n^k.
//
//   gnk present 4 3
//   gnk wp g43 dabcdabc --trace
//   gnk conj g43 abc cba
//   gnk stallings x yzY --format dot

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gnk/cli.hpp"

namespace {

using gnk::cli::Format;
using gnk::cli::Request;

void common(CLI::App* sub, Request& r) {
  static std::map<std::string, Format> const formats{
      {"json", Format::json}, {"text", Format::text}, {"dot", Format::dot}};
  sub->add_option("--format", r.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub->add_flag("--trace", r.trace, "Attach derivation certificates and traces");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word and conjugacy problems in the groups G_n^k"};
  app.set_version_flag("--version", gnk::cli::version);
  app.require_subcommand(1);
  Request r;

  auto* present = app.add_subcommand("present", "Print the presentation of G_n^k");
  present->add_option("n", r.n)->required();
  present->add_option("k", r.k)->required();
  common(present, r);

  auto* wp = app.add_subcommand("wp", "Word problem in g43, g54, h3 or h4");
  wp->add_option("group", r.group)->required();
  wp->add_option("word", r.words)->required()->expected(1);
  wp->add_option("--budget", r.budget, "Cell budget for the H_4 search");
  common(wp, r);

  auto* conj = app.add_subcommand("conj", "Conjugacy problem in g43");
  conj->add_option("group", r.group)->required();
  conj->add_option("words", r.words)->required()->expected(2);
  conj->add_option("--bound", r.bound, "Conjugator search bound");
  common(conj, r);

  auto* reduce = app.add_subcommand("reduce-h", "Rewrite a word of G_{k+1}^k into H");
  reduce->add_option("word", r.words)->required()->expected(1);
  reduce->add_option("--k", r.k, "k of G_{k+1}^k");
  common(reduce, r);

  auto* index = app.add_subcommand("index-map", "Index map of a word of G_{k+1}^k");
  index->add_option("word", r.words)->required()->expected(1);
  index->add_option("--k", r.k, "k of G_{k+1}^k");
  common(index, r);

  auto* amalgam = app.add_subcommand("amalgam-nf", "Amalgam normal form in G_4^3");
  amalgam->add_option("word", r.words)->required()->expected(1);
  common(amalgam, r);

  auto* stallings = app.add_subcommand("stallings", "Stallings graph of a free subgroup");
  stallings->add_option("generators", r.words)->required();
  stallings->add_option("--rank", r.rank, "Rank of the ambient free group");
  common(stallings, r);

  // Accepted for symmetry with the test generators; the tool is deterministic.
  unsigned seed = 0;
  app.add_option("--seed", seed, "Random seed (unused by the solvers)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  r.subcommand = app.get_subcommands().front()->get_name();

  try {
    auto rep = gnk::cli::run(r);
    std::cout << gnk::cli::render(rep, r.format);
    return rep.exit_code;
  } catch (gnk::cli::UsageError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (gnk::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
