#include "kacdem/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace kacdem;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "output format: json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", cfg.out_path, "write the result to this file instead of stdout");
  cmd->add_option("--cache-dir", cfg.cache_dir, "result cache directory (or env KACDEM_CACHE)");
}

int emit(const RunConfig& cfg) {
  ResultEnvelope env;
  std::string payload = run_with_cache(cfg, &env);
  std::string rendered = render_envelope(payload, cfg.format);
  if (cfg.out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    require(static_cast<bool>(out), Errc::Parse, "cannot open output file: " + cfg.out_path);
    out << rendered;
  }
  std::cerr << "timing_ms=" << env.timing_ms << "\n";
  if (env.command == "verify") {
    bool ok = env.outputs.contains("match") ? env.outputs["match"].get<bool>() : false;
    return ok ? 0 : 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"kacdem: affine Kac-Moody root data, alcove combinatorics and "
               "Demazure characters in exact arithmetic"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* cdatum = app.add_subcommand("datum", "affine Cartan matrix, Kac labels and special elements");
  cdatum->add_option("type", cfg.type, "affine type label, e.g. A2~2")->required();
  add_common(cdatum, cfg);
  cdatum->callback([&] { cfg.command = "datum"; });

  auto* cweyl = app.add_subcommand("weyl", "extended affine Weyl group computations");
  cweyl->require_subcommand(1);
  for (const char* sub : {"act", "length", "reduced", "bruhat"}) {
    auto* c = cweyl->add_subcommand(sub);
    c->add_option("--type", cfg.type)->required();
    c->add_option("--lattice", cfg.lattice_kind, "adjoint|sc");
    if (std::string(sub) == "act") {
      c->add_option("--element", cfg.element)->required();
      c->add_option("--weight", cfg.weight)->required();
    } else if (std::string(sub) == "bruhat") {
      c->add_option("--lhs", cfg.lhs)->required();
      c->add_option("--rhs", cfg.rhs)->required();
      c->add_option("--facet", cfg.facet, "compare minimal coset representatives for this facet");
    } else {
      c->add_option("--element", cfg.element)->required();
    }
    add_common(c, cfg);
    std::string name = std::string("weyl.") + sub;
    c->callback([&cfg, name] { cfg.command = name; });
  }

  auto* calc = app.add_subcommand("alcove", "fundamental alcove and facet calculus");
  calc->require_subcommand(1);
  for (const char* sub : {"facet", "interior", "levi"}) {
    auto* c = calc->add_subcommand(sub);
    c->add_option("--type", cfg.type)->required();
    c->add_option("--facet", cfg.facet)->required();
    if (std::string(sub) != "facet")
      c->add_option("--prime", cfg.prime, "prime p with p not dividing a_Y, or 0");
    add_common(c, cfg);
    std::string name = std::string("alcove.") + sub;
    c->callback([&cfg, name] { cfg.command = name; });
  }

  auto* cdem = app.add_subcommand("demazure", "Demazure module character by the path model");
  cdem->add_option("--type", cfg.type)->required();
  cdem->add_option("--weight", cfg.weight)->required();
  cdem->add_option("--mu", cfg.mus)->required();
  cdem->add_option("--lattice", cfg.lattice_kind);
  add_common(cdem, cfg);
  cdem->callback([&] { cfg.command = "demazure"; });

  auto* csum = app.add_subcommand("sum", "character of a union of Demazure crystals");
  csum->add_option("--type", cfg.type)->required();
  csum->add_option("--weight", cfg.weight)->required();
  csum->add_option("--mu", cfg.mus, "repeatable")->required();
  csum->add_option("--lattice", cfg.lattice_kind);
  add_common(csum, cfg);
  csum->callback([&] { cfg.command = "sum"; });

  auto* cver = app.add_subcommand("verify", "check the Demazure sum identity");
  cver->add_option("--type", cfg.type);
  cver->add_option("--weight", cfg.weight);
  cver->add_option("--mu", cfg.mus);
  cver->add_flag("--sweep", cfg.sweep, "verify a whole grid of weights and coweights");
  cver->add_option("--max-level", cfg.max_level);
  cver->add_option("--max-height", cfg.max_height);
  add_common(cver, cfg);
  cver->callback([&] { cfg.command = "verify"; });

  auto* cadm = app.add_subcommand("admissible", "admissible sets and their maxima");
  cadm->add_option("--type", cfg.type)->required();
  cadm->add_option("--mu", cfg.mus)->required();
  cadm->add_option("--facet", cfg.facet)->required();
  cadm->add_option("--lattice", cfg.lattice_kind);
  add_common(cadm, cfg);
  cadm->callback([&] { cfg.command = "admissible"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return emit(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::Internal ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
