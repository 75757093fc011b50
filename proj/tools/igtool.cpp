#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "igtype/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int emit(const igtype::RunOutcome& out, const std::string& report_format) {
  if (report_format == "json")
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << igtype::render_human(out.report);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for monoids built from group-graded lattice data"};
  app.require_subcommand(1);

  std::string input;
  std::string report_format = "text";
  igtype::Flags flags;

  const char* commands[] = {"validate", "torsion",  "primes", "maximal-order",
                            "ybe",      "sigma",    "cover",  "witness"};
  std::string chosen;
  for (const char* name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", input, "input file (.igm or .irel)")->required();
    sub->add_option("--report", report_format, "output format: text or json");
    sub->add_option("--height", flags.height, "prime height");
    sub->add_option("--bound", flags.bound, "search bound");
    sub->add_option("--degree", flags.degree, "oracle check depth");
    sub->add_option("--expect", flags.expect, "refute exit status when violated");
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI::App* corpus = app.add_subcommand("corpus");
  corpus->add_option("dir", input, "corpus directory")->required();
  corpus->add_option("--report", report_format, "output format: text or json");
  corpus->callback([&chosen] { chosen = "corpus"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (chosen == "corpus") return emit(igtype::run_corpus(input), report_format);
    std::string text = read_file(input);
    igtype::InputDocument doc = igtype::parse_document(text);
    return emit(igtype::run_command(chosen, doc, text, flags), report_format);
  } catch (const std::exception& ex) {
    nlohmann::ordered_json err;
    err["error"] = ex.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
