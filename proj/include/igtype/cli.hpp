#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "igtype/analysis.hpp"
#include "igtype/itype.hpp"

namespace igtype {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  std::size_t line;
};

struct ActionSpec {
  std::vector<std::string> names;   // declared permutation names
  std::vector<std::string> cycles;  // cycle notation, verbatim
  bool operator==(const ActionSpec&) const = default;
};

struct CocycleSpec {
  bool grading = false;
  // grading form: phi(x) = residues[w.x mod modulus]
  Vec form;
  Int modulus = 0;
  std::vector<std::pair<Int, std::string>> residues;
  // general form: kernel rows + coset representative -> element
  std::vector<Vec> kernel_rows;
  std::vector<std::pair<Vec, std::string>> cosets;
  bool operator==(const CocycleSpec&) const = default;
};

struct InputDocument {
  std::optional<Presentation> monoid;
  std::optional<ActionSpec> action;
  std::optional<CocycleSpec> cocycle;
  std::optional<IRelations> itype;
  std::vector<std::string> itype_names;
  bool operator==(const InputDocument&) const = default;
};

InputDocument parse_document(const std::string& text);
std::string render_document(const InputDocument& doc);

/// assembles the monoid of the document's monoid/action/cocycle sections
IGMonoid build_from_document(const InputDocument& doc);

struct Flags {
  std::size_t height = 1;
  std::size_t bound = 2;
  std::size_t degree = 3;
  std::string expect;
};

struct RunOutcome {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 ok, 1 property refuted, 2 input error
};

/// commands: validate, torsion, primes, maximal-order, ybe, sigma, cover,
/// witness
RunOutcome run_command(const std::string& command, const InputDocument& doc,
                       const std::string& input_text, const Flags& flags);

/// runs every bundled example against its golden report
RunOutcome run_corpus(const std::string& corpus_dir);

std::string render_human(const nlohmann::ordered_json& j);
std::string input_digest(const std::string& text);

}  // namespace igtype
