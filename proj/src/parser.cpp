#include "igtype/cli.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace igtype {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

// everything after the first '=' on the line, trimmed
std::string after_equals(const std::string& line, std::size_t lineno) {
  auto pos = line.find('=');
  if (pos == std::string::npos)
    throw ParseError(lineno, "expected '='");
  std::string rest = line.substr(pos + 1);
  std::size_t a = rest.find_first_not_of(" \t");
  if (a == std::string::npos) throw ParseError(lineno, "missing right-hand side");
  std::size_t b = rest.find_last_not_of(" \t");
  return rest.substr(a, b - a + 1);
}

Int parse_int(const std::string& t, std::size_t lineno) {
  try {
    return Int(t);
  } catch (...) {
    throw ParseError(lineno, "expected integer, got '" + t + "'");
  }
}

Vec word_to_exponents(const std::vector<std::string>& word,
                      const std::vector<std::string>& gens, std::size_t lineno) {
  Vec e = zero_vec(gens.size());
  if (word.size() == 1 && word[0] == "1") return e;  // empty word
  for (const std::string& w : word) {
    auto it = std::find(gens.begin(), gens.end(), w);
    if (it == gens.end())
      throw ParseError(lineno, "undeclared generator '" + w + "'");
    e[static_cast<std::size_t>(it - gens.begin())] += 1;
  }
  return e;
}

}  // namespace

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  enum class Section { none, monoid, action, cocycle, itype };
  Section section = Section::none;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "monoid" || head == "action" || head == "cocycle" ||
        head == "itype") {
      if (toks.size() != 1)
        throw ParseError(lineno, "section header takes no arguments");
      if (head == "monoid") {
        if (doc.monoid) throw ParseError(lineno, "duplicate monoid section");
        doc.monoid.emplace();
        section = Section::monoid;
      } else if (head == "action") {
        if (doc.action) throw ParseError(lineno, "duplicate action section");
        doc.action.emplace();
        section = Section::action;
      } else if (head == "cocycle") {
        if (doc.cocycle) throw ParseError(lineno, "duplicate cocycle section");
        doc.cocycle.emplace();
        section = Section::cocycle;
      } else {
        if (doc.itype) throw ParseError(lineno, "duplicate itype section");
        doc.itype.emplace();
        section = Section::itype;
      }
      continue;
    }

    switch (section) {
      case Section::none:
        throw ParseError(lineno, "statement before any section header");

      case Section::monoid: {
        if (head == "gens") {
          if (!doc.monoid->generators.empty())
            throw ParseError(lineno, "duplicate gens line");
          if (toks.size() < 2) throw ParseError(lineno, "gens needs names");
          for (std::size_t i = 1; i < toks.size(); ++i) {
            if (std::find(doc.monoid->generators.begin(),
                          doc.monoid->generators.end(),
                          toks[i]) != doc.monoid->generators.end())
              throw ParseError(lineno, "duplicate generator '" + toks[i] + "'");
            doc.monoid->generators.push_back(toks[i]);
          }
        } else if (head == "rel") {
          if (doc.monoid->generators.empty())
            throw ParseError(lineno, "rel before gens");
          auto eq = std::find(toks.begin(), toks.end(), "=");
          if (eq == toks.end() || eq == toks.begin() + 1 || eq + 1 == toks.end())
            throw ParseError(lineno, "rel needs 'rel word = word'");
          std::vector<std::string> lhs(toks.begin() + 1, eq);
          std::vector<std::string> rhs(eq + 1, toks.end());
          doc.monoid->relations.push_back(
              {word_to_exponents(lhs, doc.monoid->generators, lineno),
               word_to_exponents(rhs, doc.monoid->generators, lineno)});
        } else {
          throw ParseError(lineno, "unknown monoid statement '" + head + "'");
        }
        break;
      }

      case Section::action: {
        if (head != "perm")
          throw ParseError(lineno, "unknown action statement '" + head + "'");
        if (toks.size() < 2 || toks[2] != "=")
          throw ParseError(lineno, "perm needs 'perm name = cycles'");
        if (std::find(doc.action->names.begin(), doc.action->names.end(),
                      toks[1]) != doc.action->names.end())
          throw ParseError(lineno, "duplicate permutation '" + toks[1] + "'");
        doc.action->names.push_back(toks[1]);
        doc.action->cycles.push_back(after_equals(line, lineno));
        break;
      }

      case Section::cocycle: {
        CocycleSpec& c = *doc.cocycle;
        if (head == "grading") {
          if (c.grading || !c.kernel_rows.empty())
            throw ParseError(lineno, "duplicate cocycle description");
          auto mod = std::find(toks.begin(), toks.end(), "mod");
          if (mod == toks.end() || mod == toks.begin() + 1 ||
              mod + 2 != toks.end())
            throw ParseError(lineno, "grading needs 'grading w... mod m'");
          for (auto it = toks.begin() + 1; it != mod; ++it)
            c.form.push_back(parse_int(*it, lineno));
          c.modulus = parse_int(*(mod + 1), lineno);
          if (c.modulus < 2) throw ParseError(lineno, "modulus must be >= 2");
          c.grading = true;
        } else if (head == "residue") {
          if (!c.grading) throw ParseError(lineno, "residue before grading");
          if (toks.size() < 2) throw ParseError(lineno, "residue needs a value");
          c.residues.push_back(
              {parse_int(toks[1], lineno), after_equals(line, lineno)});
        } else if (head == "kernel") {
          if (c.grading)
            throw ParseError(lineno, "kernel mixed with grading form");
          Vec row;
          for (std::size_t i = 1; i < toks.size(); ++i)
            row.push_back(parse_int(toks[i], lineno));
          if (row.empty()) throw ParseError(lineno, "kernel row is empty");
          c.kernel_rows.push_back(std::move(row));
        } else if (head == "coset") {
          if (c.grading)
            throw ParseError(lineno, "coset mixed with grading form");
          auto eq = std::find(toks.begin(), toks.end(), "=");
          if (eq == toks.end() || eq == toks.begin() + 1)
            throw ParseError(lineno, "coset needs 'coset rep... = element'");
          Vec rep;
          for (auto it = toks.begin() + 1; it != eq; ++it)
            rep.push_back(parse_int(*it, lineno));
          c.cosets.push_back({std::move(rep), after_equals(line, lineno)});
        } else {
          throw ParseError(lineno, "unknown cocycle statement '" + head + "'");
        }
        break;
      }

      case Section::itype: {
        if (head == "gens") {
          if (!doc.itype_names.empty())
            throw ParseError(lineno, "duplicate gens line");
          if (toks.size() < 2) throw ParseError(lineno, "gens needs names");
          for (std::size_t i = 1; i < toks.size(); ++i) {
            if (std::find(doc.itype_names.begin(), doc.itype_names.end(),
                          toks[i]) != doc.itype_names.end())
              throw ParseError(lineno, "duplicate generator '" + toks[i] + "'");
            doc.itype_names.push_back(toks[i]);
          }
          doc.itype->n = doc.itype_names.size();
        } else if (head == "rel") {
          if (doc.itype_names.empty()) throw ParseError(lineno, "rel before gens");
          if (toks.size() != 6 || toks[3] != "=")
            throw ParseError(lineno, "itype rel needs 'rel x y = z w'");
          auto idx = [&](const std::string& name) -> std::size_t {
            auto it = std::find(doc.itype_names.begin(), doc.itype_names.end(),
                                name);
            if (it == doc.itype_names.end())
              throw ParseError(lineno, "undeclared generator '" + name + "'");
            return static_cast<std::size_t>(it - doc.itype_names.begin());
          };
          doc.itype->relations.push_back(
              {{idx(toks[1]), idx(toks[2])}, {idx(toks[4]), idx(toks[5])}});
        } else {
          throw ParseError(lineno, "unknown itype statement '" + head + "'");
        }
        break;
      }
    }
  }

  bool has_igm = doc.action.has_value() || doc.cocycle.has_value();
  if (has_igm && doc.itype)
    throw ParseError(lineno, "itype cannot be combined with action/cocycle");
  if (!has_igm && !doc.itype)
    throw ParseError(lineno, "document needs action+cocycle or itype");
  if (has_igm) {
    if (!doc.monoid) throw ParseError(lineno, "missing monoid section");
    if (doc.monoid->generators.empty())
      throw ParseError(lineno, "monoid section without gens");
    if (!doc.action || !doc.cocycle)
      throw ParseError(lineno, "action and cocycle sections are both required");
    const CocycleSpec& c = *doc.cocycle;
    if (c.grading && c.residues.empty())
      throw ParseError(lineno, "grading without residue lines");
    if (!c.grading && (c.kernel_rows.empty() || c.cosets.empty()))
      throw ParseError(lineno, "cocycle needs a grading or kernel + cosets");
  } else {
    if (doc.itype_names.empty())
      throw ParseError(lineno, "itype section without gens");
  }
  return doc;
}

namespace {

std::string join_word(const Vec& e, const std::vector<std::string>& gens) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (Int k = 0; k < e[i]; ++k) {
      if (!out.empty()) out += " ";
      out += gens[i];
    }
  return out.empty() ? "1" : out;
}

std::string join_ints(const Vec& v) {
  std::string out;
  for (const Int& x : v) {
    if (!out.empty()) out += " ";
    out += x.str();
  }
  return out;
}

}  // namespace

std::string render_document(const InputDocument& doc) {
  std::string out;
  if (doc.monoid) {
    out += "monoid\n";
    out += "gens";
    for (const std::string& g : doc.monoid->generators) out += " " + g;
    out += "\n";
    for (const auto& [l, r] : doc.monoid->relations)
      out += "rel " + join_word(l, doc.monoid->generators) + " = " +
             join_word(r, doc.monoid->generators) + "\n";
  }
  if (doc.action) {
    out += "action\n";
    for (std::size_t i = 0; i < doc.action->names.size(); ++i)
      out += "perm " + doc.action->names[i] + " = " + doc.action->cycles[i] +
             "\n";
  }
  if (doc.cocycle) {
    out += "cocycle\n";
    const CocycleSpec& c = *doc.cocycle;
    if (c.grading) {
      out += "grading " + join_ints(c.form) + " mod " + c.modulus.str() + "\n";
      for (const auto& [r, e] : c.residues)
        out += "residue " + r.str() + " = " + e + "\n";
    } else {
      for (const Vec& row : c.kernel_rows)
        out += "kernel " + join_ints(row) + "\n";
      for (const auto& [rep, e] : c.cosets)
        out += "coset " + join_ints(rep) + " = " + e + "\n";
    }
  }
  if (doc.itype) {
    out += "itype\n";
    out += "gens";
    for (const std::string& g : doc.itype_names) out += " " + g;
    out += "\n";
    for (const auto& [l, r] : doc.itype->relations)
      out += "rel " + doc.itype_names[l.first] + " " + doc.itype_names[l.second] +
             " = " + doc.itype_names[r.first] + " " + doc.itype_names[r.second] +
             "\n";
  }
  return out;
}

namespace {

// resolve an element token: "1"/"id", a declared permutation name, or cycle
// notation; matched against the generator permutation of each group element
std::size_t resolve_element(const GenAction& action, const ActionSpec& spec,
                            const std::string& token, std::size_t ngens) {
  std::string cycles = token;
  auto named = std::find(spec.names.begin(), spec.names.end(), token);
  if (named != spec.names.end())
    cycles = spec.cycles[static_cast<std::size_t>(named - spec.names.begin())];
  auto perm = parse_cycles(cycles, ngens);
  for (std::size_t e = 0; e < action.order(); ++e)
    if (action.generator_permutation(e) == perm) return e;
  throw std::invalid_argument("permutation '" + token +
                              "' is not an element of the action group");
}

}  // namespace

IGMonoid build_from_document(const InputDocument& doc) {
  if (!doc.monoid || !doc.action || !doc.cocycle)
    throw std::invalid_argument("document does not describe a graph monoid");
  AffineMonoid base = build_monoid(*doc.monoid);
  std::size_t ngens = doc.monoid->generators.size();

  std::vector<std::vector<std::size_t>> perms;
  for (const std::string& c : doc.action->cycles)
    perms.push_back(parse_cycles(c, ngens));
  GenAction action = build_action(base, perms);

  const CocycleSpec& spec = *doc.cocycle;
  CosetCocycle c;
  if (spec.grading) {
    if (spec.form.size() != base.rank())
      throw std::invalid_argument("grading form arity differs from the rank");
    // kernel = {x : form.x = 0 mod modulus}
    IntMatrix m(base.rank() + 1, 1);
    for (std::size_t i = 0; i < base.rank(); ++i) m.at(i, 0) = spec.form[i];
    m.at(base.rank(), 0) = -spec.modulus;
    IntMatrix ker = kernel_lattice(m);
    std::vector<Vec> proj;
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      Vec row = ker.row(i);
      proj.emplace_back(row.begin(), row.begin() + static_cast<long>(base.rank()));
    }
    c.kernel = Sublattice::from_generators(base.rank(), proj);
    if (c.kernel.index() != spec.modulus)
      throw std::invalid_argument(
          "grading form does not induce a quotient of the stated modulus");
    std::map<Int, std::size_t> by_residue;
    for (const auto& [r, tok] : spec.residues) {
      Int rr = ((r % spec.modulus) + spec.modulus) % spec.modulus;
      by_residue[rr] = resolve_element(action, *doc.action, tok, ngens);
    }
    for (const Vec& rep : c.kernel.quotient_cosets()) {
      Int r = ((dot(spec.form, rep) % spec.modulus) + spec.modulus) %
              spec.modulus;
      auto it = by_residue.find(r);
      if (it == by_residue.end())
        throw std::invalid_argument("no residue line for residue " + r.str());
      c.table[rep] = it->second;
    }
  } else {
    for (const Vec& row : spec.kernel_rows)
      if (row.size() != base.rank())
        throw std::invalid_argument("kernel row arity differs from the rank");
    c.kernel = Sublattice::from_generators(base.rank(), spec.kernel_rows);
    for (const auto& [rep, tok] : spec.cosets) {
      if (rep.size() != base.rank())
        throw std::invalid_argument("coset arity differs from the rank");
      c.table[c.kernel.reduce(rep)] =
          resolve_element(action, *doc.action, tok, ngens);
    }
  }
  return build_ig(base, action, c);
}

}  // namespace igtype
