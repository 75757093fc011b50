#pragma once

#include <array>
#include <optional>
#include <vector>

#include "igtype/igcore.hpp"

namespace igtype {

struct NotBijective : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicateWord : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IncompleteSigma : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPermutation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
using PeriodInferenceFailed = CocycleInferenceFailed;

/// Quadratic relation system x_i x_j = x_k x_l on n generators.
struct IRelations {
  std::size_t n = 0;
  using Word = std::pair<std::size_t, std::size_t>;
  std::vector<std::pair<Word, Word>> relations;
  bool operator==(const IRelations&) const = default;
};

/// The involutive map r on X x X associated with the relations.
class RMap {
public:
  RMap(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> table)
      : n_(n), table_(std::move(table)) {}

  std::size_t degree() const { return n_; }
  std::pair<std::size_t, std::size_t> apply(std::size_t i, std::size_t j) const {
    return table_[i * n_ + j];
  }
  /// pairs that occur in some relation (the rest are fixed by definition)
  bool constrained(std::size_t i, std::size_t j) const {
    return constrained_.size() > i * n_ + j && constrained_[i * n_ + j];
  }

  friend RMap build_rmap(const IRelations& rel);

private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> table_;
  std::vector<bool> constrained_;
};

RMap build_rmap(const IRelations& rel);

struct YbeResult {
  bool ok = false;
  std::optional<std::array<std::size_t, 3>> violation;
};

/// braid relation r1 r2 r1 = r2 r1 r2 on X^3, exhaustive
YbeResult check_ybe(const RMap& r);

struct Nondegeneracy {
  bool left = false;   // every g_x (first output as function of the second input)
  bool right = false;  // every f_x (second output as function of the first input)
};

Nondegeneracy check_nondegeneracy(const RMap& r);

struct DerivedPermutations {
  std::vector<std::vector<std::size_t>> sigma;
  std::size_t group_order = 0;
};

/// sigma_i(j) = k for each occurrence r(i,j) = (k,l), completed to total
/// permutations
DerivedPermutations derive_permutations(const IRelations& rel);

struct ITypeMonoid {
  IGMonoid ig;
  std::vector<std::vector<std::size_t>> sigma;
};

/// builds S = {(a, psi(a))} over the free abelian monoid: psi by the
/// product recursion, period lattice inferred up to `degree_bound` and then
/// certified exhaustively on the quotient
ITypeMonoid itype_to_ig(const IRelations& rel, std::size_t degree_bound = 6);

struct CoverResult {
  ITypeMonoid cover;
  Sublattice b;                            // kernel of the covering map f
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // (g, i) of v_{g,i}
  std::vector<Vec> covering_images;        // f(v_{g,i}) = g(u_i)
  bool morphism_verified = false;
  bool epimorphism_verified = false;
  bool b_invariant = false;
};

/// the I-type cover on n|G| generators v_{g,i} with f(v_{g,i}) = g(u_i)
CoverResult ig_cover(const IGMonoid& s, std::size_t check_degree = 3);

}  // namespace igtype
