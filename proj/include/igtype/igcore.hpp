#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "igtype/monoid.hpp"

namespace igtype {

struct RelationNotPreserved : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFaithful : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidCocycle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite group acting linearly on Z^rank, each element induced by a
/// permutation of the monoid's generator images.
class GenAction {
public:
  std::size_t order() const { return matrices_.size(); }
  const IntMatrix& matrix(std::size_t g) const { return matrices_[g]; }
  const std::vector<std::size_t>& generator_permutation(std::size_t g) const {
    return perms_[g];
  }
  std::size_t multiply(std::size_t g, std::size_t h) const { return mult_[g][h]; }
  std::size_t inverse(std::size_t g) const { return inv_[g]; }
  std::size_t element_order(std::size_t g) const;
  /// index of the element with this matrix, if present
  std::optional<std::size_t> find(const IntMatrix& m) const;
  Vec act(std::size_t g, const Vec& v) const { return matrices_[g].apply(v); }

  /// subgroup generated by a subset of elements, as a sorted index list
  std::vector<std::size_t> generated_subgroup(
      const std::vector<std::size_t>& gens) const;

  friend GenAction build_action(const AffineMonoid& a,
                                const std::vector<std::vector<std::size_t>>& perms);
  friend GenAction restrict_action(const GenAction& g,
                                   const std::vector<std::size_t>& elements);

private:
  void finish_tables();

  std::vector<IntMatrix> matrices_;               // identity first
  std::vector<std::vector<std::size_t>> perms_;   // action on generator indices
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::size_t> inv_;
};

/// matrices generated by permutations of the generators; identity is
/// element 0; faithfulness and image preservation verified
GenAction build_action(const AffineMonoid& a,
                       const std::vector<std::vector<std::size_t>>& perms);

/// sub-action on a subgroup given by element indices (must contain 0 and
/// be closed)
GenAction restrict_action(const GenAction& g,
                          const std::vector<std::size_t>& elements);

/// The map a -> phi(a) encoded on the finite quotient Z^rank / N.
struct CosetCocycle {
  Sublattice kernel;                 // N, full rank in Z^rank
  std::map<Vec, std::size_t> table;  // canonical coset rep -> group element

  std::size_t value(const Vec& a) const { return table.at(kernel.reduce(a)); }
};

struct CocycleReport {
  bool valid = false;
  bool identity_at_zero = false;
  bool kernel_invariant = false;
  bool table_complete = false;
  std::vector<std::pair<Vec, Vec>> violations;  // coset rep pairs breaking the law
};

/// exhaustive check of phi(a)phi(b) = phi(a + M_{phi(a)} b) on the quotient
CocycleReport verify_cocycle(const CosetCocycle& c, const GenAction& g);

struct IGElement {
  Vec a;            // translation
  std::size_t g;    // group element index, always phi(a)
  bool operator==(const IGElement&) const = default;
  bool operator<(const IGElement& o) const {
    return a != o.a ? a < o.a : g < o.g;
  }
};

struct NotITypeCertificate {
  std::size_t fraction_rank;
  std::size_t indecomposable_count;
};

/// S = {(a, phi(a)) | a in A} inside A x| G.
class IGMonoid {
public:
  const AffineMonoid& base() const { return base_; }
  const GenAction& action() const { return action_; }
  const CosetCocycle& cocycle() const { return cocycle_; }
  bool group_was_shrunk() const { return shrunk_; }

  std::size_t phi(const Vec& a) const { return cocycle_.value(a); }
  IGElement element(const Vec& a) const { return {a, phi(a)}; }

  IGElement multiply(const IGElement& x, const IGElement& y) const;
  IGElement inverse(const IGElement& x) const;
  IGElement power(const IGElement& x, long k) const;
  IGElement identity() const { return {zero_vec(base_.rank()), 0}; }

  Int kernel_index() const;
  /// invariant element: sum of g(b) over all g in G
  Vec g_norm(const Vec& b) const;
  /// B: closure of the generator images under the group
  const std::vector<Vec>& orbit_generators() const { return orbit_gens_; }
  std::optional<NotITypeCertificate> not_i_type_certificate() const;

  friend IGMonoid build_ig(const AffineMonoid& a, const GenAction& g,
                           const CosetCocycle& c);

private:
  AffineMonoid base_;
  GenAction action_;
  CosetCocycle cocycle_;
  std::vector<Vec> orbit_gens_;
  bool shrunk_ = false;
};

/// validates the cocycle, shrinks the group to the table values when
/// needed, and assembles the monoid
IGMonoid build_ig(const AffineMonoid& a, const GenAction& g,
                  const CosetCocycle& c);

struct CocycleInferenceFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reconstructs the coset cocycle from the phi-values of the generators by
/// running the product recursion on monomials up to `degree_bound`,
/// inferring the period lattice from equal-value differences. The result
/// must still be certified (build_ig re-checks the law exhaustively).
CosetCocycle infer_cocycle(const AffineMonoid& base, const GenAction& action,
                           const std::vector<std::size_t>& gen_phi,
                           std::size_t degree_bound = 6);

// permutation helpers shared with itype and the cli
std::vector<std::size_t> identity_permutation(std::size_t n);
std::vector<std::size_t> compose_permutations(const std::vector<std::size_t>& f,
                                              const std::vector<std::size_t>& g);
std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& p);
std::string permutation_to_cycles(const std::vector<std::size_t>& p);
std::vector<std::size_t> parse_cycles(const std::string& text, std::size_t n);

}  // namespace igtype
