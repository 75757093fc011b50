#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "igtype/intlat.hpp"

namespace igtype {

struct TorsionQuotient : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NontrivialUnits : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInMonoid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotMaximalOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MembershipUndecided : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finitely presented abelian monoid: generator names plus binomial
/// relations given as pairs of exponent vectors (left word = right word).
struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Vec, Vec>> relations;
  bool operator==(const Presentation&) const = default;
};

/// Prime ideal of an affine monoid described through the face that is its
/// complement: the valuation indices vanishing on the face and the set of
/// generator indices contained in the prime.
struct FacePrime {
  std::vector<std::size_t> facets;      // valuations vanishing on the face
  std::vector<std::size_t> generators;  // generators inside the prime
  std::size_t height = 0;

  bool operator==(const FacePrime& o) const { return generators == o.generators; }
  bool operator<(const FacePrime& o) const { return generators < o.generators; }
};

/// Divisorial ideal as an exponent vector over the minimal primes.
struct Divisor {
  Vec exponents;
  bool operator==(const Divisor&) const = default;
};

enum class Membership { no, yes, unknown };

/// Finitely generated cancellative abelian monoid embedded in Z^rank with
/// its group of fractions identified with Z^rank.
class AffineMonoid {
public:
  std::size_t rank() const { return rank_; }
  const std::vector<Vec>& generator_images() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Vec>& facet_valuations() const { return facets_; }
  const std::optional<Presentation>& presentation() const { return pres_; }
  bool known_normal() const { return normal_; }

  Int facet_value(std::size_t facet, const Vec& v) const {
    return dot(facets_[facet], v);
  }
  bool in_cone(const Vec& v) const;

  /// Sum of all facet valuations; strictly positive grading when the cone
  /// is pointed.
  Int degree(const Vec& v) const;

  Membership membership(const Vec& v, const Int& search_bound = 0) const;
  bool contains(const Vec& v) const;

  std::vector<Vec> units() const;
  bool units_trivial() const;
  std::vector<std::size_t> indecomposables() const;
  bool is_maximal_order() const;
  std::vector<FacePrime> minimal_primes() const;
  std::vector<FacePrime> prime_spectrum(
      std::optional<std::size_t> height = std::nullopt) const;
  Divisor divisorial_factorization(const Vec& x) const;
  AffineMonoid localize(const std::vector<std::size_t>& facet_subset) const;

  /// Hilbert basis of Z^rank intersected with the cone of the monoid.
  const std::vector<Vec>& normal_hilbert_basis() const;

  /// Basis of the lattice of the cone's lineality space.
  std::vector<Vec> lineality_basis() const;

  /// All monoid elements of degree at most `bound` (pointed cone only).
  std::vector<Vec> elements_up_to(const Int& bound) const;

  friend AffineMonoid build_monoid(const Presentation& p);
  friend AffineMonoid make_affine_monoid(std::size_t rank,
                                         std::vector<Vec> images,
                                         std::vector<std::string> names);

private:
  void compute_facets();
  void compute_units();

  std::size_t rank_ = 0;
  std::vector<Vec> gens_;
  std::vector<std::string> names_;
  std::optional<Presentation> pres_;
  std::vector<Vec> facets_;
  std::vector<std::size_t> unit_gens_;
  bool normal_ = false;

  Int membership_degree_cap_ = 12;  // only used when the cone is not pointed

  mutable std::map<Vec, bool> member_memo_;
  mutable std::optional<std::vector<Vec>> hilbert_;
  mutable std::optional<bool> maximal_order_;
};

/// Embeds the presented monoid: rank = generators - rank of the relation
/// lattice, generator images span Z^rank. Rejects presentations whose
/// group of fractions has torsion. The coordinates are normalized so that,
/// when possible, the lexicographically first unimodular subset of
/// generators maps to the standard basis.
AffineMonoid build_monoid(const Presentation& p);

/// Monoid generated by explicit lattice points (fraction group must be all
/// of Z^rank).
AffineMonoid make_affine_monoid(std::size_t rank, std::vector<Vec> images,
                                std::vector<std::string> names = {});

AffineMonoid free_abelian_monoid(std::size_t n);

}  // namespace igtype
