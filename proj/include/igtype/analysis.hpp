#pragma once

#include <optional>
#include <vector>

#include "igtype/igcore.hpp"

namespace igtype {

struct PreconditionUnmet : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TorsionPresent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TorsionWitness {
  IGElement element;
  std::size_t order = 0;
};

struct TorsionResult {
  bool torsion_free = false;
  std::optional<TorsionWitness> witness;
};

/// exact decision through the power identity (a,g)^d = (sum_i g^i(a), 1)
TorsionResult is_torsion_free(const IGMonoid& s);

/// independent decision through fixed divisorial ideals; must agree with
/// is_torsion_free. Requires the base to be a maximal order with trivial
/// units.
bool divisorial_torsion_crosscheck(const IGMonoid& s);

/// prime of S described by the set of base primes it intersects
struct PrimeOfS {
  std::vector<FacePrime> primes;  // equal height, base primes
  std::size_t height = 0;
  std::size_t orbit = 0;  // which G-orbit of base primes it partitions
};

/// image of a base prime under a group element
FacePrime prime_image(const IGMonoid& s, std::size_t g, const FacePrime& q);

/// condition: b phi(b)(Q1 cap ... cap Qn) stays inside the intersection,
/// checked on the orbit generating set
bool ideal_condition(const IGMonoid& s, const std::vector<FacePrime>& qs);

std::vector<PrimeOfS> primes_of_s(const IGMonoid& s, std::size_t height);

struct OrbitReport {
  std::vector<FacePrime> orbit;
  std::vector<std::vector<std::size_t>> partition;  // index sets into orbit
  bool full_orbit = false;
};

struct MaximalOrderReport {
  bool maximal_order = false;
  bool sufficient_only = false;  // torsion present: criterion one-directional
  std::vector<OrbitReport> orbits;
};

/// maximal order iff every minimal prime of S covers a whole G-orbit of
/// minimal base primes
MaximalOrderReport is_maximal_order_s(const IGMonoid& s);

struct LocalizationResult {
  AffineMonoid localized;
  std::vector<FacePrime> localized_minimal_primes;
  bool unique_minimal_prime = false;
};

LocalizationResult localize_s(const IGMonoid& s, const PrimeOfS& p);

struct NonMaxWitness {
  IGElement g;                        // outside S, with g I inside I
  std::vector<IGElement> ideal_gens;  // generators of I
};

/// bounded search for a conductor-style witness that S is not maximal
std::optional<NonMaxWitness> non_maximal_witness(const IGMonoid& s,
                                                 std::size_t bound);

struct SubgroupSearchResult {
  bool found = false;  // false means: none found up to the bound
  std::vector<IGElement> elements;
};

/// bounded search for a non-trivial finite normal subgroup of the fraction
/// group; a negative answer is inconclusive
SubgroupSearchResult finite_normal_subgroup_search(const IGMonoid& s,
                                                   std::size_t bound);

}  // namespace igtype
