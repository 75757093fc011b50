#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "igtype/monoid.hpp"

using namespace igtype;

namespace {

Vec vec(std::vector<long> v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

// the abelianization behind the four-generator example:
// u1 u2 = u3 u4 is the only relation
Presentation and_presentation() {
  Presentation p;
  p.generators = {"u1", "u2", "u3", "u4"};
  p.relations.push_back({vec({1, 1, 0, 0}), vec({0, 0, 1, 1})});
  return p;
}

// the base monoid of the closing example: u1 u2 u3 = u4^2
Presentation closing_presentation() {
  Presentation p;
  p.generators = {"u1", "u2", "u3", "u4"};
  p.relations.push_back({vec({1, 1, 1, 0}), vec({0, 0, 0, 2})});
  return p;
}

std::set<std::set<std::string>> prime_name_sets(const AffineMonoid& m,
                                                const std::vector<FacePrime>& ps) {
  std::set<std::set<std::string>> out;
  for (const auto& p : ps) {
    std::set<std::string> s;
    for (std::size_t i : p.generators) s.insert(m.generator_names()[i]);
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("free abelian monoid") {
  AffineMonoid m = free_abelian_monoid(3);
  CHECK(m.rank() == 3);
  CHECK(m.generator_images() ==
        std::vector<Vec>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  CHECK(m.facet_valuations().size() == 3);
  CHECK(m.units_trivial());
  CHECK(m.is_maximal_order());
  CHECK(m.contains(vec({2, 5, 0})));
  CHECK_FALSE(m.contains(vec({-1, 0, 0})));
  CHECK(m.minimal_primes().size() == 3);
  CHECK(m.indecomposables() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("four-generator example: embedding") {
  AffineMonoid m = build_monoid(and_presentation());
  CHECK(m.rank() == 3);
  // first three generators become the standard basis, the last one is forced
  CHECK(m.generator_images()[0] == vec({1, 0, 0}));
  CHECK(m.generator_images()[1] == vec({0, 1, 0}));
  CHECK(m.generator_images()[2] == vec({0, 0, 1}));
  CHECK(m.generator_images()[3] == vec({1, 1, -1}));
  CHECK(m.units_trivial());
}

TEST_CASE("four-generator example: facets and minimal primes") {
  AffineMonoid m = build_monoid(and_presentation());
  std::set<Vec> facets(m.facet_valuations().begin(), m.facet_valuations().end());
  CHECK(facets == std::set<Vec>{vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 0, 1}),
                                vec({0, 1, 1})});
  auto primes = m.minimal_primes();
  REQUIRE(primes.size() == 4);
  for (const auto& p : primes) CHECK(p.height == 1);
  CHECK(prime_name_sets(m, primes) ==
        std::set<std::set<std::string>>{
            {"u1", "u3"}, {"u1", "u4"}, {"u2", "u3"}, {"u2", "u4"}});
}

TEST_CASE("four-generator example: maximal order and divisor theory") {
  AffineMonoid m = build_monoid(and_presentation());
  CHECK(m.is_maximal_order());
  // each generator lies in exactly two of the four minimal primes,
  // with valuation 1 in each
  for (const Vec& g : m.generator_images()) {
    Divisor d = m.divisorial_factorization(g);
    Int ones = 0, total = 0;
    for (const Int& e : d.exponents) {
      CHECK(e >= 0);
      CHECK(e <= 1);
      if (e == 1) ++ones;
      total += e;
    }
    CHECK(ones == 2);
    CHECK(total == 2);
  }
  CHECK_THROWS_AS(m.divisorial_factorization(vec({-1, 0, 0})), NotInMonoid);
}

TEST_CASE("four-generator example: product relation holds in the embedding") {
  AffineMonoid m = build_monoid(and_presentation());
  const auto& g = m.generator_images();
  CHECK(vec_add(g[0], g[1]) == vec_add(g[2], g[3]));
}

TEST_CASE("closing example: embedding and primes") {
  AffineMonoid m = build_monoid(closing_presentation());
  CHECK(m.rank() == 3);
  CHECK(m.generator_images()[0] == vec({1, 0, 0}));
  CHECK(m.generator_images()[1] == vec({0, 1, 0}));
  CHECK(m.generator_images()[3] == vec({0, 0, 1}));
  CHECK(m.generator_images()[2] == vec({-1, -1, 2}));
  // u1 u2 u3 = u4^2 in coordinates
  const auto& g = m.generator_images();
  CHECK(vec_add(vec_add(g[0], g[1]), g[2]) == vec_scale(2, g[3]));

  auto primes = m.minimal_primes();
  REQUIRE(primes.size() == 3);
  for (const auto& p : primes) CHECK(p.height == 1);
  CHECK(prime_name_sets(m, primes) ==
        std::set<std::set<std::string>>{
            {"u1", "u4"}, {"u2", "u4"}, {"u3", "u4"}});
  CHECK(m.is_maximal_order());
}

TEST_CASE("numerical monoid <2,3> is not a maximal order") {
  Presentation p;
  p.generators = {"a", "b"};
  p.relations.push_back({vec({3, 0}), vec({0, 2})});
  AffineMonoid m = build_monoid(p);
  CHECK(m.rank() == 1);
  CHECK_FALSE(m.is_maximal_order());
  // 1 is in the normalization but not in the monoid; 5 = 2 + 3 is
  Vec one = m.normal_hilbert_basis().at(0);
  CHECK_FALSE(m.contains(one));
  CHECK(m.contains(vec_scale(5, one)));
  CHECK(m.contains(vec_scale(2, one)));
  CHECK_FALSE(m.contains(vec_scale(1, one)));
}

TEST_CASE("torsion in the group of fractions is rejected") {
  Presentation p;
  p.generators = {"a", "b"};
  p.relations.push_back({vec({2, 0}), vec({0, 2})});  // a^2 = b^2, a != b
  CHECK_THROWS_AS(build_monoid(p), TorsionQuotient);
}

TEST_CASE("units and lineality") {
  AffineMonoid m = make_affine_monoid(1, {vec({1}), vec({-1})});
  CHECK(m.facet_valuations().empty());
  CHECK_FALSE(m.units_trivial());
  CHECK(m.units().size() == 2);
  CHECK(m.lineality_basis().size() == 1);
  CHECK(m.is_maximal_order());
  CHECK_THROWS_AS(m.indecomposables(), NontrivialUnits);

  AffineMonoid h = make_affine_monoid(
      2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
  CHECK(h.units().size() == 2);
  CHECK(h.lineality_basis().size() == 1);
  CHECK(h.minimal_primes().size() == 1);
  CHECK(h.minimal_primes()[0].height == 1);
}

TEST_CASE("hilbert basis of the quadrant and of the and-cone") {
  AffineMonoid q = free_abelian_monoid(2);
  std::set<Vec> hb(q.normal_hilbert_basis().begin(), q.normal_hilbert_basis().end());
  CHECK(hb == std::set<Vec>{vec({1, 0}), vec({0, 1})});

  AffineMonoid m = build_monoid(and_presentation());
  std::set<Vec> hb2(m.normal_hilbert_basis().begin(), m.normal_hilbert_basis().end());
  CHECK(hb2 == std::set<Vec>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}),
                             vec({1, 1, -1})});
}

TEST_CASE("localization at a facet") {
  AffineMonoid m = build_monoid(and_presentation());
  // find the facet (1,0,0)
  std::size_t j = 0;
  while (m.facet_valuations()[j] != vec({1, 0, 0})) ++j;
  AffineMonoid loc = m.localize({j});
  CHECK(loc.known_normal());
  CHECK(loc.lineality_basis().size() == 2);
  CHECK(loc.contains(vec({0, 5, -7})));
  CHECK(loc.contains(vec({3, -2, 0})));
  CHECK_FALSE(loc.contains(vec({-1, 0, 0})));
  CHECK(loc.minimal_primes().size() == 1);
}

TEST_CASE("prime spectrum of the quadrant") {
  AffineMonoid q = free_abelian_monoid(2);
  auto all = q.prime_spectrum();
  CHECK(all.size() == 3);
  CHECK(q.prime_spectrum(1).size() == 2);
  CHECK(q.prime_spectrum(2).size() == 1);
  CHECK(q.prime_spectrum(2)[0].generators == std::vector<std::size_t>{0, 1});
}

TEST_CASE("prime spectrum of the four-generator example") {
  AffineMonoid m = build_monoid(and_presentation());
  CHECK(m.prime_spectrum(1).size() == 4);
  auto top = m.prime_spectrum(3);
  REQUIRE(top.size() == 1);
  CHECK(top[0].generators == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("indecomposables of a veronese square") {
  // even-degree part of the quadrant, generated by (2,0),(1,1),(0,2);
  // re-embedded since these span an index-2 sublattice
  AffineMonoid v = make_affine_monoid(
      2, {vec({2, 0}), vec({1, 1}), vec({0, 2})});
  const auto& g = v.generator_images();
  CHECK(v.indecomposables().size() == 3);
  CHECK(v.contains(vec_add(g[0], g[1])));
  CHECK(v.contains(vec_add(g[0], vec_add(g[1], g[2]))));
  // g0 + g2 = 2 g1 is the defining relation
  CHECK(vec_add(g[0], g[2]) == vec_scale(2, g[1]));
  CHECK(v.is_maximal_order());
}

TEST_CASE("bounded membership search on a non-pointed monoid") {
  // upper half plane monoid
  AffineMonoid m = make_affine_monoid(
      2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
  CHECK(m.membership(vec({-3, 2})) == Membership::yes);
  CHECK(m.membership(vec({0, -1})) == Membership::no);
}

TEST_CASE("elements_up_to enumerates exactly the small elements") {
  AffineMonoid q = free_abelian_monoid(2);
  auto els = q.elements_up_to(2);
  CHECK(els.size() == 6);  // (0,0),(1,0),(0,1),(2,0),(1,1),(0,2)
}
