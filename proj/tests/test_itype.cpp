#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "igtype/itype.hpp"

using namespace igtype;

namespace {

Vec vec(std::vector<long> v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

// x1x2=x3x3, x2x1=x4x4, x1x3=x2x4, x1x4=x4x2, x2x3=x3x1, x3x2=x4x1
IRelations belvb_relations() {
  IRelations rel;
  rel.n = 4;
  rel.relations = {{{0, 1}, {2, 2}}, {{1, 0}, {3, 3}}, {{0, 2}, {1, 3}},
                   {{0, 3}, {3, 1}}, {{1, 2}, {2, 0}}, {{2, 1}, {3, 0}}};
  return rel;
}

IRelations commuting_relations(std::size_t n) {
  IRelations rel;
  rel.n = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      rel.relations.push_back({{i, j}, {j, i}});
  return rel;
}

IGMonoid and_ig() {
  Presentation p;
  p.generators = {"u1", "u2", "u3", "u4"};
  p.relations.push_back({vec({1, 1, 0, 0}), vec({0, 0, 1, 1})});
  AffineMonoid a = build_monoid(p);
  GenAction g = build_action(a, {parse_cycles("(12)(34)", 4)});
  CosetCocycle c;
  c.kernel = Sublattice::from_generators(
      3, {vec({1, 1, 0}), vec({0, 1, 1}), vec({0, 0, 2})});
  c.table[c.kernel.reduce(vec({0, 0, 0}))] = 0;
  c.table[c.kernel.reduce(vec({1, 0, 0}))] = 1;
  return build_ig(a, g, c);
}

}  // namespace

TEST_CASE("rmap of a single generator is the identity") {
  IRelations rel;
  rel.n = 1;
  RMap r = build_rmap(rel);
  CHECK(r.apply(0, 0) == std::make_pair(std::size_t{0}, std::size_t{0}));
  CHECK(check_ybe(r).ok);
}

TEST_CASE("rmap of the concrete relations") {
  RMap r = build_rmap(belvb_relations());
  CHECK(r.apply(0, 1) == std::make_pair(std::size_t{2}, std::size_t{2}));
  CHECK(r.apply(1, 0) == std::make_pair(std::size_t{3}, std::size_t{3}));
  CHECK(r.apply(2, 2) == std::make_pair(std::size_t{0}, std::size_t{1}));
  // involutive on occurring pairs
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto [k, l] = r.apply(i, j);
      CHECK(r.apply(k, l) == std::make_pair(i, j));
    }
}

TEST_CASE("duplicate words are rejected") {
  IRelations rel;
  rel.n = 2;
  rel.relations = {{{0, 1}, {1, 0}}};
  CHECK_NOTHROW(build_rmap(rel));
  rel.n = 3;
  rel.relations = {{{0, 1}, {1, 0}}, {{0, 1}, {2, 2}}, {{1, 2}, {2, 1}}};
  CHECK_THROWS_AS(build_rmap(rel), DuplicateWord);
}

TEST_CASE("yang-baxter holds for the concrete relations and the swap") {
  CHECK(check_ybe(build_rmap(belvb_relations())).ok);
  CHECK(check_ybe(build_rmap(commuting_relations(3))).ok);
}

TEST_CASE("a non-solution is caught with a violating triple") {
  // x1x2=x2x2, x1x3=x3x3, x2x3=x3x2 is bijective but fails the braid test
  IRelations rel;
  rel.n = 3;
  rel.relations = {{{0, 1}, {1, 1}}, {{0, 2}, {2, 2}}, {{1, 2}, {2, 1}}};
  RMap r = build_rmap(rel);
  auto res = check_ybe(r);
  CHECK_FALSE(res.ok);
  CHECK(res.violation.has_value());
}

TEST_CASE("non-degeneracy of the concrete relations") {
  auto nd = check_nondegeneracy(build_rmap(belvb_relations()));
  CHECK(nd.left);
  CHECK(nd.right);
  auto nd2 = check_nondegeneracy(build_rmap(commuting_relations(4)));
  CHECK(nd2.left);
  CHECK(nd2.right);
}

TEST_CASE("derived permutations of the concrete relations") {
  auto dp = derive_permutations(belvb_relations());
  CHECK(dp.sigma[0] == parse_cycles("(23)", 4));
  CHECK(dp.sigma[1] == parse_cycles("(14)", 4));
  CHECK(dp.sigma[2] == parse_cycles("(1243)", 4));
  CHECK(dp.sigma[3] == parse_cycles("(1342)", 4));
  CHECK(dp.group_order == 8);
  // dihedral presentation a^4 = 1, b^2 = 1, a^3 b = b a with a = sigma_3,
  // b = sigma_1
  auto a = dp.sigma[2], b = dp.sigma[0];
  auto a2 = compose_permutations(a, a);
  CHECK(compose_permutations(a2, a2) == identity_permutation(4));
  CHECK(compose_permutations(b, b) == identity_permutation(4));
  CHECK(compose_permutations(compose_permutations(a2, a), b) ==
        compose_permutations(b, a));
}

TEST_CASE("commuting relations derive identity permutations") {
  auto dp = derive_permutations(commuting_relations(4));
  for (const auto& s : dp.sigma) CHECK(s == identity_permutation(4));
  CHECK(dp.group_order == 1);
}

TEST_CASE("itype_to_ig on commuting relations is free abelian") {
  ITypeMonoid t = itype_to_ig(commuting_relations(3));
  CHECK(t.ig.action().order() == 1);
  CHECK(t.ig.kernel_index() == 1);
}

TEST_CASE("itype_to_ig on the concrete relations") {
  ITypeMonoid t = itype_to_ig(belvb_relations());
  CHECK(t.ig.action().order() == 8);
  // psi(u_i) = sigma_i
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t g = t.ig.phi(unit_vec(4, i));
    CHECK(t.ig.action().generator_permutation(g) == t.sigma[i]);
  }
  // the defining relations hold in S
  for (const auto& [lhs, rhs] : belvb_relations().relations) {
    auto x = t.ig.element(unit_vec(4, lhs.first));
    auto y = t.ig.element(unit_vec(4, lhs.second));
    auto u = t.ig.element(unit_vec(4, rhs.first));
    auto v = t.ig.element(unit_vec(4, rhs.second));
    CHECK(t.ig.multiply(x, y) == t.ig.multiply(u, v));
  }
  // kernel index divides a multiple of |G| and is a valid cocycle quotient
  CHECK(t.ig.kernel_index() == 8);
}

TEST_CASE("projection counts match free abelian monomial counts") {
  ITypeMonoid t = itype_to_ig(belvb_relations());
  std::set<Vec> layer{zero_vec(4)};
  std::size_t expected[] = {1, 4, 10, 20, 35};
  for (int d = 1; d <= 4; ++d) {
    std::set<Vec> next;
    for (const Vec& a : layer)
      for (std::size_t i = 0; i < 4; ++i)
        next.insert(t.ig.multiply(t.ig.element(a),
                                  t.ig.element(unit_vec(4, i))).a);
    layer = std::move(next);
    CHECK(layer.size() == expected[d]);
  }
}

TEST_CASE("cover of the four-generator example has 8 generators") {
  IGMonoid s = and_ig();
  CoverResult cr = ig_cover(s);
  CHECK(cr.labels.size() == 8);
  CHECK(cr.covering_images.size() == 8);
  // f(v_{sigma,1}) = sigma(u1) = u2
  CHECK(cr.labels[4] == std::make_pair(std::size_t{1}, std::size_t{0}));
  CHECK(cr.covering_images[4] == vec({0, 1, 0}));
  CHECK(cr.morphism_verified);
  CHECK(cr.epimorphism_verified);
  CHECK(cr.b_invariant);
  // rank of B: m - rank of the image lattice
  CHECK(cr.b.rank() == 5);
}

TEST_CASE("cover under the trivial group is the monoid itself") {
  Presentation p;
  p.generators = {"u1", "u2", "u3", "u4"};
  p.relations.push_back({vec({1, 1, 0, 0}), vec({0, 0, 1, 1})});
  AffineMonoid a = build_monoid(p);
  GenAction g = build_action(a, {identity_permutation(4)});
  CosetCocycle c;
  c.kernel = Sublattice::full(3);
  c.table[vec({0, 0, 0})] = 0;
  IGMonoid s = build_ig(a, g, c);
  CoverResult cr = ig_cover(s);
  CHECK(cr.labels.size() == 4);
  CHECK(cr.morphism_verified);
  CHECK(cr.epimorphism_verified);
  // B is the relation lattice: rank 1
  CHECK(cr.b.rank() == 1);
  CHECK(cr.b.contains(vec({1, 1, -1, -1})));
}
