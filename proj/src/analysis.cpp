#include "igtype/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace igtype {

namespace {

// sum of M_g^i over i < order(g)
IntMatrix power_sum(const GenAction& action, std::size_t g) {
  std::size_t r = action.matrix(0).rows();
  IntMatrix t(r, r);
  std::size_t e = 0;
  do {
    IntMatrix m = action.matrix(e);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) t.at(i, j) += m.at(i, j);
    e = action.multiply(g, e);
  } while (e != 0);
  return t;
}

std::optional<Vec> periodic_in_coset(const IGMonoid& s, std::size_t g,
                                     const Vec& alpha) {
  const IntMatrix t = power_sum(s.action(), g);
  const Sublattice& n = s.cocycle().kernel;
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n.rank(); ++i)
    gens.push_back(t.apply(n.basis().row(i)));
  Vec target = vec_neg(t.apply(alpha));
  auto c = solve_in_lattice(gens, target, alpha.size());
  if (!c) return std::nullopt;
  Vec a = alpha;
  for (std::size_t i = 0; i < n.rank(); ++i)
    a = vec_add(a, vec_scale((*c)[i], n.basis().row(i)));
  return a;
}

}  // namespace

TorsionResult is_torsion_free(const IGMonoid& s) {
  for (const auto& [alpha, g] : s.cocycle().table) {
    if (g == 0) continue;
    auto a = periodic_in_coset(s, g, alpha);
    if (!a) continue;
    IGElement x = s.element(*a);
    std::size_t d = s.action().element_order(g);
    if (!(s.power(x, static_cast<long>(d)) == s.identity()))
      throw std::logic_error("periodic element failed its power check");
    for (std::size_t j = 1; j < d; ++j)
      if (s.power(x, static_cast<long>(j)) == s.identity())
        throw std::logic_error("witness order is not the group element order");
    return {false, TorsionWitness{x, d}};
  }
  return {true, std::nullopt};
}

FacePrime prime_image(const IGMonoid& s, std::size_t g, const FacePrime& q) {
  const AffineMonoid& a = s.base();
  const auto& facets = a.facet_valuations();
  IntMatrix minv_t = s.action().matrix(s.action().inverse(g)).transposed();
  FacePrime out;
  for (std::size_t j : q.facets) {
    Vec w = primitive(minv_t.apply(facets[j]));
    std::size_t k = 0;
    while (k < facets.size() && facets[k] != w) ++k;
    if (k == facets.size())
      throw std::logic_error("group element does not permute the facets");
    out.facets.push_back(k);
  }
  std::sort(out.facets.begin(), out.facets.end());
  std::size_t gi = s.action().inverse(g);
  for (std::size_t i = 0; i < a.generator_images().size(); ++i) {
    Vec pre = s.action().act(gi, a.generator_images()[i]);
    bool inside = false;
    for (std::size_t j : q.facets)
      if (dot(facets[j], pre) > 0) { inside = true; break; }
    if (inside) out.generators.push_back(i);
  }
  out.height = q.height;
  return out;
}

bool divisorial_torsion_crosscheck(const IGMonoid& s) {
  const AffineMonoid& a = s.base();
  if (!a.is_maximal_order() || !a.units_trivial())
    throw PreconditionUnmet(
        "divisorial crosscheck needs a maximal-order base with trivial units");
  const auto& facets = a.facet_valuations();
  std::size_t t = facets.size();
  std::size_t r = a.rank();

  // permutation of the facets under each group element
  auto facet_perm = [&](std::size_t g) {
    std::vector<std::size_t> p(t);
    IntMatrix minv_t = s.action().matrix(s.action().inverse(g)).transposed();
    for (std::size_t j = 0; j < t; ++j) {
      Vec w = primitive(minv_t.apply(facets[j]));
      std::size_t k = 0;
      while (k < t && facets[k] != w) ++k;
      if (k == t) throw std::logic_error("facets are not permuted");
      p[j] = k;
    }
    return p;
  };

  auto div = [&](const Vec& x) {
    Vec d(t);
    for (std::size_t j = 0; j < t; ++j) d[j] = dot(facets[j], x);
    return d;
  };

  for (const auto& [alpha, g] : s.cocycle().table) {
    if (g == 0) continue;
    auto p = facet_perm(g);
    // solvability of div(a) = (I - P) gamma over the coset alpha + N:
    // generators are the columns of I - P and the divisors of N's basis
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < t; ++c) {
      Vec col(t, Int(0));
      col[c] += 1;
      col[p[c]] -= 1;
      gens.push_back(col);
    }
    const Sublattice& n = s.cocycle().kernel;
    for (std::size_t i = 0; i < n.rank(); ++i)
      gens.push_back(vec_neg(div(n.basis().row(i))));
    if (solve_in_lattice(gens, div(alpha), t)) return false;
    (void)r;
  }
  return true;
}

bool ideal_condition(const IGMonoid& s, const std::vector<FacePrime>& qs) {
  if (qs.empty()) throw std::invalid_argument("empty prime set");
  const auto& facets = s.base().facet_valuations();
  for (const Vec& b : s.orbit_generators()) {
    std::size_t g = s.phi(b);
    for (const FacePrime& q : qs) {
      bool b_inside = false;
      for (std::size_t j : q.facets)
        if (dot(facets[j], b) > 0) { b_inside = true; break; }
      if (b_inside) continue;
      FacePrime pre = prime_image(s, s.action().inverse(g), q);
      if (std::find(qs.begin(), qs.end(), pre) == qs.end()) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::vector<FacePrime>> prime_orbits(const IGMonoid& s,
                                                 std::vector<FacePrime> primes) {
  std::vector<std::vector<FacePrime>> orbits;
  std::set<FacePrime> seen;
  for (const FacePrime& q : primes) {
    if (seen.count(q)) continue;
    std::vector<FacePrime> orbit;
    for (std::size_t g = 0; g < s.action().order(); ++g) {
      FacePrime img = prime_image(s, g, q);
      if (!seen.count(img)) {
        seen.insert(img);
        orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<PrimeOfS> primes_of_s_impl(const IGMonoid& s, std::size_t height) {
  auto orbits = prime_orbits(s, s.base().prime_spectrum(height));
  std::vector<PrimeOfS> out;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    const auto& orbit = orbits[oi];
    std::size_t n = orbit.size();
    std::vector<std::vector<std::size_t>> satisfying;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> idx;
      std::vector<FacePrime> qs;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (std::size_t{1} << j)) {
          idx.push_back(j);
          qs.push_back(orbit[j]);
        }
      if (ideal_condition(s, qs)) satisfying.push_back(idx);
    }
    std::vector<std::vector<std::size_t>> minimal;
    for (const auto& a : satisfying) {
      bool has_proper_subset = false;
      for (const auto& b : satisfying) {
        if (b.size() >= a.size()) continue;
        if (std::includes(a.begin(), a.end(), b.begin(), b.end())) {
          has_proper_subset = true;
          break;
        }
      }
      if (!has_proper_subset) minimal.push_back(a);
    }
    // the minimal sets partition the orbit
    std::vector<int> covered(n, 0);
    for (const auto& m : minimal)
      for (std::size_t j : m) covered[j] += 1;
    for (int c : covered)
      if (c != 1) throw std::logic_error("minimal prime sets do not partition the orbit");
    for (const auto& m : minimal) {
      PrimeOfS p;
      for (std::size_t j : m) p.primes.push_back(orbit[j]);
      p.height = height;
      p.orbit = oi;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

std::vector<PrimeOfS> primes_of_s(const IGMonoid& s, std::size_t height) {
  if (!is_torsion_free(s).torsion_free)
    throw TorsionPresent("prime enumeration requires a torsion-free fraction group");
  return primes_of_s_impl(s, height);
}

MaximalOrderReport is_maximal_order_s(const IGMonoid& s) {
  if (!s.base().is_maximal_order() || !s.base().units_trivial())
    throw PreconditionUnmet(
        "criterion needs a maximal-order base with trivial units");
  MaximalOrderReport rep;
  rep.sufficient_only = !is_torsion_free(s).torsion_free;
  auto ps = primes_of_s_impl(s, 1);
  auto orbits = prime_orbits(s, s.base().prime_spectrum(1));
  rep.maximal_order = true;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    OrbitReport orep;
    orep.orbit = orbits[oi];
    for (const auto& p : ps) {
      if (p.orbit != oi) continue;
      std::vector<std::size_t> idx;
      for (const FacePrime& q : p.primes) {
        std::size_t j = 0;
        while (!(orbits[oi][j] == q)) ++j;
        idx.push_back(j);
      }
      orep.partition.push_back(idx);
    }
    orep.full_orbit =
        orep.partition.size() == 1 && orep.partition[0].size() == orbits[oi].size();
    if (!orep.full_orbit) rep.maximal_order = false;
    rep.orbits.push_back(std::move(orep));
  }
  return rep;
}

LocalizationResult localize_s(const IGMonoid& s, const PrimeOfS& p) {
  LocalizationResult out;
  std::set<std::size_t> facet_set;
  for (const FacePrime& q : p.primes)
    for (std::size_t j : q.facets) facet_set.insert(j);
  out.localized = s.base().localize(
      std::vector<std::size_t>(facet_set.begin(), facet_set.end()));
  out.localized_minimal_primes = out.localized.minimal_primes();

  // minimal prime sets of the localization, over the surviving base primes
  std::vector<FacePrime> survivors = p.primes;
  std::size_t n = survivors.size();
  std::vector<std::vector<std::size_t>> satisfying;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    std::vector<FacePrime> qs;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (std::size_t{1} << j)) {
        idx.push_back(j);
        qs.push_back(survivors[j]);
      }
    bool ok = true;
    // the image prime must also survive in the localization
    const auto& facets = s.base().facet_valuations();
    for (const Vec& b : s.orbit_generators()) {
      std::size_t g = s.phi(b);
      for (const FacePrime& q : qs) {
        bool b_inside = false;
        for (std::size_t j : q.facets)
          if (dot(facets[j], b) > 0) { b_inside = true; break; }
        if (b_inside) continue;
        FacePrime pre = prime_image(s, s.action().inverse(g), q);
        if (std::find(qs.begin(), qs.end(), pre) == qs.end()) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) satisfying.push_back(idx);
  }
  std::size_t minimal_count = 0;
  for (const auto& a : satisfying) {
    bool has_proper_subset = false;
    for (const auto& b : satisfying)
      if (b.size() < a.size() &&
          std::includes(a.begin(), a.end(), b.begin(), b.end()))
        has_proper_subset = true;
    if (!has_proper_subset) ++minimal_count;
  }
  out.unique_minimal_prime = minimal_count == 1;
  return out;
}

namespace {

// translations of the two-sided ideal generated by ys, sampled by closing
// under products with the orbit generators
std::set<Vec> ideal_sample(const IGMonoid& s, const std::vector<IGElement>& ys,
                           std::size_t steps) {
  std::set<Vec> j;
  for (const auto& y : ys) j.insert(y.a);
  for (std::size_t d = 0; d < steps; ++d) {
    std::set<Vec> next = j;
    for (const Vec& t : j) {
      IGElement e = s.element(t);
      for (const Vec& b : s.orbit_generators()) {
        next.insert(s.multiply(s.element(b), e).a);
        next.insert(s.multiply(e, s.element(b)).a);
      }
    }
    j = std::move(next);
  }
  return j;
}

// exact membership of a translation in the two-sided ideal generated by ys
bool in_ideal(const IGMonoid& s, const std::vector<IGElement>& ys, const Vec& c,
              std::map<Int, std::vector<Vec>>& element_cache) {
  const AffineMonoid& a = s.base();
  if (!a.in_cone(c)) return false;
  for (const auto& y : ys) {
    Int budget = a.degree(c) - a.degree(y.a);
    if (budget < 0) continue;
    auto it = element_cache.find(budget);
    if (it == element_cache.end())
      it = element_cache.emplace(budget, a.elements_up_to(budget)).first;
    for (const Vec& s1 : it->second) {
      std::size_t g1 = s.phi(s1);
      Vec rest = vec_sub(vec_sub(c, s1), s.action().act(g1, y.a));
      std::size_t gh = s.action().multiply(g1, y.g);
      Vec s2 = s.action().act(s.action().inverse(gh), rest);
      if (a.in_cone(s2) && a.contains(s2)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<NonMaxWitness> non_maximal_witness(const IGMonoid& s,
                                                 std::size_t bound) {
  const AffineMonoid& a = s.base();
  const auto& facets = a.facet_valuations();
  std::size_t t = facets.size();
  long b = static_cast<long>(bound);

  // candidate translations: bounded divisor vectors realized in the
  // fraction group, outside the base monoid
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    Vec col(t);
    for (std::size_t j = 0; j < t; ++j) col[j] = facets[j][i];
    cols.push_back(col);
  }
  std::vector<Vec> candidates;
  Vec d(t, Int(-b));
  while (true) {
    bool negative = false;
    for (const Int& x : d)
      if (x < 0) negative = true;
    if (negative) {
      auto sol = solve_in_lattice(cols, d, t);
      if (sol) candidates.push_back(*sol);
    }
    std::size_t j = 0;
    while (j < t && d[j] == b) d[j++] = -b;
    if (j == t) break;
    ++d[j];
  }

  // ideal generator pool: short words in the generators
  std::set<Vec> words;
  std::set<Vec> layer{zero_vec(a.rank())};
  for (std::size_t l = 0; l < bound; ++l) {
    std::set<Vec> next;
    for (const Vec& w : layer)
      for (const Vec& gimg : a.generator_images()) {
        Vec v = s.multiply(s.element(w), s.element(gimg)).a;
        next.insert(v);
        words.insert(v);
      }
    layer = std::move(next);
  }
  std::vector<Vec> pool(words.begin(), words.end());

  for (const Vec& av : candidates) {
    IGElement g = s.element(av);
    std::map<Int, std::vector<Vec>> cache;
    // only pool elements whose image under g can stay in the monoid
    std::vector<IGElement> viable;
    for (const Vec& w : pool) {
      IGElement y = s.element(w);
      if (a.in_cone(s.multiply(g, y).a)) viable.push_back(y);
    }
    auto try_ideal = [&](const std::vector<IGElement>& ys) -> bool {
      for (const auto& y : ys)
        if (!in_ideal(s, ys, s.multiply(g, y).a, cache)) return false;
      // deeper ideal elements, sampled
      for (const Vec& j : ideal_sample(s, ys, bound))
        if (!in_ideal(s, ys, vec_add(av, s.action().act(g.g, j)), cache))
          return false;
      return true;
    };
    for (std::size_t i = 0; i < viable.size(); ++i) {
      if (try_ideal({viable[i]}))
        return NonMaxWitness{g, {viable[i]}};
      for (std::size_t k = i + 1; k < viable.size(); ++k)
        if (try_ideal({viable[i], viable[k]}))
          return NonMaxWitness{g, {viable[i], viable[k]}};
    }
  }
  return std::nullopt;
}

SubgroupSearchResult finite_normal_subgroup_search(const IGMonoid& s,
                                                   std::size_t bound) {
  std::size_t r = s.base().rank();
  long b = static_cast<long>(bound);
  std::vector<IGElement> seeds;
  Vec x(r, Int(-b));
  while (true) {
    if (!is_zero_vec(x)) {
      std::size_t g = s.phi(x);
      if (g != 0 && is_zero_vec(power_sum(s.action(), g).apply(x)))
        seeds.push_back(s.element(x));
    }
    std::size_t j = 0;
    while (j < r && x[j] == b) x[j++] = -b;
    if (j == r) break;
    ++x[j];
  }

  std::vector<IGElement> conj_gens;
  for (const Vec& bg : s.orbit_generators()) conj_gens.push_back(s.element(bg));

  for (const IGElement& seed : seeds) {
    std::set<IGElement> c{s.identity(), seed, s.inverse(seed)};
    bool stable = false;
    for (std::size_t step = 0; step < bound + 2 && !stable; ++step) {
      std::set<IGElement> next = c;
      for (const IGElement& x1 : c) {
        next.insert(s.inverse(x1));
        for (const IGElement& x2 : c) next.insert(s.multiply(x1, x2));
        for (const IGElement& y : conj_gens) {
          next.insert(s.multiply(s.multiply(y, x1), s.inverse(y)));
          next.insert(s.multiply(s.multiply(s.inverse(y), x1), y));
        }
      }
      if (next.size() > 200) break;  // growing without bound
      stable = next == c;
      c = std::move(next);
    }
    if (!stable) continue;
    return SubgroupSearchResult{true, {c.begin(), c.end()}};
  }
  return SubgroupSearchResult{false, {}};
}

}  // namespace igtype
