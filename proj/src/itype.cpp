#include "igtype/itype.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace igtype {

RMap build_rmap(const IRelations& rel) {
  std::size_t n = rel.n;
  if (rel.relations.size() != n * (n - 1) / 2)
    throw std::invalid_argument("expected n(n-1)/2 relations");
  std::vector<std::pair<std::size_t, std::size_t>> table(n * n);
  std::vector<bool> set(n * n, false), constrained(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = {i, j};

  auto assign = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    std::size_t idx = i * n + j;
    if (set[idx] && table[idx] != std::make_pair(k, l))
      throw DuplicateWord("word x" + std::to_string(i + 1) + "x" +
                          std::to_string(j + 1) + " appears more than once");
    set[idx] = true;
    constrained[idx] = true;
    table[idx] = {k, l};
  };
  for (const auto& [lhs, rhs] : rel.relations) {
    auto [i, j] = lhs;
    auto [k, l] = rhs;
    if (i >= n || j >= n || k >= n || l >= n)
      throw std::invalid_argument("generator index out of range");
    assign(i, j, k, l);
    if (lhs != rhs) assign(k, l, i, j);  // the induced map is involutive
  }

  std::set<std::pair<std::size_t, std::size_t>> outputs(table.begin(), table.end());
  if (outputs.size() != n * n)
    throw NotBijective("relation map is not a bijection on X x X");

  RMap r(n, std::move(table));
  r.constrained_ = std::move(constrained);
  return r;
}

YbeResult check_ybe(const RMap& r) {
  std::size_t n = r.degree();
  using Triple = std::array<std::size_t, 3>;
  auto r1 = [&](Triple t) {
    auto [a, b] = r.apply(t[0], t[1]);
    return Triple{a, b, t[2]};
  };
  auto r2 = [&](Triple t) {
    auto [b, c] = r.apply(t[1], t[2]);
    return Triple{t[0], b, c};
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Triple t{x, y, z};
        if (r1(r2(r1(t))) != r2(r1(r2(t))))
          return {false, Triple{x, y, z}};
      }
  return {true, std::nullopt};
}

Nondegeneracy check_nondegeneracy(const RMap& r) {
  std::size_t n = r.degree();
  Nondegeneracy nd{true, true};
  for (std::size_t x = 0; x < n; ++x) {
    std::set<std::size_t> g_img, f_img;
    for (std::size_t y = 0; y < n; ++y) {
      g_img.insert(r.apply(x, y).first);   // g_x(y)
      f_img.insert(r.apply(y, x).second);  // f_x(y)
    }
    if (g_img.size() != n) nd.left = false;
    if (f_img.size() != n) nd.right = false;
  }
  return nd;
}

DerivedPermutations derive_permutations(const IRelations& rel) {
  RMap r = build_rmap(rel);
  std::size_t n = rel.n;
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> sigma(n, std::vector<std::size_t>(n, unset));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.constrained(i, j)) continue;
      std::size_t k = r.apply(i, j).first;
      if (sigma[i][j] != unset && sigma[i][j] != k)
        throw NotPermutation("conflicting values for sigma");
      sigma[i][j] = k;
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> missing_pos, missing_val;
    std::set<std::size_t> used;
    for (std::size_t j = 0; j < n; ++j)
      if (sigma[i][j] != unset) {
        if (!used.insert(sigma[i][j]).second)
          throw NotPermutation("sigma_" + std::to_string(i + 1) +
                               " repeats a value");
      }
    for (std::size_t j = 0; j < n; ++j)
      if (sigma[i][j] == unset) missing_pos.push_back(j);
    for (std::size_t v = 0; v < n; ++v)
      if (!used.count(v)) missing_val.push_back(v);
    if (missing_pos.size() > 1)
      throw IncompleteSigma("sigma_" + std::to_string(i + 1) +
                            " is underdetermined");
    if (missing_pos.size() == 1) sigma[i][missing_pos[0]] = missing_val[0];
  }

  // closure to get the group order
  std::set<std::vector<std::size_t>> group{identity_permutation(n)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> cur(group.begin(), group.end());
    for (const auto& p : cur)
      for (const auto& s : sigma)
        if (group.insert(compose_permutations(s, p)).second) grew = true;
  }
  return {sigma, group.size()};
}

ITypeMonoid itype_to_ig(const IRelations& rel, std::size_t degree_bound) {
  RMap r = build_rmap(rel);
  if (!check_ybe(r).ok)
    throw std::invalid_argument("relations do not satisfy the braid condition");
  if (!check_nondegeneracy(r).left)
    throw std::invalid_argument("relations are left degenerate");

  DerivedPermutations dp = derive_permutations(rel);
  std::size_t n = rel.n;
  AffineMonoid base = free_abelian_monoid(n);
  GenAction action = build_action(base, dp.sigma);
  std::vector<std::size_t> sig_idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.at(dp.sigma[i][j], j) = 1;
    sig_idx[i] = *action.find(m);
  }

  CosetCocycle c = infer_cocycle(base, action, sig_idx, degree_bound);

  // build_ig re-verifies the cocycle law exhaustively on the quotient
  return {build_ig(base, action, c), dp.sigma};
}

CoverResult ig_cover(const IGMonoid& s, std::size_t check_degree) {
  std::size_t n = s.base().generator_images().size();
  std::size_t q = s.action().order();
  std::size_t m = n * q;
  std::size_t r = s.base().rank();

  CoverResult out;
  for (std::size_t g = 0; g < q; ++g)
    for (std::size_t i = 0; i < n; ++i) {
      out.labels.push_back({g, i});
      out.covering_images.push_back(
          s.action().act(g, s.base().generator_images()[i]));
    }
  auto f = [&](const Vec& x) {
    Vec img = zero_vec(r);
    for (std::size_t v = 0; v < m; ++v)
      img = vec_add(img, vec_scale(x[v], out.covering_images[v]));
    return img;
  };

  // left-translation block permutations of the labels
  auto block_perm = [&](std::size_t t) {
    std::vector<std::size_t> p(m);
    for (std::size_t g = 0; g < q; ++g)
      for (std::size_t i = 0; i < n; ++i)
        p[g * n + i] = s.action().multiply(t, g) * n + i;
    return p;
  };
  auto perm_matrix = [&](const std::vector<std::size_t>& p) {
    IntMatrix pm(m, m);
    for (std::size_t j = 0; j < m; ++j) pm.at(p[j], j) = 1;
    return pm;
  };
  AffineMonoid cover_base = free_abelian_monoid(m);
  std::vector<std::vector<std::size_t>> gen_perms;
  for (std::size_t t = 0; t < q; ++t) gen_perms.push_back(block_perm(t));
  GenAction cover_action = build_action(cover_base, gen_perms);
  std::vector<std::size_t> t_index(q);
  for (std::size_t t = 0; t < q; ++t)
    t_index[t] = *cover_action.find(perm_matrix(block_perm(t)));

  // kernel of f modulo the base cocycle kernel
  const Sublattice& ns = s.cocycle().kernel;
  std::vector<Vec> rows;
  for (std::size_t v = 0; v < m; ++v) rows.push_back(out.covering_images[v]);
  for (std::size_t i = 0; i < ns.rank(); ++i)
    rows.push_back(vec_neg(ns.basis().row(i)));
  IntMatrix stacked = IntMatrix::from_rows(rows, r);
  IntMatrix ker = kernel_lattice(stacked);
  std::vector<Vec> proj;
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    Vec row = ker.row(i);
    proj.emplace_back(row.begin(), row.begin() + static_cast<long>(m));
  }
  Sublattice cover_kernel = Sublattice::from_generators(m, proj);

  CosetCocycle cc;
  cc.kernel = cover_kernel;
  for (const Vec& rep : cover_kernel.quotient_cosets())
    cc.table[rep] = t_index[s.phi(f(rep))];
  IGMonoid cover = build_ig(cover_base, cover_action, cc);

  IntMatrix fm = IntMatrix::from_rows(
      std::vector<Vec>(out.covering_images.begin(), out.covering_images.end()), r);
  out.b = Sublattice::from_generators(m, kernel_lattice(fm).row_list());

  auto t_of = [&](std::size_t cover_g) {
    for (std::size_t t = 0; t < q; ++t)
      if (t_index[t] == cover_g) return t;
    throw std::logic_error("cover group element without a label");
  };

  // f is a morphism on products against generators up to the check degree
  out.morphism_verified = true;
  std::set<Vec> layer{zero_vec(m)};
  for (std::size_t d = 0; d < check_degree && out.morphism_verified; ++d) {
    std::set<Vec> next;
    for (const Vec& x : layer)
      for (std::size_t v = 0; v < m; ++v) {
        IGElement px = cover.element(x), pv = cover.element(unit_vec(m, v));
        Vec prod = cover.multiply(px, pv).a;
        IGElement sx = s.element(f(x)), sv = s.element(f(unit_vec(m, v)));
        if (f(prod) != s.multiply(sx, sv).a) out.morphism_verified = false;
        if (s.phi(f(x)) != t_of(cover.phi(x))) out.morphism_verified = false;
        next.insert(prod);
      }
    layer = std::move(next);
  }

  // every S-product of orbit generators up to the degree is hit
  out.epimorphism_verified = true;
  std::set<Vec> s_layer{zero_vec(r)};
  std::set<Vec> f_images;
  for (const Vec& x : layer) f_images.insert(f(x));
  for (std::size_t d = 0; d < check_degree; ++d) {
    std::set<Vec> next;
    for (const Vec& a : s_layer)
      for (const Vec& b : s.orbit_generators())
        next.insert(s.multiply(s.element(a), s.element(b)).a);
    s_layer = std::move(next);
  }
  for (const Vec& a : s_layer)
    if (!f_images.count(a)) out.epimorphism_verified = false;

  // B is invariant under every derived permutation
  out.b_invariant = true;
  for (std::size_t t = 0; t < q; ++t) {
    IntMatrix pm = perm_matrix(block_perm(t));
    for (std::size_t i = 0; i < out.b.rank(); ++i)
      if (!out.b.contains(pm.apply(out.b.basis().row(i))))
        out.b_invariant = false;
  }

  std::vector<std::vector<std::size_t>> cover_sigma;
  for (std::size_t v = 0; v < m; ++v)
    cover_sigma.push_back(
        cover_action.generator_permutation(cover.phi(unit_vec(m, v))));
  out.cover = {cover, cover_sigma};
  return out;
}

}  // namespace igtype
