#include "igtype/igcore.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace igtype {

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<std::size_t> compose_permutations(const std::vector<std::size_t>& f,
                                              const std::vector<std::size_t>& g) {
  std::vector<std::size_t> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = i;
  return r;
}

std::string permutation_to_cycles(const std::vector<std::size_t>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "1" : out;
}

std::vector<std::size_t> parse_cycles(const std::string& text, std::size_t n) {
  std::vector<std::size_t> p = identity_permutation(n);
  std::string t = text;
  if (t == "1" || t == "id") return p;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i; };
  skip_ws();
  while (i < t.size()) {
    if (t[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<std::size_t> cycle;
    while (true) {
      skip_ws();
      if (i < t.size() && t[i] == ')') { ++i; break; }
      std::size_t start = i;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
      if (start == i) throw std::invalid_argument("expected index in cycle notation: " + text);
      std::string tok = t.substr(start, i - start);
      if (tok.size() > 1 && n <= 9) {
        // compact style "(12)(34)": each digit its own index
        for (char ch : tok) {
          std::size_t v = static_cast<std::size_t>(ch - '0');
          if (v < 1 || v > n)
            throw std::invalid_argument("cycle index out of range: " + text);
          cycle.push_back(v - 1);
        }
      } else {
        std::size_t v = std::stoul(tok);
        if (v < 1 || v > n)
          throw std::invalid_argument("cycle index out of range: " + text);
        cycle.push_back(v - 1);
      }
    }
    if (cycle.size() > 1) {
      std::vector<std::size_t> c = identity_permutation(n);
      for (std::size_t k = 0; k < cycle.size(); ++k)
        c[cycle[k]] = cycle[(k + 1) % cycle.size()];
      p = compose_permutations(p, c);
    }
    skip_ws();
  }
  return p;
}

namespace {

// linear map induced by permuting the generator images, as a matrix acting
// on column vectors
IntMatrix matrix_of_permutation(const AffineMonoid& a,
                                const std::vector<std::size_t>& perm) {
  std::size_t r = a.rank();
  const auto& imgs = a.generator_images();
  IntMatrix m(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    auto c = solve_in_lattice(imgs, unit_vec(r, j), r);
    if (!c) throw RelationNotPreserved("generator images do not span");
    Vec col = zero_vec(r);
    for (std::size_t i = 0; i < imgs.size(); ++i)
      col = vec_add(col, vec_scale((*c)[i], imgs[perm[i]]));
    for (std::size_t i = 0; i < r; ++i) m.at(i, j) = col[i];
  }
  for (std::size_t i = 0; i < imgs.size(); ++i)
    if (m.apply(imgs[i]) != imgs[perm[i]])
      throw RelationNotPreserved(
          "permutation of generators does not extend to a linear map");
  return m;
}

}  // namespace

void GenAction::finish_tables() {
  std::size_t n = matrices_.size();
  mult_.assign(n, std::vector<std::size_t>(n));
  inv_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix prod = matrices_[i] * matrices_[j];
      std::size_t k = 0;
      while (k < n && !(matrices_[k] == prod)) ++k;
      if (k == n) throw std::logic_error("group not closed");
      mult_[i][j] = k;
      if (k == 0) inv_[i] = j;
    }
}

std::size_t GenAction::element_order(std::size_t g) const {
  std::size_t k = g, d = 1;
  while (k != 0) { k = mult_[g][k]; ++d; }
  return d;
}

std::optional<std::size_t> GenAction::find(const IntMatrix& m) const {
  for (std::size_t i = 0; i < matrices_.size(); ++i)
    if (matrices_[i] == m) return i;
  return std::nullopt;
}

std::vector<std::size_t> GenAction::generated_subgroup(
    const std::vector<std::size_t>& gens) const {
  std::set<std::size_t> sub{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> cur(sub.begin(), sub.end());
    for (std::size_t x : cur)
      for (std::size_t g : gens)
        if (sub.insert(mult_[x][g]).second) grew = true;
  }
  return {sub.begin(), sub.end()};
}

GenAction build_action(const AffineMonoid& a,
                       const std::vector<std::vector<std::size_t>>& perms) {
  std::size_t ngen = a.generator_images().size();
  std::multiset<Vec> image_multiset(a.generator_images().begin(),
                                    a.generator_images().end());
  for (const auto& p : perms) {
    if (p.size() != ngen) throw std::invalid_argument("permutation arity mismatch");
    std::multiset<Vec> permuted;
    for (std::size_t i = 0; i < ngen; ++i)
      permuted.insert(a.generator_images()[p[i]]);
    if (permuted != image_multiset)
      throw RelationNotPreserved("permutation does not preserve the image multiset");
  }

  GenAction g;
  g.perms_.push_back(identity_permutation(ngen));
  g.matrices_.push_back(IntMatrix::identity(a.rank()));
  // closure under composition
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < g.perms_.size(); ++i)
      for (const auto& p : perms) {
        auto q = compose_permutations(p, g.perms_[i]);
        if (std::find(g.perms_.begin(), g.perms_.end(), q) == g.perms_.end()) {
          g.perms_.push_back(q);
          grew = true;
        }
      }
  }
  if (g.perms_.size() > 10000) throw std::invalid_argument("group too large");
  for (std::size_t i = 0; i < g.perms_.size(); ++i) {
    if (i > 0) g.matrices_.push_back(matrix_of_permutation(a, g.perms_[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (g.matrices_[i] == g.matrices_[j])
        throw NotFaithful("two group elements act by the same matrix");
  }
  g.finish_tables();
  return g;
}

GenAction restrict_action(const GenAction& g,
                          const std::vector<std::size_t>& elements) {
  GenAction r;
  for (std::size_t e : elements) {
    r.matrices_.push_back(g.matrices_[e]);
    r.perms_.push_back(g.perms_[e]);
  }
  if (r.matrices_.empty() || !r.matrices_[0].is_identity())
    throw std::invalid_argument("subgroup must contain the identity first");
  r.finish_tables();
  return r;
}

CocycleReport verify_cocycle(const CosetCocycle& c, const GenAction& g) {
  CocycleReport rep;
  if (!c.kernel.full_rank())
    throw InvalidCocycle("cocycle kernel must have finite index");
  auto reps = c.kernel.quotient_cosets();
  rep.table_complete = true;
  for (const Vec& r : reps)
    if (!c.table.count(r)) rep.table_complete = false;
  if (!rep.table_complete) return rep;

  rep.identity_at_zero =
      c.table.at(c.kernel.reduce(zero_vec(c.kernel.ambient_rank()))) == 0;

  rep.kernel_invariant = true;
  for (std::size_t e = 0; e < g.order(); ++e)
    for (std::size_t i = 0; i < c.kernel.rank(); ++i)
      if (!c.kernel.contains(g.act(e, c.kernel.basis().row(i))))
        rep.kernel_invariant = false;

  for (const Vec& alpha : reps)
    for (const Vec& beta : reps) {
      std::size_t ga = c.table.at(alpha), gb = c.table.at(beta);
      Vec sum = vec_add(alpha, g.act(ga, beta));
      if (g.multiply(ga, gb) != c.table.at(c.kernel.reduce(sum)))
        rep.violations.push_back({alpha, beta});
    }

  rep.valid = rep.identity_at_zero && rep.kernel_invariant &&
              rep.violations.empty();
  return rep;
}

IGElement IGMonoid::multiply(const IGElement& x, const IGElement& y) const {
  IGElement r{vec_add(x.a, action_.act(x.g, y.a)),
              action_.multiply(x.g, y.g)};
  if (r.g != phi(r.a))
    throw std::logic_error("product left the graph of phi");
  return r;
}

IGElement IGMonoid::inverse(const IGElement& x) const {
  std::size_t gi = action_.inverse(x.g);
  return {vec_neg(action_.act(gi, x.a)), gi};
}

IGElement IGMonoid::power(const IGElement& x, long k) const {
  IGElement base = k < 0 ? inverse(x) : x;
  long m = k < 0 ? -k : k;
  IGElement r = identity();
  for (long i = 0; i < m; ++i) r = multiply(r, base);
  return r;
}

Int IGMonoid::kernel_index() const {
  Int idx = cocycle_.kernel.index();
  if (Int(action_.order()) % idx != 0)
    throw std::logic_error("kernel index does not divide the group order");
  return idx;
}

Vec IGMonoid::g_norm(const Vec& b) const {
  Vec s = zero_vec(base_.rank());
  for (std::size_t g = 0; g < action_.order(); ++g)
    s = vec_add(s, action_.act(g, b));
  for (std::size_t g = 0; g < action_.order(); ++g)
    if (action_.act(g, s) != s)
      throw std::logic_error("norm element is not invariant");
  return s;
}

std::optional<NotITypeCertificate> IGMonoid::not_i_type_certificate() const {
  if (!base_.units_trivial())
    throw NontrivialUnits("certificate requires trivial units");
  std::size_t count = base_.indecomposables().size();
  if (base_.rank() < count)
    return NotITypeCertificate{base_.rank(), count};
  return std::nullopt;
}

CosetCocycle infer_cocycle(const AffineMonoid& base, const GenAction& action,
                           const std::vector<std::size_t>& gen_phi,
                           std::size_t degree_bound) {
  std::size_t r = base.rank();
  const auto& imgs = base.generator_images();
  if (gen_phi.size() != imgs.size())
    throw std::invalid_argument("one phi value per generator expected");

  // psi on monomials by the product recursion
  std::map<Vec, std::size_t> psi{{zero_vec(r), 0}};
  std::vector<Vec> frontier{zero_vec(r)};
  for (std::size_t d = 0; d < degree_bound; ++d) {
    std::vector<Vec> next;
    for (const Vec& a : frontier) {
      std::size_t g = psi.at(a);
      for (std::size_t j = 0; j < imgs.size(); ++j) {
        Vec b = vec_add(a, action.act(g, imgs[j]));
        std::size_t gb = action.multiply(g, gen_phi[j]);
        auto [it, inserted] = psi.insert({b, gb});
        if (!inserted && it->second != gb)
          throw CocycleInferenceFailed("psi is not single-valued");
        if (inserted) next.push_back(b);
      }
    }
    frontier = std::move(next);
  }

  // period lattice from equal-psi differences
  std::vector<std::vector<Vec>> classes(action.order());
  for (const auto& [a, g] : psi) classes[g].push_back(a);
  std::vector<Vec> diffs;
  for (const auto& cls : classes)
    for (std::size_t i = 1; i < cls.size(); ++i)
      diffs.push_back(vec_sub(cls[i], cls[0]));
  if (diffs.empty())
    throw CocycleInferenceFailed("no repeated psi value; raise the degree bound");
  Sublattice kernel = Sublattice::from_generators(r, diffs);
  if (!kernel.full_rank())
    throw CocycleInferenceFailed(
        "period lattice not of finite index; raise the degree bound");

  CosetCocycle c;
  c.kernel = kernel;
  for (const auto& [a, g] : psi) {
    Vec rep = kernel.reduce(a);
    auto [it, inserted] = c.table.insert({rep, g});
    if (!inserted && it->second != g)
      throw CocycleInferenceFailed("psi not constant on inferred cosets");
  }
  for (const Vec& rep : kernel.quotient_cosets())
    if (!c.table.count(rep))
      throw CocycleInferenceFailed("unsampled coset; raise the degree bound");
  return c;
}

IGMonoid build_ig(const AffineMonoid& a, const GenAction& g,
                  const CosetCocycle& c) {
  CocycleReport rep = verify_cocycle(c, g);
  if (!rep.valid) throw InvalidCocycle("cocycle validation failed");

  IGMonoid s;
  s.base_ = a;
  s.cocycle_ = c;

  std::vector<std::size_t> values;
  for (const auto& [rep_vec, e] : c.table) values.push_back(e);
  auto sub = g.generated_subgroup(values);
  if (sub.size() != g.order()) {
    // the group is, by convention, exactly the set of phi-values
    auto shrunken = restrict_action(g, sub);
    std::map<Vec, std::size_t> remapped;
    for (const auto& [rep_vec, e] : c.table) {
      auto idx = shrunken.find(g.matrix(e));
      remapped[rep_vec] = *idx;
    }
    s.action_ = shrunken;
    s.cocycle_.table = remapped;
    s.shrunk_ = true;
  } else {
    s.action_ = g;
  }

  std::set<Vec> orbit;
  for (const Vec& img : a.generator_images())
    for (std::size_t e = 0; e < s.action_.order(); ++e)
      orbit.insert(s.action_.act(e, img));
  s.orbit_gens_.assign(orbit.begin(), orbit.end());
  return s;
}

}  // namespace igtype
