#include "igtype/monoid.hpp"

#include <algorithm>
#include <numeric>

namespace igtype {

namespace {

// all k-subsets of {0..n-1}, lexicographic
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& f);

void combo_rec(std::size_t n, std::size_t k, std::size_t start,
               std::vector<std::size_t>& cur, bool& stop,
               const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (stop) return;
  if (cur.size() == k) {
    if (f(cur)) stop = true;
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= n && !stop; ++i) {
    cur.push_back(i);
    combo_rec(n, k, i + 1, cur, stop, f);
    cur.pop_back();
  }
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  bool stop = false;
  combo_rec(n, k, 0, cur, stop, f);
}

std::size_t lattice_rank(const std::vector<Vec>& vs, std::size_t ambient) {
  if (vs.empty()) return 0;
  return Sublattice::from_generators(ambient, vs).rank();
}

Int floor_div_i(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div_i(const Int& a, const Int& b) { return -floor_div_i(-a, b); }

/// Generators of the normal monoid { x in Z^rank : sigma(x) >= 0 } given by
/// facet inequalities: Hilbert basis of the pointed part plus a basis of
/// the lineality lattice.
struct NormalGens {
  std::vector<Vec> pointed;
  std::vector<Vec> lineality;
};

NormalGens normal_monoid_generators(std::size_t rank,
                                    const std::vector<Vec>& facets) {
  NormalGens out;
  // lineality lattice: common kernel of the facet valuations
  IntMatrix fm(rank, facets.size());
  for (std::size_t j = 0; j < facets.size(); ++j)
    for (std::size_t i = 0; i < rank; ++i) fm.at(i, j) = facets[j][i];
  IntMatrix lin = kernel_lattice(fm);
  std::size_t dl = lin.rows();
  for (std::size_t i = 0; i < dl; ++i) out.lineality.push_back(lin.row(i));
  std::size_t q = rank - dl;
  if (q == 0) return out;

  // change coordinates so the lineality lattice becomes the first dl axes
  IntMatrix v0 = IntMatrix::identity(rank);
  if (dl > 0) {
    SmithResult s = smith_normal_form(lin);
    for (std::size_t i = 0; i < dl; ++i)
      if (s.d.at(i, i) != 1)
        throw std::logic_error("lineality lattice not saturated");
    v0 = s.v;
  }
  IntMatrix w = unimodular_inverse(v0);  // x = y * w

  std::vector<Vec> tau;  // facet valuations on the quotient Z^q
  for (const Vec& s : facets) {
    Vec sp = w.apply(s);
    for (std::size_t i = 0; i < dl; ++i)
      if (sp[i] != 0) throw std::logic_error("facet does not vanish on lineality");
    tau.emplace_back(sp.begin() + static_cast<long>(dl), sp.end());
  }

  // extreme rays of the pointed quotient cone
  std::vector<Vec> rays;
  std::set<Vec> seen;
  for_each_combination(tau.size(), q - 1, [&](const std::vector<std::size_t>& sub) {
    IntMatrix m(q, sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j)
      for (std::size_t i = 0; i < q; ++i) m.at(i, j) = tau[sub[j]][i];
    IntMatrix k = kernel_lattice(m);
    if (k.rows() != 1) return false;
    Vec ray = primitive(k.row(0));
    bool pos = true, neg = true;
    for (const Vec& t : tau) {
      Int val = dot(t, ray);
      if (val > 0) neg = false;
      if (val < 0) pos = false;
    }
    if (!pos && !neg) return false;
    if (neg) ray = vec_neg(ray);
    if (seen.insert(ray).second) rays.push_back(ray);
    return false;
  });
  if (rays.empty()) throw std::logic_error("pointed cone without extreme rays");

  auto grade = [&](const Vec& y) {
    Int s = 0;
    for (const Vec& t : tau) s += dot(t, y);
    return s;
  };
  Int bound = 0;
  for (const Vec& r : rays) bound += grade(r);

  // bounding box of conv{0, (bound/grade(ray)) * ray}
  Vec lo = zero_vec(q), hi = zero_vec(q);
  for (const Vec& r : rays) {
    Int g = grade(r);
    for (std::size_t j = 0; j < q; ++j) {
      lo[j] = std::min(lo[j], floor_div_i(bound * r[j], g));
      hi[j] = std::max(hi[j], ceil_div_i(bound * r[j], g));
    }
  }
  Int cells = 1;
  for (std::size_t j = 0; j < q; ++j) cells *= hi[j] - lo[j] + 1;
  if (cells > 20000000) throw std::runtime_error("hilbert basis enumeration too large");

  std::vector<Vec> cands;
  Vec x = lo;
  while (true) {
    bool in = true;
    for (const Vec& t : tau)
      if (dot(t, x) < 0) { in = false; break; }
    if (in && !is_zero_vec(x) && grade(x) <= bound) cands.push_back(x);
    std::size_t j = 0;
    while (j < q && x[j] == hi[j]) { x[j] = lo[j]; ++j; }
    if (j == q) break;
    ++x[j];
  }
  std::sort(cands.begin(), cands.end(), [&](const Vec& a, const Vec& b) {
    Int ga = grade(a), gb = grade(b);
    return ga != gb ? ga < gb : a < b;
  });

  std::vector<Vec> hb;
  for (const Vec& c : cands) {
    bool irreducible = true;
    for (const Vec& y : cands) {
      if (grade(y) >= grade(c)) break;
      Vec z = vec_sub(c, y);
      bool in = !is_zero_vec(z);
      for (const Vec& t : tau)
        if (in && dot(t, z) < 0) in = false;
      if (in) { irreducible = false; break; }
    }
    if (irreducible) hb.push_back(c);
  }

  // lift back: y = (0, h) -> x = y * w
  for (const Vec& h : hb) {
    Vec y = zero_vec(rank);
    for (std::size_t j = 0; j < q; ++j) y[dl + j] = h[j];
    out.pointed.push_back(w.apply_row(y));
  }
  return out;
}

}  // namespace

bool AffineMonoid::in_cone(const Vec& v) const {
  for (const Vec& s : facets_)
    if (dot(s, v) < 0) return false;
  return true;
}

Int AffineMonoid::degree(const Vec& v) const {
  Int d = 0;
  for (const Vec& s : facets_) d += dot(s, v);
  return d;
}

void AffineMonoid::compute_facets() {
  facets_.clear();
  if (rank_ == 0) return;
  std::vector<Vec> pts;
  std::set<Vec> dedupe;
  for (const Vec& g : gens_)
    if (!is_zero_vec(g) && dedupe.insert(g).second) pts.push_back(g);
  std::set<Vec> found;
  for_each_combination(pts.size(), rank_ - 1, [&](const std::vector<std::size_t>& sub) {
    IntMatrix m(rank_, sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j)
      for (std::size_t i = 0; i < rank_; ++i) m.at(i, j) = pts[sub[j]][i];
    IntMatrix k = kernel_lattice(m);
    if (k.rows() != 1) return false;
    Vec w = primitive(k.row(0));
    bool pos = true, neg = true;
    for (const Vec& g : pts) {
      Int val = dot(w, g);
      if (val > 0) neg = false;
      if (val < 0) pos = false;
    }
    if (!pos && !neg) return false;
    if (neg) w = vec_neg(w);
    found.insert(w);
    return false;
  });
  facets_.assign(found.begin(), found.end());
}

void AffineMonoid::compute_units() {
  unit_gens_.clear();
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (is_zero_vec(gens_[i])) { unit_gens_.push_back(i); continue; }
    bool lineal = true;
    for (const Vec& s : facets_)
      if (dot(s, gens_[i]) != 0) { lineal = false; break; }
    if (lineal) cands.push_back(i);
  }
  if (cands.empty()) return;
  // bounded reachability: sums of candidate generators
  std::set<Vec> reach{zero_vec(rank_)};
  for (int step = 0; step < 24 && reach.size() < 200000; ++step) {
    std::set<Vec> next = reach;
    for (const Vec& r : reach)
      for (std::size_t i : cands) next.insert(vec_add(r, gens_[i]));
    if (next == reach) break;
    reach = std::move(next);
  }
  for (std::size_t i : cands)
    if (reach.count(vec_neg(gens_[i]))) unit_gens_.push_back(i);
}

Membership AffineMonoid::membership(const Vec& v, const Int& search_bound) const {
  if (v.size() != rank_) throw std::invalid_argument("vector dimension mismatch");
  if (!in_cone(v)) return Membership::no;
  if (is_zero_vec(v)) return Membership::yes;
  if (normal_ || (maximal_order_ && *maximal_order_)) return Membership::yes;

  bool pointed = lineality_basis().empty();
  if (pointed) {
    // exact: the facet-sum grading strictly decreases along any decomposition
    auto it = member_memo_.find(v);
    if (it != member_memo_.end()) return it->second ? Membership::yes : Membership::no;
    bool found = false;
    for (const Vec& g : gens_) {
      if (is_zero_vec(g)) continue;
      Vec w = vec_sub(v, g);
      if (!in_cone(w)) continue;
      if (membership(w) == Membership::yes) { found = true; break; }
    }
    member_memo_[v] = found;
    return found ? Membership::yes : Membership::no;
  }

  // non-pointed, non-normal: bounded search on the coefficient sum
  Int cap = search_bound > 0 ? search_bound : membership_degree_cap_;
  std::set<Vec> reach{zero_vec(rank_)};
  for (Int step = 0; step < cap; ++step) {
    std::set<Vec> next = reach;
    for (const Vec& r : reach)
      for (const Vec& g : gens_) next.insert(vec_add(r, g));
    if (next.count(v)) return Membership::yes;
    if (next == reach) return Membership::no;
    reach = std::move(next);
  }
  return Membership::unknown;
}

bool AffineMonoid::contains(const Vec& v) const {
  Membership m = membership(v);
  if (m == Membership::unknown)
    throw MembershipUndecided("membership undecided within the search bound");
  return m == Membership::yes;
}

std::vector<Vec> AffineMonoid::units() const {
  std::vector<Vec> out;
  std::set<Vec> seen;
  for (std::size_t i : unit_gens_) {
    if (is_zero_vec(gens_[i])) continue;
    if (seen.insert(gens_[i]).second) out.push_back(gens_[i]);
  }
  return out;
}

bool AffineMonoid::units_trivial() const { return units().empty(); }

std::vector<Vec> AffineMonoid::lineality_basis() const {
  IntMatrix fm(rank_, facets_.size());
  for (std::size_t j = 0; j < facets_.size(); ++j)
    for (std::size_t i = 0; i < rank_; ++i) fm.at(i, j) = facets_[j][i];
  IntMatrix lin = kernel_lattice(fm);
  return lin.row_list();
}

std::vector<Vec> AffineMonoid::elements_up_to(const Int& bound) const {
  if (!lineality_basis().empty())
    throw std::domain_error("element enumeration needs a pointed cone");
  std::set<Vec> all{zero_vec(rank_)};
  std::vector<Vec> frontier{zero_vec(rank_)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const Vec& x : frontier)
      for (const Vec& g : gens_) {
        if (is_zero_vec(g)) continue;
        Vec y = vec_add(x, g);
        if (degree(y) > bound) continue;
        if (all.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

std::vector<std::size_t> AffineMonoid::indecomposables() const {
  if (!units_trivial()) throw NontrivialUnits("monoid has nontrivial units");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Vec& g = gens_[i];
    if (is_zero_vec(g)) continue;
    bool decomposable = false;
    for (const Vec& a : elements_up_to(degree(g) - 1)) {
      if (is_zero_vec(a)) continue;
      Vec rest = vec_sub(g, a);
      if (is_zero_vec(rest)) continue;
      if (in_cone(rest) && contains(rest)) { decomposable = true; break; }
    }
    if (!decomposable) out.push_back(i);
  }
  return out;
}

const std::vector<Vec>& AffineMonoid::normal_hilbert_basis() const {
  if (!hilbert_) {
    NormalGens ng = normal_monoid_generators(rank_, facets_);
    std::vector<Vec> hb = ng.pointed;
    for (const Vec& l : ng.lineality) {
      hb.push_back(l);
      hb.push_back(vec_neg(l));
    }
    hilbert_ = std::move(hb);
  }
  return *hilbert_;
}

bool AffineMonoid::is_maximal_order() const {
  if (!maximal_order_) {
    if (normal_) {
      maximal_order_ = true;
    } else {
      bool all = true;
      for (const Vec& h : normal_hilbert_basis())
        if (!contains(h)) { all = false; break; }
      maximal_order_ = all;
    }
  }
  return *maximal_order_;
}

std::vector<FacePrime> AffineMonoid::minimal_primes() const {
  std::vector<FacePrime> out;
  for (std::size_t j = 0; j < facets_.size(); ++j) {
    FacePrime p;
    std::vector<Vec> face_gens;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (dot(facets_[j], gens_[i]) > 0)
        p.generators.push_back(i);
      else
        face_gens.push_back(gens_[i]);
    }
    // canonical face descriptor: every valuation vanishing on the face
    for (std::size_t k = 0; k < facets_.size(); ++k) {
      bool vanish = true;
      for (const Vec& fg : face_gens)
        if (dot(facets_[k], fg) != 0) { vanish = false; break; }
      if (vanish) p.facets.push_back(k);
    }
    p.height = rank_ - lattice_rank(face_gens, rank_);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<FacePrime> AffineMonoid::prime_spectrum(
    std::optional<std::size_t> height) const {
  std::set<std::vector<std::size_t>> seen;
  std::vector<FacePrime> out;
  std::size_t l = facets_.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << l); ++mask) {
    std::vector<std::size_t> t;
    for (std::size_t j = 0; j < l; ++j)
      if (mask & (std::size_t{1} << j)) t.push_back(j);
    FacePrime p;
    std::vector<Vec> face_gens;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      bool in_prime = false;
      for (std::size_t j : t)
        if (dot(facets_[j], gens_[i]) > 0) { in_prime = true; break; }
      if (in_prime)
        p.generators.push_back(i);
      else
        face_gens.push_back(gens_[i]);
    }
    if (p.generators.empty()) continue;
    if (!seen.insert(p.generators).second) continue;
    // direct primality check on generators (guards the non-normal case):
    // no product of two complement generators may fall into the ideal
    bool prime_ok = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!std::binary_search(p.generators.begin(), p.generators.end(), i))
        comp.push_back(i);
    for (std::size_t a : comp)
      for (std::size_t b : comp) {
        Vec prod = vec_add(gens_[a], gens_[b]);
        for (std::size_t q : p.generators) {
          Vec rest = vec_sub(prod, gens_[q]);
          if (in_cone(rest) && contains(rest)) { prime_ok = false; break; }
        }
        if (!prime_ok) break;
      }
    if (!prime_ok) continue;
    for (std::size_t k = 0; k < l; ++k) {
      bool vanish = true;
      for (const Vec& fg : face_gens)
        if (dot(facets_[k], fg) != 0) { vanish = false; break; }
      if (vanish) p.facets.push_back(k);
    }
    p.height = rank_ - lattice_rank(face_gens, rank_);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const FacePrime& a, const FacePrime& b) {
    return a.height != b.height ? a.height < b.height : a.generators < b.generators;
  });
  if (height) {
    std::erase_if(out, [&](const FacePrime& p) { return p.height != *height; });
  }
  return out;
}

Divisor AffineMonoid::divisorial_factorization(const Vec& x) const {
  if (!is_maximal_order()) throw NotMaximalOrder("monoid is not a maximal order");
  if (!contains(x)) throw NotInMonoid("element not in monoid");
  Divisor d;
  for (const Vec& s : facets_) d.exponents.push_back(dot(s, x));
  return d;
}

AffineMonoid AffineMonoid::localize(const std::vector<std::size_t>& facet_subset) const {
  if (facet_subset.empty()) throw std::invalid_argument("empty localization set");
  std::vector<Vec> sub;
  for (std::size_t j : facet_subset) sub.push_back(facets_.at(j));
  NormalGens ng = normal_monoid_generators(rank_, sub);
  std::vector<Vec> images = ng.pointed;
  for (const Vec& lv : ng.lineality) {
    images.push_back(lv);
    images.push_back(vec_neg(lv));
  }
  AffineMonoid m = make_affine_monoid(rank_, images);
  m.normal_ = true;
  return m;
}

AffineMonoid build_monoid(const Presentation& p) {
  std::size_t n = p.generators.size();
  if (n == 0) throw std::invalid_argument("presentation needs generators");
  std::vector<Vec> diffs;
  for (const auto& [lhs, rhs] : p.relations) {
    if (lhs.size() != n || rhs.size() != n)
      throw std::invalid_argument("relation arity mismatch");
    for (const Int& e : lhs)
      if (e < 0) throw std::invalid_argument("negative exponent in relation");
    for (const Int& e : rhs)
      if (e < 0) throw std::invalid_argument("negative exponent in relation");
    diffs.push_back(vec_sub(lhs, rhs));
  }

  std::size_t rel_rank = 0;
  std::vector<Vec> images;
  if (diffs.empty()) {
    for (std::size_t i = 0; i < n; ++i) images.push_back(unit_vec(n, i));
  } else {
    IntMatrix r = IntMatrix::from_rows(diffs, n);
    SmithResult s = smith_normal_form(r);
    std::size_t nd = std::min(r.rows(), r.cols());
    for (std::size_t i = 0; i < nd; ++i) {
      if (s.d.at(i, i) == 0) continue;
      if (s.d.at(i, i) != 1)
        throw TorsionQuotient("group of fractions has torsion");
      ++rel_rank;
    }
    std::size_t rank = n - rel_rank;
    for (std::size_t i = 0; i < n; ++i) {
      Vec row = s.v.row(i);
      images.emplace_back(row.begin() + static_cast<long>(rel_rank), row.end());
    }
    (void)rank;
  }
  std::size_t rank = n - rel_rank;

  // normalize: first unimodular generator subset becomes the standard basis
  if (rank > 0) {
    for_each_combination(n, rank, [&](const std::vector<std::size_t>& sub) {
      IntMatrix m(rank, rank);
      for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) m.at(i, j) = images[sub[i]][j];
      if (abs(m.determinant()) != 1) return false;
      IntMatrix inv = unimodular_inverse(m);
      for (Vec& g : images) g = inv.apply_row(g);
      return true;  // stop at the first unimodular subset
    });
  }

  AffineMonoid a;
  a.rank_ = rank;
  a.gens_ = std::move(images);
  a.names_ = p.generators;
  a.pres_ = p;
  a.compute_facets();
  a.compute_units();
  return a;
}

AffineMonoid make_affine_monoid(std::size_t rank, std::vector<Vec> images,
                                std::vector<std::string> names) {
  auto l = Sublattice::from_generators(rank, images);
  if (!l.full_rank())
    throw std::invalid_argument("generator images must span a rank-`rank` lattice");
  if (!l.basis().is_identity()) {
    // rewrite in coordinates of the generated lattice so the group of
    // fractions becomes all of Z^rank
    for (Vec& g : images) g = *l.membership(g);
  }
  AffineMonoid a;
  a.rank_ = rank;
  a.gens_ = std::move(images);
  if (names.empty())
    for (std::size_t i = 0; i < a.gens_.size(); ++i)
      names.push_back("g" + std::to_string(i + 1));
  a.names_ = std::move(names);
  a.compute_facets();
  a.compute_units();
  return a;
}

AffineMonoid free_abelian_monoid(std::size_t n) {
  Presentation p;
  for (std::size_t i = 0; i < n; ++i) p.generators.push_back("u" + std::to_string(i + 1));
  AffineMonoid a = build_monoid(p);
  return a;
}

}  // namespace igtype
