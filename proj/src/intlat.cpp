#include "igtype/intlat.hpp"

#include <algorithm>
#include <sstream>

namespace igtype {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec IntMatrix::row(std::size_t i) const {
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::vector<Vec> IntMatrix::row_list() const {
  std::vector<Vec> rs;
  rs.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
  return rs;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matmul dimension mismatch");
  IntMatrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        r.at(i, j) += a * other.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix subtraction dimension mismatch");
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - other.e_[i];
  return r;
}

Vec IntMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply dimension mismatch");
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

Vec IntMatrix::apply_row(const Vec& v) const {
  if (v.size() != rows_) throw std::invalid_argument("apply_row dimension mismatch");
  Vec r(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
  }
  return r;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntMatrix IntMatrix::power(unsigned long k) const {
  if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
  IntMatrix acc = identity(rows_);
  IntMatrix base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool IntMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
}

// row a -= q * row b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    // eliminate below pivot_row in this column via euclidean row ops
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        if (best == h.rows() ||
            abs(h.at(i, col)) < abs(h.at(best, col)))
          best = i;
      }
      if (best == h.rows()) break;  // column clear
      if (best != pivot_row) {
        swap_rows(h, pivot_row, best);
        swap_rows(u, pivot_row, best);
      }
      bool more = false;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        Int q = floor_div(h.at(i, col), h.at(pivot_row, col));
        add_row(h, i, pivot_row, q);
        add_row(u, i, pivot_row, q);
        if (h.at(i, col) != 0) more = true;
      }
      if (!more) break;
    }
    if (h.at(pivot_row, col) == 0) continue;
    if (h.at(pivot_row, col) < 0) {
      negate_row(h, pivot_row);
      negate_row(u, pivot_row);
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q = floor_div(h.at(i, col), h.at(pivot_row, col));
      add_row(h, i, pivot_row, q);
      add_row(u, i, pivot_row, q);
    }
    ++pivot_row;
  }
  return {h, u};
}

namespace {

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_col(IntMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = -m.at(i, j);
}

// col a -= q * col b
void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // move a minimal nonzero entry of the trailing block to (k,k)
      std::size_t bi = d.rows(), bj = d.cols();
      for (std::size_t i = k; i < d.rows(); ++i)
        for (std::size_t j = k; j < d.cols(); ++j) {
          if (d.at(i, j) == 0) continue;
          if (bi == d.rows() || abs(d.at(i, j)) < abs(d.at(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == d.rows()) { k = n; break; }  // trailing block zero
      if (bi != k) { swap_rows(d, k, bi); swap_rows(u, k, bi); }
      if (bj != k) { swap_cols(d, k, bj); swap_cols(v, k, bj); }
      bool dirty = false;
      for (std::size_t i = k + 1; i < d.rows(); ++i) {
        Int q = floor_div(d.at(i, k), d.at(k, k));
        add_row(d, i, k, q);
        add_row(u, i, k, q);
        if (d.at(i, k) != 0) dirty = true;
      }
      for (std::size_t j = k + 1; j < d.cols(); ++j) {
        Int q = floor_div(d.at(k, j), d.at(k, k));
        add_col(d, j, k, q);
        add_col(v, j, k, q);
        if (d.at(k, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility: fold any non-divisible entry into column k
      bool fixed = true;
      for (std::size_t i = k + 1; i < d.rows() && fixed; ++i)
        for (std::size_t j = k + 1; j < d.cols() && fixed; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            add_col(d, k, j, Int(-1));
            add_col(v, k, j, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (k >= n) break;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (d.at(k, k) < 0) {
      negate_row(d, k);
      negate_row(u, k);
    }
  return {d, u, v};
}

IntMatrix kernel_lattice(const IntMatrix& m) {
  HermiteResult hr = hermite_normal_form(m);
  std::vector<Vec> ker;
  for (std::size_t i = 0; i < hr.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < hr.h.cols(); ++j)
      if (hr.h.at(i, j) != 0) { zero = false; break; }
    if (zero) ker.push_back(hr.u.row(i));
  }
  return IntMatrix::from_rows(ker, m.rows());
}

std::optional<Vec> solve_in_lattice(const std::vector<Vec>& gens,
                                    const Vec& target, std::size_t ambient) {
  if (target.size() != ambient) throw std::invalid_argument("target dimension mismatch");
  IntMatrix g = IntMatrix::from_rows(gens, ambient);
  HermiteResult hr = hermite_normal_form(g);
  // solve c * h = target by back substitution over the pivot structure
  Vec c(hr.h.rows());
  Vec rem = target;
  std::size_t col = 0;
  for (std::size_t i = 0; i < hr.h.rows(); ++i) {
    while (col < ambient && hr.h.at(i, col) == 0) {
      if (rem[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == ambient) break;
    if (rem[col] % hr.h.at(i, col) != 0) return std::nullopt;
    c[i] = rem[col] / hr.h.at(i, col);
    for (std::size_t j = 0; j < ambient; ++j) rem[j] -= c[i] * hr.h.at(i, j);
    ++col;
  }
  if (!is_zero_vec(rem)) return std::nullopt;
  // pull back through u: target = c * h = (c * u) * g
  Vec coeffs(gens.size());
  for (std::size_t i = 0; i < hr.h.rows(); ++i)
    if (c[i] != 0)
      for (std::size_t j = 0; j < gens.size(); ++j)
        coeffs[j] += c[i] * hr.u.at(i, j);
  return coeffs;
}

std::optional<Vec> solve_affine_fixed_point(const IntMatrix& m, const Vec& t) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (t.size() != m.rows()) throw std::invalid_argument("translation dimension mismatch");
  std::size_t n = m.rows();
  IntMatrix a = m - IntMatrix::identity(n);  // (m - I) x = -t
  SmithResult s = smith_normal_form(a);
  Vec rhs = s.u.apply(vec_neg(t));
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.d.at(i, i) == 0) {
      if (rhs[i] != 0) return std::nullopt;
    } else {
      if (rhs[i] % s.d.at(i, i) != 0) return std::nullopt;
      y[i] = rhs[i] / s.d.at(i, i);
    }
  }
  Vec x = s.v.apply(y);
  return x;
}

Sublattice Sublattice::from_generators(std::size_t ambient,
                                       const std::vector<Vec>& gens) {
  IntMatrix g = IntMatrix::from_rows(gens, ambient);
  HermiteResult hr = hermite_normal_form(g);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < hr.h.rows(); ++i) {
    Vec r = hr.h.row(i);
    if (!is_zero_vec(r)) rows.push_back(r);
  }
  Sublattice l;
  l.ambient_ = ambient;
  l.basis_ = IntMatrix::from_rows(rows, ambient);
  return l;
}

Sublattice Sublattice::full(std::size_t ambient) {
  Sublattice l;
  l.ambient_ = ambient;
  l.basis_ = IntMatrix::identity(ambient);
  return l;
}

Int Sublattice::index() const {
  if (!full_rank()) throw std::domain_error("sublattice has infinite index");
  Int idx = 1;
  for (std::size_t i = 0; i < basis_.rows(); ++i) idx *= basis_.at(i, i);
  return idx;  // HNF diagonal is positive
}

std::optional<Vec> Sublattice::membership(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector dimension mismatch");
  Vec c(basis_.rows());
  Vec rem = v;
  std::size_t col = 0;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    while (col < ambient_ && basis_.at(i, col) == 0) {
      if (rem[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == ambient_) break;
    if (rem[col] % basis_.at(i, col) != 0) return std::nullopt;
    c[i] = rem[col] / basis_.at(i, col);
    for (std::size_t j = 0; j < ambient_; ++j) rem[j] -= c[i] * basis_.at(i, j);
    ++col;
  }
  if (!is_zero_vec(rem)) return std::nullopt;
  return c;
}

Vec Sublattice::reduce(const Vec& v) const {
  if (!full_rank()) throw std::domain_error("reduce needs a full-rank lattice");
  // basis is square upper triangular with positive diagonal; fixing
  // coordinate i leaves coordinates < i untouched
  Vec r = v;
  for (std::size_t i = 0; i < ambient_; ++i) {
    Int q = floor_div(r[i], basis_.at(i, i));
    if (q != 0)
      for (std::size_t j = i; j < ambient_; ++j) r[j] -= q * basis_.at(i, j);
  }
  return r;
}

std::vector<Vec> Sublattice::quotient_cosets() const {
  if (!full_rank()) throw std::domain_error("quotient has infinite index");
  // canonical representatives are exactly the box 0 <= x_i < diag_i
  std::vector<Vec> reps{zero_vec(ambient_)};
  for (std::size_t i = 0; i < ambient_; ++i) {
    std::vector<Vec> next;
    for (const Vec& r : reps)
      for (Int k = 0; k < basis_.at(i, i); ++k) {
        Vec x = r;
        x[i] = k;
        next.push_back(std::move(x));
      }
    reps = std::move(next);
  }
  return reps;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_neg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec vec_scale(const Int& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero_vec(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Int content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

Vec primitive(const Vec& v) {
  Int g = content(v);
  if (g <= 1) return v;
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  HermiteResult hr = hermite_normal_form(m);
  if (!hr.h.is_identity()) throw std::invalid_argument("matrix is not unimodular");
  return hr.u;
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace igtype
