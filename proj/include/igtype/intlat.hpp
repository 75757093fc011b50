#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace igtype {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;

/// Dense matrix over arbitrary-precision integers, row-major.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  std::vector<Vec> row_list() const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  /// m * v with v as a column vector.
  Vec apply(const Vec& v) const;
  /// v * m with v as a row vector.
  Vec apply_row(const Vec& v) const;

  IntMatrix transposed() const;
  IntMatrix power(unsigned long k) const;
  bool is_zero() const;
  bool is_identity() const;

  /// Exact determinant (Bareiss fraction-free elimination); square only.
  Int determinant() const;

  std::string to_string() const;

private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

struct HermiteResult {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, u * m == h
};

/// Row-style HNF: pivots positive, entries above a pivot reduced into
/// [0, pivot), pivot columns strictly increasing, zero rows last.
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
  IntMatrix d;  // diagonal, d1 | d2 | ...
  IntMatrix u;  // unimodular
  IntMatrix v;  // unimodular, u * m * v == d
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Rows spanning { x : x * m == 0 }.
IntMatrix kernel_lattice(const IntMatrix& m);

/// Integer coefficients c with sum c_i * gens_i == target, if any.
/// The generators need not be independent.
std::optional<Vec> solve_in_lattice(const std::vector<Vec>& gens,
                                    const Vec& target, std::size_t ambient);

/// Integer x with m * x + t == x, if any. Solved through the Smith form
/// of (m - I); when the solution space is positive-dimensional an
/// arbitrary representative is returned.
std::optional<Vec> solve_affine_fixed_point(const IntMatrix& m, const Vec& t);

/// Subgroup of Z^ambient given by a basis in Hermite normal form.
/// Canonical: two sublattices are equal iff their bases are equal.
class Sublattice {
public:
  Sublattice() : ambient_(0) {}

  static Sublattice from_generators(std::size_t ambient,
                                    const std::vector<Vec>& gens);
  static Sublattice full(std::size_t ambient);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  bool full_rank() const { return rank() == ambient_; }

  /// Index [Z^n : L]; requires full rank.
  Int index() const;

  /// Coefficients of v in the basis, or absent when v is not in the lattice.
  std::optional<Vec> membership(const Vec& v) const;
  bool contains(const Vec& v) const { return membership(v).has_value(); }

  /// Canonical representative of v modulo the lattice; requires full rank.
  Vec reduce(const Vec& v) const;

  /// All canonical coset representatives; requires full rank.
  std::vector<Vec> quotient_cosets() const;

  bool operator==(const Sublattice& other) const = default;

private:
  std::size_t ambient_;
  IntMatrix basis_;
};

// small vector helpers shared across modules
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
Vec vec_scale(const Int& c, const Vec& a);
Int dot(const Vec& a, const Vec& b);
bool is_zero_vec(const Vec& a);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
std::string vec_to_string(const Vec& v);
Int content(const Vec& v);
Vec primitive(const Vec& v);

/// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace igtype
