#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "repfield/gf.hpp"
#include "repfield/random.hpp"

namespace repfield {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix scalar(const Field& field, std::size_t n, Elem value);
  /// Rows of integer encodings, e.g. {{0, 1}, {1, 1}}.
  static Matrix from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows);
  static Matrix random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng);
  /// Uniformly random invertible matrix (by rejection).
  static Matrix random_invertible(const Field& field, std::size_t n, Rng& rng);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  /// The diagonal value if the matrix is a scalar multiple of the identity.
  std::optional<Elem> scalar_value() const;
  Elem trace() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(Elem s, const Matrix& a);

/// Row vector times matrix.
std::vector<Elem> multiply(std::span<const Elem> v, const Matrix& a);
/// Matrix times column vector.
std::vector<Elem> multiply(const Matrix& a, std::span<const Elem> v);

Matrix transpose(const Matrix& a);
Matrix power(const Matrix& a, std::uint64_t e);
std::optional<Matrix> try_inverse(const Matrix& a);
/// Throws Singular.
Matrix inverse(const Matrix& a);
std::size_t rank(const Matrix& a);
Matrix rref(const Matrix& a);
/// Basis of {x : A x = 0}, each vector of length cols(). Free variables are
/// set to 1 one at a time, so the basis is the canonical one read off the RREF.
std::vector<std::vector<Elem>> nullspace_basis(const Matrix& a);

/// Entrywise x -> x^(p^m).
Matrix frobenius(const Matrix& a, std::int64_t m);

/// Re-encode entries through the canonical embedding into a larger field.
Matrix embed(const Matrix& a, const Field& big);
/// Inverse of embed(); every entry must lie in the subfield.
Matrix restrict_to(const Matrix& a, const Field& small);

/// Block-diagonal matrix from square blocks.
Matrix block_diagonal(std::span<const Matrix> blocks);

// ---- semilinear kernels --------------------------------------------------

/// A power of Frobenius, x -> x^(p^shift), of multiplicative order `order` on
/// the field in question.
struct SemilinearMap {
  unsigned shift;
  unsigned order;

  /// The generator of Gal(GF(p^k)/GF(p^m)) used throughout: shift = m,
  /// order = k/m. Throws NotADivisor.
  static SemilinearMap over_subfield(const Field& field, unsigned m);
};

/// C C^a C^(a^2) ... C^(a^(count-1)) by the doubling recurrence
/// C_{2i} = C_i (C_i)^(a^i), in O(d^3 log count).
Matrix semilinear_product(const Matrix& c, unsigned shift, unsigned count);

/// First entry of e_1 C C^a ... C^(a^(t-1)), by t-1 vector-matrix products.
Elem norm_scalar_scan(const Matrix& c, const SemilinearMap& alpha);
/// (0,0) entry of the doubling product.
Elem norm_scalar_doubling(const Matrix& c, const SemilinearMap& alpha);

/// mu with C C^a ... C^(a^(t-1)) = mu I. Uses the vector scan when t <= 2d and
/// the doubling recurrence otherwise, then checks the full product. Throws
/// NotScalar or Singular.
Elem semilinear_norm_scalar(const Matrix& c, const SemilinearMap& alpha);
Elem semilinear_norm_scalar(const Matrix& c, unsigned m);

/// A nonzero column vector v with C v^a = v, for C of semilinear norm one.
/// v is the lambda-weighted orbit sum of u_i = C u_{i-1}^a.
std::vector<Elem> fixed_vector(const Matrix& c, const SemilinearMap& alpha, Rng& rng);
std::vector<Elem> fixed_vector(const Matrix& c, unsigned m, Rng& rng);

struct Hilbert90Result {
  Matrix a;
  unsigned trials;
};

/// Invertible A with C = A (A^a)^(-1), for C of semilinear norm one. Each
/// trial draws a random X and evaluates A_t from A_1 = X, A_{i+1} = X + C A_i^a.
/// Throws PreconditionFailed or RetryLimitExceeded.
Hilbert90Result hilbert90(const Matrix& c, const SemilinearMap& alpha, Rng& rng, unsigned max_trials = 64);
Hilbert90Result hilbert90(const Matrix& c, unsigned m, Rng& rng, unsigned max_trials = 64);

}  // namespace repfield
