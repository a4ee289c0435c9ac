#include "repfield/matrix.hpp"

#include <algorithm>
#include <string>

#include "repfield/error.hpp"

namespace repfield {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
}

std::string shape(const Matrix& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

// In-place reduction to RREF; returns pivot columns.
std::vector<std::size_t> reduce(Matrix& m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).value == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Elem s = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).value == 0) continue;
      const Elem factor = f.neg(m(i, c));
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j).value) m(i, j) = f.add(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(const Field& field, std::size_t n) { return scalar(field, n, field.one()); }

Matrix Matrix::scalar(const Field& field, std::size_t n, Elem value) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.element(rows[i][j]);
  }
  return m;
}

Matrix Matrix::random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(field, rows, cols);
  for (auto& x : m.data_) x = field.random(rng);
  return m;
}

Matrix Matrix::random_invertible(const Field& field, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random(field, n, n, rng);
    if (rank(m) == n) return m;
  }
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x.value == 0; });
}

bool Matrix::is_identity() const {
  auto s = scalar_value();
  return s && *s == field_.one();
}

std::optional<Elem> Matrix::scalar_value() const {
  if (!is_square() || rows_ == 0) return std::nullopt;
  const Elem d = data_[0];
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? d : field_.zero())) return std::nullopt;
  return d;
}

Elem Matrix::trace() const {
  Elem t = field_.zero();
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = field_.add(t, (*this)(i, i));
  return t;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " * " + shape(b));
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(l, j).value) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " + " + shape(b));
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " - " + shape(b));
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
  return out;
}

Matrix operator*(Elem s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().mul(s, a(i, j));
  return out;
}

std::vector<Elem> multiply(std::span<const Elem> v, const Matrix& a) {
  if (v.size() != a.rows()) throw Error(ErrorCode::ShapeMismatch, "row vector length mismatch");
  const Field& f = a.field();
  std::vector<Elem> out(a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i].value == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = f.add(out[j], f.mul(v[i], a(i, j)));
  }
  return out;
}

std::vector<Elem> multiply(const Matrix& a, std::span<const Elem> v) {
  if (v.size() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "column vector length mismatch");
  const Field& f = a.field();
  std::vector<Elem> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix power(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "power of non-square matrix");
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Matrix> try_inverse(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  Matrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = a.field().one();
  }
  const auto pivots = reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

Matrix inverse(const Matrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorCode::Singular, "matrix is singular");
  return std::move(*inv);
}

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  return reduce(m).size();
}

Matrix rref(const Matrix& a) {
  Matrix m = a;
  reduce(m);
  return m;
}

std::vector<std::vector<Elem>> nullspace_basis(const Matrix& a) {
  Matrix m = a;
  const auto pivots = reduce(m);
  const Field& f = a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(a.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix frobenius(const Matrix& a, std::int64_t m) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().frobenius(a(i, j), m);
  return out;
}

Matrix embed(const Matrix& a, const Field& big) {
  if (a.field() == big) return a;
  const auto emb = Embedding::get(a.field(), big);
  Matrix out(big, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = emb->up(a(i, j));
  return out;
}

Matrix restrict_to(const Matrix& a, const Field& small) {
  if (a.field() == small) return a;
  const auto emb = Embedding::get(small, a.field());
  Matrix out(small, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = emb->down(a(i, j));
  return out;
}

Matrix block_diagonal(std::span<const Matrix> blocks) {
  if (blocks.empty()) throw Error(ErrorCode::ShapeMismatch, "no blocks");
  std::size_t n = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front(), b);
    if (!b.is_square()) throw Error(ErrorCode::ShapeMismatch, "non-square block");
    n += b.rows();
  }
  Matrix out(blocks.front().field(), n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

// ---- semilinear kernels --------------------------------------------------

SemilinearMap SemilinearMap::over_subfield(const Field& field, unsigned m) {
  if (m == 0 || field.degree() % m != 0)
    throw Error(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(field.degree()));
  return SemilinearMap{m, field.degree() / m};
}

Matrix semilinear_product(const Matrix& c, unsigned shift, unsigned count) {
  if (!c.is_square()) throw Error(ErrorCode::ShapeMismatch, "semilinear product of non-square matrix");
  if (count == 0) return Matrix::identity(c.field(), c.rows());
  // Walk the bits of count from the top, keeping prod = C_cur.
  unsigned top = 31;
  while (!((count >> top) & 1u)) --top;
  Matrix prod = c;
  std::uint64_t cur = 1;
  for (unsigned bit = top; bit-- > 0;) {
    prod = prod * frobenius(prod, static_cast<std::int64_t>(shift * cur));
    cur *= 2;
    if ((count >> bit) & 1u) {
      prod = prod * frobenius(c, static_cast<std::int64_t>(shift * cur));
      cur += 1;
    }
  }
  return prod;
}

Elem norm_scalar_scan(const Matrix& c, const SemilinearMap& alpha) {
  if (!c.is_square() || c.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "norm of non-square matrix");
  const Field& f = c.field();
  const std::size_t d = c.rows();
  std::vector<Elem> v(c.row(0).begin(), c.row(0).end());
  std::vector<Elem> next(d);
  for (unsigned i = 1; i < alpha.order; ++i) {
    const auto s = static_cast<std::int64_t>(alpha.shift) * i;
    std::fill(next.begin(), next.end(), f.zero());
    for (std::size_t l = 0; l < d; ++l) {
      if (v[l].value == 0) continue;
      for (std::size_t j = 0; j < d; ++j) next[j] = f.add(next[j], f.mul(v[l], f.frobenius(c(l, j), s)));
    }
    std::swap(v, next);
  }
  return v[0];
}

Elem norm_scalar_doubling(const Matrix& c, const SemilinearMap& alpha) {
  if (!c.is_square() || c.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "norm of non-square matrix");
  return semilinear_product(c, alpha.shift, alpha.order)(0, 0);
}

Elem semilinear_norm_scalar(const Matrix& c, const SemilinearMap& alpha) {
  if (!c.is_square() || c.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "norm of non-square matrix");
  if (rank(c) != c.rows()) throw Error(ErrorCode::Singular, "semilinear norm of a singular matrix");
  const Matrix product = semilinear_product(c, alpha.shift, alpha.order);
  const Elem mu = alpha.order <= 2 * c.rows() ? norm_scalar_scan(c, alpha) : product(0, 0);
  if (product != Matrix::scalar(c.field(), c.rows(), mu))
    throw Error(ErrorCode::NotScalar, "C C^a ... is not a scalar matrix");
  if (c.field().frobenius(mu, alpha.shift) != mu)
    throw Error(ErrorCode::InternalInconsistency, "semilinear norm not fixed by the automorphism");
  return mu;
}

Elem semilinear_norm_scalar(const Matrix& c, unsigned m) {
  return semilinear_norm_scalar(c, SemilinearMap::over_subfield(c.field(), m));
}

namespace {

void require_norm_one(const Matrix& c, const SemilinearMap& alpha) {
  if (!c.is_square()) throw Error(ErrorCode::ShapeMismatch, "non-square matrix");
  if (!semilinear_product(c, alpha.shift, alpha.order).is_identity())
    throw Error(ErrorCode::PreconditionFailed, "C C^a ... C^(a^(t-1)) is not the identity");
}

}  // namespace

std::vector<Elem> fixed_vector(const Matrix& c, const SemilinearMap& alpha, Rng& rng) {
  require_norm_one(c, alpha);
  const Field& f = c.field();
  const std::size_t d = c.rows();
  const auto conj = [&](const std::vector<Elem>& u) {
    std::vector<Elem> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.frobenius(u[i], alpha.shift);
    return out;
  };
  for (;;) {
    std::vector<Elem> u0(d);
    do {
      for (auto& x : u0) x = f.random(rng);
    } while (std::all_of(u0.begin(), u0.end(), [](Elem x) { return x.value == 0; }));
    std::vector<std::vector<Elem>> orbit{u0};
    for (unsigned i = 1; i < alpha.order; ++i) orbit.push_back(multiply(c, conj(orbit.back())));
    // A few lambdas per u0; the Galois characters are independent, so some
    // lambda gives a nonzero sum.
    for (int attempt = 0; attempt < 16; ++attempt) {
      const Elem lambda = f.random(rng);
      std::vector<Elem> v(d, f.zero());
      for (unsigned i = 0; i < alpha.order; ++i) {
        const Elem w = f.frobenius(lambda, static_cast<std::int64_t>(alpha.shift) * i);
        for (std::size_t j = 0; j < d; ++j) v[j] = f.add(v[j], f.mul(w, orbit[i][j]));
      }
      if (std::any_of(v.begin(), v.end(), [](Elem x) { return x.value != 0; })) return v;
    }
  }
}

std::vector<Elem> fixed_vector(const Matrix& c, unsigned m, Rng& rng) {
  return fixed_vector(c, SemilinearMap::over_subfield(c.field(), m), rng);
}

Hilbert90Result hilbert90(const Matrix& c, const SemilinearMap& alpha, Rng& rng, unsigned max_trials) {
  require_norm_one(c, alpha);
  const std::size_t d = c.rows();
  for (unsigned trial = 1; trial <= max_trials; ++trial) {
    const Matrix x = Matrix::random(c.field(), d, d, rng);
    Matrix a = x;
    for (unsigned i = 1; i < alpha.order; ++i) a = x + c * frobenius(a, alpha.shift);
    if (rank(a) == d) return {std::move(a), trial};
  }
  throw Error(ErrorCode::RetryLimitExceeded, "no invertible average after " + std::to_string(max_trials) + " trials");
}

Hilbert90Result hilbert90(const Matrix& c, unsigned m, Rng& rng, unsigned max_trials) {
  return hilbert90(c, SemilinearMap::over_subfield(c.field(), m), rng, max_trials);
}

}  // namespace repfield
