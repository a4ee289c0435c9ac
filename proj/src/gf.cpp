#include "repfield/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "repfield/error.hpp"

namespace repfield {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotInSubfield: return "NotInSubfield";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::SameCharacteristic: return "SameCharacteristic";
    case ErrorCode::NotASubfield: return "NotASubfield";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RetryLimitExceeded: return "RetryLimitExceeded";
    case ErrorCode::NotAbsolutelyIrreducible: return "NotAbsolutelyIrreducible";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::IntegrityError: return "IntegrityError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InconsistentPresentation: return "InconsistentPresentation";
    case ErrorCode::NotInSubgroup: return "NotInSubgroup";
    case ErrorCode::NotConjugateStable: return "NotConjugateStable";
    case ErrorCode::OrbitNotFree: return "OrbitNotFree";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// ---- dense polynomials over GF(p), constant term first ---------------------

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_rem(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(f, x^(p^j) - x) = 1 for
// 1 <= j <= k/2.
bool is_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint64_t p) {
  const std::size_t k = coeffs.size() - 1;
  if (k == 1) return true;
  if (coeffs[0] == 0) return false;
  Poly f(coeffs.begin(), coeffs.end());
  Poly xp{0, 1};
  for (std::size_t j = 1; j <= k / 2; ++j) {
    xp = poly_powmod(xp, p, f, p);
    Poly diff = xp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

// ---- small dense linear algebra over GF(p) --------------------------------

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

std::optional<ModMatrix> invert_mod(ModMatrix a, std::uint64_t p) {
  const std::size_t n = a.size();
  ModMatrix inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const std::uint64_t s = inv_mod(a[col][col], p);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * s % p;
      inv[col][j] = inv[col][j] * s % p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const std::uint64_t c = p - a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = (a[r][j] + c * a[col][j]) % p;
        inv[r][j] = (inv[r][j] + c * inv[col][j]) % p;
      }
    }
  }
  return inv;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// ---- field data ------------------------------------------------------------

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::vector<std::uint32_t> poly;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> radix;  // p^j, j = 0..k
  std::vector<std::uint64_t> unit_factors;
  bool tables = false;
  std::vector<std::uint32_t> exp_table;  // g^i for i < 2(q-1)
  std::vector<std::uint32_t> log_table;
  Elem primitive{1};

  void to_digits(std::uint64_t v, std::uint64_t* out) const {
    for (unsigned i = 0; i < k; ++i) {
      out[i] = v % p;
      v /= p;
    }
  }
  std::uint64_t from_digits(const std::uint64_t* d) const {
    std::uint64_t v = 0;
    for (unsigned i = k; i-- > 0;) v = v * p + d[i];
    return v;
  }

  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const {
    if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    std::uint64_t da[64], db[64], prod[128] = {};
    to_digits(a, da);
    to_digits(b, db);
    for (unsigned i = 0; i < k; ++i) {
      if (!da[i]) continue;
      for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    for (unsigned deg = 2 * k - 2; deg >= k; --deg) {
      const std::uint64_t c = prod[deg];
      if (!c) continue;
      prod[deg] = 0;
      // x^k = -(poly[0] + ... + poly[k-1] x^(k-1))
      for (unsigned i = 0; i < k; ++i)
        prod[deg - k + i] = (prod[deg - k + i] + (p - poly[i]) % p * c) % p;
    }
    return static_cast<std::uint32_t>(from_digits(prod));
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables) return exp_table[log_table[a] + log_table[b]];
    return poly_mul(a, b);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    e %= (q - 1);
    if (tables) return exp_table[(std::uint64_t{log_table[a]} * e) % (q - 1)];
    std::uint32_t result = 1, base = a;
    while (e) {
      if (e & 1) result = poly_mul(result, base);
      base = poly_mul(base, base);
      e >>= 1;
    }
    return result;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    if (k == 1) return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p);
    std::uint64_t result = 0, scale = 1, x = a, y = b;
    while (x || y) {
      std::uint64_t s = x % p + y % p;
      if (s >= p) s -= p;
      result += s * scale;
      scale *= p;
      x /= p;
      y /= p;
    }
    return static_cast<std::uint32_t>(result);
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p == 2) return a;
    std::uint64_t result = 0, scale = 1, x = a;
    while (x) {
      const std::uint64_t d = x % p;
      result += (d ? p - d : 0) * scale;
      scale *= p;
      x /= p;
    }
    return static_cast<std::uint32_t>(result);
  }
};

}  // namespace detail

namespace {

std::shared_ptr<detail::FieldData> build_field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> poly) {
  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->k = k;
  data->poly = std::move(poly);
  data->q = ipow(p, k);
  data->radix.resize(k + 1);
  for (unsigned j = 0; j <= k; ++j) data->radix[j] = ipow(p, j);
  data->unit_factors = prime_factors(data->q - 1);

  // Primitive element by testing x^((q-1)/r) != 1 for every prime r | q-1.
  const std::uint64_t n = data->q - 1;
  for (std::uint64_t v = 1; v < data->q; ++v) {
    const auto x = static_cast<std::uint32_t>(v);
    bool ok = true;
    for (std::uint64_t r : data->unit_factors) {
      if (data->pow(x, n / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      data->primitive = Elem{x};
      break;
    }
  }

  if (data->q <= Field::kTableOrder) {
    data->exp_table.resize(2 * n);
    data->log_table.assign(data->q, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      data->exp_table[i] = cur;
      data->exp_table[i + n] = cur;
      data->log_table[cur] = static_cast<std::uint32_t>(i);
      cur = data->poly_mul(cur, data->primitive.value);
    }
    data->tables = true;
  }
  return data;
}

std::vector<std::uint32_t> canonical_poly(std::uint32_t p, unsigned k) {
  const std::uint64_t count = ipow(p, k);
  std::vector<std::uint32_t> coeffs(k + 1, 0);
  coeffs[k] = 1;
  // Enumerate tuples (c0, ..., c_{k-1}) lexicographically with c0 most
  // significant. For k > 1 a zero constant term means a factor x, so the
  // search starts at c0 = 1.
  for (std::uint64_t n = k > 1 ? count / p : 0; n < count; ++n) {
    std::uint64_t v = n;
    for (unsigned j = 0; j < k; ++j) {
      coeffs[k - 1 - j] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible(coeffs, p)) return coeffs;
  }
  throw Error(ErrorCode::InternalInconsistency, "no irreducible polynomial found");
}

void check_size(std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::DegreeMismatch, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > Field::kMaxOrder)
      throw Error(ErrorCode::FieldTooLarge, "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds 2^32");
  }
}

}  // namespace

Field Field::create(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> poly) {
  check_size(p, k);
  if (!poly) return Field(build_field(p, k, canonical_poly(p, k)));
  if (poly->size() != k + 1 || poly->back() != 1)
    throw Error(ErrorCode::DegreeMismatch, "polynomial must be monic of degree " + std::to_string(k));
  for (auto c : *poly)
    if (c >= p) throw Error(ErrorCode::DegreeMismatch, "coefficient out of range [0,p)");
  if (!is_irreducible(*poly, p)) throw Error(ErrorCode::ReduciblePolynomial, "polynomial is reducible");
  return Field(build_field(p, k, std::move(*poly)));
}

Field Field::canonical(std::uint32_t p, unsigned k) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, Field> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, k}); it != cache.end()) return it->second;
  }
  Field f = create(p, k);
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(p, k), f).first->second;
}

std::uint32_t Field::characteristic() const { return data_->p; }
unsigned Field::degree() const { return data_->k; }
std::uint64_t Field::order() const { return data_->q; }
const std::vector<std::uint32_t>& Field::poly() const { return data_->poly; }

Elem Field::element(std::uint64_t value) const {
  if (value >= data_->q) throw Error(ErrorCode::IndexOutOfRange, "element encoding out of range");
  return Elem{static_cast<std::uint32_t>(value)};
}

Elem Field::add(Elem a, Elem b) const { return Elem{data_->add(a.value, b.value)}; }
Elem Field::sub(Elem a, Elem b) const { return Elem{data_->add(a.value, data_->neg(b.value))}; }
Elem Field::neg(Elem a) const { return Elem{data_->neg(a.value)}; }
Elem Field::mul(Elem a, Elem b) const { return Elem{data_->mul(a.value, b.value)}; }

Elem Field::inv(Elem a) const {
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (data_->tables) return Elem{data_->exp_table[(data_->q - 1) - data_->log_table[a.value]]};
  return Elem{data_->pow(a.value, data_->q - 2)};
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    const auto n = static_cast<std::int64_t>(data_->q - 1);
    e = ((e % n) + n) % n;
  }
  return Elem{data_->pow(a.value, static_cast<std::uint64_t>(e))};
}

Elem Field::frobenius(Elem x, std::int64_t m) const {
  const auto k = static_cast<std::int64_t>(data_->k);
  m = ((m % k) + k) % k;
  if (m == 0 || x.value <= 1) return x;
  return Elem{data_->pow(x.value, data_->radix[m])};
}

bool Field::is_in_subfield(Elem x, unsigned m) const {
  if (m == 0 || data_->k % m != 0) throw Error(ErrorCode::NotADivisor, "subfield degree must divide k");
  return frobenius(x, m) == x;
}

Elem Field::norm(Elem x, unsigned m) const {
  if (m == 0 || data_->k % m != 0) throw Error(ErrorCode::NotADivisor, "subfield degree must divide k");
  if (x.value == 0) return x;
  return Elem{data_->pow(x.value, (data_->q - 1) / (data_->radix[m] - 1))};
}

Elem Field::trace(Elem x, unsigned m) const {
  if (m == 0 || data_->k % m != 0) throw Error(ErrorCode::NotADivisor, "subfield degree must divide k");
  Elem sum = zero();
  for (unsigned i = 0; i < data_->k / m; ++i) sum = add(sum, frobenius(x, static_cast<std::int64_t>(m) * i));
  return sum;
}

std::vector<std::uint32_t> Field::digits(Elem x) const {
  std::vector<std::uint32_t> out(data_->k);
  std::uint64_t v = x.value;
  for (auto& d : out) {
    d = static_cast<std::uint32_t>(v % data_->p);
    v /= data_->p;
  }
  return out;
}

Elem Field::from_digits(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > data_->k) throw Error(ErrorCode::ShapeMismatch, "too many coefficients");
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= data_->p) throw Error(ErrorCode::IndexOutOfRange, "coefficient out of range");
    v = v * data_->p + coeffs[i];
  }
  return Elem{static_cast<std::uint32_t>(v)};
}

Elem Field::primitive_element() const { return data_->primitive; }

std::uint64_t Field::multiplicative_order(Elem x) const {
  if (x.value == 0) throw Error(ErrorCode::ZeroInput, "zero has no multiplicative order");
  std::uint64_t n = data_->q - 1;
  for (std::uint64_t r : data_->unit_factors)
    while (n % r == 0 && data_->pow(x.value, n / r) == 1) n /= r;
  return n;
}

const std::vector<std::uint64_t>& Field::unit_group_factors() const { return data_->unit_factors; }

Elem Field::random(Rng& rng) const { return Elem{static_cast<std::uint32_t>(uniform_below(rng, data_->q))}; }

Elem Field::random_nonzero(Rng& rng) const {
  return Elem{static_cast<std::uint32_t>(1 + uniform_below(rng, data_->q - 1))};
}

bool operator==(const Field& a, const Field& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->p == b.data_->p && a.data_->k == b.data_->k && a.data_->poly == b.data_->poly;
}

// ---- embeddings ------------------------------------------------------------

Embedding::Embedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
  const std::uint32_t p = small_.characteristic();
  const unsigned m = small_.degree();
  if (big_.characteristic() != p || big_.degree() % m != 0)
    throw Error(ErrorCode::NotASubfield, "GF(" + std::to_string(p) + "^" + std::to_string(m) +
                                             ") is not a subfield of GF(" + std::to_string(big_.characteristic()) +
                                             "^" + std::to_string(big_.degree()) + ")");
  const auto& sp = small_.poly();
  auto eval = [&](Elem z) {
    Elem acc = big_.zero();
    for (std::size_t i = sp.size(); i-- > 0;) acc = big_.add(big_.mul(acc, z), Elem{sp[i]});
    return acc;
  };
  if (m == 1) {
    root_ = Elem{(p - sp[0]) % p};
  } else {
    // Roots of the small polynomial lie in the subfield of order p^m, which
    // is generated by g^((Q-1)/(p^m-1)).
    const std::uint64_t sub_units = ipow(p, m) - 1;
    const Elem h = big_.pow(big_.primitive_element(), static_cast<std::int64_t>((big_.order() - 1) / sub_units));
    std::optional<Elem> best;
    Elem z = big_.one();
    for (std::uint64_t j = 0; j < sub_units; ++j, z = big_.mul(z, h))
      if (eval(z) == big_.zero() && (!best || z < *best)) best = z;
    if (!best) throw Error(ErrorCode::NoRootFound, "defining polynomial has no root in the big field");
    root_ = *best;
  }
  root_powers_.resize(m);
  root_powers_[0] = big_.one();
  for (unsigned j = 1; j < m; ++j) root_powers_[j] = big_.mul(root_powers_[j - 1], root_);

  // Pick m rows of the k x m digit matrix that form an invertible block.
  const unsigned k = big_.degree();
  std::vector<std::vector<std::uint32_t>> cols(m);
  for (unsigned j = 0; j < m; ++j) cols[j] = big_.digits(root_powers_[j]);
  ModMatrix echelon;  // rows of chosen digit positions, reduced
  for (unsigned r = 0; r < k && pivot_rows_.size() < m; ++r) {
    std::vector<std::uint64_t> trial_row(m);
    for (unsigned j = 0; j < m; ++j) trial_row[j] = cols[j][r];
    ModMatrix candidate;
    for (auto row : pivot_rows_) {
      std::vector<std::uint64_t> v(m);
      for (unsigned j = 0; j < m; ++j) v[j] = cols[j][row];
      candidate.push_back(v);
    }
    candidate.push_back(trial_row);
    // Rank test by elimination.
    std::size_t rank = 0;
    ModMatrix work = candidate;
    for (unsigned col = 0; col < m && rank < work.size(); ++col) {
      std::size_t piv = rank;
      while (piv < work.size() && work[piv][col] == 0) ++piv;
      if (piv == work.size()) continue;
      std::swap(work[piv], work[rank]);
      const std::uint64_t s = inv_mod(work[rank][col], p);
      for (auto& x : work[rank]) x = x * s % p;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i == rank || work[i][col] == 0) continue;
        const std::uint64_t c = p - work[i][col];
        for (unsigned j = 0; j < m; ++j) work[i][j] = (work[i][j] + c * work[rank][j]) % p;
      }
      ++rank;
    }
    if (rank == candidate.size()) pivot_rows_.push_back(r);
  }
  if (pivot_rows_.size() != m) throw Error(ErrorCode::InternalInconsistency, "embedding basis is degenerate");
  ModMatrix block(m, std::vector<std::uint64_t>(m));
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) block[i][j] = cols[j][pivot_rows_[i]];
  auto inverse = invert_mod(block, p);
  if (!inverse) throw Error(ErrorCode::InternalInconsistency, "embedding block is singular");
  pivot_inverse_.assign(m, std::vector<std::uint32_t>(m));
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) pivot_inverse_[i][j] = static_cast<std::uint32_t>((*inverse)[i][j]);
}

std::shared_ptr<const Embedding> Embedding::get(const Field& small, const Field& big) {
  using Key = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Embedding>> cache;
  Key key{small.characteristic(), small.poly(), big.poly()};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto emb = std::make_shared<const Embedding>(small, big);
  std::lock_guard lock(mutex);
  return cache.emplace(std::move(key), std::move(emb)).first->second;
}

Elem Embedding::up(Elem x) const {
  const auto coeffs = small_.digits(x);
  Elem acc = big_.zero();
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j]) acc = big_.add(acc, big_.mul(Elem{coeffs[j]}, root_powers_[j]));
  return acc;
}

Elem Embedding::down(Elem x) const {
  const unsigned m = small_.degree();
  if (!big_.is_in_subfield(x, m)) throw Error(ErrorCode::NotInSubfield, "element is not in the subfield");
  const std::uint64_t p = small_.characteristic();
  const auto d = big_.digits(x);
  std::vector<std::uint32_t> coeffs(m);
  for (unsigned i = 0; i < m; ++i) {
    std::uint64_t s = 0;
    for (unsigned j = 0; j < m; ++j) s = (s + std::uint64_t{pivot_inverse_[i][j]} * d[pivot_rows_[j]]) % p;
    coeffs[i] = static_cast<std::uint32_t>(s);
  }
  const Elem y = small_.from_digits(coeffs);
  if (up(y) != x) throw Error(ErrorCode::InternalInconsistency, "embedding inverse mismatch");
  return y;
}

Elem subfield_embed(const Field& small, const Field& big, Elem x) { return Embedding::get(small, big)->up(x); }

bool is_in_subfield(const Field& big, unsigned m, Elem x) { return big.is_in_subfield(x, m); }

// ---- discrete logarithm and equation solvers --------------------------------

std::optional<std::uint64_t> discrete_log(const Field& field, Elem g, Elem h, std::uint64_t n) {
  if (h.value == 0 || g.value == 0) return std::nullopt;
  std::uint64_t step = 1;
  while (step * step < n) ++step;
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  baby.reserve(step * 2);
  Elem cur = field.one();
  for (std::uint64_t j = 0; j < step; ++j) {
    baby.emplace(cur.value, j);
    cur = field.mul(cur, g);
  }
  const Elem giant = field.inv(field.pow(g, static_cast<std::int64_t>(step)));
  Elem gamma = h;
  for (std::uint64_t i = 0; i <= step; ++i) {
    if (auto it = baby.find(gamma.value); it != baby.end()) return (i * step + it->second) % n;
    gamma = field.mul(gamma, giant);
  }
  return std::nullopt;
}

Elem solve_norm_equation(const Field& field, unsigned m, Elem mu, Rng& rng) {
  const unsigned k = field.degree();
  if (m == 0 || k % m != 0) throw Error(ErrorCode::NotADivisor, "subfield degree must divide k");
  if (mu.value == 0) throw Error(ErrorCode::ZeroInput, "norm equation with zero right-hand side");
  if (!field.is_in_subfield(mu, m)) throw Error(ErrorCode::NotInSubfield, "mu is not in the subfield");
  if (m == k) return mu;

  // N is a surjective homomorphism onto GF(p^m)^x, so a uniform nu hits mu
  // with probability 1/(p^m - 1).
  const std::uint64_t sub_units = ipow(field.characteristic(), m) - 1;
  const std::uint64_t trials = std::min<std::uint64_t>(4096, 8 * sub_units + 16);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Elem nu = field.random_nonzero(rng);
    if (field.norm(nu, m) == mu) return nu;
  }
  if (field.order() <= Field::kTableOrder) {
    for (std::uint64_t v = 1; v < field.order(); ++v)
      if (field.norm(Elem{static_cast<std::uint32_t>(v)}, m) == mu) return Elem{static_cast<std::uint32_t>(v)};
  } else {
    const Elem g = field.primitive_element();
    const Elem ng = field.norm(g, m);
    if (auto l = discrete_log(field, ng, mu, sub_units)) return field.pow(g, static_cast<std::int64_t>(*l));
  }
  throw Error(ErrorCode::InternalInconsistency, "norm map failed to be surjective");
}

Elem pth_root_unique(const Field& field, Elem mu, std::uint32_t r) {
  if (r != field.characteristic())
    throw Error(ErrorCode::WrongCharacteristic, "unique p-th roots need p equal to the characteristic");
  if (mu.value == 0) throw Error(ErrorCode::ZeroInput, "p-th root of zero requested");
  return field.frobenius(mu, static_cast<std::int64_t>(field.degree()) - 1);
}

namespace {

// All solutions of x^r = mu inside `field`.
std::vector<Elem> roots_in_field(const Field& field, Elem mu, std::uint32_t r) {
  const std::uint64_t n = field.order() - 1;
  const auto cofactor = static_cast<std::int64_t>(n / std::gcd<std::uint64_t>(n, r));
  if (field.pow(mu, cofactor) != field.one()) return {};
  std::optional<Elem> first;
  if (field.order() <= (std::uint64_t{1} << 20)) {
    for (std::uint64_t v = 1; v <= n && !first; ++v)
      if (field.pow(Elem{static_cast<std::uint32_t>(v)}, r) == mu) first = Elem{static_cast<std::uint32_t>(v)};
  } else {
    const Elem g = field.primitive_element();
    const auto l = discrete_log(field, g, mu, n);
    if (!l) throw Error(ErrorCode::InternalInconsistency, "discrete log failed");
    // r*j = l (mod n) is solvable because mu is an r-th power.
    const std::uint64_t d = std::gcd<std::uint64_t>(n, r);
    const std::uint64_t nd = n / d;
    const std::uint64_t rd = (r / d) % nd;
    std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(nd), r1 = static_cast<std::int64_t>(rd);
    while (r1 != 0) {
      const std::int64_t qt = r0 / r1;
      std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
      std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    }
    const auto snd = static_cast<std::int64_t>(nd);
    const auto rinv = static_cast<std::uint64_t>(((t0 % snd) + snd) % snd);
    const std::uint64_t j = ((*l / d) % nd) * rinv % nd;
    first = field.pow(g, static_cast<std::int64_t>(j));
  }
  if (!first || field.pow(*first, r) != mu) throw Error(ErrorCode::NoRootFound, "root search failed");
  std::vector<Elem> out{*first};
  if (n % r == 0) {
    const Elem zeta = field.pow(field.primitive_element(), static_cast<std::int64_t>(n / r));
    for (std::uint32_t j = 1; j < r; ++j) out.push_back(field.mul(out.back(), zeta));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

PthRoots pth_roots_split(const Field& field, Elem mu, std::uint32_t r) {
  if (!is_prime(r)) throw Error(ErrorCode::NotPrime, std::to_string(r) + " is not prime");
  if (r == field.characteristic())
    throw Error(ErrorCode::SameCharacteristic, "use pth_root_unique when r equals the characteristic");
  if (mu.value == 0) throw Error(ErrorCode::ZeroInput, "r-th root of zero requested");
  const std::uint32_t p = field.characteristic();
  const unsigned k = field.degree();

  // Least e with all r roots in GF(p^(k e)): r | Q-1 and mu^((Q-1)/r) = 1.
  unsigned e = 1;
  for (;; ++e) {
    check_size(p, k * e);
    const Field big = Field::canonical(p, k * e);
    const std::uint64_t n = big.order() - 1;
    if (n % r != 0) continue;
    const Elem mb = subfield_embed(field, big, mu);
    if (big.pow(mb, static_cast<std::int64_t>(n / r)) == big.one()) break;
  }
  PthRoots out{Field::canonical(p, k * e), {}, {}};
  out.roots = roots_in_field(out.splitting_field, subfield_embed(field, out.splitting_field, mu), r);

  // Place each root over E(nu): search the intermediate fields in increasing
  // order and keep roots that do not already live in a smaller one.
  for (unsigned ep : divisors(e)) {
    const Field f = Field::canonical(p, k * ep);
    for (Elem nu : roots_in_field(f, subfield_embed(field, f, mu), r)) {
      bool smaller = false;
      for (unsigned epp : divisors(ep))
        if (epp < ep && f.frobenius(nu, static_cast<std::int64_t>(k) * epp) == nu) smaller = true;
      if (!smaller) out.placed.push_back(PlacedRoot{f, nu});
    }
  }
  if (out.placed.size() != r || out.roots.size() != r)
    throw Error(ErrorCode::InternalInconsistency, "expected " + std::to_string(r) + " roots");
  return out;
}

}  // namespace repfield
