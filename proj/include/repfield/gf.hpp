#pragma once

// Finite fields GF(p^k) given as GF(p)[x] modulo a monic irreducible
// polynomial. Elements are packed integers: the base-p digits of the value,
// least significant first, are the polynomial coefficients.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "repfield/random.hpp"

namespace repfield {

struct Elem {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

namespace detail {
struct FieldData;
}

class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;
  static constexpr std::uint64_t kTableOrder = std::uint64_t{1} << 16;

  /// Validating constructor. Without `poly` the canonical polynomial is used:
  /// the least monic irreducible of degree k, comparing coefficient tuples
  /// constant term first.
  static Field create(std::uint32_t p, unsigned k,
                      std::optional<std::vector<std::uint32_t>> poly = std::nullopt);

  /// Cached canonical GF(p^k); the same (p, k) always yields the same poly.
  static Field canonical(std::uint32_t p, unsigned k);

  std::uint32_t characteristic() const;
  unsigned degree() const;
  std::uint64_t order() const;
  const std::vector<std::uint32_t>& poly() const;
  bool is_prime_field() const { return degree() == 1; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem element(std::uint64_t value) const;
  bool contains(Elem x) const { return x.value < order(); }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Arbitrary integer exponent; negative exponents invert first.
  Elem pow(Elem a, std::int64_t e) const;
  /// x -> x^(p^m), m taken modulo k.
  Elem frobenius(Elem x, std::int64_t m) const;

  /// Subfield of order p^m: the fixed points of frobenius(., m).
  bool is_in_subfield(Elem x, unsigned m) const;

  /// Relative norm and trace down to GF(p^m); m must divide k.
  Elem norm(Elem x, unsigned m) const;
  Elem trace(Elem x, unsigned m) const;

  std::vector<std::uint32_t> digits(Elem x) const;
  Elem from_digits(std::span<const std::uint32_t> coeffs) const;

  Elem primitive_element() const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem x) const;
  /// Distinct prime factors of order() - 1.
  const std::vector<std::uint64_t>& unit_group_factors() const;

  Elem random(Rng& rng) const;
  Elem random_nonzero(Rng& rng) const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Canonical embedding of GF(p^m) into GF(p^k) for m | k: the generator of the
/// small field is sent to the numerically least root of its polynomial in the
/// big field. Instances are cached and shared.
class Embedding {
 public:
  static std::shared_ptr<const Embedding> get(const Field& small, const Field& big);

  const Field& small() const { return small_; }
  const Field& big() const { return big_; }
  Elem root() const { return root_; }

  Elem up(Elem x) const;
  /// Inverse of up(); throws NotInSubfield for elements outside the image.
  Elem down(Elem x) const;

  Embedding(Field small, Field big);

 private:
  Field small_;
  Field big_;
  Elem root_;
  std::vector<Elem> root_powers_;
  // Rows of the big-field digit vectors that determine the small coordinates,
  // with the inverse of the corresponding square block over GF(p).
  std::vector<std::size_t> pivot_rows_;
  std::vector<std::vector<std::uint32_t>> pivot_inverse_;
};

Elem subfield_embed(const Field& small, const Field& big, Elem x);
bool is_in_subfield(const Field& big, unsigned m, Elem x);

/// Norm equation N_{GF(p^k)/GF(p^m)}(nu) = mu. Rejection sampling first,
/// then a deterministic fallback (exhaustive for small fields, discrete log
/// otherwise).
Elem solve_norm_equation(const Field& field, unsigned m, Elem mu, Rng& rng);

/// The unique r-th root when r equals the characteristic.
Elem pth_root_unique(const Field& field, Elem mu, std::uint32_t r);

struct PlacedRoot {
  Field field;  // E(nu): the least extension of E containing the root
  Elem value;   // the root written over `field`
};

struct PthRoots {
  Field splitting_field;          // least extension of E holding all roots
  std::vector<Elem> roots;        // all r roots in splitting_field
  std::vector<PlacedRoot> placed; // same roots, each over its own field E(nu)
};

/// All r-th roots of mu for a prime r different from the characteristic.
/// Roots are ordered by the degree of E(nu), then by encoding in the
/// splitting field.
PthRoots pth_roots_split(const Field& field, Elem mu, std::uint32_t r);

/// Baby-step giant-step discrete log of h to base g, where g has order n.
std::optional<std::uint64_t> discrete_log(const Field& field, Elem g, Elem h, std::uint64_t n);

}  // namespace repfield
