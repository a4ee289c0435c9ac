#include <doctest.h>

#include <memory>

#include "support.hpp"
#include "repfield/io.hpp"
#include "repfield/rep.hpp"

using namespace repfield;
using support::code_of;

namespace {

std::shared_ptr<const PcPresentation> group(const std::string& name) {
  return std::make_shared<const PcPresentation>(PcPresentation::parse(support::read_data(name + ".pc")));
}

Representation load(const std::string& file, std::optional<GroupRef> g = std::nullopt) {
  return parse_rep(support::read_data(file), std::move(g));
}

// A 2-dimensional matrix group is absolutely reducible iff its generators
// share an eigenvector, and every eigenvalue lies in the quadratic extension.
bool has_common_line(const Representation& r) {
  const Field& f = r.field();
  const Field big = Field::canonical(f.characteristic(), 2 * f.degree());
  std::vector<Matrix> gens;
  for (const auto& g : r.gens()) gens.push_back(embed(g, big));
  std::vector<std::vector<Elem>> lines{{big.zero(), big.one()}};
  for (std::uint64_t t = 0; t < big.order(); ++t) lines.push_back({big.one(), big.element(t)});
  for (const auto& v : lines) {
    bool invariant = true;
    for (const auto& g : gens) {
      const auto w = multiply(g, v);
      // w parallel to v: w0 v1 - w1 v0 = 0
      invariant = invariant && big.sub(big.mul(w[0], v[1]), big.mul(w[1], v[0])).value == 0;
    }
    if (invariant) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("representation construction validates its input") {
  const Field f2 = Field::canonical(2, 1);
  const auto s3 = group("s3");
  const Matrix i2 = Matrix::identity(f2, 2);
  CHECK(code_of([&] { Representation(f2, 2, {i2}, GroupRef{s3, 1}); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { Representation(f2, 3, {i2}); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { Representation(f2, 2, {Matrix::from_rows(f2, {{1, 1}, {1, 1}})}); }) == ErrorCode::Singular);
  CHECK(code_of([&] { Representation(f2, 1, {Matrix::identity(Field::canonical(3, 1), 1)}); }) ==
        ErrorCode::FieldMismatch);
  CHECK(Representation(f2, 2, {i2}, GroupRef{s3, 2}).size() == 1);
}

TEST_CASE("relations of the attached presentation") {
  const auto s3 = group("s3");
  const Representation r = load("s3_gf2.rep", GroupRef{s3, 1});
  CHECK(satisfies_relations(r));
  // swapping the images breaks g1^2 = 1
  const Representation swapped(r.field(), 2, {r.gen(1), r.gen(0)}, GroupRef{s3, 1});
  CHECK(!satisfies_relations(swapped));
  const auto q8 = group("q8");
  const Representation q = load("q8_gf9.rep", GroupRef{q8, 1});
  CHECK(satisfies_relations(q));
  CHECK(q.evaluate(NormalWord{0, 0, 1}) == Matrix::scalar(q.field(), 2, q.field().neg(q.field().one())));
  CHECK(q.evaluate(NormalWord{1, 1, 0}) == q.gen(0) * q.gen(1));
}

TEST_CASE("absolute irreducibility on the fixtures") {
  CHECK(is_absolutely_irreducible(load("s3_gf2.rep")));
  CHECK(is_absolutely_irreducible(load("q8_gf9.rep")));
  CHECK(is_absolutely_irreducible(load("c3_gf4.rep")));
  CHECK(!is_absolutely_irreducible(load("reducible_gf3.rep")));
  CHECK(is_absolutely_irreducible(load("identity_gf16.rep")));  // degree 1
  // irreducible over GF(3) but not absolutely: x^2 + 1 splits in GF(9)
  const Field f3 = Field::canonical(3, 1);
  CHECK(!is_absolutely_irreducible(Representation(f3, 2, {Matrix::from_rows(f3, {{0, 1}, {2, 0}})})));
}

TEST_CASE("a uniserial module has scalar centralizer yet is reducible") {
  // S3 in characteristic 3: trivial under sign, non-split
  const Field f3 = Field::canonical(3, 1);
  const auto s3 = group("s3");
  const Representation r(f3, 2, {Matrix::from_rows(f3, {{1, 0}, {0, 2}}), Matrix::from_rows(f3, {{1, 1}, {0, 1}})},
                         GroupRef{s3, 1});
  CHECK(satisfies_relations(r));
  CHECK(centralizer_dimension(r) == 1);
  CHECK(!is_absolutely_irreducible(r));
  CHECK(centralizer_dimension(load("reducible_gf3.rep")) == 2);
  CHECK(centralizer_dimension(load("q8_gf9.rep")) == 1);
}

TEST_CASE("Burnside agrees with a search for invariant lines in dimension 2") {
  Rng rng(31);
  int irreducible = 0, reducible = 0;
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field f = Field::canonical(p, k);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Matrix> gens;
      const std::size_t n = 1 + uniform_below(rng, 2);
      for (std::size_t i = 0; i < n; ++i) {
        Matrix g = Matrix::random_invertible(f, 2, rng);
        if (trial % 4 == 0) g(1, 0) = f.zero();  // make shared lines likely
        if (rank(g) < 2) g = Matrix::identity(f, 2);
        gens.push_back(g);
      }
      const Representation r(f, 2, gens);
      const bool burnside = is_absolutely_irreducible(r);
      CHECK(burnside == !has_common_line(r));
      (burnside ? irreducible : reducible)++;
    }
  }
  CHECK(irreducible > 20);
  CHECK(reducible > 20);
}

TEST_CASE("direct sums are never absolutely irreducible") {
  const Representation r = load("s3_gf2.rep");
  CHECK(!is_absolutely_irreducible(direct_sum(r, r)));
  CHECK(direct_sum(r, r).degree() == 4);
}

TEST_CASE("intertwiners recover a random change of basis up to scalar") {
  const auto q8 = group("q8");
  const Representation r = load("q8_gf9.rep", GroupRef{q8, 1});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Matrix b = Matrix::random_invertible(r.field(), 2, rng);
    const Representation r2 = conjugate_by(r, b);
    const auto c = find_intertwiner(r, r2);
    REQUIRE(c);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(inverse(*c) * r.gen(i) * *c == r2.gen(i));
    // c = lambda b with lambda the inverse of b's first nonzero entry
    Elem lead{0};
    for (auto x : b.entries())
      if (x.value) {
        lead = x;
        break;
      }
    CHECK(*c == r.field().inv(lead) * b);
    CHECK(equivalent(r2, r));
  }
}

TEST_CASE("inequivalent and degenerate intertwiner problems") {
  const Representation w = load("c3_gf4.rep");
  const Representation w2 = rep_frobenius(w, 1);
  CHECK(w2.gen(0) == Matrix::from_rows(w.field(), {{3}}));
  CHECK(!find_intertwiner(w, w2));
  CHECK(!equivalent(w, w2));
  const Representation twice = direct_sum(w, w);
  CHECK(code_of([&] { find_intertwiner(twice, twice); }) == ErrorCode::IntegrityError);
  CHECK(code_of([&] { equivalent(w, twice); }) == ErrorCode::DegreeMismatch);
}

TEST_CASE("equivalence is symmetric and transitive") {
  Rng rng(32);
  const Representation r = load("s3_gf2.rep");
  const Field f8 = Field::canonical(2, 3);
  const Representation big = embed(r, f8);
  const Representation a = conjugate_by(big, Matrix::random_invertible(f8, 2, rng));
  const Representation b = conjugate_by(a, Matrix::random_invertible(f8, 2, rng));
  CHECK(equivalent(a, b));
  CHECK(equivalent(b, a));
  CHECK(equivalent(big, b));
  const auto c = find_intertwiner(a, b);
  const auto d = find_intertwiner(b, a);
  REQUIRE(c);
  REQUIRE(d);
  CHECK((*c * *d).scalar_value());
}

TEST_CASE("character and entry fields") {
  const auto c3 = load("c3_gf4.rep");
  CHECK(character_field(c3) == 2);
  CHECK(entry_field(c3) == 2);
  const auto q8 = group("q8");
  const auto q = load("q8_gf9.rep", GroupRef{q8, 1});
  CHECK(character_field(q) == 1);
  CHECK(character_field(load("q8_gf9.rep")) == 1);
  CHECK(entry_field(q) == 2);
  CHECK(character_field(load("s3_gf2.rep")) == 1);
  CHECK(character_field(load("identity_gf16.rep")) == 1);
  // conjugating into GF(64) keeps the character field but not the entries
  Rng rng(33);
  const Field f64 = Field::canonical(2, 6);
  const auto s3 = group("s3");
  const Representation big =
      conjugate_by(embed(load("s3_gf2.rep", GroupRef{s3, 1}), f64), Matrix::random_invertible(f64, 2, rng));
  CHECK(entry_field(big) == 6);
  CHECK(character_field(big) == 1);
  // with and without the presentation
  const Representation bare(big.field(), big.degree(), big.gens());
  CHECK(character_field(bare) == 1);
  CHECK(code_of([&] { character_field(bare, 3); }) == ErrorCode::CapExceeded);
}

TEST_CASE("embedding and restricting representations") {
  const auto r = load("s3_gf2.rep");
  const Field f16 = Field::canonical(2, 4);
  const auto big = embed(r, f16);
  CHECK(big.field() == f16);
  const auto back = restrict_to(big, r.field());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(back.gen(i) == r.gen(i));
  CHECK(code_of([&] { restrict_to(load("c3_gf4.rep"), Field::canonical(2, 1)); }) == ErrorCode::NotInSubfield);
}
