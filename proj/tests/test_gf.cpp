#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "repfield/error.hpp"
#include "repfield/gf.hpp"

using namespace repfield;
using support::code_of;

namespace {

oracle::NaiveField naive(const Field& f) {
  return {f.characteristic(), std::vector<std::uint64_t>(f.poly().begin(), f.poly().end())};
}

std::vector<std::uint32_t> as_u32(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("canonical polynomials are the least irreducible ones") {
  CHECK(Field::canonical(2, 2).poly() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Field::canonical(3, 2).poly() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::canonical(3, 1).poly() == std::vector<std::uint32_t>{0, 1});
  CHECK(Field::canonical(5, 2).poly() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Field::canonical(2, 3).poly() == std::vector<std::uint32_t>{1, 0, 1, 1});
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 1}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {3, 3}, {3, 4}, {5, 3}, {7, 2}, {7, 3}, {11, 2}}) {
    CAPTURE(p);
    CAPTURE(k);
    CHECK(Field::canonical(p, k).poly() == as_u32(oracle::least_irreducible(p, k)));
  }
}

TEST_CASE("field construction validates its input") {
  CHECK(code_of([] { Field::create(4, 2); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { Field::create(2, 2, std::vector<std::uint32_t>{0, 1, 1}); }) == ErrorCode::ReduciblePolynomial);
  CHECK(code_of([] { Field::create(2, 3, std::vector<std::uint32_t>{1, 1, 1}); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([] { Field::create(2, 2, std::vector<std::uint32_t>{1, 1, 2}); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([] { Field::create(2, 33); }) == ErrorCode::FieldTooLarge);
  CHECK(code_of([] { Field::create(3, 0); }) == ErrorCode::DegreeMismatch);
  // a non-canonical but irreducible choice is accepted
  const Field f = Field::create(2, 3, std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(f.order() == 8);
  CHECK(!(f == Field::canonical(2, 3)));
  CHECK(Field::create(2, 4) == Field::canonical(2, 4));
}

TEST_CASE("known products and Frobenius images") {
  const Field f4 = Field::canonical(2, 2);
  CHECK(f4.mul(Elem{2}, Elem{2}) == Elem{3});
  CHECK(f4.frobenius(Elem{2}, 1) == Elem{3});
  CHECK(f4.frobenius(Elem{1}, 1) == Elem{1});
  const Field f9 = Field::canonical(3, 2);
  CHECK(f9.mul(Elem{3}, Elem{3}) == Elem{2});
  CHECK(f9.frobenius(Elem{3}, 1) == Elem{6});
  CHECK(f9.mul(Elem{3}, f9.one()) == Elem{3});
  CHECK(code_of([&] { f9.inv(f9.zero()); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("arithmetic agrees with schoolbook polynomials, exhaustively on small fields") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    const Field f = Field::canonical(p, k);
    const auto ref = naive(f);
    CAPTURE(f.order());
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      for (std::uint64_t b = 0; b < f.order(); ++b) {
        REQUIRE(f.add(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).value == ref.add(a, b));
        REQUIRE(f.mul(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).value == ref.mul(a, b));
      }
      const Elem x{static_cast<std::uint32_t>(a)};
      CHECK(f.add(x, f.neg(x)) == f.zero());
      if (a) CHECK(f.mul(x, f.inv(x)) == f.one());
      CHECK(f.frobenius(x, 1).value == ref.frob(a, 1));
    }
  }
}

TEST_CASE("arithmetic without log tables agrees with schoolbook polynomials") {
  Rng rng(11);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 17}, {2, 24}, {3, 11}, {65537, 1}, {257, 3}}) {
    const Field f = Field::canonical(p, k);
    const auto ref = naive(f);
    CHECK(f.order() > Field::kTableOrder);
    for (int t = 0; t < 200; ++t) {
      const Elem a = f.random(rng), b = f.random(rng);
      REQUIRE(f.mul(a, b).value == ref.mul(a.value, b.value));
      REQUIRE(f.add(a, b).value == ref.add(a.value, b.value));
      if (a != f.zero()) REQUIRE(f.mul(a, f.inv(a)) == f.one());
      const std::int64_t e = static_cast<std::int64_t>(uniform_below(rng, 1000)) - 500;
      if (a != f.zero()) CHECK(f.mul(f.pow(a, e), f.pow(a, -e)) == f.one());
    }
  }
}

TEST_CASE("encoding round-trips through digits") {
  const Field f = Field::canonical(5, 3);
  for (std::uint32_t v = 0; v < f.order(); ++v) CHECK(f.from_digits(f.digits(Elem{v})) == Elem{v});
  CHECK(code_of([&] { f.element(f.order()); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("Frobenius is an automorphism whose fixed points are the subfield") {
  Rng rng(3);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 6}, {3, 4}, {2, 12}, {5, 2}}) {
    const Field f = Field::canonical(p, k);
    for (int t = 0; t < 100; ++t) {
      const Elem a = f.random(rng), b = f.random(rng);
      for (unsigned m = 1; m < k; ++m) {
        CHECK(f.frobenius(f.mul(a, b), m) == f.mul(f.frobenius(a, m), f.frobenius(b, m)));
        CHECK(f.frobenius(f.add(a, b), m) == f.add(f.frobenius(a, m), f.frobenius(b, m)));
      }
      Elem c = a;
      for (unsigned i = 0; i < k; ++i) c = f.frobenius(c, 1);
      CHECK(c == a);
      CHECK(f.frobenius(a, k) == a);
      CHECK(f.frobenius(a, -1) == f.frobenius(a, k - 1));
    }
    if (f.order() > Field::kTableOrder) continue;
    for (unsigned m = 1; m <= k; ++m) {
      if (k % m) continue;
      const Field small = Field::canonical(p, m);
      std::set<Elem> image, fixed;
      for (std::uint32_t v = 0; v < small.order(); ++v) image.insert(subfield_embed(small, f, Elem{v}));
      for (std::uint32_t v = 0; v < f.order(); ++v)
        if (is_in_subfield(f, m, Elem{v})) fixed.insert(Elem{v});
      CHECK(image == fixed);
      CHECK(fixed.size() == small.order());
    }
  }
}

TEST_CASE("relative norm and trace") {
  const Field f4 = Field::canonical(2, 2);
  CHECK(f4.norm(Elem{2}, 1) == Elem{1});
  const Field f9 = Field::canonical(3, 2);
  CHECK(f9.trace(Elem{3}, 1) == Elem{0});
  CHECK(f9.norm(Elem{3}, 1) == Elem{1});
  CHECK(f9.norm(f9.one(), 1) == f9.one());
  CHECK(f9.trace(f9.zero(), 1) == f9.zero());
  CHECK(code_of([&] { f9.norm(Elem{3}, 3); }) == ErrorCode::NotADivisor);

  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 6}, {3, 4}, {2, 4}}) {
    const Field f = Field::canonical(p, k);
    const auto ref = naive(f);
    for (unsigned m = 1; m < k; ++m) {
      if (k % m) continue;
      for (std::uint32_t v = 0; v < f.order(); ++v) {
        const Elem x{v};
        REQUIRE(f.norm(x, m).value == ref.norm(v, m));
        REQUIRE(f.trace(x, m).value == ref.trace(v, m));
        CHECK(f.is_in_subfield(f.norm(x, m), m));
        CHECK(f.is_in_subfield(f.trace(x, m), m));
      }
    }
  }
  Rng rng(5);
  const Field f = Field::canonical(2, 12);
  for (int t = 0; t < 200; ++t) {
    const Elem a = f.random(rng), b = f.random(rng);
    CHECK(f.norm(f.mul(a, b), 4) == f.mul(f.norm(a, 4), f.norm(b, 4)));
    CHECK(f.trace(f.add(a, b), 3) == f.add(f.trace(a, 3), f.trace(b, 3)));
  }
}

TEST_CASE("norm equation round-trips for every subfield element") {
  Rng rng(7);
  for (auto [p, k, m] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 2, 1}, {3, 2, 1}, {2, 4, 2}, {2, 6, 3}, {2, 6, 2}, {5, 2, 1}, {2, 6, 1}}) {
    const Field f = Field::canonical(p, k);
    for (std::uint32_t v = 1; v < f.order(); ++v) {
      const Elem mu{v};
      if (!f.is_in_subfield(mu, m)) continue;
      const Elem nu = solve_norm_equation(f, m, mu, rng);
      REQUIRE(f.norm(nu, m) == mu);
    }
  }
  // GF(9)/GF(3), mu = 2: nu of order 8 with nu^4 = 2
  const Field f9 = Field::canonical(3, 2);
  const Elem nu = solve_norm_equation(f9, 1, Elem{2}, rng);
  CHECK(f9.multiplicative_order(nu) == 8);
  CHECK(f9.pow(nu, 4) == Elem{2});
  CHECK(code_of([&] { solve_norm_equation(f9, 1, f9.zero(), rng); }) == ErrorCode::ZeroInput);
  CHECK(code_of([&] { solve_norm_equation(f9, 1, Elem{3}, rng); }) == ErrorCode::NotInSubfield);
  // a large field goes through the same interface
  const Field big = Field::canonical(2, 30);
  for (int t = 0; t < 20; ++t) {
    const Elem mu = big.norm(big.random_nonzero(rng), 5);
    CHECK(big.norm(solve_norm_equation(big, 5, mu, rng), 5) == mu);
  }
}

TEST_CASE("unique p-th roots in characteristic p") {
  const Field f3 = Field::canonical(3, 1);
  CHECK(pth_root_unique(f3, Elem{2}, 3) == Elem{2});
  CHECK(pth_root_unique(f3, Elem{1}, 3) == Elem{1});
  const Field f9 = Field::canonical(3, 2);
  const Elem nu = pth_root_unique(f9, Elem{3}, 3);
  CHECK(f9.pow(nu, 3) == Elem{3});
  CHECK(nu == f9.frobenius(Elem{3}, 1));
  CHECK(code_of([&] { pth_root_unique(f9, Elem{3}, 2); }) == ErrorCode::WrongCharacteristic);
  CHECK(code_of([&] { pth_root_unique(f9, f9.zero(), 3); }) == ErrorCode::ZeroInput);
}

TEST_CASE("p-th roots away from the characteristic") {
  SUBCASE("seventh roots of 1 over GF(2)") {
    const auto r = pth_roots_split(Field::canonical(2, 1), Elem{1}, 7);
    CHECK(r.splitting_field.order() == 8);
    REQUIRE(r.placed.size() == 7);
    CHECK(r.placed[0].field.order() == 2);
    CHECK(r.placed[0].value == Elem{1});
    for (std::size_t i = 1; i < 7; ++i) CHECK(r.placed[i].field.order() == 8);
  }
  SUBCASE("cube roots of 1 over GF(4)") {
    const auto r = pth_roots_split(Field::canonical(2, 2), Elem{1}, 3);
    CHECK(r.splitting_field.order() == 4);
    CHECK(std::set<Elem>(r.roots.begin(), r.roots.end()) == std::set<Elem>{Elem{1}, Elem{2}, Elem{3}});
  }
  SUBCASE("square roots of 2 over GF(3)") {
    const auto r = pth_roots_split(Field::canonical(3, 1), Elem{2}, 2);
    CHECK(r.splitting_field.poly() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(std::set<Elem>(r.roots.begin(), r.roots.end()) == std::set<Elem>{Elem{3}, Elem{6}});
  }
  SUBCASE("properties over a range of inputs") {
    for (auto [p, k, r] : std::vector<std::tuple<std::uint32_t, unsigned, std::uint32_t>>{
             {2, 1, 3}, {2, 2, 3}, {2, 3, 7}, {3, 1, 7}, {5, 1, 3}, {7, 1, 3}, {2, 2, 5}, {3, 2, 2}}) {
      const Field e = Field::canonical(p, k);
      for (std::uint32_t v = 1; v < e.order(); ++v) {
        const Elem mu{v};
        const auto out = pth_roots_split(e, mu, r);
        const Field& big = out.splitting_field;
        const Elem mu_big = subfield_embed(e, big, mu);
        CHECK(std::set<Elem>(out.roots.begin(), out.roots.end()).size() == r);
        for (Elem nu : out.roots) CHECK(big.pow(nu, r) == mu_big);
        for (const auto& pr : out.placed) CHECK(pr.field.pow(pr.value, r) == subfield_embed(e, pr.field, mu));
        // no smaller extension holds all roots
        const unsigned deg = big.degree() / k;
        for (unsigned s = 1; s < deg; ++s) {
          if (deg % s) continue;
          const Field mid = Field::canonical(p, k * s);
          const Elem mu_mid = subfield_embed(e, mid, mu);
          unsigned count = 0;
          for (std::uint32_t w = 1; w < mid.order(); ++w)
            if (mid.pow(Elem{w}, r) == mu_mid) ++count;
          CHECK(count < r);
        }
      }
    }
  }
  CHECK(code_of([] { pth_roots_split(Field::canonical(2, 2), Elem{1}, 2); }) == ErrorCode::SameCharacteristic);
  CHECK(code_of([] { pth_roots_split(Field::canonical(2, 2), Elem{0}, 3); }) == ErrorCode::ZeroInput);
}

TEST_CASE("canonical embeddings") {
  const Field f2 = Field::canonical(2, 1), f4 = Field::canonical(2, 2), f16 = Field::canonical(2, 4);
  CHECK(subfield_embed(f2, f4, Elem{1}) == Elem{1});
  CHECK(f16.multiplicative_order(subfield_embed(f4, f16, Elem{2})) == 3);
  CHECK(!is_in_subfield(f4, 1, Elem{2}));
  CHECK(is_in_subfield(f4, 1, Elem{1}));
  CHECK(code_of([&] { Embedding::get(Field::canonical(2, 3), f16); }) == ErrorCode::NotASubfield);
  CHECK(code_of([&] { Embedding::get(Field::canonical(3, 1), f16); }) == ErrorCode::NotASubfield);

  for (auto [p, m, k] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 2, 6}, {2, 3, 6}, {3, 2, 4}, {2, 4, 8}, {5, 1, 2}, {2, 2, 4}}) {
    const Field small = Field::canonical(p, m), big = Field::canonical(p, k);
    const auto emb = Embedding::get(small, big);
    // the root is the least encoding of a root of the small polynomial
    const auto ref = naive(big);
    std::uint64_t least = 0;
    for (std::uint64_t v = 0; v < big.order() && !least; ++v) {
      std::uint64_t acc = 0, pw = 1;
      for (auto c : small.poly()) {
        acc = ref.add(acc, ref.mul(c, pw));
        pw = ref.mul(pw, v);
      }
      if (acc == 0) least = v;
    }
    CHECK(emb->root().value == least);
    for (std::uint32_t a = 0; a < small.order(); ++a) {
      for (std::uint32_t b = 0; b < small.order(); ++b) {
        REQUIRE(emb->up(small.mul(Elem{a}, Elem{b})) == big.mul(emb->up(Elem{a}), emb->up(Elem{b})));
        REQUIRE(emb->up(small.add(Elem{a}, Elem{b})) == big.add(emb->up(Elem{a}), emb->up(Elem{b})));
      }
      CHECK(emb->down(emb->up(Elem{a})) == Elem{a});
    }
    if (m < k) {
      std::uint32_t outside = 0;
      while (big.is_in_subfield(Elem{outside}, m)) ++outside;
      CHECK(code_of([&] { emb->down(Elem{outside}); }) == ErrorCode::NotInSubfield);
    }
  }
}

TEST_CASE("discrete logarithms") {
  const Field f = Field::canonical(2, 20);
  const Elem g = f.primitive_element();
  const std::uint64_t n = f.order() - 1;
  CHECK(f.multiplicative_order(g) == n);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const std::uint64_t e = uniform_below(rng, n);
    const auto l = discrete_log(f, g, f.pow(g, static_cast<std::int64_t>(e)), n);
    REQUIRE(l.has_value());
    CHECK(*l == e);
  }
  // 3 is not a power of an element of order 5
  const Elem h = f.pow(g, static_cast<std::int64_t>(n / 5));
  CHECK(!discrete_log(f, h, f.pow(g, 3), 5).has_value());
}

TEST_CASE("canonical fields are deterministic") {
  for (unsigned k = 1; k <= 8; ++k) CHECK(Field::create(2, k).poly() == Field::create(2, k).poly());
  CHECK(Field::canonical(3, 5).poly() == Field::create(3, 5).poly());
}
