#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "repfield/pcgroup.hpp"

using namespace repfield;
using support::code_of;

namespace {

PcPresentation load(const std::string& name) { return PcPresentation::parse(support::read_data(name + ".pc")); }

// Image of g_1^{e_1} ... g_n^{e_n} in the permutation model.
oracle::Perm image(const oracle::GroupModel& g, const NormalWord& w) {
  oracle::Perm out = oracle::perm_identity(g.degree);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::uint32_t e = 0; e < w[i]; ++e) out = oracle::compose(out, g.gens[i]);
  return out;
}

}  // namespace

TEST_CASE("parsing the S3 presentation") {
  const PcPresentation s3 = load("s3");
  CHECK(s3.length() == 2);
  CHECK(s3.primes() == std::vector<std::uint32_t>{2, 3});
  CHECK(s3.order() == 6);
  CHECK(s3.order(2) == 3);
  CHECK(s3.power_word(1) == NormalWord{0, 0});
  CHECK(s3.conj_word(1, 2) == NormalWord{0, 2});
  // g2 g1 = g1 g2^2
  CHECK(s3.collect({{2, 1}, {1, 1}}) == NormalWord{1, 2});
  CHECK(s3.collect({{1, 2}}) == NormalWord{0, 0});
  CHECK(s3.collect({{2, -1}}) == NormalWord{0, 2});
  CHECK(s3.inverse(NormalWord{1, 1}) == NormalWord{1, 1});
  CHECK(s3.conjugate(1, NormalWord{0, 1}) == NormalWord{0, 2});
  CHECK(code_of([&] { s3.conjugate(1, NormalWord{1, 0}); }) == ErrorCode::NotInSubgroup);
}

TEST_CASE("text round trip") {
  for (const char* name : {"s3", "q8", "c7", "f21", "d4", "c6", "c3wrc2", "trivial"}) {
    CAPTURE(name);
    const PcPresentation pc = load(name);
    const PcPresentation again = PcPresentation::parse(pc.to_text());
    CHECK(again.to_text() == pc.to_text());
    CHECK(again.order() == pc.order());
  }
}

TEST_CASE("parse errors") {
  const auto parse = [](const char* text) { return code_of([&] { PcPresentation::parse(text); }); };
  CHECK(parse("primes 2\n") == ErrorCode::SyntaxError);
  CHECK(parse("pcgroup n=2\nprimes 2 4\n") == ErrorCode::NotPrime);
  CHECK(parse("pcgroup n=2\nprimes 2\n") == ErrorCode::SyntaxError);
  CHECK(parse("pcgroup n=2\nprimes 2 3\npow 3 = 1\n") == ErrorCode::IndexOutOfRange);
  CHECK(parse("pcgroup n=2\nprimes 2 3\nconj 2 1 = g1\n") == ErrorCode::IndexOutOfRange);
  CHECK(parse("pcgroup n=2\nprimes 2 3\npow 1 = g1\n") == ErrorCode::IndexOutOfRange);
  CHECK(parse("pcgroup n=2\nprimes 2 3\npow 1 = g2\npow 1 = 1\n") == ErrorCode::SyntaxError);
  CHECK(parse("pcgroup n=2\nprimes 2 3\nconj 1 2 = h2\n") == ErrorCode::SyntaxError);
  CHECK(parse("pcgroup n=2\nprimes 2 3\nfrob 1 2\n") == ErrorCode::SyntaxError);
  CHECK(parse("pcgroup n=2\nprimes 2 3\npow 1 = g5\n") == ErrorCode::IndexOutOfRange);
}

TEST_CASE("multiplication is a homomorphism onto the permutation models") {
  for (const auto& model : oracle::fixture_models()) {
    CAPTURE(model.name);
    const PcPresentation pc = load(model.name);
    const auto elems = pc.elements();
    const auto target = oracle::closure(model.gens, model.degree);
    REQUIRE(elems.size() == pc.order());
    CHECK(target.size() == pc.order());
    std::set<oracle::Perm> images;
    for (const auto& a : elems) {
      images.insert(image(model, a));
      CHECK(image(model, pc.inverse(a)) == oracle::perm_inverse(image(model, a)));
      for (const auto& b : elems)
        CHECK(image(model, pc.multiply(a, b)) == oracle::compose(image(model, a), image(model, b)));
    }
    CHECK(images == target);
  }
}

TEST_CASE("collection of arbitrary words matches the models") {
  Rng rng(21);
  for (const auto& model : oracle::fixture_models()) {
    CAPTURE(model.name);
    const PcPresentation pc = load(model.name);
    for (int trial = 0; trial < 200; ++trial) {
      Word w;
      oracle::Perm expect = oracle::perm_identity(model.degree);
      const std::size_t len = uniform_below(rng, 8);
      for (std::size_t t = 0; t < len; ++t) {
        const std::size_t gen = 1 + uniform_below(rng, pc.length());
        const std::int64_t e = static_cast<std::int64_t>(uniform_below(rng, 11)) - 5;
        w.push_back({gen, e});
        const oracle::Perm g = e < 0 ? oracle::perm_inverse(model.gens[gen - 1]) : model.gens[gen - 1];
        for (std::int64_t r = 0; r < std::abs(e); ++r) expect = oracle::compose(expect, g);
      }
      CHECK(image(model, pc.collect(w)) == expect);
    }
  }
}

TEST_CASE("index order, subgroups and powers") {
  const PcPresentation q8 = load("q8");
  const auto elems = q8.elements();
  for (std::uint64_t i = 0; i < elems.size(); ++i) {
    CHECK(q8.index_of(elems[i]) == i);
    CHECK(q8.word_at(i) == elems[i]);
  }
  CHECK(q8.word_at(1) == NormalWord{0, 0, 1});  // e_1 most significant
  CHECK(q8.elements(2).size() == 4);
  CHECK(q8.elements(3).size() == 2);
  for (const auto& h : q8.elements(2)) CHECK(q8.in_subgroup(h, 2));
  CHECK(!q8.in_subgroup(NormalWord{1, 0, 0}, 2));
  // i j i^{-1} = -j
  CHECK(q8.conjugate(1, NormalWord{0, 1, 0}) == NormalWord{0, 1, 1});
  const NormalWord i = q8.generator(1);
  CHECK(q8.pow(i, 2) == NormalWord{0, 0, 1});
  CHECK(q8.pow(i, 4) == q8.identity());
  CHECK(q8.pow(i, -1) == q8.inverse(i));
}

TEST_CASE("consistency checks") {
  for (const char* name : {"s3", "q8", "c7", "f21", "d4", "c6", "c3wrc2"}) {
    CAPTURE(name);
    const auto report = enumerate_and_check(load(name));
    CHECK(report.full_associativity);
    CHECK(report.order == load(name).order());
  }
  const auto trivial = enumerate_and_check(load("trivial"));
  CHECK(trivial.order == 1);
  CHECK(code_of([] { enumerate_and_check(load("s3_corrupt")); }) == ErrorCode::InconsistentPresentation);
  // g1^2 = g2 in C2 x C3 without the conjugate relation clashing: this is C6
  const auto c6 = PcPresentation::parse("pcgroup n=2\nprimes 2 3\npow 1 = g2\n");
  CHECK(enumerate_and_check(c6).order == 6);
  CHECK(c6.pow(c6.generator(1), 6) == c6.identity());
  CHECK(c6.pow(c6.generator(1), 2) == NormalWord{0, 1});
}

TEST_CASE("large groups use sampled associativity and the order cap") {
  // elementary abelian 2^10
  std::string text = "pcgroup n=10\nprimes";
  for (int i = 0; i < 10; ++i) text += " 2";
  const auto report = enumerate_and_check(PcPresentation::parse(text + "\n"));
  CHECK(report.order == 1024);
  CHECK(!report.full_associativity);
  CHECK(report.triples_checked == 10000);
  std::string big = "pcgroup n=17\nprimes";
  for (int i = 0; i < 17; ++i) big += " 2";
  CHECK(code_of([&] { enumerate_and_check(PcPresentation::parse(big + "\n")); }) == ErrorCode::CapExceeded);
}
