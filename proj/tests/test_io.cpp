#include <doctest.h>

#include "support.hpp"
#include "repfield/descent.hpp"
#include "repfield/io.hpp"

using namespace repfield;
using support::code_of;

TEST_CASE("representation files round-trip") {
  for (const char* file : {"c3_gf4.rep", "q8_gf9.rep", "identity_gf16.rep", "reducible_gf3.rep", "s3_gf2.rep",
                           "s3_gf64.rep"}) {
    CAPTURE(file);
    const auto r = parse_rep(support::read_data(file));
    const std::string text = rep_to_text(r);
    const auto again = parse_rep(text);
    CHECK(rep_to_text(again) == text);
    CHECK(again.field() == r.field());
    CHECK(again.gens() == r.gens());
  }
}

TEST_CASE("the written form") {
  const Field f4 = Field::canonical(2, 2);
  CHECK(field_header(f4) == "field p=2 k=2 poly=1,1,1\n");
  CHECK(matrix_to_text(Matrix::from_rows(f4, {{0, 1}, {2, 3}})) == "matrix r=2 c=2\n0 1\n2 3\n");
  const Representation r(f4, 1, {Matrix::from_rows(f4, {{2}})});
  CHECK(rep_to_text(r) == "field p=2 k=2 poly=1,1,1\ngens n=1 d=1\nmatrix r=1 c=1\n2\n");
}

TEST_CASE("malformed representation files") {
  const auto parse = [](const char* text) { return code_of([&] { parse_rep(text); }); };
  CHECK(parse("") == ErrorCode::SyntaxError);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\n") == ErrorCode::SyntaxError);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\nmatrix r=1 c=1\n1 1\n") == ErrorCode::SyntaxError);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\nmatrix r=1 c=1\nx\n") == ErrorCode::SyntaxError);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\nmatrix r=1 c=1\n1\nextra\n") == ErrorCode::SyntaxError);
  CHECK(parse("field p=4 k=1 poly=0,1\ngens n=0 d=1\n") == ErrorCode::NotPrime);
  CHECK(parse("field p=2 k=2 poly=1,0,1\ngens n=0 d=1\n") == ErrorCode::ReduciblePolynomial);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\nmatrix r=1 c=1\n0\n") == ErrorCode::Singular);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=2\nmatrix r=1 c=1\n1\n") == ErrorCode::ShapeMismatch);
  CHECK(parse("field p=2 k=1 poly=0,1\ngens n=1 d=1\nmatrix r=1 c=1\n5\n") == ErrorCode::SyntaxError);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto r = parse_rep("# header\n\nfield p=3 k=1 poly=0,1   # GF(3)\ngens n=1 d=1\n\nmatrix r=1 c=1\n 2 \n");
  CHECK(r.gen(0) == Matrix::from_rows(r.field(), {{2}}));
}

TEST_CASE("certificate chains round-trip and replay") {
  const auto r = parse_rep(support::read_data("s3_gf64.rep"));
  const auto result = minimal_field(r, 3);
  const CertificateChain chain{3, result.sources, result.chain, result.rep};
  const std::string text = certificate_to_text(chain);
  const auto back = parse_certificate(text);
  CHECK(certificate_to_text(back) == text);
  CHECK(back.seed == 3);
  CHECK(back.steps.size() == 2);
  CHECK(!check_chain(back));

  auto broken = back;
  broken.result = parse_rep(support::read_data("s3_gf2.rep"));
  broken.result = conjugate_by(broken.result, Matrix::from_rows(broken.result.field(), {{1, 1}, {0, 1}}));
  CHECK(check_chain(broken));
  broken = back;
  broken.sources.pop_back();
  CHECK(check_chain(broken));
  CHECK(code_of([&] { parse_certificate(text.substr(0, text.size() / 2)); }) == ErrorCode::SyntaxError);
}

TEST_CASE("manifests round-trip") {
  Manifest m{5, 6, 42, "group.pc", {}};
  m.entries.push_back({1, 1, 5, 1, "extension", 1, "rep_1.rep"});
  m.entries.push_back({2, 2, 5, 1, "induction", std::nullopt, "rep_2.rep"});
  const std::string text = manifest_to_text(m);
  CHECK(text.find("parent=-") != std::string::npos);
  const Manifest back = parse_manifest(text);
  CHECK(manifest_to_text(back) == text);
  CHECK(back.entries[0].parent == 1u);
  CHECK(!back.entries[1].parent);
  CHECK(code_of([] { parse_manifest("irreps char=5 order=6 count=1 seed=1\npresentation g.pc\n"); }) ==
        ErrorCode::SyntaxError);
}
