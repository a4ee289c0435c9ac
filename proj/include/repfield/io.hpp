#pragma once

// Line-oriented ASCII formats. Blank lines and text after '#' are ignored.
//
//   field p=<p> k=<k> poly=<c0,...,ck>
//   matrix r=<rows> c=<cols>          followed by <rows> lines of integers
//   gens n=<n> d=<d>                  followed by n matrix blocks
//
// A representation file is a field header, a gens line and its matrices. A
// certificate file is
//
//   certificate steps=<N> seed=<s>
//   step <i>                          (N times)
//     <representation>                source of the step
//     m <m>
//     mu <mu>
//     nu <nu>
//     seed <seed>
//     trials <t>
//     C
//     <matrix>
//     A
//     <matrix>
//   end
//   result
//   <representation>
//
// A manifest written by the irreps command is
//
//   irreps char=<p> order=<|G|> count=<N> seed=<s>
//   presentation <file>
//   entry <i> d=<d> p=<p> k=<k> provenance=<kind> parent=<j> file=<file>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repfield/descent.hpp"
#include "repfield/gf.hpp"
#include "repfield/matrix.hpp"
#include "repfield/rep.hpp"

namespace repfield {

std::string field_header(const Field& field);
std::string matrix_to_text(const Matrix& m);
std::string rep_to_text(const Representation& r);

/// Throws SyntaxError (or the field/matrix validation errors).
Representation parse_rep(std::string_view text, std::optional<GroupRef> group = std::nullopt);

struct CertificateChain {
  std::uint64_t seed = 0;
  std::vector<Representation> sources;
  std::vector<DescentCertificate> steps;
  Representation result;
};

std::string certificate_to_text(const CertificateChain& chain);
CertificateChain parse_certificate(std::string_view text);
/// Replays each step; the target of step i is the source of step i+1 and the
/// last target is the result.
std::optional<std::string> check_chain(const CertificateChain& chain);

struct ManifestEntry {
  std::size_t index = 0;
  std::size_t degree = 0;
  std::uint32_t p = 0;
  unsigned k = 0;
  std::string provenance;
  std::optional<std::size_t> parent;
  std::string file;
};

struct Manifest {
  std::uint32_t characteristic = 0;
  std::uint64_t order = 0;
  std::uint64_t seed = 0;
  std::string presentation;
  std::vector<ManifestEntry> entries;
};

std::string manifest_to_text(const Manifest& m);
Manifest parse_manifest(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace repfield
