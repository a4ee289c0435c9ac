// repfield: descent of representations to smaller fields and irreducible
// representations of soluble groups from power-conjugate presentations.
//
// Exit codes: 0 ok, 1 internal error, 2 bad input, 3 not writable over the
// requested subfield, 4 precondition failed, 5 inconsistent presentation,
// 6 verification failed.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "repfield/descent.hpp"
#include "repfield/error.hpp"
#include "repfield/io.hpp"
#include "repfield/irrbuild.hpp"
#include "repfield/pcgroup.hpp"
#include "repfield/rep.hpp"

namespace fs = std::filesystem;
using namespace repfield;

namespace {

enum Exit : int { kOk = 0, kInternal = 1, kInput = 2, kNotWritable = 3, kPrecondition = 4, kInconsistent = 5, kVerify = 6 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::NotPrime:
    case ErrorCode::ReduciblePolynomial:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::FieldTooLarge:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::FieldMismatch:
    case ErrorCode::Singular:
    case ErrorCode::NotInSubgroup:
      return kInput;
    case ErrorCode::NotAbsolutelyIrreducible:
    case ErrorCode::NotADivisor:
    case ErrorCode::PreconditionFailed:
    case ErrorCode::CapExceeded:
    case ErrorCode::WrongCharacteristic:
      return kPrecondition;
    case ErrorCode::InconsistentPresentation:
      return kInconsistent;
    default:
      return kInternal;
  }
}

struct Options {
  bool quiet = false;
};

void say(const Options& o, const std::string& text) {
  if (!o.quiet) std::cout << text;
}

std::string field_name(const Field& f) {
  return "GF(" + std::to_string(f.characteristic()) + (f.degree() > 1 ? "^" + std::to_string(f.degree()) : "") + ")";
}

fs::path default_cert(const fs::path& out) { return fs::path(out.string() + ".cert"); }

int cmd_descend(const Options& o, const std::string& input, unsigned m, std::uint64_t seed, const std::string& out,
                std::string cert) {
  const Representation r = parse_rep(read_file(input));
  auto result = descend(r, m, derive_seed(seed, "descend"));
  if (!result) {
    std::cerr << "not writable over " << field_name(Field::canonical(r.field().characteristic(), m))
              << ": no intertwiner between the representation and its Frobenius twist\n";
    return kNotWritable;
  }
  if (cert.empty()) cert = default_cert(out).string();
  write_file(out, rep_to_text(result->rep));
  write_file(cert, certificate_to_text(CertificateChain{seed, {r}, {result->certificate}, result->rep}));
  say(o, "descended " + field_name(r.field()) + " -> " + field_name(result->rep.field()) + "; wrote " + out + " and " +
             cert + "\n");
  return kOk;
}

int cmd_minfield(const Options& o, const std::string& input, std::uint64_t seed, const std::string& out,
                 std::string cert) {
  const Representation r = parse_rep(read_file(input));
  auto result = minimal_field(r, derive_seed(seed, "minfield"));
  if (cert.empty()) cert = default_cert(out).string();
  write_file(out, rep_to_text(result.rep));
  write_file(cert, certificate_to_text(CertificateChain{seed, result.sources, result.chain, result.rep}));
  say(o, "minimal field " + field_name(result.rep.field()) + " after " + std::to_string(result.chain.size()) +
             " step(s); wrote " + out + " and " + cert + "\n");
  return kOk;
}

int cmd_irreps(const Options& o, const std::string& input, std::uint32_t characteristic, std::uint64_t seed,
               const std::string& outdir) {
  auto pc = std::make_shared<const PcPresentation>(PcPresentation::parse(read_file(input)));
  const IrrepTable table = irreps(pc, characteristic, seed);
  fs::create_directories(outdir);
  Manifest manifest{characteristic, pc->order(), seed, "group.pc", {}};
  write_file(fs::path(outdir) / manifest.presentation, pc->to_text());
  std::string summary = "  #  degree  field\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    const std::string file = "rep_" + std::to_string(i + 1) + ".rep";
    write_file(fs::path(outdir) / file, rep_to_text(e.rep));
    std::optional<std::size_t> parent;
    if (e.parent) parent = *e.parent + 1;
    manifest.entries.push_back(ManifestEntry{i + 1, e.rep.degree(), e.rep.field().characteristic(),
                                             e.rep.field().degree(), e.provenance, parent, file});
    char line[96];
    std::snprintf(line, sizeof line, "%3zu  %6zu  %s\n", i + 1, e.rep.degree(), field_name(e.rep.field()).c_str());
    summary += line;
  }
  write_file(fs::path(outdir) / "manifest.txt", manifest_to_text(manifest));
  say(o, std::to_string(table.entries.size()) + " absolutely irreducible representation(s) of a group of order " +
             std::to_string(pc->order()) + " in characteristic " + std::to_string(characteristic) + "\n" + summary);
  return kOk;
}

// ---- verify ------------------------------------------------------------------

std::optional<std::string> verify_manifest(const fs::path& path) {
  const Manifest m = parse_manifest(read_file(path));
  const fs::path dir = path.parent_path();
  auto pc = std::make_shared<const PcPresentation>(PcPresentation::parse(read_file(dir / m.presentation)));
  try {
    enumerate_and_check(*pc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InconsistentPresentation) return std::string("presentation: ") + e.what();
    throw;
  }
  if (pc->order() != m.order) return "group order differs from the manifest";
  if (!is_prime(m.characteristic)) return "characteristic is not prime";
  std::vector<Representation> reps;
  std::uint64_t sum = 0;
  for (const auto& e : m.entries) {
    const std::string tag = "entry " + std::to_string(e.index) + ": ";
    Representation r = parse_rep(read_file(dir / e.file), GroupRef{pc, 1});
    if (r.degree() != e.degree || r.field().characteristic() != e.p || r.field().degree() != e.k)
      return tag + "degree or field differs from the manifest";
    if (e.p != m.characteristic) return tag + "wrong characteristic";
    if (!satisfies_relations(r)) return tag + "a relation of the presentation fails";
    if (!is_absolutely_irreducible(r)) return tag + "not absolutely irreducible";
    if (character_field(r) != r.field().degree()) return tag + "not written over its character field";
    for (std::size_t t = 0; t < reps.size(); ++t)
      if (reps[t].field() == r.field() && reps[t].degree() == r.degree() && equivalent(reps[t], r))
        return tag + "equivalent to entry " + std::to_string(t + 1);
    sum += r.degree() * r.degree();
    reps.push_back(std::move(r));
  }
  if (m.order % m.characteristic && sum != m.order)
    return "degrees squared sum to " + std::to_string(sum) + ", not the group order";
  return std::nullopt;
}

std::optional<std::string> verify_path(const fs::path& path) {
  const std::string text = read_file(path);
  std::string first;
  for (std::size_t pos = 0; pos < text.size();) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos) {
      first = line.substr(b, line.find_first_of(" \t\r", b) - b);
      break;
    }
    pos = end + 1;
  }
  if (first == "certificate") return check_chain(parse_certificate(text));
  if (first == "irreps") return verify_manifest(path);
  if (first == "field") {
    parse_rep(text);
    return std::nullopt;
  }
  if (first == "pcgroup") {
    try {
      enumerate_and_check(PcPresentation::parse(text));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InconsistentPresentation) return e.what();
      throw;
    }
    return std::nullopt;
  }
  throw Error(ErrorCode::SyntaxError, "unrecognized file type");
}

int cmd_verify(const Options& o, const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (auto why = verify_path(p)) {
      std::cerr << p << ": FAILED: " << *why << "\n";
      return kVerify;
    }
    say(o, p + ": ok\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewrite representations over minimal fields and build irreducible representations of soluble groups"};
  app.require_subcommand(1);
  app.footer(
      "File formats (blank lines and '#' comments ignored):\n"
      "  field p=<p> k=<k> poly=<c0,...,ck>   field header, coefficients constant term first\n"
      "  gens n=<n> d=<d>                     followed by n matrix blocks\n"
      "  matrix r=<r> c=<c>                   followed by r lines of c integer-encoded elements\n"
      "  pcgroup n=<n> / primes <p1> ... <pn> / pow <i> = <word> / conj <i> <j> = <word>\n"
      "      <word> is a list of g<k>^<e> tokens, or 1 for the empty word\n"
      "Exit codes: 0 ok, 2 bad input, 3 not writable, 4 precondition failed,\n"
      "            5 inconsistent presentation, 6 verification failed");
  Options opts;
  app.add_flag("-q,--quiet", opts.quiet, "Suppress summaries");

  std::string input, out, cert, outdir;
  unsigned m = 0;
  std::uint64_t seed = 1;
  std::uint32_t characteristic = 0;
  std::vector<std::string> paths;

  auto* descend_cmd = app.add_subcommand("descend", "Rewrite a representation over GF(p^m)");
  descend_cmd->add_option("rep", input, "Representation file")->required()->check(CLI::ExistingFile);
  descend_cmd->add_option("--m", m, "Target subfield degree")->required();
  descend_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  descend_cmd->add_option("--out", out, "Output representation file")->required();
  descend_cmd->add_option("--cert", cert, "Certificate file (default <out>.cert)");

  auto* minfield_cmd = app.add_subcommand("minfield", "Rewrite a representation over its minimal field");
  minfield_cmd->add_option("rep", input, "Representation file")->required()->check(CLI::ExistingFile);
  minfield_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  minfield_cmd->add_option("--out", out, "Output representation file")->required();
  minfield_cmd->add_option("--cert", cert, "Certificate chain file (default <out>.cert)");

  auto* irreps_cmd = app.add_subcommand("irreps", "All absolutely irreducible representations of a PC group");
  irreps_cmd->add_option("pc", input, "Presentation file")->required()->check(CLI::ExistingFile);
  irreps_cmd->add_option("--char", characteristic, "Characteristic")->required();
  irreps_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  irreps_cmd->add_option("--outdir", outdir, "Output directory")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Re-check certificates, manifests, presentations");
  verify_cmd->add_option("paths", paths, "Files to check")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*descend_cmd) return cmd_descend(opts, input, m, seed, out, cert);
    if (*minfield_cmd) return cmd_minfield(opts, input, seed, out, cert);
    if (*irreps_cmd) return cmd_irreps(opts, input, characteristic, seed, outdir);
    if (*verify_cmd) return cmd_verify(opts, paths);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
