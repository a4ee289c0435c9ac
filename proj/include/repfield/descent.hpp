#pragma once

// Rewriting an absolutely irreducible representation over GF(p^k) into a
// subfield GF(p^m). With a = x -> x^(p^m):
//   C^{-1} R(g) C = R(g)^a            (C unique up to scalar)
//   C C^a ... C^(a^(t-1)) = mu I      (t = k/m, mu in the subfield)
//   N(nu) = mu,  C' = nu^{-1} C       (now of norm one)
//   C' = A (A^a)^{-1}                 (Hilbert 90)
// and A^{-1} R(g) A has every entry fixed by a.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repfield/rep.hpp"

namespace repfield {

struct DescentCertificate {
  unsigned m;          // target subfield degree
  Matrix c;            // intertwiner from R to R^a
  Elem mu;             // semilinear norm of c
  Elem nu;             // N(nu) = mu
  Matrix a;            // nu^{-1} c = a (a^a)^{-1}
  std::uint64_t seed;  // replaying descend() with this seed reproduces c, mu, nu, a
  unsigned trials;     // Hilbert 90 attempts used
};

struct DescentResult {
  DescentCertificate certificate;
  Representation rep;  // over the canonical GF(p^m)
};

/// nullopt when no intertwiner between R and R^a exists, i.e. R cannot be
/// written over GF(p^m). Throws NotAbsolutelyIrreducible, NotADivisor,
/// PreconditionFailed (m not a proper divisor) or RetryLimitExceeded.
std::optional<DescentResult> descend(const Representation& r, unsigned m, std::uint64_t seed);

struct MinimalFieldResult {
  Representation rep;
  std::vector<Representation> sources;  // input of each step
  std::vector<DescentCertificate> chain;
};

/// Descends one prime index at a time (k -> k/q, smallest q first) until no
/// maximal subfield admits a rewrite.
MinimalFieldResult minimal_field(const Representation& r, std::uint64_t seed);

/// Replays every claim in a certificate against its source representation
/// and, when given, the rewritten one. Returns the first failing check.
std::optional<std::string> check_certificate(const Representation& source, const DescentCertificate& cert,
                                             const std::optional<Representation>& target = std::nullopt);

}  // namespace repfield
