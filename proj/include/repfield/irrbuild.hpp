#pragma once

// Absolutely irreducible representations of a soluble group G = G_1 built up
// the series G_{n+1} = 1 < G_n < ... < G_1, one prime index at a time. For
// H = G_{i+1}, a = g_i and p = p_i, a representation sigma of H either is
// stable under h -> a h a^{-1} and extends to G_i, or has an orbit of length
// p and induces irreducibly.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "repfield/pcgroup.hpp"
#include "repfield/rep.hpp"

namespace repfield {

/// sigma^a : h -> sigma(a h a^{-1}) for sigma attached to G_{i+1}, a = g_i.
Representation conjugate_rep(const Representation& sigma);

/// The extensions of an a-stable sigma to G_i: one when p is the
/// characteristic, otherwise p of them, each over E(nu) for a p-th root nu.
/// Throws NotConjugateStable.
std::vector<Representation> extend_case1(const Representation& sigma);

/// Multiplication by elements of E = GF(c^k) as p x p matrices over the
/// subfield F of index p, in the basis 1, x, ..., x^(p-1) with x the
/// generator of E. Row vectors: row j of phi(l) holds the coordinates of
/// x^j l. M is the matrix of y -> y^(c^shift), which must generate Gal(E/F).
class RegularEmbedding {
 public:
  const Field& big() const { return big_; }
  const Field& small() const { return small_; }
  unsigned prime() const { return p_; }
  unsigned shift() const { return shift_; }
  const Matrix& m() const { return m_; }

  /// Coordinates of y over F in the basis x^j.
  std::vector<Elem> coordinates(Elem y) const;
  Matrix phi(Elem y) const;
  /// Entrywise phi: a d x d matrix over E becomes a pd x pd matrix over F.
  Matrix blow_up(const Matrix& x) const;
  /// d copies of M on the diagonal.
  Matrix s(std::size_t d) const;

 private:
  friend RegularEmbedding build_regular_embedding(const Field& big, unsigned p, unsigned shift);
  RegularEmbedding(Field big, Field small, unsigned p, unsigned shift);

  Field big_;
  Field small_;
  unsigned p_;
  unsigned shift_;
  Matrix prime_inverse_;  // prime-field digits of y -> coordinates over the prime field
  Matrix m_;
};

/// shift must be a multiple of k/p not divisible by k. Checks that phi is
/// multiplicative on the generators, M^p = I and M^{-1} phi(x) M = phi(x^a).
/// Throws NotADivisor or InternalInconsistency.
RegularEmbedding build_regular_embedding(const Field& big, unsigned p, unsigned shift);

/// rho(h) = diag(sigma_0(h), ..., sigma_{p-1}(h)) and rho(a) the block cycle
/// with identities above the diagonal and sigma(a^p) in the corner, where
/// sigma_j = sigma^{a^j}.
Representation standard_induction(const Representation& sigma);

enum class InductionBranch { Plain, PlainTwisted, Descended };

struct InductionResult {
  Representation rep;
  InductionBranch branch;
  Representation standard;   // over the field of sigma
  Matrix intertwiner;        // C^{-1} rho C = standard, rho taken over the field of sigma
  // Descended branch only:
  std::optional<unsigned> shift;
  std::optional<Matrix> a;   // A with A sigma^{a'}(h) A^{-1} = sigma^a(h)
  std::optional<Elem> mu;
  std::optional<Elem> nu;
};

/// sigma^G for sigma with a free orbit of length p. When p divides the field
/// degree k and sigma twisted by the index-p Frobenius is a G-conjugate of
/// sigma, the result is written over the subfield of index p. Throws
/// OrbitNotFree.
InductionResult induce_case2(const Representation& sigma, std::uint64_t seed);

struct IrrepEntry {
  Representation rep;
  std::string provenance;  // trivial, extension, induction
  std::optional<std::size_t> parent;  // index in the table one level down
  std::vector<std::size_t> orbit;     // parent orbit under a
};

struct IrrepTable {
  std::shared_ptr<const PcPresentation> pc;
  std::size_t level;
  std::vector<IrrepEntry> entries;
};

struct IrrepOptions {
  /// Per-level assertions: absolute irreducibility, pairwise inequivalence,
  /// character field equal to the stored field, sum of d^2 when the
  /// characteristic is coprime to the order.
  bool verify = true;
};

/// Checks consistency first (InconsistentPresentation). Throws
/// InternalInconsistency if an assertion fails.
IrrepTable irreps(std::shared_ptr<const PcPresentation> pc, std::uint32_t characteristic, std::uint64_t seed,
                  const IrrepOptions& options = {});

std::string to_string(InductionBranch b);

}  // namespace repfield
