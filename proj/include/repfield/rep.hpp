#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "repfield/gf.hpp"
#include "repfield/matrix.hpp"
#include "repfield/pcgroup.hpp"

namespace repfield {

/// Ties generator matrices to g_level, ..., g_n of a presentation.
struct GroupRef {
  std::shared_ptr<const PcPresentation> pc;
  std::size_t level = 1;
};

class Representation {
 public:
  /// Validates shapes, fields and invertibility. With a group reference the
  /// number of matrices must be n - level + 1.
  Representation(Field field, std::size_t degree, std::vector<Matrix> gens,
                 std::optional<GroupRef> group = std::nullopt);

  const Field& field() const { return field_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Matrix>& gens() const { return gens_; }
  const Matrix& gen(std::size_t i) const { return gens_.at(i); }
  const std::optional<GroupRef>& group() const { return group_; }

  /// Image of a normal word lying in G_level.
  Matrix evaluate(const NormalWord& w) const;

 private:
  Field field_;
  std::size_t degree_;
  std::vector<Matrix> gens_;
  std::optional<GroupRef> group_;
};

/// Every power and conjugate relation of the attached presentation holds.
bool satisfies_relations(const Representation& r);

/// Dimension of {X : X R(g) = R(g) X for all generators g}.
std::size_t centralizer_dimension(const Representation& r);

/// The matrices generate all of Mat(d) as an algebra (Burnside). This is the
/// test used everywhere; a scalar centralizer alone does not imply it when
/// the module is not semisimple.
bool is_absolutely_irreducible(const Representation& r);

/// C with C^{-1} R1(g) C = R2(g), normalized so that its first nonzero entry
/// in row-major order is 1; nullopt when the representations are not
/// equivalent. Throws IntegrityError if the solution space has dimension > 1.
std::optional<Matrix> find_intertwiner(const Representation& r1, const Representation& r2);

bool equivalent(const Representation& r1, const Representation& r2);

/// Entrywise x -> x^(p^m) on every generator.
Representation rep_frobenius(const Representation& r, std::int64_t m);

/// B^{-1} R B.
Representation conjugate_by(const Representation& r, const Matrix& b);

Representation embed(const Representation& r, const Field& big);
Representation restrict_to(const Representation& r, const Field& small);

Representation direct_sum(const Representation& r1, const Representation& r2);

/// Degree over the prime field of the field generated by all character
/// values. Enumerates the attached group, or the matrix group generated by
/// the matrices when there is none. Throws CapExceeded past `element_cap`.
unsigned character_field(const Representation& r, std::uint64_t element_cap = 100000);

/// Least m dividing the field degree with every entry of every generator
/// fixed by x -> x^(p^m).
unsigned entry_field(const Representation& r);

}  // namespace repfield
