#include "repfield/descent.hpp"

#include "repfield/error.hpp"
#include "repfield/random.hpp"

namespace repfield {

namespace {

void require_proper_divisor(const Field& field, unsigned m) {
  const unsigned k = field.degree();
  if (m == 0 || k % m) throw Error(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(k));
  if (m == k) throw Error(ErrorCode::PreconditionFailed, "target field equals the source field");
}

}  // namespace

std::optional<DescentResult> descend(const Representation& r, unsigned m, std::uint64_t seed) {
  const Field& field = r.field();
  require_proper_divisor(field, m);
  if (!is_absolutely_irreducible(r))
    throw Error(ErrorCode::NotAbsolutelyIrreducible, "descent needs an absolutely irreducible representation");

  const auto c = find_intertwiner(r, rep_frobenius(r, m));
  if (!c) return std::nullopt;

  Rng rng(seed);
  const auto alpha = SemilinearMap::over_subfield(field, m);
  const Elem mu = semilinear_norm_scalar(*c, alpha);
  const Elem nu = solve_norm_equation(field, m, mu, rng);
  const Matrix normalized = field.inv(nu) * *c;
  auto h90 = hilbert90(normalized, alpha, rng);

  const Field small = Field::canonical(field.characteristic(), m);
  Representation out = restrict_to(conjugate_by(r, h90.a), small);
  return DescentResult{DescentCertificate{m, *c, mu, nu, std::move(h90.a), seed, h90.trials}, std::move(out)};
}

MinimalFieldResult minimal_field(const Representation& r, std::uint64_t seed) {
  if (!is_absolutely_irreducible(r))
    throw Error(ErrorCode::NotAbsolutelyIrreducible, "descent needs an absolutely irreducible representation");
  MinimalFieldResult result{r, {}, {}};
  for (unsigned step = 0;; ++step) {
    const unsigned k = result.rep.field().degree();
    bool moved = false;
    for (auto q : prime_factors(k)) {
      const unsigned m = k / static_cast<unsigned>(q);
      auto step_result = descend(result.rep, m, derive_seed(seed, "minfield", step, m));
      if (!step_result) continue;
      result.sources.push_back(result.rep);
      result.chain.push_back(std::move(step_result->certificate));
      result.rep = std::move(step_result->rep);
      moved = true;
      break;
    }
    if (!moved) return result;
  }
}

std::optional<std::string> check_certificate(const Representation& source, const DescentCertificate& cert,
                                             const std::optional<Representation>& target) {
  const Field& field = source.field();
  const unsigned k = field.degree();
  if (cert.m == 0 || k % cert.m || cert.m == k) return "m is not a proper divisor of the field degree";
  const std::size_t d = source.degree();
  for (const Matrix* mat : {&cert.c, &cert.a})
    if (!(mat->field() == field) || mat->rows() != d || mat->cols() != d) return "certificate matrix has wrong shape or field";
  if (!field.contains(cert.mu) || !field.contains(cert.nu)) return "scalar out of range";

  const auto c_inv = try_inverse(cert.c);
  if (!c_inv) return "C is singular";
  for (std::size_t i = 0; i < source.size(); ++i)
    if (!(*c_inv * source.gen(i) * cert.c == frobenius(source.gen(i), cert.m)))
      return "C does not intertwine generator " + std::to_string(i + 1) + " with its Frobenius twist";

  const auto alpha = SemilinearMap::over_subfield(field, cert.m);
  const Matrix norm = semilinear_product(cert.c, alpha.shift, alpha.order);
  if (!(norm == Matrix::scalar(field, d, cert.mu))) return "semilinear norm of C is not mu";
  if (!field.is_in_subfield(cert.mu, cert.m)) return "mu is not in the subfield";
  if (cert.nu == field.zero() || field.norm(cert.nu, cert.m) != cert.mu) return "norm of nu is not mu";

  const auto a_inv = try_inverse(cert.a);
  if (!a_inv) return "A is singular";
  const Matrix normalized = field.inv(cert.nu) * cert.c;
  if (!(normalized * frobenius(cert.a, cert.m) == cert.a)) return "C/nu differs from A (A^a)^{-1}";

  const Representation rewritten = conjugate_by(source, cert.a);
  if (cert.m % entry_field(rewritten))
    return "A^{-1} R A has entries outside the subfield";
  if (target) {
    if (target->field().degree() != cert.m || target->field().characteristic() != field.characteristic())
      return "rewritten representation is over the wrong field";
    if (target->size() != source.size() || target->degree() != d) return "rewritten representation has wrong shape";
    for (std::size_t i = 0; i < source.size(); ++i)
      if (!(embed(target->gen(i), field) == rewritten.gen(i)))
        return "rewritten generator " + std::to_string(i + 1) + " differs from A^{-1} R A";
  }
  return std::nullopt;
}

}  // namespace repfield
