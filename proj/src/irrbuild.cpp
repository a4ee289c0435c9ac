#include "repfield/irrbuild.hpp"

#include <numeric>

#include "repfield/error.hpp"
#include "repfield/random.hpp"

namespace repfield {

namespace {

const PcPresentation& presentation_of(const Representation& sigma) {
  if (!sigma.group()) throw Error(ErrorCode::PreconditionFailed, "representation is not attached to a group");
  return *sigma.group()->pc;
}

// a = g_i and p = p_i for sigma on G_{i+1}.
std::size_t acting_level(const Representation& sigma) {
  const std::size_t level = sigma.group()->level;
  if (level < 2) throw Error(ErrorCode::PreconditionFailed, "representation already lives on G_1");
  return level - 1;
}

GroupRef lowered(const Representation& sigma) {
  return GroupRef{sigma.group()->pc, acting_level(sigma)};
}

// Image of v_i = a^p, which lies in G_{i+1}.
Matrix image_of_power(const Representation& sigma) {
  return sigma.evaluate(presentation_of(sigma).power_word(acting_level(sigma)));
}

std::vector<Representation> orbit_of(const Representation& sigma, unsigned p) {
  std::vector<Representation> out{sigma};
  for (unsigned j = 1; j < p; ++j) out.push_back(conjugate_rep(out.back()));
  return out;
}

Representation prepend_generator(const Representation& sigma, const Field& field, Matrix a,
                                 const std::vector<Matrix>& rest) {
  const std::size_t d = a.rows();
  std::vector<Matrix> gens{std::move(a)};
  gens.insert(gens.end(), rest.begin(), rest.end());
  return Representation(field, d, std::move(gens), lowered(sigma));
}

Representation induced_from_orbit(const Representation& sigma, const std::vector<Representation>& orbit) {
  const Field& f = sigma.field();
  const std::size_t d = sigma.degree();
  const std::size_t p = orbit.size();
  Matrix a(f, p * d, p * d);
  const Matrix corner = image_of_power(sigma);
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t row = j * d;
    const std::size_t col = ((j + 1) % p) * d;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) a(row + r, col + c) = j + 1 < p ? (r == c ? f.one() : f.zero()) : corner(r, c);
  }
  std::vector<Matrix> rest;
  for (std::size_t g = 0; g < sigma.size(); ++g) {
    std::vector<Matrix> blocks;
    for (const auto& s : orbit) blocks.push_back(s.gen(g));
    rest.push_back(block_diagonal(blocks));
  }
  return prepend_generator(sigma, f, std::move(a), rest);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InternalInconsistency, what);
}

}  // namespace

std::string to_string(InductionBranch b) {
  switch (b) {
    case InductionBranch::Plain: return "plain";
    case InductionBranch::PlainTwisted: return "plain-twisted";
    case InductionBranch::Descended: return "descended";
  }
  return "?";
}

Representation conjugate_rep(const Representation& sigma) {
  const auto& pc = presentation_of(sigma);
  const std::size_t i = acting_level(sigma);
  std::vector<Matrix> gens;
  for (std::size_t j = i + 1; j <= pc.length(); ++j) gens.push_back(sigma.evaluate(pc.conjugate(i, pc.generator(j))));
  return Representation(sigma.field(), sigma.degree(), std::move(gens), sigma.group());
}

std::vector<Representation> extend_case1(const Representation& sigma) {
  const auto& pc = presentation_of(sigma);
  const std::size_t i = acting_level(sigma);
  const std::uint32_t p = pc.prime(i);
  const Field& e = sigma.field();

  // A sigma(h) A^{-1} = sigma(a h a^{-1})
  const auto a = find_intertwiner(conjugate_rep(sigma), sigma);
  if (!a) throw Error(ErrorCode::NotConjugateStable, "representation is not stable under g" + std::to_string(i));
  // A^p sigma(a^p)^{-1} commutes with sigma(H), hence is the scalar mu.
  const auto mu = (power(*a, p) * inverse(image_of_power(sigma))).scalar_value();
  require(mu.has_value(), "A^p is not a scalar multiple of sigma(a^p)");

  std::vector<Representation> out;
  if (p == e.characteristic()) {
    const Elem nu = pth_root_unique(e, *mu, p);
    out.push_back(prepend_generator(sigma, e, e.inv(nu) * *a, sigma.gens()));
    return out;
  }
  for (const auto& root : pth_roots_split(e, *mu, p).placed) {
    const Field& f = root.field;
    const Representation lifted = embed(sigma, f);
    out.push_back(prepend_generator(sigma, f, f.inv(root.value) * embed(*a, f), lifted.gens()));
  }
  return out;
}

// ---- regular embedding -------------------------------------------------------

RegularEmbedding::RegularEmbedding(Field big, Field small, unsigned p, unsigned shift)
    : big_(std::move(big)), small_(std::move(small)), p_(p), shift_(shift),
      prime_inverse_(Field::canonical(big_.characteristic(), 1), 1, 1), m_(small_, p, p) {
  const Field prime = Field::canonical(big_.characteristic(), 1);
  const unsigned k = big_.degree();
  const unsigned s = small_.degree();
  const auto emb = Embedding::get(small_, big_);
  const Elem x = big_.element(big_.characteristic());  // the generator, digits (0, 1, 0, ...)
  // Prime-field basis emb(b^t) x^j of E, row (j * s + t).
  Matrix basis(prime, k, k);
  const Elem b = s > 1 ? small_.element(small_.characteristic()) : small_.one();
  for (unsigned j = 0; j < p; ++j)
    for (unsigned t = 0; t < s; ++t) {
      const Elem y = big_.mul(emb->up(small_.pow(b, t)), big_.pow(x, j));
      const auto digits = big_.digits(y);
      for (unsigned c = 0; c < k; ++c) basis(j * s + t, c) = prime.element(digits[c]);
    }
  prime_inverse_ = inverse(basis);
  for (unsigned j = 0; j < p; ++j) {
    const auto coords = coordinates(big_.frobenius(big_.pow(x, j), shift_));
    for (unsigned c = 0; c < p; ++c) m_(j, c) = coords[c];
  }
}

std::vector<Elem> RegularEmbedding::coordinates(Elem y) const {
  const Field& prime = prime_inverse_.field();
  const unsigned k = big_.degree();
  const unsigned s = small_.degree();
  std::vector<Elem> digits(k);
  const auto raw = big_.digits(y);
  for (unsigned c = 0; c < k; ++c) digits[c] = prime.element(raw[c]);
  const auto flat = multiply(std::span<const Elem>(digits), prime_inverse_);
  std::vector<Elem> out(p_);
  std::vector<std::uint32_t> coeffs(s);
  for (unsigned j = 0; j < p_; ++j) {
    for (unsigned t = 0; t < s; ++t) coeffs[t] = flat[j * s + t].value;
    out[j] = small_.from_digits(coeffs);
  }
  return out;
}

Matrix RegularEmbedding::phi(Elem y) const {
  const Elem x = big_.element(big_.characteristic());
  Matrix out(small_, p_, p_);
  for (unsigned j = 0; j < p_; ++j) {
    const auto coords = coordinates(big_.mul(big_.pow(x, j), y));
    for (unsigned c = 0; c < p_; ++c) out(j, c) = coords[c];
  }
  return out;
}

Matrix RegularEmbedding::blow_up(const Matrix& x) const {
  Matrix out(small_, x.rows() * p_, x.cols() * p_);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const Matrix block = phi(x(r, c));
      for (unsigned i = 0; i < p_; ++i)
        for (unsigned j = 0; j < p_; ++j) out(r * p_ + i, c * p_ + j) = block(i, j);
    }
  return out;
}

Matrix RegularEmbedding::s(std::size_t d) const {
  std::vector<Matrix> blocks(d, m_);
  return block_diagonal(blocks);
}

RegularEmbedding build_regular_embedding(const Field& big, unsigned p, unsigned shift) {
  const unsigned k = big.degree();
  if (p == 0 || k % p) throw Error(ErrorCode::NotADivisor, std::to_string(p) + " does not divide " + std::to_string(k));
  const unsigned s = k / p;
  if (shift % s || shift % k == 0)
    throw Error(ErrorCode::PreconditionFailed, "shift " + std::to_string(shift) + " does not generate Gal(E/F)");
  RegularEmbedding emb(big, Field::canonical(big.characteristic(), s), p, shift % k);

  const Elem x = big.element(big.characteristic());
  const Matrix phi_x = emb.phi(x);
  require(emb.phi(big.one()) == Matrix::identity(emb.small(), p), "phi(1) is not the identity");
  require(emb.phi(big.mul(x, x)) == phi_x * phi_x, "phi is not multiplicative");
  if (s > 1) {
    const Elem b = Embedding::get(emb.small(), big)->up(emb.small().element(big.characteristic()));
    require(emb.phi(big.mul(x, b)) == phi_x * emb.phi(b), "phi is not multiplicative");
  }
  require(power(emb.m(), p).is_identity(), "M^p is not the identity");
  require(inverse(emb.m()) * phi_x * emb.m() == emb.phi(big.frobenius(x, emb.shift())), "M does not realize Frobenius");
  return emb;
}

// ---- induction ---------------------------------------------------------------

Representation standard_induction(const Representation& sigma) {
  const unsigned p = presentation_of(sigma).prime(acting_level(sigma));
  return induced_from_orbit(sigma, orbit_of(sigma, p));
}

InductionResult induce_case2(const Representation& sigma, std::uint64_t seed) {
  const auto& pc = presentation_of(sigma);
  const std::size_t i = acting_level(sigma);
  const unsigned p = pc.prime(i);
  const Field& e = sigma.field();
  const unsigned k = e.degree();

  const auto orbit = orbit_of(sigma, p);
  for (unsigned j = 1; j < p; ++j)
    if (equivalent(orbit[j], sigma))
      throw Error(ErrorCode::OrbitNotFree, "conjugate " + std::to_string(j) + " is equivalent to the representation");
  Representation standard = induced_from_orbit(sigma, orbit);
  const Matrix identity = Matrix::identity(e, standard.degree());

  if (k % p) return InductionResult{standard, InductionBranch::Plain, standard, identity, {}, {}, {}, {}};

  // Is sigma twisted by Gal(E/F) one of its G-conjugates?
  const unsigned step = k / p;
  const Representation twisted = rep_frobenius(sigma, step);
  require(!equivalent(twisted, sigma), "representation is not over its minimal field");
  unsigned j = 0;
  for (unsigned t = 1; t < p && !j; ++t)
    if (equivalent(twisted, orbit[t])) j = t;
  if (!j) return InductionResult{standard, InductionBranch::PlainTwisted, standard, identity, {}, {}, {}, {}};

  // Align: with x = j^{-1} mod p, sigma^{a'} ~ sigma^a for a' = (Frobenius^step)^x.
  unsigned x = 1;
  while ((x * j) % p != 1) ++x;
  const unsigned shift = (step * x) % k;
  const auto a = find_intertwiner(orbit[1], rep_frobenius(sigma, shift));
  require(a.has_value(), "aligned twist is not equivalent to the first conjugate");

  // A A^{a'} ... A^{a'^(p-1)} = mu sigma(a^p), normalized to mu = 1.
  const auto mu = (semilinear_product(*a, shift, p) * inverse(image_of_power(sigma))).scalar_value();
  require(mu.has_value(), "semilinear norm of A is not a scalar multiple of sigma(a^p)");
  Rng rng(seed);
  const Elem nu = solve_norm_equation(e, step, *mu, rng);
  const Matrix a_norm = e.inv(nu) * *a;

  const RegularEmbedding emb = build_regular_embedding(e, p, shift);
  const Matrix s_inv = inverse(emb.s(sigma.degree()));
  std::vector<Matrix> rest;
  for (const auto& g : sigma.gens()) rest.push_back(emb.blow_up(g));
  Representation rho = prepend_generator(sigma, emb.small(), emb.blow_up(a_norm) * s_inv, rest);

  require(satisfies_relations(rho), "descended induced representation breaks a relation");
  const auto c = find_intertwiner(embed(rho, e), standard);
  require(c.has_value(), "descended representation is not equivalent to the induced one");
  return InductionResult{std::move(rho), InductionBranch::Descended, std::move(standard), *c, shift, *a, *mu, nu};
}

// ---- driver ------------------------------------------------------------------

IrrepTable irreps(std::shared_ptr<const PcPresentation> pc, std::uint32_t characteristic, std::uint64_t seed,
                  const IrrepOptions& options) {
  if (!is_prime(characteristic)) throw Error(ErrorCode::NotPrime, std::to_string(characteristic) + " is not prime");
  enumerate_and_check(*pc);
  const std::size_t n = pc->length();
  const Field base = Field::canonical(characteristic, 1);

  IrrepTable table{pc, n + 1, {}};
  table.entries.push_back(IrrepEntry{Representation(base, 1, {}, GroupRef{pc, n + 1}), "trivial", {}, {}});

  for (std::size_t i = n; i >= 1; --i) {
    const unsigned p = pc->prime(i);
    const auto& prev = table.entries;
    // Permutation sigma -> sigma^a of the previous table.
    std::vector<std::size_t> image(prev.size());
    for (std::size_t s = 0; s < prev.size(); ++s) {
      const Representation conj = conjugate_rep(prev[s].rep);
      std::optional<std::size_t> hit;
      for (std::size_t t = 0; t < prev.size() && !hit; ++t) {
        const auto& cand = prev[t].rep;
        if (cand.field() == conj.field() && cand.degree() == conj.degree() && equivalent(conj, cand)) hit = t;
      }
      require(hit.has_value(), "conjugate of entry " + std::to_string(s + 1) + " is not in the table");
      image[s] = *hit;
    }

    IrrepTable next{pc, i, {}};
    std::vector<bool> seen(prev.size(), false);
    for (std::size_t s = 0; s < prev.size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> orbit{s};
      seen[s] = true;
      for (std::size_t t = image[s]; t != s; t = image[t]) {
        require(!seen[t], "conjugation does not permute the table");
        seen[t] = true;
        orbit.push_back(t);
      }
      if (orbit.size() == 1) {
        for (auto& rho : extend_case1(prev[s].rep)) next.entries.push_back(IrrepEntry{std::move(rho), "extension", s, orbit});
      } else if (orbit.size() == p) {
        auto result = induce_case2(prev[s].rep, derive_seed(seed, "induce", i, s));
        next.entries.push_back(IrrepEntry{std::move(result.rep), "induction", s, orbit});
      } else {
        require(false, "orbit of size " + std::to_string(orbit.size()) + " at level " + std::to_string(i));
      }
    }

    if (options.verify) {
      const auto& es = next.entries;
      for (std::size_t s = 0; s < es.size(); ++s) {
        const auto& r = es[s].rep;
        require(satisfies_relations(r), "entry " + std::to_string(s + 1) + " breaks a relation");
        require(is_absolutely_irreducible(r), "entry " + std::to_string(s + 1) + " is not absolutely irreducible");
        require(character_field(r) == r.field().degree(), "entry " + std::to_string(s + 1) + " is not over its minimal field");
        for (std::size_t t = 0; t < s; ++t)
          if (es[t].rep.field() == r.field() && es[t].rep.degree() == r.degree())
            require(!equivalent(es[t].rep, r), "entries " + std::to_string(t + 1) + " and " + std::to_string(s + 1) + " are equivalent");
      }
      const std::uint64_t order = pc->order(i);
      if (order % characteristic) {
        std::uint64_t sum = 0;
        for (const auto& en : es) sum += en.rep.degree() * en.rep.degree();
        require(sum == order, "degrees squared sum to " + std::to_string(sum) + ", not " + std::to_string(order));
      }
    }
    table = std::move(next);
  }
  return table;
}

}  // namespace repfield
