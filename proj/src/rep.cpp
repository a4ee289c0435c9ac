#include "repfield/rep.hpp"

#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "repfield/error.hpp"

namespace repfield {

namespace {

// Row space kept in reduced echelon form, pivots scaled to one.
class EchelonSpace {
 public:
  EchelonSpace(Field field, std::size_t width) : field_(std::move(field)), width_(width) {}

  std::size_t dimension() const { return rows_.size(); }

  // Adds v if it is independent of the current rows; returns whether it was.
  bool insert(std::vector<Elem> v) {
    const Field& f = field_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = v[pivots_[r]];
      if (c == f.zero()) continue;
      for (std::size_t j = pivots_[r]; j < width_; ++j) v[j] = f.sub(v[j], f.mul(c, rows_[r][j]));
    }
    std::size_t pivot = 0;
    while (pivot < width_ && v[pivot] == f.zero()) ++pivot;
    if (pivot == width_) return false;
    const Elem scale = f.inv(v[pivot]);
    for (std::size_t j = pivot; j < width_; ++j) v[j] = f.mul(v[j], scale);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = rows_[r][pivot];
      if (c == f.zero()) continue;
      for (std::size_t j = pivot; j < width_; ++j) rows_[r][j] = f.sub(rows_[r][j], f.mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  Field field_;
  std::size_t width_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<Elem> flatten(const Matrix& m) { return {m.entries().begin(), m.entries().end()}; }

Representation with_gens(const Representation& r, const Field& field, std::vector<Matrix> gens) {
  return Representation(field, r.degree(), std::move(gens), r.group());
}

unsigned least_subfield(const Field& field, const std::vector<Elem>& values) {
  const unsigned k = field.degree();
  for (unsigned m = 1; m <= k; ++m) {
    if (k % m) continue;
    bool all = true;
    for (Elem x : values)
      if (!field.is_in_subfield(x, m)) {
        all = false;
        break;
      }
    if (all) return m;
  }
  return k;
}

}  // namespace

Representation::Representation(Field field, std::size_t degree, std::vector<Matrix> gens,
                               std::optional<GroupRef> group)
    : field_(std::move(field)), degree_(degree), gens_(std::move(gens)), group_(std::move(group)) {
  if (degree_ == 0) throw Error(ErrorCode::ShapeMismatch, "representation of degree 0");
  for (const auto& g : gens_) {
    if (!(g.field() == field_)) throw Error(ErrorCode::FieldMismatch, "generator matrix over a different field");
    if (g.rows() != degree_ || g.cols() != degree_)
      throw Error(ErrorCode::ShapeMismatch, "generator matrix is not " + std::to_string(degree_) + "x" +
                                                std::to_string(degree_));
    if (rank(g) != degree_) throw Error(ErrorCode::Singular, "generator matrix is singular");
  }
  if (group_) {
    if (!group_->pc) throw Error(ErrorCode::PreconditionFailed, "group reference without presentation");
    const std::size_t n = group_->pc->length();
    if (group_->level < 1 || group_->level > n + 1)
      throw Error(ErrorCode::IndexOutOfRange, "level " + std::to_string(group_->level));
    if (gens_.size() != n + 1 - group_->level)
      throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(n + 1 - group_->level) +
                                                " generator matrices, got " + std::to_string(gens_.size()));
  }
}

Matrix Representation::evaluate(const NormalWord& w) const {
  if (!group_) throw Error(ErrorCode::PreconditionFailed, "evaluate needs a group reference");
  const std::size_t level = group_->level;
  if (w.size() != group_->pc->length() || !group_->pc->in_subgroup(w, level))
    throw Error(ErrorCode::NotInSubgroup, "word is not in G_" + std::to_string(level));
  Matrix result = Matrix::identity(field_, degree_);
  for (std::size_t l = level - 1; l < w.size(); ++l)
    if (w[l]) result = result * power(gens_[l - (level - 1)], w[l]);
  return result;
}

bool satisfies_relations(const Representation& r) {
  if (!r.group()) throw Error(ErrorCode::PreconditionFailed, "relations need a group reference");
  const auto& pc = *r.group()->pc;
  const std::size_t level = r.group()->level;
  for (std::size_t i = level; i <= pc.length(); ++i) {
    const Matrix& gi = r.gen(i - level);
    if (!(power(gi, pc.prime(i)) == r.evaluate(pc.power_word(i)))) return false;
    const Matrix gi_inv = inverse(gi);
    for (std::size_t j = i + 1; j <= pc.length(); ++j)
      if (!(gi_inv * r.gen(j - level) * gi == r.evaluate(pc.conj_word(i, j)))) return false;
  }
  return true;
}

std::size_t centralizer_dimension(const Representation& r) {
  const std::size_t d = r.degree();
  const Field& f = r.field();
  if (r.size() == 0) return d * d;
  // X R - R X = 0, unknown X(a, b) at column a*d + b.
  Matrix system(f, r.size() * d * d, d * d);
  std::size_t row = 0;
  for (const auto& g : r.gens())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++row)
        for (std::size_t k = 0; k < d; ++k) {
          system(row, i * d + k) = f.add(system(row, i * d + k), g(k, j));
          system(row, k * d + j) = f.sub(system(row, k * d + j), g(i, k));
        }
  return d * d - rank(system);
}

bool is_absolutely_irreducible(const Representation& r) {
  const std::size_t d = r.degree();
  if (d == 1) return true;
  // Span of all words in the generators, grown until closed.
  EchelonSpace space(r.field(), d * d);
  std::deque<Matrix> frontier;
  const Matrix id = Matrix::identity(r.field(), d);
  space.insert(flatten(id));
  frontier.push_back(id);
  while (!frontier.empty() && space.dimension() < d * d) {
    const Matrix m = frontier.front();
    frontier.pop_front();
    for (const auto& g : r.gens()) {
      Matrix next = m * g;
      if (space.insert(flatten(next))) frontier.push_back(std::move(next));
    }
  }
  return space.dimension() == d * d;
}

std::optional<Matrix> find_intertwiner(const Representation& r1, const Representation& r2) {
  if (!(r1.field() == r2.field())) throw Error(ErrorCode::FieldMismatch, "representations over different fields");
  if (r1.degree() != r2.degree()) throw Error(ErrorCode::DegreeMismatch, "representations of different degree");
  if (r1.size() != r2.size()) throw Error(ErrorCode::ShapeMismatch, "different numbers of generators");
  const std::size_t d = r1.degree();
  const Field& f = r1.field();
  // R1 C - C R2 = 0, unknown C(a, b) at column a*d + b.
  Matrix system(f, std::max<std::size_t>(r1.size(), 1) * d * d, d * d);
  std::size_t row = 0;
  for (std::size_t g = 0; g < r1.size(); ++g) {
    const Matrix& a = r1.gen(g);
    const Matrix& b = r2.gen(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++row)
        for (std::size_t k = 0; k < d; ++k) {
          system(row, k * d + j) = f.add(system(row, k * d + j), a(i, k));
          system(row, i * d + k) = f.sub(system(row, i * d + k), b(k, j));
        }
  }
  const auto basis = nullspace_basis(system);
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 1)
    throw Error(ErrorCode::IntegrityError, "intertwiner space has dimension " + std::to_string(basis.size()) +
                                               "; the representations are not absolutely irreducible");
  const auto& v = basis.front();
  Elem lead = f.zero();
  for (Elem x : v)
    if (x != f.zero()) {
      lead = x;
      break;
    }
  const Elem scale = f.inv(lead);
  Matrix c(f, d, d);
  for (std::size_t i = 0; i < d * d; ++i) c(i / d, i % d) = f.mul(scale, v[i]);
  if (rank(c) != d) return std::nullopt;
  return c;
}

bool equivalent(const Representation& r1, const Representation& r2) {
  return find_intertwiner(r1, r2).has_value();
}

Representation rep_frobenius(const Representation& r, std::int64_t m) {
  std::vector<Matrix> gens;
  for (const auto& g : r.gens()) gens.push_back(frobenius(g, m));
  return with_gens(r, r.field(), std::move(gens));
}

Representation conjugate_by(const Representation& r, const Matrix& b) {
  const Matrix b_inv = inverse(b);
  std::vector<Matrix> gens;
  for (const auto& g : r.gens()) gens.push_back(b_inv * g * b);
  return with_gens(r, r.field(), std::move(gens));
}

Representation embed(const Representation& r, const Field& big) {
  if (r.field() == big) return r;
  std::vector<Matrix> gens;
  for (const auto& g : r.gens()) gens.push_back(embed(g, big));
  return with_gens(r, big, std::move(gens));
}

Representation restrict_to(const Representation& r, const Field& small) {
  if (r.field() == small) return r;
  std::vector<Matrix> gens;
  for (const auto& g : r.gens()) gens.push_back(restrict_to(g, small));
  return with_gens(r, small, std::move(gens));
}

Representation direct_sum(const Representation& r1, const Representation& r2) {
  if (r1.size() != r2.size()) throw Error(ErrorCode::ShapeMismatch, "different numbers of generators");
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const Matrix blocks[] = {r1.gen(i), r2.gen(i)};
    gens.push_back(block_diagonal(blocks));
  }
  return Representation(r1.field(), r1.degree() + r2.degree(), std::move(gens), r1.group());
}

unsigned character_field(const Representation& r, std::uint64_t element_cap) {
  const Field& f = r.field();
  std::set<Elem> traces;
  if (r.group()) {
    const auto& pc = *r.group()->pc;
    const std::size_t level = r.group()->level;
    if (pc.order(level) > element_cap) throw Error(ErrorCode::CapExceeded, "group larger than the element cap");
    // Enumerate G_level as products g_level^{e_level} ... g_n^{e_n}, reusing
    // prefix products.
    const std::size_t n = pc.length();
    std::vector<std::vector<Matrix>> powers;
    for (std::size_t i = level; i <= n; ++i) {
      std::vector<Matrix> ps{Matrix::identity(f, r.degree())};
      for (std::uint32_t e = 1; e < pc.prime(i); ++e) ps.push_back(ps.back() * r.gen(i - level));
      powers.push_back(std::move(ps));
    }
    std::vector<Matrix> layer{Matrix::identity(f, r.degree())};
    for (const auto& ps : powers) {
      std::vector<Matrix> next;
      next.reserve(layer.size() * ps.size());
      for (const auto& m : layer)
        for (const auto& p : ps) next.push_back(m * p);
      layer = std::move(next);
    }
    for (const auto& m : layer) traces.insert(m.trace());
  } else {
    std::set<std::vector<Elem>> seen;
    std::deque<Matrix> frontier;
    const Matrix id = Matrix::identity(f, r.degree());
    seen.insert(flatten(id));
    frontier.push_back(id);
    while (!frontier.empty()) {
      const Matrix m = frontier.front();
      frontier.pop_front();
      traces.insert(m.trace());
      for (const auto& g : r.gens()) {
        Matrix next = m * g;
        if (seen.insert(flatten(next)).second) {
          if (seen.size() > element_cap) throw Error(ErrorCode::CapExceeded, "matrix group larger than the element cap");
          frontier.push_back(std::move(next));
        }
      }
    }
  }
  return least_subfield(f, std::vector<Elem>(traces.begin(), traces.end()));
}

unsigned entry_field(const Representation& r) {
  std::set<Elem> values;
  for (const auto& g : r.gens())
    for (Elem x : g.entries()) values.insert(x);
  return least_subfield(r.field(), std::vector<Elem>(values.begin(), values.end()));
}

}  // namespace repfield
