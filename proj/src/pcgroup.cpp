#include "repfield/pcgroup.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "repfield/error.hpp"
#include "repfield/gf.hpp"
#include "repfield/random.hpp"

namespace repfield {

namespace {

std::string word_text(const NormalWord& w) {
  std::string out;
  for (std::size_t l = 0; l < w.size(); ++l) {
    if (!w[l]) continue;
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(l + 1) + "^" + std::to_string(w[l]);
  }
  return out.empty() ? "1" : out;
}

void check_word(const Word& w, std::size_t above, std::size_t n, const std::string& what) {
  for (const auto& letter : w)
    if (letter.gen <= above || letter.gen > n)
      throw Error(ErrorCode::IndexOutOfRange,
                  what + " uses g" + std::to_string(letter.gen) + "; only g" + std::to_string(above + 1) + "..g" +
                      std::to_string(n) + " are allowed");
}

}  // namespace

PcPresentation::PcPresentation(std::vector<std::uint32_t> primes,
                               const std::vector<std::pair<std::size_t, Word>>& powers,
                               const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Word>>& conjugates)
    : primes_(std::move(primes)) {
  const std::size_t n = primes_.size();
  for (auto p : primes_)
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");

  std::vector<Word> raw_power(n);
  std::vector<std::vector<Word>> raw_conj(n, std::vector<Word>(n));
  std::set<std::size_t> seen_power;
  std::set<std::pair<std::size_t, std::size_t>> seen_conj;
  for (const auto& [i, w] : powers) {
    if (i < 1 || i > n) throw Error(ErrorCode::IndexOutOfRange, "pow index " + std::to_string(i));
    if (!seen_power.insert(i).second) throw Error(ErrorCode::SyntaxError, "duplicate pow " + std::to_string(i));
    check_word(w, i, n, "pow " + std::to_string(i));
    raw_power[i - 1] = w;
  }
  for (const auto& [ij, w] : conjugates) {
    const auto [i, j] = ij;
    const std::string tag = "conj " + std::to_string(i) + " " + std::to_string(j);
    if (i < 1 || j > n || i >= j) throw Error(ErrorCode::IndexOutOfRange, tag + " needs 1 <= i < j <= n");
    if (!seen_conj.insert(ij).second) throw Error(ErrorCode::SyntaxError, "duplicate " + tag);
    check_word(w, i, n, tag);
    raw_conj[i - 1][j - 1] = w;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!seen_conj.count({i + 1, j + 1})) raw_conj[i][j] = Word{{j + 1, 1}};

  power_.assign(n, identity());
  conj_.assign(n, std::vector<NormalWord>(n, identity()));
  inverse_gen_.assign(n, identity());
  // Relations at level i only involve generators above i, so normalizing from
  // the bottom up only ever uses relations that are already normal.
  for (std::size_t i = n; i-- > 0;) {
    power_[i] = collect(raw_power[i]);
    for (std::size_t j = i + 1; j < n; ++j) conj_[i][j] = collect(raw_conj[i][j]);
    // g_i^{-1} = g_i^{p_i - 1} v_i^{-1}
    Word w{{i + 1, static_cast<std::int64_t>(primes_[i]) - 1}};
    for (std::size_t l = n; l-- > i + 1;)
      if (power_[i][l]) w.push_back({l + 1, -static_cast<std::int64_t>(power_[i][l])});
    inverse_gen_[i] = collect(w);
  }
}

std::uint64_t PcPresentation::order(std::size_t level) const {
  std::uint64_t n = 1;
  for (std::size_t i = level; i <= length(); ++i) n *= primes_[i - 1];
  return n;
}

NormalWord PcPresentation::generator(std::size_t i) const {
  if (i < 1 || i > length()) throw Error(ErrorCode::IndexOutOfRange, "generator g" + std::to_string(i));
  NormalWord w = identity();
  w[i - 1] = primes_[i - 1] == 1 ? 0 : 1;
  return w;
}

void PcPresentation::push_word(std::vector<std::uint32_t>& stack, const NormalWord& w) const {
  for (std::size_t l = w.size(); l-- > 0;)
    for (std::uint32_t r = 0; r < w[l]; ++r) stack.push_back(static_cast<std::uint32_t>(l));
}

void PcPresentation::push_letter(std::vector<std::uint32_t>& stack, std::size_t gen0, std::int64_t exp) const {
  if (exp >= 0) {
    for (std::int64_t r = 0; r < exp; ++r) stack.push_back(static_cast<std::uint32_t>(gen0));
  } else {
    for (std::int64_t r = 0; r < -exp; ++r) push_word(stack, inverse_gen_[gen0]);
  }
}

// Collection from the left. The state is a normal word; each popped generator
// g_j is moved past the tail g_{j+1}^{e_{j+1}}...g_n^{e_n}, which becomes the
// conjugated words w_{j,l}^{e_l}, and an overflowing exponent is replaced by
// the power word v_j.
void PcPresentation::collect_into(NormalWord& state, std::vector<std::uint32_t>& stack) const {
  const std::size_t n = length();
  while (!stack.empty()) {
    const std::size_t j = stack.back();
    stack.pop_back();
    bool tail = false;
    for (std::size_t l = j + 1; l < n && !tail; ++l) tail = state[l] != 0;
    if (tail) {
      for (std::size_t l = n; l-- > j + 1;) {
        for (std::uint32_t r = 0; r < state[l]; ++r) push_word(stack, conj_[j][l]);
        state[l] = 0;
      }
    }
    if (++state[j] == primes_[j]) {
      state[j] = 0;
      push_word(stack, power_[j]);
    }
  }
}

NormalWord PcPresentation::collect(const Word& word) const {
  std::vector<std::uint32_t> sequence;
  for (const auto& letter : word) {
    if (letter.gen < 1 || letter.gen > length())
      throw Error(ErrorCode::IndexOutOfRange, "generator g" + std::to_string(letter.gen));
    std::vector<std::uint32_t> part;
    push_letter(part, letter.gen - 1, letter.exp);
    // push_* emit in stack order; flip to reading order
    sequence.insert(sequence.end(), part.rbegin(), part.rend());
  }
  std::vector<std::uint32_t> stack(sequence.rbegin(), sequence.rend());
  NormalWord state = identity();
  collect_into(state, stack);
  return state;
}

NormalWord PcPresentation::multiply(const NormalWord& a, const NormalWord& b) const {
  NormalWord state = a;
  std::vector<std::uint32_t> stack;
  push_word(stack, b);
  collect_into(state, stack);
  return state;
}

NormalWord PcPresentation::inverse(const NormalWord& a) const {
  // (g_1^{e_1} ... g_n^{e_n})^{-1} = (g_n^{-1})^{e_n} ... (g_1^{-1})^{e_1}
  Word w;
  for (std::size_t l = a.size(); l-- > 0;)
    if (a[l]) w.push_back({l + 1, -static_cast<std::int64_t>(a[l])});
  return collect(w);
}

NormalWord PcPresentation::pow(const NormalWord& a, std::int64_t e) const {
  NormalWord base = e < 0 ? inverse(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  NormalWord result = identity();
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

bool PcPresentation::in_subgroup(const NormalWord& w, std::size_t level) const {
  for (std::size_t l = 0; l + 1 < level && l < w.size(); ++l)
    if (w[l]) return false;
  return true;
}

NormalWord PcPresentation::conjugate(std::size_t level, const NormalWord& h) const {
  if (level < 1 || level > length()) throw Error(ErrorCode::IndexOutOfRange, "level " + std::to_string(level));
  if (!in_subgroup(h, level + 1))
    throw Error(ErrorCode::NotInSubgroup, word_text(h) + " is not in G_" + std::to_string(level + 1));
  NormalWord result = multiply(multiply(generator(level), h), inverse_gen_[level - 1]);
  if (!in_subgroup(result, level + 1))
    throw Error(ErrorCode::NotInSubgroup, "conjugate " + word_text(result) + " left G_" + std::to_string(level + 1) +
                                              "; the presentation is inconsistent");
  return result;
}

std::uint64_t PcPresentation::index_of(const NormalWord& w) const {
  std::uint64_t idx = 0;
  for (std::size_t l = 0; l < length(); ++l) idx = idx * primes_[l] + w[l];
  return idx;
}

NormalWord PcPresentation::word_at(std::uint64_t index) const {
  NormalWord w = identity();
  for (std::size_t l = length(); l-- > 0;) {
    w[l] = static_cast<std::uint32_t>(index % primes_[l]);
    index /= primes_[l];
  }
  return w;
}

std::vector<NormalWord> PcPresentation::elements(std::size_t level) const {
  std::vector<NormalWord> out;
  const std::uint64_t count = order(level);
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) out.push_back(word_at(idx));
  return out;
}

// ---- text format -------------------------------------------------------------

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line_no) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": expected integer, got '" +
                                            std::string(s) + "'");
  return v;
}

std::int64_t parse_key(const std::string& tok, std::string_view key, std::size_t line_no) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0)
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": expected " + prefix);
  return parse_int(std::string_view(tok).substr(prefix.size()), line_no);
}

Word parse_word(const std::vector<std::string>& toks, std::size_t from, std::size_t line_no) {
  Word w;
  if (toks.size() == from + 1 && toks[from] == "1") return w;
  if (toks.size() <= from) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": empty word");
  for (std::size_t t = from; t < toks.size(); ++t) {
    std::string_view tok = toks[t];
    if (tok.size() < 2 || tok[0] != 'g')
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": bad word token '" +
                                              std::string(tok) + "'");
    const auto caret = tok.find('^');
    const auto gen = parse_int(tok.substr(1, caret == std::string_view::npos ? tok.npos : caret - 1), line_no);
    const auto exp = caret == std::string_view::npos ? 1 : parse_int(tok.substr(caret + 1), line_no);
    if (gen < 1) throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(line_no) + ": generator index");
    w.push_back({static_cast<std::size_t>(gen), exp});
  }
  return w;
}

}  // namespace

PcPresentation PcPresentation::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::optional<std::vector<std::uint32_t>> primes;
  std::vector<std::pair<std::size_t, Word>> powers;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Word>> conjugates;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto toks = split(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!n) {
      if (toks.size() != 2 || toks[0] != "pcgroup") throw Error(ErrorCode::SyntaxError, where + "expected 'pcgroup n=<n>'");
      const auto v = parse_key(toks[1], "n", line_no);
      if (v < 0) throw Error(ErrorCode::SyntaxError, where + "negative n");
      n = static_cast<std::size_t>(v);
    } else if (toks[0] == "primes") {
      if (primes) throw Error(ErrorCode::SyntaxError, where + "duplicate primes line");
      primes.emplace();
      for (std::size_t t = 1; t < toks.size(); ++t) {
        const auto v = parse_int(toks[t], line_no);
        if (v < 2 || v > UINT32_MAX) throw Error(ErrorCode::NotPrime, where + toks[t] + " is not prime");
        primes->push_back(static_cast<std::uint32_t>(v));
      }
      if (primes->size() != *n) throw Error(ErrorCode::SyntaxError, where + "expected " + std::to_string(*n) + " primes");
    } else if (toks[0] == "pow") {
      if (toks.size() < 4 || toks[2] != "=") throw Error(ErrorCode::SyntaxError, where + "expected 'pow <i> = <word>'");
      const auto i = parse_int(toks[1], line_no);
      if (i < 1) throw Error(ErrorCode::IndexOutOfRange, where + "pow index");
      powers.emplace_back(static_cast<std::size_t>(i), parse_word(toks, 3, line_no));
    } else if (toks[0] == "conj") {
      if (toks.size() < 5 || toks[3] != "=")
        throw Error(ErrorCode::SyntaxError, where + "expected 'conj <i> <j> = <word>'");
      const auto i = parse_int(toks[1], line_no);
      const auto j = parse_int(toks[2], line_no);
      if (i < 1 || j < 1) throw Error(ErrorCode::IndexOutOfRange, where + "conj index");
      conjugates.push_back({{static_cast<std::size_t>(i), static_cast<std::size_t>(j)}, parse_word(toks, 4, line_no)});
    } else {
      throw Error(ErrorCode::SyntaxError, where + "unknown directive '" + toks[0] + "'");
    }
  }
  if (!n) throw Error(ErrorCode::SyntaxError, "missing 'pcgroup' header");
  if (!primes) {
    if (*n != 0) throw Error(ErrorCode::SyntaxError, "missing 'primes' line");
    primes.emplace();
  }
  return PcPresentation(std::move(*primes), powers, conjugates);
}

std::string PcPresentation::to_text() const {
  std::ostringstream out;
  out << "pcgroup n=" << length() << "\nprimes";
  for (auto p : primes_) out << ' ' << p;
  out << '\n';
  for (std::size_t i = 1; i <= length(); ++i)
    if (power_word(i) != identity()) out << "pow " << i << " = " << word_text(power_word(i)) << '\n';
  for (std::size_t i = 1; i <= length(); ++i)
    for (std::size_t j = i + 1; j <= length(); ++j)
      if (conj_word(i, j) != generator(j)) out << "conj " << i << ' ' << j << " = " << word_text(conj_word(i, j)) << '\n';
  return out.str();
}

// ---- consistency -------------------------------------------------------------

ConsistencyReport enumerate_and_check(const PcPresentation& pc) {
  constexpr std::uint64_t kMaxOrder = 100000;
  constexpr std::uint64_t kFullTableOrder = 200;
  constexpr std::uint64_t kRandomTriples = 10000;

  const std::size_t n = pc.length();
  std::uint64_t order = 1;
  for (auto p : pc.primes()) {
    order *= p;
    if (order > kMaxOrder) throw Error(ErrorCode::CapExceeded, "group order exceeds 10^5");
  }
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InconsistentPresentation, what); };
  auto show = [](const NormalWord& w) { return word_text(w); };

  // Overlap test words; distinct bracketings must collect to the same word.
  for (std::size_t i = 1; i <= n; ++i) {
    const auto gi = pc.generator(i);
    const auto vi = pc.power_word(i);
    if (pc.multiply(gi, vi) != pc.multiply(vi, gi)) fail("g" + std::to_string(i) + " does not commute with its power word");
    for (std::size_t j = i + 1; j <= n; ++j) {
      const auto gj = pc.generator(j);
      const auto vj = pc.power_word(j);
      if (pc.multiply(vj, gi) != pc.multiply(pc.pow(gj, pc.prime(j) - 1), pc.multiply(gj, gi)))
        fail("overlap (g" + std::to_string(j) + "^p)g" + std::to_string(i) + " disagrees");
      if (pc.multiply(gj, vi) != pc.multiply(pc.multiply(gj, gi), pc.pow(gi, pc.prime(i) - 1)))
        fail("overlap g" + std::to_string(j) + "(g" + std::to_string(i) + "^p) disagrees");
      for (std::size_t k = j + 1; k <= n; ++k) {
        const auto gk = pc.generator(k);
        if (pc.multiply(pc.multiply(gk, gj), gi) != pc.multiply(gk, pc.multiply(gj, gi)))
          fail("overlap g" + std::to_string(k) + " g" + std::to_string(j) + " g" + std::to_string(i) + " disagrees");
      }
    }
  }

  // Relations read back through the multiplication.
  for (std::size_t i = 1; i <= n; ++i) {
    const auto gi = pc.generator(i);
    if (pc.pow(gi, pc.prime(i)) != pc.power_word(i)) fail("power relation " + std::to_string(i) + " fails");
    for (std::size_t j = i + 1; j <= n; ++j)
      if (pc.multiply(pc.multiply(pc.inverse(gi), pc.generator(j)), gi) != pc.conj_word(i, j))
        fail("conjugate relation " + std::to_string(i) + " " + std::to_string(j) + " fails");
  }

  const auto elems = pc.elements();
  const auto id = pc.identity();
  for (const auto& x : elems) {
    if (pc.multiply(id, x) != x || pc.multiply(x, id) != x) fail("identity law fails at " + show(x));
    const auto xi = pc.inverse(x);
    if (pc.multiply(x, xi) != id || pc.multiply(xi, x) != id) fail("inverse law fails at " + show(x));
  }

  ConsistencyReport report{order, false, 0};
  if (order <= kFullTableOrder) {
    std::vector<std::vector<std::uint64_t>> table(order, std::vector<std::uint64_t>(order));
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = 0; b < order; ++b) table[a][b] = pc.index_of(pc.multiply(elems[a], elems[b]));
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = 0; b < order; ++b)
        for (std::uint64_t c = 0; c < order; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            fail("associativity fails for (" + show(elems[a]) + ", " + show(elems[b]) + ", " + show(elems[c]) + ")");
    report.full_associativity = true;
    report.triples_checked = order * order * order;
  } else {
    Rng rng(0x5eed);
    for (std::uint64_t t = 0; t < kRandomTriples; ++t) {
      const auto& a = elems[uniform_below(rng, order)];
      const auto& b = elems[uniform_below(rng, order)];
      const auto& c = elems[uniform_below(rng, order)];
      if (pc.multiply(pc.multiply(a, b), c) != pc.multiply(a, pc.multiply(b, c)))
        fail("associativity fails for (" + show(a) + ", " + show(b) + ", " + show(c) + ")");
    }
    report.triples_checked = kRandomTriples;
  }
  return report;
}

}  // namespace repfield
