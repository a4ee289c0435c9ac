#include "repfield/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "repfield/error.hpp"

namespace repfield {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      std::istringstream words(raw);
      Line line{number, {}};
      std::string tok;
      while (words >> tok) line.tokens.push_back(tok);
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
    }
  }

  bool done() const { return pos_ == lines_.size(); }
  const Line& peek() const {
    if (done()) throw Error(ErrorCode::SyntaxError, "unexpected end of input");
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  // Next line, which must start with `keyword` and have `arity` tokens in total.
  const Line& expect(std::string_view keyword, std::size_t arity) {
    const Line& l = next();
    if (l.tokens[0] != keyword || l.tokens.size() != arity)
      fail(l, "expected '" + std::string(keyword) + "' with " + std::to_string(arity - 1) + " fields");
    return l;
  }

  [[noreturn]] static void fail(const Line& l, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(l.number) + ": " + what);
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::uint64_t to_uint(const Line& l, std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    Reader::fail(l, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::string_view value_of(const Line& l, std::size_t idx, std::string_view key) {
  if (idx >= l.tokens.size()) Reader::fail(l, "missing " + std::string(key) + "=");
  std::string_view tok = l.tokens[idx];
  if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
    Reader::fail(l, "expected " + std::string(key) + "=");
  return tok.substr(key.size() + 1);
}

std::uint64_t uint_of(const Line& l, std::size_t idx, std::string_view key) {
  return to_uint(l, value_of(l, idx, key));
}

Field read_field(Reader& in) {
  const Line& l = in.expect("field", 4);
  const auto p = uint_of(l, 1, "p");
  const auto k = uint_of(l, 2, "k");
  std::vector<std::uint32_t> poly;
  std::string_view rest = value_of(l, 3, "poly");
  while (true) {
    const auto comma = rest.find(',');
    const auto c = to_uint(l, rest.substr(0, comma));
    if (c > UINT32_MAX) Reader::fail(l, "coefficient out of range");
    poly.push_back(static_cast<std::uint32_t>(c));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (p > UINT32_MAX || k == 0 || k > 64) Reader::fail(l, "field parameters out of range");
  return Field::create(static_cast<std::uint32_t>(p), static_cast<unsigned>(k), poly);
}

Matrix read_matrix(Reader& in, const Field& field) {
  const Line& head = in.expect("matrix", 3);
  const auto rows = uint_of(head, 1, "r");
  const auto cols = uint_of(head, 2, "c");
  if (rows > 4096 || cols > 4096) Reader::fail(head, "matrix too large");
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& l = in.next();
    if (l.tokens.size() != cols) Reader::fail(l, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = to_uint(l, l.tokens[c]);
      if (v >= field.order()) Reader::fail(l, "entry " + l.tokens[c] + " is not a field element");
      m(r, c) = field.element(v);
    }
  }
  return m;
}

Representation read_rep(Reader& in, std::optional<GroupRef> group) {
  const Field field = read_field(in);
  const Line& head = in.expect("gens", 3);
  const auto n = uint_of(head, 1, "n");
  const auto d = uint_of(head, 2, "d");
  if (d == 0 || d > 4096 || n > 4096) Reader::fail(head, "bad representation shape");
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(read_matrix(in, field));
  return Representation(field, d, std::move(gens), std::move(group));
}

Elem read_scalar(Reader& in, std::string_view key, const Field& field) {
  const Line& l = in.expect(key, 2);
  const auto v = to_uint(l, l.tokens[1]);
  if (v >= field.order()) Reader::fail(l, std::string(key) + " is not a field element");
  return field.element(v);
}

}  // namespace

std::string field_header(const Field& field) {
  std::string out = "field p=" + std::to_string(field.characteristic()) + " k=" + std::to_string(field.degree()) + " poly=";
  const auto& poly = field.poly();
  for (std::size_t i = 0; i < poly.size(); ++i) out += (i ? "," : "") + std::to_string(poly[i]);
  return out + "\n";
}

std::string matrix_to_text(const Matrix& m) {
  std::string out = "matrix r=" + std::to_string(m.rows()) + " c=" + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + std::to_string(m(r, c).value);
    out += "\n";
  }
  return out;
}

std::string rep_to_text(const Representation& r) {
  std::string out = field_header(r.field());
  out += "gens n=" + std::to_string(r.size()) + " d=" + std::to_string(r.degree()) + "\n";
  for (const auto& g : r.gens()) out += matrix_to_text(g);
  return out;
}

Representation parse_rep(std::string_view text, std::optional<GroupRef> group) {
  Reader in(text);
  Representation r = read_rep(in, std::move(group));
  if (!in.done()) Reader::fail(in.peek(), "trailing input");
  return r;
}

std::string certificate_to_text(const CertificateChain& chain) {
  std::ostringstream out;
  out << "certificate steps=" << chain.steps.size() << " seed=" << chain.seed << "\n";
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    out << "step " << i + 1 << "\n" << rep_to_text(chain.sources.at(i));
    out << "m " << s.m << "\nmu " << s.mu.value << "\nnu " << s.nu.value << "\nseed " << s.seed << "\ntrials "
        << s.trials << "\n";
    out << "C\n" << matrix_to_text(s.c) << "A\n" << matrix_to_text(s.a);
  }
  out << "end\nresult\n" << rep_to_text(chain.result);
  return out.str();
}

CertificateChain parse_certificate(std::string_view text) {
  Reader in(text);
  const Line& head = in.expect("certificate", 3);
  const auto steps = uint_of(head, 1, "steps");
  const auto seed = uint_of(head, 2, "seed");
  if (steps > 64) Reader::fail(head, "too many steps");
  std::vector<Representation> sources;
  std::vector<DescentCertificate> certs;
  for (std::size_t i = 0; i < steps; ++i) {
    const Line& l = in.expect("step", 2);
    if (to_uint(l, l.tokens[1]) != i + 1) Reader::fail(l, "steps out of order");
    Representation source = read_rep(in, std::nullopt);
    const Field& f = source.field();
    const Line& ml = in.expect("m", 2);
    const auto m = to_uint(ml, ml.tokens[1]);
    if (m == 0 || m > 64) Reader::fail(ml, "bad subfield degree");
    const Elem mu = read_scalar(in, "mu", f);
    const Elem nu = read_scalar(in, "nu", f);
    const Line& sl = in.expect("seed", 2);
    const auto step_seed = to_uint(sl, sl.tokens[1]);
    const Line& tl = in.expect("trials", 2);
    const auto trials = to_uint(tl, tl.tokens[1]);
    in.expect("C", 1);
    Matrix c = read_matrix(in, f);
    in.expect("A", 1);
    Matrix a = read_matrix(in, f);
    certs.push_back(DescentCertificate{static_cast<unsigned>(m), std::move(c), mu, nu, std::move(a), step_seed,
                                       static_cast<unsigned>(trials)});
    sources.push_back(std::move(source));
  }
  in.expect("end", 1);
  in.expect("result", 1);
  Representation result = read_rep(in, std::nullopt);
  if (!in.done()) Reader::fail(in.peek(), "trailing input");
  return CertificateChain{seed, std::move(sources), std::move(certs), std::move(result)};
}

std::optional<std::string> check_chain(const CertificateChain& chain) {
  if (chain.sources.size() != chain.steps.size()) return "source count differs from step count";
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const Representation& target = i + 1 < chain.sources.size() ? chain.sources[i + 1] : chain.result;
    if (auto why = check_certificate(chain.sources[i], chain.steps[i], target))
      return "step " + std::to_string(i + 1) + ": " + *why;
  }
  return std::nullopt;
}

std::string manifest_to_text(const Manifest& m) {
  std::ostringstream out;
  out << "irreps char=" << m.characteristic << " order=" << m.order << " count=" << m.entries.size()
      << " seed=" << m.seed << "\n";
  out << "presentation " << m.presentation << "\n";
  for (const auto& e : m.entries) {
    out << "entry " << e.index << " d=" << e.degree << " p=" << e.p << " k=" << e.k << " provenance=" << e.provenance
        << " parent=" << (e.parent ? std::to_string(*e.parent) : std::string("-")) << " file=" << e.file << "\n";
  }
  return out.str();
}

Manifest parse_manifest(std::string_view text) {
  Reader in(text);
  const Line& head = in.expect("irreps", 5);
  Manifest m;
  const auto ch = uint_of(head, 1, "char");
  if (ch > UINT32_MAX) Reader::fail(head, "characteristic out of range");
  m.characteristic = static_cast<std::uint32_t>(ch);
  m.order = uint_of(head, 2, "order");
  const auto count = uint_of(head, 3, "count");
  m.seed = uint_of(head, 4, "seed");
  m.presentation = in.expect("presentation", 2).tokens[1];
  for (std::size_t i = 0; i < count; ++i) {
    const Line& l = in.expect("entry", 8);
    ManifestEntry e;
    e.index = to_uint(l, l.tokens[1]);
    if (e.index != i + 1) Reader::fail(l, "entries out of order");
    e.degree = uint_of(l, 2, "d");
    const auto p = uint_of(l, 3, "p");
    if (p > UINT32_MAX) Reader::fail(l, "characteristic out of range");
    e.p = static_cast<std::uint32_t>(p);
    e.k = static_cast<unsigned>(uint_of(l, 4, "k"));
    e.provenance = std::string(value_of(l, 5, "provenance"));
    const auto parent = value_of(l, 6, "parent");
    if (parent != "-") e.parent = to_uint(l, parent);
    e.file = std::string(value_of(l, 7, "file"));
    m.entries.push_back(std::move(e));
  }
  if (!in.done()) Reader::fail(in.peek(), "trailing input");
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SyntaxError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::PreconditionFailed, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::PreconditionFailed, "write failed for " + path.string());
}

}  // namespace repfield
