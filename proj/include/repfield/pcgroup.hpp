#pragma once

// Power-conjugate presentations of finite soluble groups:
//
//   g_i^{p_i} = v_i            (1 <= i <= n)
//   g_i^{-1} g_j g_i = w_ij    (1 <= i < j <= n)
//
// with v_i, w_ij words in g_{i+1}, ..., g_n. Generators are numbered from 1
// in the public interface.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repfield {

/// Exponent vector (e_1, ..., e_n) with 0 <= e_i < p_i, standing for
/// g_1^{e_1} ... g_n^{e_n}.
using NormalWord = std::vector<std::uint32_t>;

struct Letter {
  std::size_t gen;  // 1-based
  std::int64_t exp;
};
using Word = std::vector<Letter>;

class PcPresentation {
 public:
  /// Relations not listed default to v_i = 1 and w_ij = g_j. Raw words may
  /// carry any integer exponents; they are collected on construction.
  PcPresentation(std::vector<std::uint32_t> primes, const std::vector<std::pair<std::size_t, Word>>& powers,
                 const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Word>>& conjugates);

  /// Text format:
  ///   pcgroup n=<n>
  ///   primes <p1> ... <pn>
  ///   pow <i> = <word>
  ///   conj <i> <j> = <word>
  /// where <word> is a space-separated list of g<k>^<e> tokens or `1`.
  static PcPresentation parse(std::string_view text);
  std::string to_text() const;

  std::size_t length() const { return primes_.size(); }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::uint32_t prime(std::size_t i) const { return primes_.at(i - 1); }
  /// |G_i| = p_i p_{i+1} ... p_n.
  std::uint64_t order(std::size_t level = 1) const;

  NormalWord identity() const { return NormalWord(length(), 0); }
  NormalWord generator(std::size_t i) const;
  const NormalWord& power_word(std::size_t i) const { return power_.at(i - 1); }
  const NormalWord& conj_word(std::size_t i, std::size_t j) const { return conj_.at(i - 1).at(j - 1); }

  NormalWord collect(const Word& word) const;
  NormalWord multiply(const NormalWord& a, const NormalWord& b) const;
  NormalWord inverse(const NormalWord& a) const;
  NormalWord pow(const NormalWord& a, std::int64_t e) const;

  /// g_i h g_i^{-1} for h in G_{i+1}. Throws NotInSubgroup if h or the
  /// result has a nonzero exponent at a position <= i.
  NormalWord conjugate(std::size_t level, const NormalWord& h) const;

  /// Mixed-radix index with e_1 most significant.
  std::uint64_t index_of(const NormalWord& w) const;
  NormalWord word_at(std::uint64_t index) const;
  /// Elements of G_level in index order.
  std::vector<NormalWord> elements(std::size_t level = 1) const;

  bool in_subgroup(const NormalWord& w, std::size_t level) const;

 private:

  void push_word(std::vector<std::uint32_t>& stack, const NormalWord& w) const;
  void push_letter(std::vector<std::uint32_t>& stack, std::size_t gen0, std::int64_t exp) const;
  void collect_into(NormalWord& state, std::vector<std::uint32_t>& stack) const;

  std::vector<std::uint32_t> primes_;
  std::vector<NormalWord> power_;               // v_i
  std::vector<std::vector<NormalWord>> conj_;   // w_ij for j > i, identity otherwise
  std::vector<NormalWord> inverse_gen_;         // g_i^{-1}
};

struct ConsistencyReport {
  std::uint64_t order = 0;
  bool full_associativity = false;  // every triple checked
  std::uint64_t triples_checked = 0;
};

/// Enumerates the group, checks identity, inverse and associativity laws
/// (exhaustively up to order 200, 10^4 random triples beyond), the standard
/// finite set of overlap test words, and that every relation holds.
/// Throws InconsistentPresentation with a witness, or CapExceeded above 10^5.
ConsistencyReport enumerate_and_check(const PcPresentation& pc);

}  // namespace repfield
