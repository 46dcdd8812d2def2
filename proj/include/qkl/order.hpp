#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qkl {

using Rational = boost::rational<long long>;

/// A sequence sigma in {+,-}^n choosing, for each tensor position, the
/// natural (+) or dual natural (-) module. Serialized as a string of '+'
/// and '-' characters, e.g. "++--". Always nonempty.
class SignSeq {
 public:
  explicit SignSeq(std::vector<int> signs) : signs_(std::move(signs)) {
    if (signs_.empty())
      throw std::invalid_argument("sign sequence must be nonempty");
    for (int s : signs_)
      if (s != 1 && s != -1)
        throw std::invalid_argument("sign sequence entries must be +1 or -1");
  }

  static SignSeq parse(std::string_view text) {
    std::vector<int> signs;
    signs.reserve(text.size());
    for (char c : text) {
      if (c == '+')
        signs.push_back(1);
      else if (c == '-')
        signs.push_back(-1);
      else
        throw std::invalid_argument(
            std::string("invalid sign character '") + c +
            "' in sign sequence (expected '+' or '-')");
    }
    return SignSeq(std::move(signs));
  }

  std::size_t size() const { return signs_.size(); }

  /// Sign at 0-based position r, as +1 or -1.
  int operator[](std::size_t r) const { return signs_[r]; }

  /// The first n-1 signs; requires size >= 2.
  SignSeq prefix() const {
    if (signs_.size() < 2)
      throw std::invalid_argument("prefix of a length-1 sign sequence");
    return SignSeq(std::vector<int>(signs_.begin(), signs_.end() - 1));
  }

  std::string str() const {
    std::string s;
    s.reserve(signs_.size());
    for (int v : signs_) s += (v > 0 ? '+' : '-');
    return s;
  }

  bool operator==(const SignSeq&) const = default;
  auto operator<=>(const SignSeq&) const = default;

 private:
  std::vector<int> signs_;
};

/// An integer tuple b in Z^n indexing a tensor-product basis monomial.
/// Serialized as comma-separated entries, e.g. "1,2,2,1". Ordered
/// lexicographically (used only as a tie-break, not as the Bruhat order).
class Tuple {
 public:
  Tuple() = default;

  explicit Tuple(std::vector<int> entries) : entries_(std::move(entries)) {}

  static Tuple parse(std::string_view text) {
    std::vector<int> entries;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = text.find(',', pos);
      std::string_view field = text.substr(
          pos, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - pos);
      entries.push_back(parse_int(field));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return Tuple(std::move(entries));
  }

  std::size_t size() const { return entries_.size(); }

  /// Entry at 0-based position r.
  int operator[](std::size_t r) const { return entries_[r]; }

  const std::vector<int>& entries() const { return entries_; }

  /// Copy with entry r (0-based) shifted by delta.
  Tuple shifted(std::size_t r, int delta) const {
    std::vector<int> e = entries_;
    e.at(r) += delta;
    return Tuple(std::move(e));
  }

  /// The first n-1 entries; requires size >= 2.
  Tuple prefix() const {
    if (entries_.size() < 2)
      throw std::invalid_argument("prefix of a length-1 tuple");
    return Tuple(std::vector<int>(entries_.begin(), entries_.end() - 1));
  }

  /// Copy with one extra entry appended.
  Tuple appended(int value) const {
    std::vector<int> e = entries_;
    e.push_back(value);
    return Tuple(std::move(e));
  }

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < entries_.size(); ++r) {
      if (r) s += ',';
      s += std::to_string(entries_[r]);
    }
    return s;
  }

  bool operator==(const Tuple&) const = default;
  auto operator<=>(const Tuple&) const = default;

 private:
  std::vector<int> entries_;

  static int parse_int(std::string_view field) {
    if (field.empty())
      throw std::invalid_argument("empty entry in tuple");
    std::size_t i = (field[0] == '-' || field[0] == '+') ? 1 : 0;
    if (i == field.size())
      throw std::invalid_argument("invalid tuple entry '" +
                                  std::string(field) + "'");
    for (std::size_t k = i; k < field.size(); ++k)
      if (field[k] < '0' || field[k] > '9')
        throw std::invalid_argument("invalid tuple entry '" +
                                    std::string(field) + "'");
    try {
      return std::stoi(std::string(field));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("tuple entry out of range: " +
                                  std::string(field));
    }
  }
};

/// A finitely supported integer combination of the basis weights eps_i,
/// stored as index -> coefficient with no zero coefficients.
class IntWeight {
 public:
  IntWeight() = default;

  /// The single basis weight eps_i.
  static IntWeight eps(int i) {
    IntWeight w;
    w.add_eps(i, 1);
    return w;
  }

  void add_eps(int i, int coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = coeffs_.emplace(i, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  const std::map<int, int>& coeffs() const { return coeffs_; }

  int coeff(int i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? 0 : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }

  IntWeight& operator+=(const IntWeight& other) {
    for (const auto& [i, c] : other.coeffs_) add_eps(i, c);
    return *this;
  }

  IntWeight& operator-=(const IntWeight& other) {
    for (const auto& [i, c] : other.coeffs_) add_eps(i, -c);
    return *this;
  }

  friend IntWeight operator+(IntWeight a, const IntWeight& b) {
    a += b;
    return a;
  }

  friend IntWeight operator-(IntWeight a, const IntWeight& b) {
    a -= b;
    return a;
  }

  bool operator==(const IntWeight&) const = default;

 private:
  std::map<int, int> coeffs_;
};

namespace detail {

inline void require_same_length(const Tuple& b, const SignSeq& sigma) {
  if (b.size() != sigma.size())
    throw std::invalid_argument("tuple length " + std::to_string(b.size()) +
                                " does not match sign sequence length " +
                                std::to_string(sigma.size()));
}

inline void require_same_length(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tuple lengths differ: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
}

}  // namespace detail

/// Signed prefix count N_{[1,s]}(b, i): among the first s positions, the
/// number of entries b_r > i at a '+' position minus the number at a '-'
/// position. s is 1-based with 1 <= s <= n.
inline int n_count(const Tuple& b, const SignSeq& sigma, int i, int s) {
  detail::require_same_length(b, sigma);
  if (s < 1 || static_cast<std::size_t>(s) > b.size())
    throw std::invalid_argument("prefix length s out of range: " +
                                std::to_string(s));
  int total = 0;
  for (int r = 0; r < s; ++r)
    if (b[r] > i) total += sigma[r];
  return total;
}

/// The Bruhat-type partial order: a >= b iff the full counts
/// N_{[1,n]}(a, i) and N_{[1,n]}(b, i) agree for every i and every proper
/// prefix count satisfies N_{[1,s]}(a, i) >= N_{[1,s]}(b, i). Only
/// thresholds i in [min_entry - 1, max_entry] can distinguish anything, so
/// the scan is restricted to that window.
inline bool bruhat_geq(const Tuple& a, const Tuple& b, const SignSeq& sigma) {
  detail::require_same_length(a, b);
  detail::require_same_length(b, sigma);
  const int n = static_cast<int>(b.size());
  int lo = a[0], hi = a[0];
  for (int r = 0; r < n; ++r) {
    lo = std::min({lo, a[r], b[r]});
    hi = std::max({hi, a[r], b[r]});
  }
  for (int i = lo - 1; i <= hi; ++i) {
    int ca = 0, cb = 0;
    for (int s = 0; s < n; ++s) {
      if (a[s] > i) ca += sigma[s];
      if (b[s] > i) cb += sigma[s];
      if (s < n - 1 && ca < cb) return false;
    }
    if (ca != cb) return false;
  }
  return true;
}

/// Dominance order on integer weights: beta <= gamma iff gamma - beta is a
/// nonnegative integer combination of the simple roots eps_i - eps_{i+1};
/// equivalently every partial sum of the coefficients of gamma - beta taken
/// in increasing index order is >= 0 and the total is 0.
inline bool dominance_leq(const IntWeight& beta, const IntWeight& gamma) {
  IntWeight delta = gamma - beta;
  int run = 0;
  for (const auto& [i, c] : delta.coeffs()) {
    run += c;
    if (run < 0) return false;
  }
  // Between recorded indices the running sum is constant, so checking at the
  // recorded indices suffices; the final value must return to zero.
  return run == 0;
}

/// Per-position weights (sigma_r eps_{b_r})_{r=1..n}.
inline std::vector<IntWeight> weight_seq(const Tuple& b, const SignSeq& sigma) {
  detail::require_same_length(b, sigma);
  std::vector<IntWeight> out;
  out.reserve(b.size());
  for (std::size_t r = 0; r < b.size(); ++r) {
    IntWeight w;
    w.add_eps(b[r], sigma[r]);
    out.push_back(std::move(w));
  }
  return out;
}

/// Total weight sum_r sigma_r eps_{b_r}.
inline IntWeight weight_sum(const Tuple& b, const SignSeq& sigma) {
  IntWeight total;
  for (const IntWeight& w : weight_seq(b, sigma)) total += w;
  return total;
}

/// Evaluates the same order as bruhat_geq straight from its definition:
/// a >= b iff for every prefix length s the partial weight sums satisfy
/// sum_{r<=s} wt_r(a) <= sum_{r<=s} wt_r(b) in dominance order, with
/// equality of the full sums. Deliberately shares no code with the
/// prefix-count criterion; kept as an independent cross-check.
inline bool bruhat_geq_oracle(const Tuple& a, const Tuple& b,
                              const SignSeq& sigma) {
  detail::require_same_length(a, b);
  detail::require_same_length(b, sigma);
  const std::size_t n = b.size();
  IntWeight pa, pb;
  for (std::size_t s = 0; s < n; ++s) {
    pa.add_eps(a[s], sigma[s]);
    pb.add_eps(b[s], sigma[s]);
    if (s + 1 < n) {
      if (!dominance_leq(pa, pb)) return false;
    } else {
      if (!(pa == pb)) return false;
    }
  }
  return true;
}

/// Marks attached to the tensor positions when studying the i-th Chevalley
/// pair: 'f' where f_i can act, 'e' where e_i can act, '.' elsewhere.
enum class SigMark : char { f = 'f', e = 'e', none = '.' };

/// The i-signature of (b, sigma): position t is
///   'f' if (sigma_t = + and b_t = i)     or (sigma_t = - and b_t = i+1),
///   'e' if (sigma_t = + and b_t = i+1)   or (sigma_t = - and b_t = i),
///   '.' otherwise.
inline std::vector<SigMark> i_signature(const Tuple& b, const SignSeq& sigma,
                                        int i) {
  detail::require_same_length(b, sigma);
  std::vector<SigMark> marks(b.size(), SigMark::none);
  for (std::size_t t = 0; t < b.size(); ++t) {
    if (sigma[t] > 0) {
      if (b[t] == i) marks[t] = SigMark::f;
      else if (b[t] == i + 1) marks[t] = SigMark::e;
    } else {
      if (b[t] == i + 1) marks[t] = SigMark::f;
      else if (b[t] == i) marks[t] = SigMark::e;
    }
  }
  return marks;
}

/// Weight dictionary for the half-integral family: position r carries
/// lambda_r = sigma_r (z + b_r) with a fixed rational z, valid when 2z is
/// not an integer. With odd = true a trailing coordinate 1 is appended
/// (the odd-rank convention).
inline std::vector<Rational> lambda_q(const Tuple& b, const SignSeq& sigma,
                                      const Rational& z, bool odd = false) {
  detail::require_same_length(b, sigma);
  if ((2 * z).denominator() == 1)
    throw std::invalid_argument("parameter z must satisfy 2z not an integer");
  std::vector<Rational> out;
  out.reserve(b.size() + (odd ? 1 : 0));
  for (std::size_t r = 0; r < b.size(); ++r)
    out.push_back(Rational(sigma[r]) * (z + Rational(b[r])));
  if (odd) out.push_back(Rational(1));
  return out;
}

/// Integral weight dictionary with parity.
struct GlWeight {
  std::vector<int> coords;
  int parity = 0;  ///< 0 or 1

  bool operator==(const GlWeight&) const = default;
};

/// Weight dictionary for the integral family: position r carries
///   lambda'_r = sigma_r (b_r + sigma_1 + ... + sigma_{r-1} + (sigma_r - 1)/2),
/// and the parity is the sum of lambda'_r over the '-' positions, mod 2.
inline GlWeight lambda_gl(const Tuple& b, const SignSeq& sigma) {
  detail::require_same_length(b, sigma);
  GlWeight w;
  w.coords.reserve(b.size());
  int partial = 0;  // sigma_1 + ... + sigma_{r-1}
  for (std::size_t r = 0; r < b.size(); ++r) {
    int half = (sigma[r] - 1) / 2;  // 0 for '+', -1 for '-'
    int v = sigma[r] * (b[r] + partial + half);
    w.coords.push_back(v);
    if (sigma[r] < 0) w.parity ^= (v & 1);
    partial += sigma[r];
  }
  return w;
}

/// Dominant-typical test for the weight attached to b. In the lambda
/// dictionary (lambda_r = sigma_r (z + b_r)) dominance asks
/// lambda_r - lambda_s to avoid the negative part of the root pairing for
/// r < s, and typicality asks lambda_r + lambda_s != 0 across opposite
/// signs. Since z is generic (2z not an integer), these reduce to pure
/// entry comparisons in which z cancels:
///   same sign '+' : lambda_r >= lambda_s  <=>  b_r >= b_s,
///   same sign '-' : the overall minus flips it  <=>  b_r <= b_s,
///   opposite signs: lambda_r + lambda_s = +-((z+b_r) - (z+b_s)), which is
///                   nonzero  <=>  b_r != b_s.
inline bool is_dominant_typical(const Tuple& b, const SignSeq& sigma) {
  detail::require_same_length(b, sigma);
  const std::size_t n = b.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s) {
      if (sigma[r] > 0 && sigma[s] > 0) {
        if (!(b[r] >= b[s])) return false;
      } else if (sigma[r] < 0 && sigma[s] < 0) {
        if (!(b[r] <= b[s])) return false;
      } else {
        if (b[r] == b[s]) return false;
      }
    }
  return true;
}

/// The dominant source of b together with the lowering word that carries it
/// back to b.
///
/// a is built greedily left to right so that every prefix stays dominant
/// typical and each entry moves as little as possible:
///   a_1 = b_1;
///   sigma_s = + : a_s = min(b_s, all earlier '+' a_r - 1, all earlier '-' b_r - 1),
///   sigma_s = - : a_s = max(b_s, all earlier '-' a_r + 1, all earlier '+' b_r + 1).
/// Block r then lowers position r from a_r to b_r:
///   sigma_r = + : f_{b_r - 1} ... f_{a_r + 1} f_{a_r}   (displayed order),
///   sigma_r = - : f_{b_r} ... f_{a_r - 1},
/// and the full monomial is X = X_n ... X_2 (block for the last position
/// leftmost). Operators apply right to left, so the application order is
/// blocks r = 2..n, each block reversed relative to its display.
struct DominantSource {
  Tuple a;
  /// blocks[r-2] lists the generator subscripts of X_r in displayed
  /// (left-to-right) order; empty when a_r = b_r.
  std::vector<std::vector<int>> blocks;

  /// Generator subscripts in the order they are applied to a vector.
  std::vector<int> word() const {
    std::vector<int> w;
    for (const auto& blk : blocks)
      for (auto it = blk.rbegin(); it != blk.rend(); ++it) w.push_back(*it);
    return w;
  }

  /// Displayed form "(f_4 f_5 f_6)(f_3 f_4 f_5)..."; the identity (all
  /// blocks empty) displays as "1".
  std::string x_str() const {
    std::string out;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
      if (it->empty()) continue;
      out += '(';
      for (std::size_t k = 0; k < it->size(); ++k) {
        if (k) out += ' ';
        out += "f_" + std::to_string((*it)[k]);
      }
      out += ')';
    }
    return out.empty() ? "1" : out;
  }
};

inline DominantSource dominant_source(const Tuple& b, const SignSeq& sigma) {
  detail::require_same_length(b, sigma);
  const std::size_t n = b.size();
  std::vector<int> a;
  a.reserve(n);
  a.push_back(b[0]);
  for (std::size_t s = 1; s < n; ++s) {
    int v = b[s];
    if (sigma[s] > 0) {
      for (std::size_t r = 0; r < s; ++r)
        v = std::min(v, (sigma[r] > 0 ? a[r] : b[r]) - 1);
    } else {
      for (std::size_t r = 0; r < s; ++r)
        v = std::max(v, (sigma[r] < 0 ? a[r] : b[r]) + 1);
    }
    a.push_back(v);
  }
  DominantSource out;
  out.a = Tuple(a);
  out.blocks.reserve(n >= 1 ? n - 1 : 0);
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<int> blk;
    if (sigma[r] > 0) {
      for (int k = b[r] - 1; k >= a[r]; --k) blk.push_back(k);
    } else {
      for (int k = b[r]; k <= a[r] - 1; ++k) blk.push_back(k);
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

}  // namespace qkl
