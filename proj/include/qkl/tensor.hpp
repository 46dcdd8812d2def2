#pragma once

#include "qkl/laurent.hpp"
#include "qkl/order.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkl {

namespace detail {

/// Exponent of the diagonal k_i eigenvalue on the single factor v_j with the
/// given sign: +(delta_{i,j} - delta_{i+1,j}) on a natural factor and the
/// negative of that on a dual natural factor.
inline int kappa(int i, int sign, int j) {
  int d = (i == j ? 1 : 0) - (i + 1 == j ? 1 : 0);
  return sign > 0 ? d : -d;
}

}  // namespace detail

/// A finitely supported Z[q,q^-1]-linear combination of the basis monomials
/// v_b of the tensor product selected by a fixed sign sequence. Terms are
/// kept in a map ordered lexicographically by tuple with no zero
/// coefficients, so equality is structural and iteration order is canonical.
class TensorVector {
 public:
  using TermMap = std::map<Tuple, LaurentPoly>;

  /// The zero vector of the space selected by sigma.
  explicit TensorVector(SignSeq sigma) : sigma_(std::move(sigma)) {}

  /// The basis monomial v_b.
  static TensorVector monomial(SignSeq sigma, Tuple b) {
    TensorVector v(std::move(sigma));
    detail::require_same_length(b, v.sigma_);
    v.terms_.emplace(std::move(b), LaurentPoly::one());
    return v;
  }

  const SignSeq& sigma() const { return sigma_; }

  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of v_b (zero if absent).
  LaurentPoly coeff(const Tuple& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  /// Adds c * v_b, dropping the term if the sum cancels.
  void add_term(const Tuple& b, const LaurentPoly& c) {
    detail::require_same_length(b, sigma_);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// The tuples with nonzero coefficient, in lexicographic order.
  std::vector<Tuple> support() const {
    std::vector<Tuple> s;
    s.reserve(terms_.size());
    for (const auto& [b, c] : terms_) s.push_back(b);
    return s;
  }

  TensorVector& operator+=(const TensorVector& other) {
    require_same_space(other);
    for (const auto& [b, c] : other.terms_) add_term(b, c);
    return *this;
  }

  TensorVector& operator-=(const TensorVector& other) {
    require_same_space(other);
    for (const auto& [b, c] : other.terms_) add_term(b, -c);
    return *this;
  }

  friend TensorVector operator+(TensorVector a, const TensorVector& b) {
    a += b;
    return a;
  }

  friend TensorVector operator-(TensorVector a, const TensorVector& b) {
    a -= b;
    return a;
  }

  /// Scalar multiple c * v.
  friend TensorVector operator*(const LaurentPoly& c, const TensorVector& v) {
    TensorVector r(v.sigma_);
    if (c.is_zero()) return r;
    for (const auto& [b, p] : v.terms_) r.terms_.emplace(b, c * p);
    return r;
  }

  bool operator==(const TensorVector&) const = default;

  /// Rendering such as "v(1,2,2) + q v(2,1,2) + (1+q^2) v(1,3,1,3)": terms
  /// in lexicographic tuple order; a coefficient prints bare when it is a
  /// single positive-coefficient monomial and parenthesized (compact form)
  /// otherwise; a unit coefficient is omitted. Zero prints "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [b, c] : terms_) {
      if (!out.empty()) out += " + ";
      if (!c.is_one()) {
        const bool bare = c.terms().size() == 1 && c.terms().begin()->second > 0;
        if (bare)
          out += c.str(true) + " ";
        else
          out += "(" + c.str(true) + ") ";
      }
      out += "v(" + b.str() + ")";
    }
    return out;
  }

 private:
  SignSeq sigma_;
  TermMap terms_;

  void require_same_space(const TensorVector& other) const {
    if (!(sigma_ == other.sigma_))
      throw std::invalid_argument(
          "tensor vectors live in different spaces: sigma " + sigma_.str() +
          " vs " + other.sigma_.str());
  }
};

/// Action of the lowering generator f_i, by the closed form
///   f_i v_b = sum over positions t marked 'f' of q^{m_t} v_{b + sigma_t d_t},
///   m_t = sum_{s > t} kappa(i, sigma_s, b_s),
/// where d_t shifts entry t by one. The exponent records the k_i eigenvalue
/// of the factors to the RIGHT of the acting position (coproduct with k on
/// the trailing legs); this orientation is part of the external contract and
/// must not be flipped.
inline TensorVector f_act(int i, const TensorVector& v) {
  const SignSeq& sigma = v.sigma();
  TensorVector out(sigma);
  const std::size_t n = sigma.size();
  for (const auto& [b, c] : v.terms()) {
    const std::vector<SigMark> marks = i_signature(b, sigma, i);
    // suffix[t] = sum_{s > t} kappa(i, sigma_s, b_s)
    std::vector<int> suffix(n + 1, 0);
    for (std::size_t s = n; s-- > 0;)
      suffix[s] = suffix[s + 1] + detail::kappa(i, sigma[s], b[s]);
    for (std::size_t t = 0; t < n; ++t) {
      if (marks[t] != SigMark::f) continue;
      out.add_term(b.shifted(t, sigma[t]),
                   LaurentPoly::monomial(suffix[t + 1]) * c);
    }
  }
  return out;
}

/// Action of the raising generator e_i, by the closed form
///   e_i v_b = sum over positions t marked 'e' of q^{m'_t} v_{b - sigma_t d_t},
///   m'_t = -sum_{s < t} kappa(i, sigma_s, b_s),
/// the mirror image of f_act: the exponent records the inverse k_i
/// eigenvalue of the factors to the LEFT of the acting position (coproduct
/// with k^-1 on the leading legs). Orientation fixed; must not be flipped.
inline TensorVector e_act(int i, const TensorVector& v) {
  const SignSeq& sigma = v.sigma();
  TensorVector out(sigma);
  const std::size_t n = sigma.size();
  for (const auto& [b, c] : v.terms()) {
    const std::vector<SigMark> marks = i_signature(b, sigma, i);
    // prefix[t] = sum_{s < t} kappa(i, sigma_s, b_s)
    std::vector<int> prefix(n + 1, 0);
    for (std::size_t s = 0; s < n; ++s)
      prefix[s + 1] = prefix[s] + detail::kappa(i, sigma[s], b[s]);
    for (std::size_t t = 0; t < n; ++t) {
      if (marks[t] != SigMark::e) continue;
      out.add_term(b.shifted(t, -sigma[t]),
                   LaurentPoly::monomial(-prefix[t]) * c);
    }
  }
  return out;
}

/// Applies a word of lowering generators: word = (i_1, i_2, ..., i_k) acts
/// as f_{i_k} ... f_{i_2} f_{i_1}, i.e. entries are applied left to right.
inline TensorVector apply_monomial(const std::vector<int>& word,
                                   TensorVector v) {
  for (int i : word) v = f_act(i, v);
  return v;
}

/// Specialization q = 1: the integer vector of coefficient sums, indexed by
/// the support tuples (terms whose coefficient sums to zero are dropped).
inline std::map<Tuple, Int> specialize_one(const TensorVector& v) {
  std::map<Tuple, Int> out;
  for (const auto& [b, c] : v.terms()) {
    Int s = c.eval_one();
    if (s != 0) out.emplace(b, std::move(s));
  }
  return out;
}

/// The common weight of all monomials in v. Errors on the zero vector and
/// on inhomogeneous input.
inline IntWeight weight_of(const TensorVector& v) {
  if (v.is_zero())
    throw std::invalid_argument("weight_of: zero vector has no weight");
  bool first = true;
  IntWeight w;
  for (const auto& [b, c] : v.terms()) {
    IntWeight wb = weight_sum(b, v.sigma());
    if (first) {
      w = std::move(wb);
      first = false;
    } else if (!(wb == w)) {
      throw std::invalid_argument(
          "weight_of: vector is not weight-homogeneous");
    }
  }
  return w;
}

}  // namespace qkl
