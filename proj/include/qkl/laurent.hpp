#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace qkl {

/// Arbitrary-precision integer used for all polynomial coefficients and
/// counting results.
using Int = boost::multiprecision::cpp_int;

/// A Laurent polynomial in one variable q over the integers, i.e. an element
/// of Z[q, q^-1].
///
/// Stored sparsely as exponent -> coefficient with no zero coefficients, so
/// equality of values is equality of the underlying maps and iteration always
/// visits exponents in increasing order (which fixes every serialization
/// order downstream).
class LaurentPoly {
 public:
  using TermMap = std::map<std::int64_t, Int>;

  /// The zero polynomial.
  LaurentPoly() = default;

  static LaurentPoly constant(Int c) { return monomial(0, std::move(c)); }

  static LaurentPoly one() { return constant(Int(1)); }

  /// coeff * q^exp.
  static LaurentPoly monomial(std::int64_t exp, Int coeff = Int(1)) {
    LaurentPoly p;
    if (coeff != 0) p.terms_.emplace(exp, std::move(coeff));
    return p;
  }

  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second == 1;
  }

  /// Coefficient of q^exp (zero if absent).
  Int coeff(std::int64_t exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Int(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& other) {
    for (const auto& [exp, c] : other.terms_) add_term(exp, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& other) {
    for (const auto& [exp, c] : other.terms_) add_term(exp, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }

  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }

  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(exp, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& other) {
    *this = *this * other;
    return *this;
  }

  bool operator==(const LaurentPoly&) const = default;

  /// The bar involution q -> q^-1 (negates every exponent).
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(-exp, c);
    return r;
  }

  /// Value at q = 1, i.e. the sum of all coefficients.
  Int eval_one() const {
    Int s = 0;
    for (const auto& [exp, c] : terms_) s += c;
    return s;
  }

  /// True iff every exponent is >= 1, i.e. the value lies in q Z[q].
  bool in_qZq() const {
    return terms_.empty() || terms_.begin()->first >= 1;
  }

  struct BarSplit;  // { beta, rho }; defined after the class

  /// Splits p = beta + rho where bar(beta) = beta and rho is in q Z[q].
  ///
  /// Writing p = sum c_k q^k, the unique such beta is
  ///   beta = c_0 + sum_{k < 0} c_k (q^k + q^-k),
  /// i.e. each strictly negative exponent is mirrored to its positive twin.
  BarSplit bar_split() const;

  /// Rendering with terms in increasing exponent order, e.g.
  /// "q^-1 + 2 + q^3" (default) or "q^-1+2+q^3" (compact). Zero prints "0".
  std::string str(bool compact = false) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    const char* plus = compact ? "+" : " + ";
    const char* minus = compact ? "-" : " - ";
    for (const auto& [exp, c] : terms_) {
      const bool neg = c < 0;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? minus : plus;
      }
      Int mag = neg ? Int(-c) : c;
      if (exp == 0) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str();
        out += "q";
        if (exp != 1) out += "^" + std::to_string(exp);
      }
    }
    return out;
  }

 private:
  TermMap terms_;

  void add_term(std::int64_t exp, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
};

struct LaurentPoly::BarSplit {
  LaurentPoly beta;  ///< bar-invariant part
  LaurentPoly rho;   ///< remainder in q Z[q]
};

inline LaurentPoly::BarSplit LaurentPoly::bar_split() const {
  LaurentPoly beta;
  for (const auto& [exp, c] : terms_) {
    if (exp > 0) break;
    beta.add_term(exp, c);
    if (exp < 0) beta.add_term(-exp, c);
  }
  return {beta, *this - beta};
}

}  // namespace qkl
