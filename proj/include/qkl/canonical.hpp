#pragma once

#include "qkl/laurent.hpp"
#include "qkl/order.hpp"
#include "qkl/tensor.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkl {

/// Resource limits for canonical_basis. Both must be strictly positive.
/// max_recursion_depth bounds the nesting of recursive calls (prefix
/// reductions plus correction-term recursions); max_correction_steps bounds
/// the number of correction subtractions within any single call.
struct Budget {
  int max_recursion_depth = 64;
  long max_correction_steps = 10000;
};

/// Thrown when a Budget limit is hit; names the (sigma, b) whose
/// computation overflowed so callers can report or enlarge limits.
class BudgetExceeded : public std::runtime_error {
 public:
  enum class Kind { RecursionDepth, CorrectionSteps };

  BudgetExceeded(Kind kind, const SignSeq& sigma, const Tuple& b)
      : std::runtime_error(std::string("budget exceeded (") +
                           (kind == Kind::RecursionDepth
                                ? "recursion depth"
                                : "correction steps") +
                           ") while computing the canonical basis element at "
                           "sigma=" +
                           sigma.str() + " b=" + b.str()),
        kind_(kind),
        sigma_(sigma.str()),
        b_(b) {}

  Kind kind() const { return kind_; }
  const std::string& sigma_str() const { return sigma_; }
  const Tuple& offending_tuple() const { return b_; }

 private:
  Kind kind_;
  std::string sigma_;
  Tuple b_;
};

/// True iff vec has the defining shape of the canonical basis element at b:
/// coefficient exactly 1 on v_b, and every other support tuple strictly
/// above b in the Bruhat-type order with coefficient in q Z[q].
inline bool is_canonical_shape(const Tuple& b, const TensorVector& vec) {
  if (!vec.coeff(b).is_one()) return false;
  for (const auto& [a, c] : vec.terms()) {
    if (a == b) continue;
    if (!c.in_qZq()) return false;
    if (!bruhat_geq(a, b, vec.sigma())) return false;
  }
  return true;
}

/// Memo table of computed canonical basis elements, keyed by (sigma, b).
/// Every stored vector is checked against is_canonical_shape on insertion,
/// so a cache can only ever hold well-formed entries; keys iterate in
/// (sigma, b) order, which fixes the serialization order.
class CanonicalCache {
 public:
  static constexpr int kVersion = 1;

  using Key = std::pair<SignSeq, Tuple>;
  using Map = std::map<Key, TensorVector>;

  const TensorVector* find(const SignSeq& sigma, const Tuple& b) const {
    auto it = entries_.find(Key(sigma, b));
    return it == entries_.end() ? nullptr : &it->second;
  }

  const TensorVector& insert(const SignSeq& sigma, const Tuple& b,
                             TensorVector vec) {
    detail::require_same_length(b, sigma);
    if (!(vec.sigma() == sigma))
      throw std::logic_error("cache insert: vector sigma mismatch");
    if (!is_canonical_shape(b, vec))
      throw std::logic_error(
          "cache insert: vector is not a canonical basis element for b=" +
          b.str());
    auto [it, inserted] = entries_.emplace(Key(sigma, b), std::move(vec));
    return it->second;
  }

  /// Absorbs every entry of other. Entries under equal keys must agree
  /// (they are unique mathematically); a conflict means a corrupted cache.
  void merge(const CanonicalCache& other) {
    for (const auto& [key, vec] : other.entries_) {
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        entries_.emplace(key, vec);
      } else if (!(it->second == vec)) {
        throw std::invalid_argument(
            "cache merge: conflicting entries for sigma=" + key.first.str() +
            " b=" + key.second.str());
      }
    }
  }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  Map entries_;
};

/// The extension index j for the last tensor position, given the support of
/// the canonical basis element of the length n-1 prefix. For a '+' final
/// sign, j is the largest integer with j <= b_n that stays weakly below
/// every a_r at earlier '+' positions and strictly below every a_r at
/// earlier '-' positions, across all support tuples a; for a '-' final sign
/// the mirror image (smallest j >= b_n, weakly above '-' entries, strictly
/// above '+' entries).
inline int select_j(const std::vector<Tuple>& support, const SignSeq& sigma,
                    int b_n) {
  const std::size_t n = sigma.size();
  if (n < 2)
    throw std::invalid_argument("select_j: sign sequence must have length >= 2");
  if (support.empty())
    throw std::invalid_argument("select_j: support must be nonempty");
  int j = b_n;
  for (const Tuple& a : support) {
    if (a.size() != n - 1)
      throw std::invalid_argument(
          "select_j: support tuple length must be one less than sigma length");
    for (std::size_t r = 0; r + 1 < n; ++r) {
      if (sigma[n - 1] > 0)
        j = std::min(j, sigma[r] > 0 ? a[r] : a[r] - 1);
      else
        j = std::max(j, sigma[r] < 0 ? a[r] : a[r] + 1);
    }
  }
  return j;
}

/// The lowering word that walks the last entry from j back to b_n, in
/// application order: (f_j, f_{j+1}, ..., f_{b_n - 1}) for a '+' final sign
/// and (f_{j-1}, f_{j-2}, ..., f_{b_n}) for a '-' final sign; empty when
/// j = b_n. Requires j on the correct side of b_n.
inline std::vector<int> x_monomial(int j, int b_n, int sigma_n) {
  if (sigma_n != 1 && sigma_n != -1)
    throw std::invalid_argument("x_monomial: sign must be +1 or -1");
  std::vector<int> word;
  if (sigma_n > 0) {
    if (j > b_n)
      throw std::invalid_argument("x_monomial: need j <= b_n for a '+' sign");
    for (int k = j; k <= b_n - 1; ++k) word.push_back(k);
  } else {
    if (j < b_n)
      throw std::invalid_argument("x_monomial: need j >= b_n for a '-' sign");
    for (int k = j - 1; k >= b_n; --k) word.push_back(k);
  }
  return word;
}

namespace detail {

inline const TensorVector& canonical_rec(const Tuple& b, const SignSeq& sigma,
                                         CanonicalCache& cache,
                                         const Budget& budget,
                                         int depth_left) {
  if (const TensorVector* hit = cache.find(sigma, b)) return *hit;
  if (depth_left <= 0)
    throw BudgetExceeded(BudgetExceeded::Kind::RecursionDepth, sigma, b);
  const std::size_t n = sigma.size();

  if (n == 1)
    return cache.insert(sigma, b, TensorVector::monomial(sigma, b));

  // Recurse on the length n-1 prefix, extend every support tuple by the
  // selected index j (the extension operator acts as the identity on these
  // monomials), then lower the last entry from j to b_n.
  const SignSeq head_sigma = sigma.prefix();
  const Tuple head_b = b.prefix();
  const TensorVector& head =
      canonical_rec(head_b, head_sigma, cache, budget, depth_left - 1);
  const int last = b[n - 1];
  const int j = select_j(head.support(), sigma, last);

  TensorVector w(sigma);
  for (const auto& [t, c] : head.terms()) w.add_term(t.appended(j), c);
  w = apply_monomial(x_monomial(j, last, sigma[n - 1]), std::move(w));

  // Correction loop: while some tuple a != b carries a coefficient not in
  // q Z[q], take the Bruhat-minimal such a (lexicographically smallest on
  // ties), split its coefficient into bar-invariant part beta plus q Z[q]
  // remainder, and subtract beta times the canonical element at a. Each
  // subtraction clears the offending coefficient's bar-invariant part
  // without disturbing anything Bruhat-below a.
  long steps = 0;
  for (;;) {
    std::vector<Tuple> offenders;  // lexicographically sorted (map order)
    for (const auto& [a, c] : w.terms())
      if (!(a == b) && !c.in_qZq()) offenders.push_back(a);
    if (offenders.empty()) break;
    if (steps >= budget.max_correction_steps)
      throw BudgetExceeded(BudgetExceeded::Kind::CorrectionSteps, sigma, b);

    const Tuple* pick = nullptr;
    for (const Tuple& cand : offenders) {
      bool minimal = true;
      for (const Tuple& other : offenders)
        if (!(other == cand) && bruhat_geq(cand, other, sigma)) {
          minimal = false;
          break;
        }
      if (minimal) {
        pick = &cand;  // first minimal in lex order = lex-smallest minimal
        break;
      }
    }
    const Tuple a = *pick;
    const LaurentPoly beta = w.coeff(a).bar_split().beta;
    const TensorVector& corr =
        canonical_rec(a, sigma, cache, budget, depth_left - 1);
    w -= beta * corr;
    ++steps;
  }

  return cache.insert(sigma, b, std::move(w));
}

}  // namespace detail

/// The canonical basis element at b in the space selected by sigma:
/// the unique bar-invariant vector equal to v_b plus a q Z[q]-combination
/// of monomials strictly above b. Computed by the prefix-extension
/// recursion with correction subtractions; results are memoized in cache
/// (and reused from it), so passing a warm cache skips finished work.
inline TensorVector canonical_basis(const Tuple& b, const SignSeq& sigma,
                                    CanonicalCache& cache,
                                    const Budget& budget = {}) {
  detail::require_same_length(b, sigma);
  if (budget.max_recursion_depth <= 0 || budget.max_correction_steps <= 0)
    throw std::invalid_argument("budget limits must be strictly positive");
  return detail::canonical_rec(b, sigma, cache, budget,
                               budget.max_recursion_depth);
}

/// The polynomial d_{a,b}(q): coefficient of v_a in the canonical basis
/// element at b. Zero unless a >= b; equals 1 at a = b.
inline LaurentPoly kl_poly(const Tuple& a, const Tuple& b,
                           const SignSeq& sigma, CanonicalCache& cache,
                           const Budget& budget = {}) {
  detail::require_same_length(a, sigma);
  return canonical_basis(b, sigma, cache, budget).coeff(a);
}

/// The specialization d_{a,b}(1), an integer multiplicity.
inline Int multiplicity(const Tuple& a, const Tuple& b, const SignSeq& sigma,
                        CanonicalCache& cache, const Budget& budget = {}) {
  return kl_poly(a, b, sigma, cache, budget).eval_one();
}

}  // namespace qkl
