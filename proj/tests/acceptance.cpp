// Acceptance gate: one self-contained check per numbered criterion, each
// printing a single [PASS]/[FAIL] line. Exits nonzero if any criterion
// fails. Diagnostics for failures go to standard error.

#include "test_util.hpp"

#include "qkl/json_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

using namespace testutil;
using qkl::Budget;
using qkl::BudgetExceeded;
using qkl::CanonicalCache;
using qkl::IntWeight;
using qkl::LaurentPoly;
using qkl::SigMark;
using qkl::SignSeq;
using qkl::TensorVector;
using qkl::Tuple;

namespace {

int g_failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", num, name);
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "  criterion %d failed: %s\n", num,
                 detail.empty() ? "(no detail)" : detail.c_str());
  }
}

#define EXPECT(cond, message)                \
  do {                                       \
    if (!(cond)) {                           \
      if (ok) detail = (message);            \
      ok = false;                            \
    }                                        \
  } while (0)

// Criterion 1: golden end-to-end four-factor computation, exact, < 1 s.
void criterion1() {
  bool ok = true;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();

  CanonicalCache cache;
  TensorVector c122 = qkl::canonical_basis(tup({1, 2, 2}), sig("++-"), cache);
  EXPECT(c122 == golden_c122(), "three-factor canonical element mismatch");

  const int j = qkl::select_j(c122.support(), sig("++--"), 1);
  EXPECT(j == 4, "selected extension index is not 4");

  TensorVector ext(sig("++--"));
  for (const auto& [t, c] : c122.terms()) ext.add_term(t.appended(j), c);
  TensorVector expansion =
      qkl::apply_monomial(qkl::x_monomial(j, 1, -1), std::move(ext));
  EXPECT(expansion == golden_expansion17(),
         "17-term lowering expansion mismatch");

  TensorVector c1313 =
      qkl::canonical_basis(tup({1, 3, 1, 3}), sig("++--"), cache);
  EXPECT(c1313 == golden_c1313(), "8-term canonical element mismatch");

  TensorVector c1221 =
      qkl::canonical_basis(tup({1, 2, 2, 1}), sig("++--"), cache);
  EXPECT(c1221 == golden_c1221(), "final canonical element mismatch");
  EXPECT(c1221 == expansion - c1313,
         "final element is not the expansion minus the 8-term element");

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  EXPECT(ms < 1000, "end-to-end run took " + std::to_string(ms) + " ms");
  report(1, "golden end-to-end four-factor example", ok, detail);
}

// Criterion 2: golden dominant-source example.
void criterion2() {
  bool ok = true;
  std::string detail;
  auto ds = qkl::dominant_source(tup({3, 4, 3, 4, 3, 4}), sig("++-+--"));
  EXPECT(ds.a == tup({3, 2, 5, 1, 6, 7}),
         "source tuple is " + ds.a.str());
  EXPECT(ds.x_str() ==
             "(f_4 f_5 f_6)(f_3 f_4 f_5)(f_3 f_2 f_1)(f_3 f_4)(f_3 f_2)",
         "displayed monomial is " + ds.x_str());
  report(2, "golden dominant-source example", ok, detail);
}

// Criterion 3: triangular shape of 200 random canonical elements within
// default budgets.
void criterion3() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1003);
  std::uniform_int_distribution<int> len(1, 4);
  CanonicalCache cache;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, 0, 4);
    try {
      TensorVector c = qkl::canonical_basis(b, sigma, cache);
      EXPECT(qkl::is_canonical_shape(b, c),
             "shape violated at sigma=" + sigma.str() + " b=" + b.str());
    } catch (const BudgetExceeded& e) {
      EXPECT(false, std::string("budget exhausted: ") + e.what());
    }
  }
  report(3, "triangularity on 200 random elements", ok, detail);
}

// Criterion 4: q=1 specialization of single generator actions matches the
// signature rule exactly, 500 random instances each way.
void criterion4() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1004);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> idx(-4, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, -3, 3);
    const int i = idx(rng);
    auto marks = qkl::i_signature(b, sigma, i);
    TensorVector v = TensorVector::monomial(sigma, b);

    std::map<Tuple, qkl::Int> expect_f, expect_e;
    for (int t = 0; t < n; ++t) {
      if (marks[t] == SigMark::f) expect_f[b.shifted(t, sigma[t])] = 1;
      if (marks[t] == SigMark::e) expect_e[b.shifted(t, -sigma[t])] = 1;
    }
    EXPECT(qkl::specialize_one(qkl::f_act(i, v)) == expect_f,
           "f support mismatch at sigma=" + sigma.str() + " b=" + b.str() +
               " i=" + std::to_string(i));
    EXPECT(qkl::specialize_one(qkl::e_act(i, v)) == expect_e,
           "e support mismatch at sigma=" + sigma.str() + " b=" + b.str() +
               " i=" + std::to_string(i));
  }
  report(4, "q=1 signature rule on 500 random actions", ok, detail);
}

// Criterion 5: the prefix-count criterion agrees with the definitional
// oracle on 1000 random pairs.
void criterion5() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1005);
  std::uniform_int_distribution<int> len(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, -3, 3);
    Tuple a = (trial % 10 == 0) ? b : random_tuple(rng, n, -3, 3);
    EXPECT(qkl::bruhat_geq(a, b, sigma) ==
               qkl::bruhat_geq_oracle(a, b, sigma),
           "disagreement at sigma=" + sigma.str() + " a=" + a.str() +
               " b=" + b.str());
  }
  report(5, "order criterion equals definitional oracle on 1000 pairs", ok,
         detail);
}

// Criterion 6: monotonicity of the order under simultaneous lowering moves,
// with the stated equality characterization, on 500 valid instances.
void criterion6() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1006);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> idx(-1, 3);
  std::bernoulli_distribution same(0.125);
  int valid = 0;
  long attempts = 0;
  while (valid < 500 && attempts < 2000000) {
    ++attempts;
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, 0, 3);
    const int i = idx(rng);
    auto marks_b = qkl::i_signature(b, sigma, i);
    if (marks_b[n - 1] != SigMark::f) continue;
    Tuple a = same(rng) ? b : random_tuple(rng, n, 0, 3);
    if (!qkl::bruhat_geq(a, b, sigma)) continue;
    auto marks_a = qkl::i_signature(a, sigma, i);
    std::vector<int> fpos;
    for (int r = 0; r < n; ++r)
      if (marks_a[r] == SigMark::f) fpos.push_back(r);
    if (fpos.empty()) continue;
    const int r = fpos[std::uniform_int_distribution<std::size_t>(
        0, fpos.size() - 1)(rng)];
    ++valid;

    Tuple a2 = a.shifted(r, sigma[r]);
    Tuple b2 = b.shifted(n - 1, sigma[n - 1]);
    EXPECT(qkl::bruhat_geq(a2, b2, sigma),
           "shifted comparison fails at sigma=" + sigma.str() +
               " a=" + a.str() + " b=" + b.str() + " r=" + std::to_string(r) +
               " i=" + std::to_string(i));
    const bool shifted_equal = (a2 == b2);
    const bool diagonal = (a == b && r == n - 1);
    EXPECT(shifted_equal == diagonal,
           "equality characterization fails at sigma=" + sigma.str() +
               " a=" + a.str() + " b=" + b.str() + " r=" + std::to_string(r));
  }
  EXPECT(valid == 500, "only " + std::to_string(valid) +
                           " valid instances found");
  report(6, "order monotonicity under lowering moves, 500 instances", ok,
         detail);
}

// Criterion 7: the dominant-source lowering word, specialized at q=1, hits
// v_b with unit coefficient plus strictly higher tuples; 200 random b.
void criterion7() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1007);
  std::uniform_int_distribution<int> len(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, -3, 3);
    auto ds = qkl::dominant_source(b, sigma);
    TensorVector v = qkl::apply_monomial(
        ds.word(), TensorVector::monomial(sigma, ds.a));
    auto sp = qkl::specialize_one(v);
    auto it = sp.find(b);
    EXPECT(it != sp.end() && it->second == 1,
           "unit coefficient on v_b missing at sigma=" + sigma.str() +
               " b=" + b.str());
    for (const auto& [c, m] : sp) {
      if (c == b) continue;
      EXPECT(qkl::bruhat_geq(c, b, sigma) && !(c == b),
             "support tuple " + c.str() + " not strictly above b=" + b.str());
    }
  }
  report(7, "construction lemma at q=1 on 200 random sources", ok, detail);
}

// Criterion 8: quantum commutation relation on 100 random vectors, checked
// exactly in the Laurent ring by cross-multiplying with q - q^-1.
void criterion8() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1008);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> nterms(1, 3);
  const LaurentPoly qdiff = poly({{1, 1}, {-1, -1}});
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    TensorVector v(sigma);
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      LaurentPoly c = random_poly(rng, 2, 2, 3);
      if (c.is_zero()) c = LaurentPoly::one();
      v.add_term(random_tuple(rng, n, -2, 2), c);
    }
    if (v.is_zero()) continue;
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [b, c] : v.terms())
      for (int r = 0; r < n; ++r) {
        lo = first ? b[r] : std::min(lo, b[r]);
        hi = first ? b[r] : std::max(hi, b[r]);
        first = false;
      }
    std::uniform_int_distribution<int> idx(lo - 2, hi + 1);
    const int i = idx(rng), j = idx(rng);

    TensorVector lhs =
        qkl::e_act(i, qkl::f_act(j, v)) - qkl::f_act(j, qkl::e_act(i, v));
    TensorVector rhs(sigma);
    if (i == j) rhs = k_diag(i, 1, v) - k_diag(i, -1, v);
    EXPECT(qdiff * lhs == rhs,
           "commutator identity fails at sigma=" + sigma.str() +
               " i=" + std::to_string(i) + " j=" + std::to_string(j));
  }
  report(8, "quantum commutation on 100 random vectors", ok, detail);
}

// Criterion 9: for dominant typical b the multiplicities collapse to the
// Kronecker delta; 100 random such b.
void criterion9() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(1009);
  std::uniform_int_distribution<int> len(1, 4);
  CanonicalCache cache;
  int found = 0;
  long attempts = 0;
  while (found < 100 && attempts < 1000000) {
    ++attempts;
    const int n = len(rng);
    SignSeq sigma = random_sig(rng, n);
    Tuple b = random_tuple(rng, n, 0, 6);
    if (!qkl::is_dominant_typical(b, sigma)) continue;
    ++found;
    TensorVector c = qkl::canonical_basis(b, sigma, cache);
    for (const Tuple& a : c.support()) {
      qkl::Int m = qkl::multiplicity(a, b, sigma, cache);
      const qkl::Int want = (a == b) ? 1 : 0;
      EXPECT(m == want, "multiplicity at a=" + a.str() + " b=" + b.str() +
                            " sigma=" + sigma.str() + " is " + m.str());
    }
  }
  EXPECT(found == 100,
         "only " + std::to_string(found) + " dominant typical samples");
  report(9, "dominant-typical degeneration on 100 random weights", ok,
         detail);
}

// Criterion 10: cold, warm (reloaded from disk) and merged caches all
// reproduce the criterion-1 values with byte-identical serialization.
void criterion10() {
  bool ok = true;
  std::string detail;
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "qkl_acceptance_cache.json";

  // Cold.
  CanonicalCache cold;
  TensorVector v122 = qkl::canonical_basis(tup({1, 2, 2}), sig("++-"), cold);
  TensorVector v1313 =
      qkl::canonical_basis(tup({1, 3, 1, 3}), sig("++--"), cold);
  TensorVector v1221 =
      qkl::canonical_basis(tup({1, 2, 2, 1}), sig("++--"), cold);
  const std::string s122 = qkl::vector_to_json(v122).dump();
  const std::string s1313 = qkl::vector_to_json(v1313).dump();
  const std::string s1221 = qkl::vector_to_json(v1221).dump();
  const std::string cache_bytes = qkl::cache_to_json(cold).dump();

  // Warm: persist, reload, recompute.
  qkl::save_cache_file(cold, path.string());
  CanonicalCache warm = qkl::load_cache_file(path.string());
  EXPECT(qkl::cache_to_json(warm).dump() == cache_bytes,
         "reloaded cache serializes differently");
  TensorVector w122 = qkl::canonical_basis(tup({1, 2, 2}), sig("++-"), warm);
  TensorVector w1313 =
      qkl::canonical_basis(tup({1, 3, 1, 3}), sig("++--"), warm);
  TensorVector w1221 =
      qkl::canonical_basis(tup({1, 2, 2, 1}), sig("++--"), warm);
  EXPECT(w122 == v122 && w1313 == v1313 && w1221 == v1221,
         "warm recomputation differs from cold");
  EXPECT(qkl::vector_to_json(w1221).dump() == s1221 &&
             qkl::vector_to_json(w1313).dump() == s1313 &&
             qkl::vector_to_json(w122).dump() == s122,
         "warm serialization differs from cold");
  EXPECT(qkl::cache_to_json(warm).dump() == cache_bytes,
         "warm cache grew or changed");

  // Merged: two independently filled caches combined.
  CanonicalCache part_a, part_b;
  qkl::canonical_basis(tup({1, 2, 2}), sig("++-"), part_a);
  qkl::canonical_basis(tup({1, 3, 1, 3}), sig("++--"), part_b);
  part_a.merge(part_b);
  TensorVector m1221 =
      qkl::canonical_basis(tup({1, 2, 2, 1}), sig("++--"), part_a);
  EXPECT(m1221 == v1221, "merged-cache recomputation differs");
  EXPECT(qkl::vector_to_json(m1221).dump() == s1221,
         "merged-cache serialization differs");

  fs::remove(path);
  report(10, "cold/warm/merged cache determinism", ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures > 0) {
    std::fprintf(stderr, "%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
