#include "test_util.hpp"

#include "qkl/json_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace testutil;
using qkl::CanonicalCache;
using qkl::Json;
using qkl::LaurentPoly;
using qkl::SignSeq;
using qkl::TensorVector;
using qkl::Tuple;

namespace {

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("laurent JSON form", "[json]") {
  LaurentPoly p = poly({{-1, 1}, {0, 2}, {3, 1}});
  Json j = qkl::laurent_to_json(p);
  CHECK(j.dump() == R"({"-1":"1","0":"2","3":"1"})");
  CHECK(qkl::laurent_from_json(j) == p);
  CHECK(qkl::laurent_to_json(LaurentPoly()).dump() == "{}");

  CHECK_THROWS_AS(qkl::laurent_from_json(Json::parse(R"({"x":"1"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::laurent_from_json(Json::parse(R"({"0":1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::laurent_from_json(Json::parse(R"({"0":"1x"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::laurent_from_json(Json::parse("[]")),
                  std::invalid_argument);
}

TEST_CASE("vector JSON round trip and layout", "[json]") {
  TensorVector v = golden_c122();
  Json j = qkl::vector_to_json(v);
  CHECK(j.dump() ==
        R"({"sigma":"++-","terms":[)"
        R"({"tuple":[1,2,2],"coeffs":{"0":"1"}},)"
        R"({"tuple":[1,3,3],"coeffs":{"1":"1"}},)"
        R"({"tuple":[2,1,2],"coeffs":{"1":"1"}},)"
        R"({"tuple":[3,1,3],"coeffs":{"2":"1"}}]})");
  CHECK(qkl::vector_from_json(j) == v);

  // Zero-coefficient entries in a file normalize away on load.
  Json padded = Json::parse(
      R"({"sigma":"+","terms":[{"tuple":[3],"coeffs":{"0":"0"}}]})");
  CHECK(qkl::vector_from_json(padded).is_zero());

  CHECK_THROWS_AS(qkl::vector_from_json(Json::parse(R"({"sigma":5,"terms":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::vector_from_json(Json::parse(
                      R"({"sigma":"+","terms":[{"tuple":[1,2],"coeffs":{}}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::vector_from_json(Json::parse(
                      R"({"sigma":"+","terms":[{"tuple":[1],"coeffs":{"0":"1"}},)"
                      R"({"tuple":[1],"coeffs":{"1":"1"}}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::vector_from_json(Json::parse(R"({"terms":[]})")),
                  std::invalid_argument);
}

TEST_CASE("vector JSON round trip on random vectors", "[json][property]") {
  std::mt19937 rng(77777);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> nterms(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    int n = len(rng);
    TensorVector v(random_sig(rng, n));
    int k = nterms(rng);
    for (int t = 0; t < k; ++t)
      v.add_term(random_tuple(rng, n, -9, 9), random_poly(rng, 4, 6, 99));
    Json j = qkl::vector_to_json(v);
    CHECK(qkl::vector_from_json(j) == v);
    // Serialization is deterministic.
    CHECK(qkl::vector_to_json(qkl::vector_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("cache JSON round trip", "[json]") {
  CanonicalCache cache;
  qkl::canonical_basis(tup({1, 2, 2, 1}), sig("++--"), cache);

  Json j = qkl::cache_to_json(cache);
  CHECK(j["version"] == CanonicalCache::kVersion);
  CanonicalCache back = qkl::cache_from_json(j);
  CHECK(back.size() == cache.size());
  CHECK(qkl::cache_to_json(back).dump() == j.dump());

  auto path = temp_path("qkl_cache_roundtrip.json");
  qkl::save_cache_file(cache, path.string());
  CanonicalCache loaded = qkl::load_cache_file(path.string());
  CHECK(qkl::cache_to_json(loaded).dump() == j.dump());
  std::filesystem::remove(path);
}

TEST_CASE("cache JSON rejects bad input", "[json]") {
  CHECK_THROWS_AS(qkl::cache_from_json(Json::parse(R"({"version":2,"entries":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::cache_from_json(Json::parse(R"({"entries":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qkl::cache_from_json(Json::parse(R"({"version":1})")),
                  std::invalid_argument);

  // An entry violating the canonical shape must be rejected on load.
  Json j = Json::parse(
      R"({"version":1,"entries":[{"sigma":"+","b":[0],)"
      R"("vector":{"sigma":"+","terms":[{"tuple":[0],"coeffs":{"1":"1"}}]}}]})");
  CHECK_THROWS_AS(qkl::cache_from_json(j), std::invalid_argument);

  auto path = temp_path("qkl_cache_bad.json");
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(qkl::load_cache_file(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(qkl::load_cache_file(path.string()), std::invalid_argument);
}
