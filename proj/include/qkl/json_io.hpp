#pragma once

#include "qkl/canonical.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qkl {

/// Order-preserving JSON type: objects serialize their members in insertion
/// order, so every emitter below produces byte-identical output for equal
/// values.
using Json = nlohmann::ordered_json;

namespace detail {

inline Int parse_bigint(const std::string& text) {
  std::size_t i = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (i == text.size())
    throw std::invalid_argument("invalid integer literal '" + text + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("invalid integer literal '" + text + "'");
  return Int(text);
}

inline std::int64_t parse_exponent(const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid exponent key '" + text + "'");
  }
}

}  // namespace detail

/// Laurent polynomial as an object of exponent -> decimal coefficient
/// string, e.g. {"-1":"1","0":"2","3":"1"}; keys appear in increasing
/// exponent order. Zero is the empty object.
inline Json laurent_to_json(const LaurentPoly& p) {
  Json obj = Json::object();
  for (const auto& [exp, c] : p.terms())
    obj[std::to_string(exp)] = c.str();
  return obj;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_object())
    throw std::invalid_argument("polynomial JSON must be an object");
  LaurentPoly p;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string())
      throw std::invalid_argument(
          "polynomial coefficient must be a decimal string");
    std::int64_t exp = detail::parse_exponent(key);
    Int c = detail::parse_bigint(value.get<std::string>());
    p += LaurentPoly::monomial(exp, std::move(c));
  }
  return p;
}

/// Tensor vector as {"sigma": "...", "terms": [{"tuple": [...], "coeffs":
/// {...}}, ...]} with terms in lexicographic tuple order.
inline Json vector_to_json(const TensorVector& v) {
  Json obj = Json::object();
  obj["sigma"] = v.sigma().str();
  Json terms = Json::array();
  for (const auto& [b, c] : v.terms()) {
    Json term = Json::object();
    term["tuple"] = b.entries();
    term["coeffs"] = laurent_to_json(c);
    terms.push_back(std::move(term));
  }
  obj["terms"] = std::move(terms);
  return obj;
}

inline TensorVector vector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("sigma") || !j.contains("terms"))
    throw std::invalid_argument(
        "vector JSON must be an object with 'sigma' and 'terms'");
  if (!j["sigma"].is_string())
    throw std::invalid_argument("vector 'sigma' must be a string");
  SignSeq sigma = SignSeq::parse(j["sigma"].get<std::string>());
  if (!j["terms"].is_array())
    throw std::invalid_argument("vector 'terms' must be an array");
  TensorVector v(sigma);
  for (const Json& term : j["terms"]) {
    if (!term.is_object() || !term.contains("tuple") ||
        !term.contains("coeffs"))
      throw std::invalid_argument(
          "vector term must be an object with 'tuple' and 'coeffs'");
    if (!term["tuple"].is_array())
      throw std::invalid_argument("term 'tuple' must be an array of integers");
    std::vector<int> entries;
    for (const Json& e : term["tuple"]) {
      if (!e.is_number_integer())
        throw std::invalid_argument(
            "term 'tuple' must be an array of integers");
      entries.push_back(e.get<int>());
    }
    Tuple b(std::move(entries));
    if (b.size() != sigma.size())
      throw std::invalid_argument("term tuple length does not match sigma");
    if (!v.coeff(b).is_zero())
      throw std::invalid_argument("duplicate term for tuple " + b.str());
    v.add_term(b, laurent_from_json(term["coeffs"]));
  }
  return v;
}

/// Cache file as {"version": 1, "entries": [{"sigma": "...", "b": [...],
/// "vector": {...}}, ...]} with entries sorted by (sigma, b). Loading
/// rejects unknown versions and re-validates every entry, so a corrupted
/// file cannot poison later computations.
inline Json cache_to_json(const CanonicalCache& cache) {
  Json obj = Json::object();
  obj["version"] = CanonicalCache::kVersion;
  Json entries = Json::array();
  for (const auto& [key, vec] : cache.entries()) {
    Json entry = Json::object();
    entry["sigma"] = key.first.str();
    entry["b"] = key.second.entries();
    entry["vector"] = vector_to_json(vec);
    entries.push_back(std::move(entry));
  }
  obj["entries"] = std::move(entries);
  return obj;
}

inline CanonicalCache cache_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("version"))
    throw std::invalid_argument("cache JSON must be an object with 'version'");
  if (!j["version"].is_number_integer() ||
      j["version"].get<int>() != CanonicalCache::kVersion)
    throw std::invalid_argument("unsupported cache version: " +
                                j["version"].dump());
  if (!j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("cache JSON must contain an 'entries' array");
  CanonicalCache cache;
  for (const Json& entry : j["entries"]) {
    if (!entry.is_object() || !entry.contains("sigma") ||
        !entry.contains("b") || !entry.contains("vector"))
      throw std::invalid_argument(
          "cache entry must be an object with 'sigma', 'b' and 'vector'");
    if (!entry["sigma"].is_string())
      throw std::invalid_argument("cache entry 'sigma' must be a string");
    SignSeq sigma = SignSeq::parse(entry["sigma"].get<std::string>());
    if (!entry["b"].is_array())
      throw std::invalid_argument("cache entry 'b' must be an integer array");
    std::vector<int> entries_b;
    for (const Json& e : entry["b"]) {
      if (!e.is_number_integer())
        throw std::invalid_argument(
            "cache entry 'b' must be an integer array");
      entries_b.push_back(e.get<int>());
    }
    Tuple b(std::move(entries_b));
    TensorVector vec = vector_from_json(entry["vector"]);
    if (!(vec.sigma() == sigma))
      throw std::invalid_argument(
          "cache entry vector sigma does not match entry sigma");
    if (b.size() != sigma.size())
      throw std::invalid_argument(
          "cache entry tuple length does not match sigma");
    if (cache.find(sigma, b) != nullptr)
      throw std::invalid_argument("duplicate cache entry for sigma=" +
                                  sigma.str() + " b=" + b.str());
    if (!is_canonical_shape(b, vec))
      throw std::invalid_argument(
          "cache entry is not a canonical basis element: sigma=" +
          sigma.str() + " b=" + b.str());
    cache.insert(sigma, b, std::move(vec));
  }
  return cache;
}

inline void save_cache_file(const CanonicalCache& cache,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("cannot open cache file for writing: " + path);
  out << cache_to_json(cache).dump() << "\n";
  if (!out)
    throw std::invalid_argument("failed to write cache file: " + path);
}

inline CanonicalCache load_cache_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open cache file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("cache file is not valid JSON: " +
                                std::string(e.what()));
  }
  return cache_from_json(j);
}

}  // namespace qkl
