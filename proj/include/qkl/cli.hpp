#pragma once

#include "qkl/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkl::cli {

namespace detail {

struct BudgetOpts {
  int max_depth = Budget{}.max_recursion_depth;
  long max_corrections = Budget{}.max_correction_steps;

  Budget to_budget() const { return Budget{max_depth, max_corrections}; }
};

inline void add_budget_options(CLI::App* cmd, BudgetOpts& b) {
  cmd->add_option("--max-depth", b.max_depth,
                  "Maximum recursion depth for the canonical-basis algorithm")
      ->capture_default_str();
  cmd->add_option("--max-corrections", b.max_corrections,
                  "Maximum correction subtractions per basis element")
      ->capture_default_str();
}

inline Rational parse_rational(const std::string& text) {
  auto bad = [&]() -> Rational {
    throw std::invalid_argument("invalid rational '" + text +
                                "' (expected P or P/Q)");
  };
  const std::size_t slash = text.find('/');
  const std::string num_s = text.substr(0, slash);
  auto parse_ll = [&](const std::string& part) -> long long {
    try {
      std::size_t used = 0;
      long long v = std::stoll(part, &used);
      if (used != part.size() || part.empty()) bad();
      return v;
    } catch (const std::invalid_argument&) {
      return bad().numerator();
    } catch (const std::out_of_range&) {
      return bad().numerator();
    }
  };
  long long num = parse_ll(num_s);
  long long den = 1;
  if (slash != std::string::npos) {
    if (text.find('/', slash + 1) != std::string::npos) bad();
    den = parse_ll(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("invalid rational '" + text +
                                  "': zero denominator");
  }
  return Rational(num, den);
}

inline std::string rational_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

/// Loads a warm cache when the file exists, otherwise starts cold.
inline CanonicalCache open_cache(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return {};
  return load_cache_file(path);
}

inline void maybe_save(const CanonicalCache& cache, const std::string& path) {
  if (!path.empty()) save_cache_file(cache, path);
}

inline std::string read_stream_or_file(const std::string& path,
                                       std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file)
    throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

struct ComputeOpts {
  std::string sigma;
  std::string b;
  std::string cache_path;
  bool json = false;
  BudgetOpts budget;
};

inline void do_compute(const ComputeOpts& o, std::istream& in,
                       std::ostream& out) {
  CanonicalCache cache = open_cache(o.cache_path);
  if (o.b == "-") {
    // Batch mode: one "SIGMA;TUPLE" request per line, one JSON record per
    // line out.
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const std::size_t semi = line.find(';');
      if (semi == std::string::npos ||
          line.find(';', semi + 1) != std::string::npos)
        throw std::invalid_argument("batch line " + std::to_string(lineno) +
                                    ": expected 'SIGMA;TUPLE'");
      SignSeq sigma = SignSeq::parse(line.substr(0, semi));
      Tuple b = Tuple::parse(line.substr(semi + 1));
      TensorVector v = canonical_basis(b, sigma, cache, o.budget.to_budget());
      Json rec = Json::object();
      rec["sigma"] = sigma.str();
      rec["b"] = b.entries();
      rec["vector"] = vector_to_json(v);
      out << rec.dump() << "\n";
    }
    maybe_save(cache, o.cache_path);
    return;
  }
  if (o.sigma.empty())
    throw std::invalid_argument("compute: --sigma is required");
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple b = Tuple::parse(o.b);
  TensorVector v = canonical_basis(b, sigma, cache, o.budget.to_budget());
  if (o.json)
    out << vector_to_json(v).dump() << "\n";
  else
    out << v.str() << "\n";
  maybe_save(cache, o.cache_path);
}

struct PairOpts {
  std::string sigma;
  std::string a;
  std::string b;
  std::string cache_path;
  bool json = false;
  BudgetOpts budget;
};

inline void do_klpoly(const PairOpts& o, std::ostream& out) {
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple a = Tuple::parse(o.a);
  Tuple b = Tuple::parse(o.b);
  CanonicalCache cache = open_cache(o.cache_path);
  LaurentPoly d = kl_poly(a, b, sigma, cache, o.budget.to_budget());
  if (o.json)
    out << laurent_to_json(d).dump() << "\n";
  else
    out << d.str() << "\n";
  maybe_save(cache, o.cache_path);
}

inline void do_mult(const PairOpts& o, std::ostream& out) {
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple a = Tuple::parse(o.a);
  Tuple b = Tuple::parse(o.b);
  CanonicalCache cache = open_cache(o.cache_path);
  Int m = multiplicity(a, b, sigma, cache, o.budget.to_budget());
  if (o.json) {
    Json rec = Json::object();
    rec["multiplicity"] = m.str();
    out << rec.dump() << "\n";
  } else {
    out << m.str() << "\n";
  }
  maybe_save(cache, o.cache_path);
}

inline void do_bruhat(const PairOpts& o, std::ostream& out) {
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple a = Tuple::parse(o.a);
  Tuple b = Tuple::parse(o.b);
  const bool geq = bruhat_geq(a, b, sigma);
  const bool leq = bruhat_geq(b, a, sigma);
  const char* rel = geq ? (leq ? "EQ" : "GEQ") : (leq ? "LEQ" : "INCOMPARABLE");
  if (o.json) {
    Json rec = Json::object();
    rec["relation"] = rel;
    out << rec.dump() << "\n";
  } else {
    out << rel << "\n";
  }
}

struct SourceOpts {
  std::string sigma;
  std::string b;
  bool json = false;
};

inline void do_source(const SourceOpts& o, std::ostream& out) {
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple b = Tuple::parse(o.b);
  DominantSource ds = dominant_source(b, sigma);
  if (o.json) {
    Json rec = Json::object();
    rec["a"] = ds.a.entries();
    rec["x"] = ds.x_str();
    rec["word"] = ds.word();
    out << rec.dump() << "\n";
  } else {
    out << "a = " << ds.a.str() << "\n";
    out << "X = " << ds.x_str() << "\n";
  }
}

struct WeightsOpts {
  std::string sigma;
  std::string b;
  std::string z = "1/3";
  bool odd = false;
  bool json = false;
};

inline void do_weights(const WeightsOpts& o, std::ostream& out) {
  SignSeq sigma = SignSeq::parse(o.sigma);
  Tuple b = Tuple::parse(o.b);
  Rational z = parse_rational(o.z);
  std::vector<Rational> lam = lambda_q(b, sigma, z, o.odd);
  GlWeight glw = lambda_gl(b, sigma);
  if (o.json) {
    Json rec = Json::object();
    Json lam_json = Json::array();
    for (const Rational& r : lam) lam_json.push_back(rational_str(r));
    rec["lambda"] = std::move(lam_json);
    rec["lambda_gl"] = glw.coords;
    rec["parity"] = glw.parity;
    out << rec.dump() << "\n";
  } else {
    out << "lambda = ";
    for (std::size_t r = 0; r < lam.size(); ++r)
      out << (r ? ", " : "") << rational_str(lam[r]);
    out << "\n";
    out << "lambda' = ";
    for (std::size_t r = 0; r < glw.coords.size(); ++r)
      out << (r ? ", " : "") << glw.coords[r];
    out << "\n";
    out << "parity = " << glw.parity << "\n";
  }
}

struct ActOpts {
  std::string op;
  int i = 0;
  std::string vec_path;
  std::string sigma;
  bool json = false;
};

inline void do_act(const ActOpts& o, std::istream& in, std::ostream& out) {
  const std::string text = read_stream_or_file(o.vec_path, in);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("input vector is not valid JSON: " +
                                std::string(e.what()));
  }
  TensorVector v = vector_from_json(j);
  if (!o.sigma.empty() && !(SignSeq::parse(o.sigma) == v.sigma()))
    throw std::invalid_argument("act: --sigma does not match the vector's " +
                                std::string("sign sequence ") +
                                v.sigma().str());
  TensorVector r = (o.op == "f") ? f_act(o.i, v) : e_act(o.i, v);
  if (o.json)
    out << vector_to_json(r).dump() << "\n";
  else
    out << r.str() << "\n";
}

}  // namespace detail

/// Runs the command-line tool on the given arguments (program name
/// excluded), reading batch/vector input from `in` and writing results to
/// `out` and diagnostics to `err`. Returns the process exit code:
/// 0 success, 2 invalid input, 3 budget exceeded, 1 internal error.
inline int run(std::vector<std::string> args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Exact canonical bases of mixed tensor products of quantum-group "
      "modules, with the associated Bruhat-type order, structure "
      "polynomials and weight dictionaries"};
  app.name("qkl");
  app.require_subcommand(1);

  detail::ComputeOpts compute_o;
  CLI::App* compute = app.add_subcommand(
      "compute", "Canonical basis element at a tuple");
  compute->add_option("--sigma", compute_o.sigma,
                      "Sign sequence, e.g. \"++--\"");
  compute->add_option("--b", compute_o.b,
                      "Index tuple, e.g. \"1,2,2,1\"; \"-\" reads "
                      "SIGMA;TUPLE lines from standard input and streams "
                      "JSON records")
      ->required();
  compute->add_flag("--json", compute_o.json, "Emit JSON instead of text");
  compute->add_option("--cache", compute_o.cache_path,
                      "Cache file: loaded when present, updated on success");
  detail::add_budget_options(compute, compute_o.budget);

  detail::PairOpts klpoly_o;
  CLI::App* klpoly = app.add_subcommand(
      "klpoly", "Structure polynomial d_{a,b}(q)");
  klpoly->add_option("--sigma", klpoly_o.sigma, "Sign sequence")->required();
  klpoly->add_option("--a", klpoly_o.a, "Row tuple")->required();
  klpoly->add_option("--b", klpoly_o.b, "Column tuple")->required();
  klpoly->add_flag("--json", klpoly_o.json, "Emit JSON instead of text");
  klpoly->add_option("--cache", klpoly_o.cache_path,
                     "Cache file: loaded when present, updated on success");
  detail::add_budget_options(klpoly, klpoly_o.budget);

  detail::PairOpts mult_o;
  CLI::App* mult = app.add_subcommand(
      "mult", "Integer multiplicity d_{a,b}(1)");
  mult->add_option("--sigma", mult_o.sigma, "Sign sequence")->required();
  mult->add_option("--a", mult_o.a, "Row tuple")->required();
  mult->add_option("--b", mult_o.b, "Column tuple")->required();
  mult->add_flag("--json", mult_o.json, "Emit JSON instead of text");
  mult->add_option("--cache", mult_o.cache_path,
                   "Cache file: loaded when present, updated on success");
  detail::add_budget_options(mult, mult_o.budget);

  detail::PairOpts bruhat_o;
  CLI::App* bruhat = app.add_subcommand(
      "bruhat", "Compare two tuples in the Bruhat-type order");
  bruhat->add_option("--sigma", bruhat_o.sigma, "Sign sequence")->required();
  bruhat->add_option("--a", bruhat_o.a, "First tuple")->required();
  bruhat->add_option("--b", bruhat_o.b, "Second tuple")->required();
  bruhat->add_flag("--json", bruhat_o.json, "Emit JSON instead of text");

  detail::SourceOpts source_o;
  CLI::App* source = app.add_subcommand(
      "source", "Dominant source tuple and lowering word");
  source->add_option("--sigma", source_o.sigma, "Sign sequence")->required();
  source->add_option("--b", source_o.b, "Index tuple")->required();
  source->add_flag("--json", source_o.json, "Emit JSON instead of text");

  detail::WeightsOpts weights_o;
  CLI::App* weights = app.add_subcommand(
      "weights", "Weight dictionaries attached to a tuple");
  weights->add_option("--sigma", weights_o.sigma, "Sign sequence")->required();
  weights->add_option("--b", weights_o.b, "Index tuple")->required();
  weights->add_option("--z", weights_o.z,
                      "Rational parameter z (2z must not be an integer)")
      ->capture_default_str();
  weights->add_flag("--odd", weights_o.odd,
                    "Append the trailing odd-rank coordinate");
  weights->add_flag("--json", weights_o.json, "Emit JSON instead of text");

  detail::ActOpts act_o;
  CLI::App* act = app.add_subcommand(
      "act", "Apply a Chevalley generator to a serialized vector");
  act->add_option("--op", act_o.op, "Generator family: f or e")
      ->required()
      ->check(CLI::IsMember({"f", "e"}));
  act->add_option("--i", act_o.i, "Generator index")->required();
  act->add_option("--vec", act_o.vec_path,
                  "Vector JSON file, or \"-\" for standard input")
      ->required();
  act->add_option("--sigma", act_o.sigma,
                  "Optional cross-check against the vector's sign sequence");
  act->add_flag("--json", act_o.json, "Emit JSON instead of text");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    if (compute->parsed()) detail::do_compute(compute_o, in, out);
    if (klpoly->parsed()) detail::do_klpoly(klpoly_o, out);
    if (mult->parsed()) detail::do_mult(mult_o, out);
    if (bruhat->parsed()) detail::do_bruhat(bruhat_o, out);
    if (source->parsed()) detail::do_source(source_o, out);
    if (weights->parsed()) detail::do_weights(weights_o, out);
    if (act->parsed()) detail::do_act(act_o, in, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qkl::cli
