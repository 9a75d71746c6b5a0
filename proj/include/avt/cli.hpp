#pragma once

// Command line front end. Every subcommand reads one JSON document (file
// argument, or stdin when absent or "-") and writes one JSON document to
// stdout.
//
// Exit codes: 0 success / valid, 1 well-formed input with a negative verdict,
// 2 malformed input or internal error (message on stderr).

#include "avt/abelian_group.hpp"
#include "avt/coset_oracle.hpp"
#include "avt/decompose.hpp"
#include "avt/error.hpp"
#include "avt/morphism_types.hpp"
#include "avt/normal_form.hpp"
#include "avt/search.hpp"
#include "avt/serialization.hpp"
#include "avt/siegel.hpp"
#include "avt/symplectic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace avt::cli {

struct Options {
  double tol = default_tolerance;
  long long bound = 2;
  long long max_order = 64;
  unsigned jobs = 1;
  bool oracle = false;
};

struct Outcome {
  Json body;
  int code = 0;
};

using Handler = std::function<Outcome(const TypeDocument &, const Options &)>;

namespace detail {

inline Json matrices_json(std::initializer_list<std::pair<const char *, const IntMatrix *>> ms) {
  Json j = Json::object();
  for (const auto &[k, v] : ms) j[k] = to_json(*v);
  return j;
}

inline Json siegel_json(std::initializer_list<std::pair<const char *, const SiegelPoint *>> ps) {
  Json j = Json::object();
  for (const auto &[k, v] : ps) j[k] = to_json(v->z);
  return j;
}

inline MorphismType morphism_from(const TypeDocument &doc) {
  return {doc.polarization("D"), doc.polarization("D'"), doc.polarization("E"),
          doc.polarization("H"), doc.polarization("H'"), doc.polarization("K"),
          doc.matrix("M"),       doc.matrix("N"),        doc.matrix("P")};
}

inline EmbeddingType embedding_from(const TypeDocument &doc) {
  return {doc.polarization("D"), doc.polarization("D'"), doc.polarization("E"), doc.matrix("M")};
}

inline TypeDocument morphism_document(const MorphismType &t) {
  TypeDocument doc;
  doc.kind = "morphism";
  doc.polarizations = {{"D", t.d}, {"D'", t.d_comp}, {"E", t.e},
                       {"H", t.h}, {"H'", t.h_comp}, {"K", t.k}};
  doc.matrices = {{"M", t.m}, {"N", t.n}, {"P", t.p}};
  return doc;
}

/// The single input matrix of matrix-level subcommands: "A", else the only one.
inline const IntMatrix &operand(const TypeDocument &doc) {
  if (doc.matrices.count("A")) return doc.matrix("A");
  if (doc.matrices.size() == 1) return doc.matrices.begin()->second;
  throw Error(ErrorKind::Malformed, "expected a matrix \"A\"");
}

inline Outcome search_result(const std::vector<IntMatrix> &found) {
  Json list = Json::array();
  for (const auto &m : found) list.push_back(to_json(m));
  return {Json{{"count", found.size()}, {"matrices", list}}, found.empty() ? 1 : 0};
}

} // namespace detail

inline std::map<std::string, std::pair<std::string, Handler>> handlers() {
  using namespace detail;
  std::map<std::string, std::pair<std::string, Handler>> h;

  h["check-isogeny"] = {"check an isogeny type (D, E, M)", [](const TypeDocument &doc, const Options &) {
    auto r = check_isogeny_type(doc.polarization("D"), doc.polarization("E"), doc.matrix("M"));
    return Outcome{to_json(r), r.valid ? 0 : 1};
  }};

  h["check-embedding"] = {"check an embedding type (D, D', E, M)", [](const TypeDocument &doc, const Options &o) {
    const auto t = embedding_from(doc);
    auto r = check_embedding_type(t);
    Json j = to_json(r);
    if (o.oracle && r.kernel) {
      auto v = oracle::sum_of_embeddings(t.matrix, t.sub.dim(), t.complement.dim(), o.max_order);
      j["oracle"] = {{"saturation_x", v.x}, {"saturation_xcomp", v.x_comp}};
    }
    return Outcome{j, r.valid ? 0 : 1};
  }};

  h["check-morphism"] = {"check a morphism type (D, D', E, H, H', K; M, N, P)", [](const TypeDocument &doc, const Options &o) {
    const auto t = morphism_from(doc);
    auto r = check_morphism_type(t);
    Json j = to_json(r);
    if (o.oracle && r.kernel)
      j["oracle"] = {{"kernel_kill", oracle::kernel_killed(t.m, t.p, t.d.dim(), o.max_order)}};
    return Outcome{j, r.valid ? 0 : 1};
  }};

  h["snf"] = {"Smith normal form S = U A V", [](const TypeDocument &doc, const Options &) {
    auto [s, u, v] = snf(operand(doc));
    return Outcome{Json{{"kind", "matrix"}, {"matrices", matrices_json({{"S", &s}, {"U", &u}, {"V", &v}})}}, 0};
  }};

  h["hnf"] = {"row Hermite normal form H = U A", [](const TypeDocument &doc, const Options &) {
    auto [hh, u] = hnf(operand(doc));
    return Outcome{Json{{"kind", "matrix"}, {"matrices", matrices_json({{"H", &hh}, {"U", &u}})}}, 0};
  }};

  h["kernel"] = {"cokernel structure of a square matrix", [](const TypeDocument &doc, const Options &o) {
    const IntMatrix &a = operand(doc);
    const auto g = kernel_structure(a);
    Json j = to_json(g);
    if (g.order() <= o.max_order) {
      Json cosets = Json::array();
      for (const auto &c : kernel_cosets(a, o.max_order)) cosets.push_back(to_json(c));
      j["cosets"] = std::move(cosets);
    }
    return Outcome{j, 0};
  }};

  h["elliptic-canonical"] = {"diagonal (d1, d2) of a 2x2 isogeny matrix", [](const TypeDocument &doc, const Options &) {
    auto c = elliptic_canonical(operand(doc));
    return Outcome{Json{{"d1", c.d1.str()}, {"d2", c.d2.str()}}, 0};
  }};

  h["hecke-factor"] = {"factor M through types (a, b) and (1, p)", [](const TypeDocument &doc, const Options &) {
    auto f = hecke_factor(doc.matrix("M"), doc.integer("p"));
    return Outcome{Json{{"kind", "matrix"}, {"matrices", matrices_json({{"M_u", &f.u}, {"M_g", &f.g}})}}, 0};
  }};

  h["stabilizer"] = {"is (A, M A M^-1) in the stabilizer of (D, E, M)", [](const TypeDocument &doc, const Options &) {
    const IsogenyType t{doc.polarization("D"), doc.polarization("E"), doc.matrix("M")};
    auto v = is_in_stabilizer(doc.matrix("A"), t);
    Json j{{"in_stabilizer", v.in_stabilizer}};
    if (v.image) j["matrices"] = matrices_json({{"B", &*v.image}});
    return Outcome{j, v.in_stabilizer ? 0 : 1};
  }};

  h["search-isogeny"] = {"all isogeny matrices (D, E) within --bound", [](const TypeDocument &doc, const Options &o) {
    return search_result(search_isogeny_matrices(doc.polarization("D"), doc.polarization("E"), o.bound, o.jobs));
  }};

  h["search-embedding"] = {"all embedding matrices (D, D', E) within --bound", [](const TypeDocument &doc, const Options &o) {
    EntryConstraints fixed;
    if (doc.constraints) fixed = to_entry_constraints(*doc.constraints);
    return search_result(search_embedding_matrices(doc.polarization("D"), doc.polarization("D'"),
                                                   doc.polarization("E"), o.bound, fixed, o.jobs));
  }};

  h["decompose"] = {"Poincare decomposition of Q : (E) -> (K)", [](const TypeDocument &doc, const Options &) {
    auto d = decompose_morphism(doc.polarization("E"), doc.polarization("K"), doc.matrix("Q"));
    Json j = to_json(morphism_document(d.type));
    j["compatible"] = d.compatible;
    if (d.compatible) j["report"] = to_json(check_morphism_type(d.type));
    return Outcome{j, d.compatible ? 0 : 1};
  }};

  h["transport"] = {"Siegel coordinate of X from that of Y along (D, E, M)", [](const TypeDocument &doc, const Options &o) {
    auto z = transport(doc.siegel("z"), doc.polarization("E"), doc.polarization("D"), doc.matrix("M"), o.tol);
    return Outcome{Json{{"kind", "siegel"}, {"siegel_points", siegel_json({{"z", &z}})}}, 0};
  }};

  h["sp-action"] = {"change of symplectic basis by R in Sp(D)", [](const TypeDocument &doc, const Options &o) {
    auto z = sp_action(doc.siegel("z"), doc.polarization("D"), doc.matrix("R"), o.tol);
    return Outcome{Json{{"kind", "siegel"}, {"siegel_points", siegel_json({{"z", &z}})}}, 0};
  }};

  h["realize-embedding"] = {"ambient point of an embedding type", [](const TypeDocument &doc, const Options &o) {
    auto z = realize_embedding(doc.siegel("z_sub"), doc.siegel("z_comp"), embedding_from(doc), o.tol);
    return Outcome{Json{{"kind", "siegel"}, {"siegel_points", siegel_json({{"z", &z}})}}, 0};
  }};

  h["realize-morphism"] = {"source, target and Q of a morphism type", [](const TypeDocument &doc, const Options &o) {
    auto r = realize_morphism(doc.siegel("z_x"), doc.siegel("z_xcomp"), doc.siegel("z_ycomp"),
                              morphism_from(doc), o.tol);
    return Outcome{Json{{"kind", "siegel"},
                        {"siegel_points", siegel_json({{"z_v", &r.z_v}, {"z_w", &r.z_w}, {"z_y", &r.z_y}})},
                        {"matrices", matrices_json({{"Q", &r.q}})}},
                   0};
  }};

  h["validate-siegel"] = {"is z a point of the Siegel space", [](const TypeDocument &doc, const Options &o) {
    const bool ok = validate_siegel(doc.siegel("z"), o.tol);
    return Outcome{Json{{"valid", ok}}, ok ? 0 : 1};
  }};
  return h;
}

/// Error kinds that are verdicts on well-formed input.
inline bool is_verdict(ErrorKind k) {
  switch (k) {
  case ErrorKind::Singular:
  case ErrorKind::BadDivisor:
  case ErrorKind::NotSymplectic:
  case ErrorKind::InvalidType:
  case ErrorKind::InvalidSiegelPoint:
  case ErrorKind::NearSingularBlock:
  case ErrorKind::Degenerate:
  case ErrorKind::DegenerateRestriction:
  case ErrorKind::NotIntegral:
    return true;
  default:
    return false;
  }
}

inline int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Types of morphisms of polarized abelian varieties"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--tol", opts.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--bound", opts.bound, "entry bound for searches")->check(CLI::NonNegativeNumber);
  app.add_option("--max-order", opts.max_order, "largest kernel enumerated explicitly")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", opts.jobs, "search worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--oracle", opts.oracle, "cross-check with coset enumeration");

  const auto table = handlers();
  std::string input;
  std::map<std::string, CLI::App *> subs;
  for (const auto &[name, entry] : table) {
    auto *sub = app.add_subcommand(name, entry.first);
    sub->add_option("input", input, "JSON document (default: stdin)");
    subs[name] = sub;
  }

  std::vector<const char *> argv{"avt"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << e.what() << '\n';
    return 2;
  }

  std::string name;
  for (const auto &[n, sub] : subs)
    if (sub->parsed()) name = n;

  try {
    std::string text;
    if (input.empty() || input == "-") {
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(input);
      if (!f) throw Error(ErrorKind::Malformed, "cannot open " + input);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    const TypeDocument doc = parse_document(text);
    Outcome o = table.at(name).second(doc, opts);
    out << o.body.dump() << '\n';
    return o.code;
  } catch (const Error &e) {
    err << e.what() << '\n';
    if (is_verdict(e.kind())) {
      out << Json{{"valid", false}, {"error", std::string(to_string(e.kind()))}}.dump() << '\n';
      return 1;
    }
    return 2;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

} // namespace avt::cli
