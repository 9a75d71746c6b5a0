#pragma once

// JSON encoding of type data. Integers are decimal strings so entries of any
// size survive; complex numbers are [re, im] pairs of doubles.
//
//   {
//     "kind": "isogeny",
//     "polarizations": {"D": ["2"], "E": ["1"]},
//     "matrices": {"M": [["1", "0"], ["0", "2"]]},
//     "siegel_points": {"z": [[[0.0, 1.0]]]},
//     "integers": {"p": "3"},
//     "constraints": [["0", null, ...], ...]
//   }
//
// A matrix with zero rows or columns is written {"rows": r, "cols": c}.

#include "avt/abelian_group.hpp"
#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/morphism_types.hpp"
#include "avt/search.hpp"
#include "avt/siegel.hpp"
#include "avt/symplectic.hpp"

#include <json.hpp>

#include <concepts>

#include <cctype>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace avt {

using Json = nlohmann::json;

struct TypeDocument {
  std::string kind;
  std::map<std::string, PolarizationType> polarizations;
  std::map<std::string, IntMatrix> matrices;
  std::map<std::string, ComplexMatrix> siegel_points;
  std::map<std::string, Integer> integers;
  std::optional<Matrix<std::optional<Integer>>> constraints;

  [[nodiscard]] const PolarizationType &polarization(const std::string &key) const {
    auto it = polarizations.find(key);
    if (it == polarizations.end())
      throw Error(ErrorKind::Malformed, "missing polarization \"" + key + "\"");
    return it->second;
  }
  [[nodiscard]] const IntMatrix &matrix(const std::string &key) const {
    auto it = matrices.find(key);
    if (it == matrices.end()) throw Error(ErrorKind::Malformed, "missing matrix \"" + key + "\"");
    return it->second;
  }
  [[nodiscard]] SiegelPoint siegel(const std::string &key) const {
    auto it = siegel_points.find(key);
    if (it == siegel_points.end())
      throw Error(ErrorKind::Malformed, "missing Siegel point \"" + key + "\"");
    return {it->second};
  }
  [[nodiscard]] const Integer &integer(const std::string &key) const {
    auto it = integers.find(key);
    if (it == integers.end()) throw Error(ErrorKind::Malformed, "missing integer \"" + key + "\"");
    return it->second;
  }
};

inline bool operator==(const TypeDocument &a, const TypeDocument &b) {
  if (a.kind != b.kind || a.polarizations != b.polarizations || a.matrices != b.matrices ||
      a.integers != b.integers || a.constraints != b.constraints)
    return false;
  if (a.siegel_points.size() != b.siegel_points.size()) return false;
  for (auto ia = a.siegel_points.begin(), ib = b.siegel_points.begin();
       ia != a.siegel_points.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.rows() != ib->second.rows() ||
        ia->second.cols() != ib->second.cols() || ia->second != ib->second)
      return false;
  }
  return true;
}

// --- encoding ---------------------------------------------------------------

template <typename T>
  requires std::same_as<T, Integer>
Json to_json(const T &v) {
  return v.str();
}

inline Json to_json(const IntMatrix &m) {
  if (m.rows() == 0 || m.cols() == 0) return Json{{"rows", m.rows()}, {"cols", m.cols()}};
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const RatVector &v) {
  Json out = Json::array();
  for (const auto &x : v) out.push_back(x.str());
  return out;
}

inline Json to_json(const PolarizationType &d) {
  Json out = Json::array();
  for (const auto &v : d.divisors()) out.push_back(v.str());
  return out;
}

inline Json to_json(const FiniteAbelianGroup &g) {
  Json f = Json::array();
  for (const auto &v : g.invariant_factors()) f.push_back(v.str());
  return Json{{"invariant_factors", f}, {"order", g.order().str()}};
}

inline Json to_json(const ComplexMatrix &z) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < z.cols(); ++j) row.push_back(Json::array({z(i, j).real(), z(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const TypeDocument &doc) {
  Json j = Json::object();
  if (!doc.kind.empty()) j["kind"] = doc.kind;
  if (!doc.polarizations.empty()) {
    Json p = Json::object();
    for (const auto &[k, v] : doc.polarizations) p[k] = to_json(v);
    j["polarizations"] = std::move(p);
  }
  if (!doc.matrices.empty()) {
    Json m = Json::object();
    for (const auto &[k, v] : doc.matrices) m[k] = to_json(v);
    j["matrices"] = std::move(m);
  }
  if (!doc.siegel_points.empty()) {
    Json s = Json::object();
    for (const auto &[k, v] : doc.siegel_points) s[k] = to_json(v);
    j["siegel_points"] = std::move(s);
  }
  if (!doc.integers.empty()) {
    Json s = Json::object();
    for (const auto &[k, v] : doc.integers) s[k] = v.str();
    j["integers"] = std::move(s);
  }
  if (doc.constraints) {
    Json rows = Json::array();
    const auto &c = *doc.constraints;
    for (std::size_t r = 0; r < c.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t col = 0; col < c.cols(); ++col)
        row.push_back(c(r, col) ? Json(c(r, col)->str()) : Json(nullptr));
      rows.push_back(std::move(row));
    }
    j["constraints"] = std::move(rows);
  }
  return j;
}

inline Json to_json(const CheckReport &r) {
  Json j{{"valid", r.valid}, {"failures", r.failures}};
  if (r.kernel) j["kernel"] = to_json(*r.kernel);
  if (r.target_kernel) j["target_kernel"] = to_json(*r.target_kernel);
  if (r.det_sign) j["det_sign"] = *r.det_sign;
  if (r.induced_matrix) j["induced_matrix"] = to_json(*r.induced_matrix);
  if (r.factorization)
    j["factorization"] = {{"P_bar", to_json(r.factorization->first)},
                          {"R", to_json(r.factorization->second)}};
  return j;
}

// --- decoding ---------------------------------------------------------------

inline Integer integer_from_json(const Json &j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  }
  if (!j.is_string()) throw Error(ErrorKind::Malformed, "integer must be a decimal string");
  const auto &s = j.get_ref<const std::string &>();
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw Error(ErrorKind::Malformed, "empty integer string");
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorKind::Malformed, "bad integer \"" + s + "\"");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline IntMatrix matrix_from_json(const Json &j) {
  if (j.is_object()) {
    if (!j.contains("rows") || !j.contains("cols") || !j["rows"].is_number_unsigned() ||
        !j["cols"].is_number_unsigned())
      throw Error(ErrorKind::Malformed, "degenerate matrix needs rows and cols");
    const auto r = j["rows"].get<std::size_t>(), c = j["cols"].get<std::size_t>();
    if (r != 0 && c != 0) throw Error(ErrorKind::Malformed, "object form is only for empty matrices");
    return IntMatrix(r, c);
  }
  if (!j.is_array()) throw Error(ErrorKind::Malformed, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  if (rows == 0) return IntMatrix();
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorKind::Malformed, "matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::Malformed, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = integer_from_json(j[i][c]);
  }
  return m;
}

inline PolarizationType polarization_from_json(const Json &j) {
  if (!j.is_array()) throw Error(ErrorKind::Malformed, "polarization type must be an array");
  std::vector<Integer> d;
  for (const auto &v : j) d.push_back(integer_from_json(v));
  return PolarizationType(std::move(d));
}

inline ComplexMatrix complex_from_json(const Json &j) {
  if (!j.is_array()) throw Error(ErrorKind::Malformed, "complex matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json &row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorKind::Malformed, "ragged complex matrix");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json &e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw Error(ErrorKind::Malformed, "complex entry must be [re, im]");
      z(i, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return z;
}

inline TypeDocument document_from_json(const Json &j) {
  if (!j.is_object()) throw Error(ErrorKind::Malformed, "document must be a JSON object");
  TypeDocument doc;
  for (const auto &[key, value] : j.items()) {
    if (key == "kind") {
      if (!value.is_string()) throw Error(ErrorKind::Malformed, "kind must be a string");
      doc.kind = value.get<std::string>();
      if (doc.kind != "isogeny" && doc.kind != "embedding" && doc.kind != "morphism" &&
          doc.kind != "matrix" && doc.kind != "siegel")
        throw Error(ErrorKind::Malformed, "unknown kind \"" + doc.kind + "\"");
    } else if (key == "polarizations" || key == "matrices" || key == "siegel_points" ||
               key == "integers") {
      if (!value.is_object()) throw Error(ErrorKind::Malformed, key + " must be an object");
      for (const auto &[name, v] : value.items()) {
        if (key == "polarizations") doc.polarizations.emplace(name, polarization_from_json(v));
        else if (key == "matrices") doc.matrices.emplace(name, matrix_from_json(v));
        else if (key == "siegel_points") doc.siegel_points.emplace(name, complex_from_json(v));
        else doc.integers.emplace(name, integer_from_json(v));
      }
    } else if (key == "constraints") {
      if (!value.is_array()) throw Error(ErrorKind::Malformed, "constraints must be an array");
      const std::size_t rows = value.size(), cols = rows ? value[0].size() : 0;
      Matrix<std::optional<Integer>> c(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        if (!value[r].is_array() || value[r].size() != cols)
          throw Error(ErrorKind::Malformed, "ragged constraints");
        for (std::size_t col = 0; col < cols; ++col)
          if (!value[r][col].is_null()) c(r, col) = integer_from_json(value[r][col]);
      }
      doc.constraints = std::move(c);
    } else {
      throw Error(ErrorKind::Malformed, "unknown field \"" + key + "\"");
    }
  }
  return doc;
}

inline TypeDocument parse_document(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::Malformed, e.what());
  }
  return document_from_json(j);
}

inline std::string serialize_document(const TypeDocument &doc) { return to_json(doc).dump(); }

inline EntryConstraints to_entry_constraints(const Matrix<std::optional<Integer>> &c) {
  EntryConstraints out;
  for (const auto &e : c.entries())
    out.push_back(e ? std::optional<std::int64_t>(detail::to_small(*e)) : std::nullopt);
  return out;
}

} // namespace avt
