#pragma once

#include <calibkit/altform.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/numeric.hpp>
#include <calibkit/subspace.hpp>

#include <json.hpp>

#include <string>

namespace calibkit {

using Json = nlohmann::ordered_json;

// Scalars travel as "p/q" strings ("p" when q = 1).

inline Json mat_to_json(const Mat& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Mat mat_from_json(const Json& j) {
  Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& entries = j.at("entries");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(i, c) = rational_from_string(entries.at(i).at(c).get<std::string>());
  return m;
}

inline Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& row : s.basis()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    basis.push_back(r);
  }
  return Json{{"ambient", s.ambient()}, {"basis", basis}};
}

inline Subspace subspace_from_json(const Json& j) {
  const std::size_t d = j.at("ambient").get<std::size_t>();
  std::vector<RationalRow> rows;
  for (const auto& r : j.at("basis")) {
    RationalRow row;
    for (const auto& x : r) row.push_back(rational_from_string(x.get<std::string>()));
    rows.push_back(std::move(row));
  }
  return Subspace::span(d, rows);
}

inline Json form_to_json(const AltForm& a) {
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    Json idx = Json::array();
    for (int i : mask_indices(m)) idx.push_back(i);
    terms.push_back(Json{{"idx", idx}, {"coef", to_string(c)}});
  }
  return Json{{"dim", a.dim()}, {"degree", a.degree()}, {"terms", terms}};
}

inline AltForm form_from_json(const Json& j) {
  AltForm a(j.at("dim").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    std::vector<int> idx = t.at("idx").get<std::vector<int>>();
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] >= idx[i + 1])
        throw std::invalid_argument("form term indices must be strictly increasing");
    a.add_term(indices_mask(idx), rational_from_string(t.at("coef").get<std::string>()));
  }
  return a;
}

inline Json frame_to_json(const Frame& f) {
  Json vectors = Json::array();
  for (std::size_t j = 0; j < f.p(); ++j) {
    Json col = Json::array();
    for (std::size_t i = 0; i < f.n(); ++i) col.push_back(f.vectors()(i, j));
    vectors.push_back(col);
  }
  return Json{{"n", f.n()}, {"p", f.p()}, {"vectors", vectors}, {"orientation", f.orientation()}};
}

inline Frame frame_from_json(const Json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  const std::size_t p = j.at("p").get<std::size_t>();
  MatD v(n, p);
  const auto& vectors = j.at("vectors");
  if (vectors.size() != p) throw std::invalid_argument("frame vector count mismatch");
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < n; ++i) v(i, c) = vectors.at(c).at(i).get<double>();
  return Frame(v, j.at("orientation").get<int>());
}

inline Json float_form_to_json(const AltFormD& a) {
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    Json idx = Json::array();
    for (int i : mask_indices(m)) idx.push_back(i);
    terms.push_back(Json{{"idx", idx}, {"coef", c}});
  }
  return Json{{"dim", a.dim()}, {"degree", a.degree()}, {"terms", terms}};
}

}  // namespace calibkit
