#pragma once

#include <fstream>

#include "betasys.hpp"
#include "json.hpp"

namespace galileq {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

inline PMat pmat_from_json(const json& j) {
  std::size_t r = j.size(), c = r ? j[0].size() : 0;
  PMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (j[i].size() != c) throw std::invalid_argument("ragged matrix in JSON");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_poly(j[i][k].get<std::string>());
  }
  return m;
}

inline CMat cmat_from_json(const json& j) { return to_const(pmat_from_json(j)); }

inline json rep_json(const GalileiRep& r) {
  json j;
  j["descriptor"] = r.descriptor.str();
  j["dim"] = r.dim;
  j["S"] = json::array();
  j["eta"] = json::array();
  for (int a = 0; a < 3; ++a) {
    j["S"].push_back(matrix_json(r.S[a]));
    j["eta"].push_back(matrix_json(r.eta[a]));
  }
  if (!r.basis_note.empty()) j["basis_note"] = r.basis_note;
  return j;
}

inline json beta_json(const BetaSystem& bs) {
  json j;
  j["id"] = bs.id;
  j["rep"] = bs.rep.descriptor.str();
  if (!bs.rep.basis_note.empty()) j["basis_note"] = bs.rep.basis_note;
  json p = json::object();
  for (const auto& kv : bs.params) p[kv.first] = kv.second.str();
  j["params"] = p;
  for (int m = 0; m < 5; ++m) j["beta" + std::to_string(m)] = matrix_json(bs.beta[m]);
  return j;
}

struct GoldenSystem {
  std::string id, rep;
  std::array<PMat, 5> beta;
};

inline std::string data_dir() {
  if (const char* d = std::getenv("GALILEQ_DATA")) return d;
#ifdef GALILEQ_DATA_DIR
  return GALILEQ_DATA_DIR;
#else
  return "data";
#endif
}

inline GoldenSystem load_golden(const std::string& id) {
  std::string path = data_dir() + "/golden/" + id + ".json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  GoldenSystem g;
  g.id = j.at("id").get<std::string>();
  g.rep = j.at("rep").get<std::string>();
  for (int m = 0; m < 5; ++m) g.beta[m] = pmat_from_json(j.at("beta" + std::to_string(m)));
  return g;
}

// Entry-for-entry comparison; returns the list of mismatching "beta<m>(i,j)" positions.
inline std::vector<std::string> compare_golden(const BetaSystem& bs, const GoldenSystem& g) {
  std::vector<std::string> diff;
  for (int m = 0; m < 5; ++m) {
    const PMat& a = bs.beta[m];
    const PMat& b = g.beta[m];
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      diff.push_back("beta" + std::to_string(m) + " shape");
      continue;
    }
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a(i, k) != b(i, k))
          diff.push_back("beta" + std::to_string(m) + "(" + std::to_string(i) + "," + std::to_string(k) + ")");
  }
  return diff;
}

}  // namespace galileq
