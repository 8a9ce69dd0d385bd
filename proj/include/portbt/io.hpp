// Copyright 2026 The portbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PORTBT_IO_HPP
#define PORTBT_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "portbt/dense.hpp"
#include "portbt/protocols.hpp"
#include "portbt/schur.hpp"
#include "portbt/spectrum.hpp"

namespace portbt {

/// Deterministic member order so identical runs emit identical bytes.
using json = nlohmann::ordered_json;

/// Format a double with 12 significant digits.
inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

/// Round a double to 12 significant digits via a print/parse round trip.
/// JSON documents carry values pushed through this, so text and JSON
/// artifacts agree digit-for-digit.
inline double round12(double x) {
  return std::strtod(fmt12(x).c_str(), nullptr);
}

inline json complex_json(const cxd& z) {
  return json::array({round12(z.real()), round12(z.imag())});
}

/// Row-major nested array of [re, im] pairs.
inline json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_json(v[i]));
  return arr;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os << ',';
    os << cells[i];
  }
  os << '\n';
}

/// Header row plus data rows; cells are written verbatim, so numeric cells
/// should be preformatted with fmt12.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

  void write(std::ostream& os) const {
    write_csv_row(os, header);
    for (const auto& row : rows) write_csv_row(os, row);
  }
};

/// Leg ordering string "A1..AN,B" for operators on the n ports plus the
/// input register.
inline std::string port_ordering(int n) {
  std::string s;
  for (int k = 1; k <= n; ++k) s += "A" + std::to_string(k) + ",";
  s += "B";
  return s;
}

/// Leg ordering string "A1..AN,B1..BN" for the 2n-qubit resource state.
inline std::string resource_ordering(int n) {
  std::string s;
  for (int k = 1; k <= n; ++k) s += "A" + std::to_string(k) + ",";
  for (int k = 1; k <= n; ++k) {
    s += "B" + std::to_string(k);
    if (k < n) s += ",";
  }
  return s;
}

inline json dims_json(int legs) {
  json dims = json::array();
  for (int k = 0; k < legs; ++k) dims.push_back(2);
  return dims;
}

/// POVM document: header {variant, n, dims, ordering} followed by the dense
/// elements, the excess operator, and the operator the operative elements
/// must sum to.  Matrices are row-major with complex entries as [re, im].
inline json povm_json(const PovmSet& povm) {
  json doc;
  doc["variant"] = variant_name(povm.variant);
  doc["n"] = povm.n;
  doc["dims"] = dims_json(povm.n + 1);
  doc["ordering"] = port_ordering(povm.n);
  doc["deterministic"] = povm.deterministic;
  json elems = json::array();
  for (const auto& e : povm.elements) elems.push_back(matrix_json(e));
  doc["elements"] = std::move(elems);
  doc["excess"] = matrix_json(povm.excess);
  doc["completeness_target"] = matrix_json(povm.completeness_target);
  return doc;
}

/// Resource-state document with the same header schema as povm_json.
inline json state_json(const ResourceSpec& spec, const Eigen::VectorXcd& state) {
  json doc;
  doc["variant"] = variant_name(spec.variant);
  doc["n"] = spec.n;
  doc["dims"] = dims_json(2 * spec.n);
  doc["ordering"] = resource_ordering(spec.n);
  doc["amplitudes"] = vector_json(state);
  return doc;
}

/// Debug dump of a spin-coupling basis: one record per basis vector with
/// the coupling path and the dense amplitudes split into real and
/// imaginary parts.
inline json schur_json(const SchurBasis& basis) {
  json arr = json::array();
  for (const auto& vec : basis.vectors) {
    json rec;
    rec["two_j"] = vec.two_j;
    rec["two_m"] = vec.two_m;
    json path = json::array();
    for (int two_j : vec.path.two_js) path.push_back(two_j);
    rec["path"] = std::move(path);
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < vec.amps.size(); ++i) {
      re.push_back(round12(vec.amps[i].real()));
      im.push_back(round12(vec.amps[i].imag()));
    }
    rec["re"] = std::move(re);
    rec["im"] = std::move(im);
    arr.push_back(std::move(rec));
  }
  return arr;
}

/// Sector table of the port-average state's spectrum as CSV.
inline CsvTable spectrum_csv(int n) {
  CsvTable table;
  table.header = {"two_s", "lambda_minus", "lambda_plus", "deg_minus", "deg_plus"};
  for (const SpectrumSector& sec : rho_spectrum(n)) {
    table.add_row({std::to_string(sec.two_s), fmt12(sec.lambda_minus),
                   fmt12(sec.lambda_plus), fmt12(sec.deg_minus), fmt12(sec.deg_plus)});
  }
  return table;
}

}  // namespace portbt

#endif  // PORTBT_IO_HPP
