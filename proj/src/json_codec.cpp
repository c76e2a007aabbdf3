// Copyright 2026 The Ontic Authors
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

#include "ontic/json_codec.hpp"

#include <cmath>

#include "ontic/error.hpp"

namespace ontic {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  Complex z;
  if (j.is_number()) {
    z = Complex(j.get<double>(), 0.0);
  } else if (j.is_array() && j.size() == 2 && j[0].is_number() &&
             j[1].is_number()) {
    z = Complex(j[0].get<double>(), j[1].get<double>());
  } else {
    throw FormatError("expected a complex scalar [re, im], got " + j.dump());
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw FormatError("non-finite complex scalar");
  }
  return z;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw FormatError("expected a nonempty matrix as an array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw FormatError("matrix rows have unequal length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(j[i][k]);
    }
  }
  return m;
}

Json vector_to_json(const StateVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v(i)));
  }
  return out;
}

StateVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw FormatError("expected a nonempty array of complex scalars");
  }
  StateVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json real_vector_to_json(const RealVector& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

RealVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of reals");
  RealVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError("expected a real number");
    v(i) = j[i].get<double>();
  }
  return v;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(real_vector_to_json(m.row(i).transpose()));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("expected a real matrix");
  RealMatrix m(j.size(), real_vector_from_json(j[0]).size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const RealVector row = real_vector_from_json(j[i]);
    if (row.size() != m.cols()) throw FormatError("ragged real matrix");
    m.row(i) = row.transpose();
  }
  return m;
}

}  // namespace ontic
