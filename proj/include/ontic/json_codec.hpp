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

#pragma once

// JSON encoding shared by every module: a complex scalar is [re, im], a
// vector is an array of scalars and a matrix is a row-major array of rows.
// Readers also accept bare real numbers as scalars.

#include "json.hpp"

#include "ontic/tensor.hpp"

namespace ontic {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const StateVector& v);
StateVector vector_from_json(const Json& j);

Json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const Json& j);

Json real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j);

}  // namespace ontic
