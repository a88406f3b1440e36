// Copyright 2026 The hiddenbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file json_io.hpp
 * JSON forms of the library's artifacts. Complex numbers are [re, im] pairs
 * and matrices are arrays of rows. Keys keep insertion order so output is
 * stable across runs.
 */
#pragma once

#include <json.hpp>

#include "hiddenbasis/hidden_basis.hpp"
#include "hiddenbasis/phase_invariant.hpp"
#include "hiddenbasis/phase_reference.hpp"
#include "hiddenbasis/protocol.hpp"
#include "hiddenbasis/squashing.hpp"

namespace hiddenbasis::io {

using Json = nlohmann::ordered_json;

/// Thrown for a document that does not describe a valid object.
class JsonFormatError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] Json complex_to_json(Complex z);
[[nodiscard]] Complex complex_from_json(const Json &j);
[[nodiscard]] Json vector_to_json(const Vector &v);
[[nodiscard]] Vector vector_from_json(const Json &j);
[[nodiscard]] Json matrix_to_json(const Matrix &m);
[[nodiscard]] Matrix matrix_from_json(const Json &j);

/// {d0, d1, alpha: [[re, im], ...], beta: [...]}.
[[nodiscard]] Json to_json(const HiddenBasisSpec &spec);
[[nodiscard]] HiddenBasisSpec spec_from_json(const Json &j);

/// {n, blocks: [matrix per w]}.
[[nodiscard]] Json to_json(const WeightBlockOperator &op);
[[nodiscard]] WeightBlockOperator operator_from_json(const Json &j);

/// Per-step probability pairs and final phases.
[[nodiscard]] Json to_json(const PrepCircuit &circuit);

[[nodiscard]] Json to_json(const FidelityReport &r);
[[nodiscard]] Json to_json(const KernelResult &r);
[[nodiscard]] Json to_json(const SessionReport &r);
[[nodiscard]] Json to_json(const ChainReport &r);
[[nodiscard]] Json to_json(const ForgeryReport &r);

} // namespace hiddenbasis::io
