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

#include "hiddenbasis/json_io.hpp"

namespace hiddenbasis::io {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw JsonFormatError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw JsonFormatError("complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const Vector &v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

Vector vector_from_json(const Json &j) {
    if (!j.is_array()) {
        throw JsonFormatError("expected an array of complex numbers");
    }
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Index>(i)) = complex_from_json(j[i]);
    }
    return v;
}

Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        rows.push_back(vector_to_json(m.row(r).transpose()));
    }
    return rows;
}

Matrix matrix_from_json(const Json &j) {
    if (!j.is_array()) {
        throw JsonFormatError("expected a matrix as an array of rows");
    }
    const auto rows = static_cast<Index>(j.size());
    if (rows == 0) {
        return Matrix(0, 0);
    }
    const Vector first = vector_from_json(j[0]);
    Matrix m(rows, first.size());
    for (Index r = 0; r < rows; ++r) {
        const Vector row = vector_from_json(j[static_cast<std::size_t>(r)]);
        if (row.size() != m.cols()) {
            throw JsonFormatError("matrix rows have different lengths");
        }
        m.row(r) = row.transpose();
    }
    return m;
}

Json to_json(const HiddenBasisSpec &spec) {
    Json j;
    j["d0"] = spec.d0();
    j["d1"] = spec.d1();
    j["alpha"] = vector_to_json(spec.alpha());
    j["beta"] = vector_to_json(spec.beta());
    return j;
}

HiddenBasisSpec spec_from_json(const Json &j) {
    Vector alpha = vector_from_json(field(j, "alpha"));
    Vector beta = vector_from_json(field(j, "beta"));
    if (j.contains("d0") && j.at("d0").get<Index>() != alpha.size()) {
        throw JsonFormatError("d0 does not match the length of alpha");
    }
    if (j.contains("d1") && j.at("d1").get<Index>() != beta.size()) {
        throw JsonFormatError("d1 does not match the length of beta");
    }
    return HiddenBasisSpec(std::move(alpha), std::move(beta));
}

Json to_json(const WeightBlockOperator &op) {
    Json j;
    j["n"] = op.n();
    Json blocks = Json::array();
    for (const auto &b : op.blocks()) {
        blocks.push_back(matrix_to_json(b));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

WeightBlockOperator operator_from_json(const Json &j) {
    const int n = field(j, "n").get<int>();
    const Json &blocks = field(j, "blocks");
    if (!blocks.is_array()) {
        throw JsonFormatError("'blocks' must be an array");
    }
    std::vector<Matrix> out;
    for (const auto &b : blocks) {
        out.push_back(matrix_from_json(b));
    }
    return WeightBlockOperator(n, std::move(out));
}

Json to_json(const PrepCircuit &circuit) {
    Json j;
    j["n"] = circuit.n();
    j["w"] = circuit.w();
    j["initial"] = label_string(circuit.initial_label(), circuit.n());
    j["copies"] = Json::array({circuit.copies().first, circuit.copies().second});
    Json steps = Json::array();
    for (const auto &layer : circuit.steps()) {
        for (const auto &s : layer) {
            Json e;
            e["j"] = s.j;
            e["prefix"] = s.j > 1 ? label_string(s.prefix, s.j - 1) : std::string();
            e["remaining"] = s.remaining;
            e["p0"] = s.sqrt_p0 * s.sqrt_p0;
            e["p1"] = s.sqrt_p1 * s.sqrt_p1;
            e["reachable"] = s.reachable;
            steps.push_back(std::move(e));
        }
    }
    j["steps"] = std::move(steps);
    j["phases"] = circuit.phases();
    return j;
}

Json to_json(const FidelityReport &r) {
    Json j;
    j["t"] = r.t;
    j["l"] = r.l;
    j["theta"] = r.theta;
    j["per_gate_overlap"] = r.per_gate_overlap;
    j["cumulative_overlap"] = r.cumulative_overlap;
    j["final_fidelity"] = r.final_fidelity;
    j["bound_sqrt_1_minus_2l_over_t"] = r.bound_sqrt_1_minus_2l_over_t;
    return j;
}

Json to_json(const KernelResult &r) {
    Json j;
    j["pass"] = r.pass;
    j["p_message0"] = r.p_message0;
    j["p_message1"] = r.p_message1;
    j["p_bot"] = r.p_bot;
    return j;
}

Json to_json(const SessionReport &r) {
    Json j;
    j["r"] = r.r;
    j["s"] = r.s;
    j["prover"] = to_string(r.prover);
    j["r_prime"] = r.r_prime;
    j["kernel_pass_prob"] = r.kernel_pass_prob;
    j["accept_prob"] = r.accept_prob;
    j["public_key_copies_issued"] = r.public_key_copies_issued;
    return j;
}

Json to_json(const ChainReport &r) {
    Json j;
    j["M"] = r.M;
    j["t"] = r.t;
    j["epsilon"] = r.epsilon;
    j["ideal_output_distance"] = r.ideal_output_distance;
    j["chain_lhs"] = r.chain_lhs;
    j["tensor_distance_dense"] = r.tensor_distance_dense;
    j["chain_rhs"] = r.chain_rhs;
    j["bound_t"] = r.bound_t;
    j["dense_check_pass"] = r.dense_check_pass;
    j["feasible"] = r.feasible;
    j["consistent_with_bound"] = r.consistent_with_bound;
    j["notes"] = r.notes;
    return j;
}

Json to_json(const ForgeryReport &r) {
    Json j;
    j["n"] = r.n;
    j["joint_swap_authentic"] = r.joint_swap_authentic;
    j["joint_swap_forged"] = r.joint_swap_forged;
    j["register_swap_authentic"] = r.register_swap_authentic;
    j["register_swap_forged"] = r.register_swap_forged;
    j["control_authentic"] = r.control_authentic;
    j["control_forged"] = r.control_forged;
    j["samples"] = r.samples;
    j["max_copies"] = Json::array({r.max_zero_copies, r.max_one_copies});
    j["sampled_trace_distance"] = r.sampled_trace_distance;
    return j;
}

} // namespace hiddenbasis::io
