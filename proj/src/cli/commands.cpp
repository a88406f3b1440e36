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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hiddenbasis/cli.hpp"

namespace hiddenbasis::cli {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw ConfigError(message);
    }
}

// Collects named boolean checks; the command passes when all hold.
class Checks {
  public:
    void add(const std::string &name, bool ok) {
        json_[name] = ok;
        pass_ = pass_ && ok;
    }
    [[nodiscard]] bool pass() const noexcept { return pass_; }
    [[nodiscard]] const io::Json &json() const noexcept { return json_; }

  private:
    io::Json json_ = io::Json::object();
    bool pass_ = true;
};

CommandResult finish(io::Json report, const Checks &checks) {
    report["checks"] = checks.json();
    report["pass"] = checks.pass();
    return CommandResult{std::move(report), checks.pass()};
}

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

CommandResult cmd_lift(const ExperimentConfig &c) {
    require(c.n >= 1 && c.n <= 8, "--n must lie in 1..8");
    require(c.d0 >= 1 && c.d1 >= 1, "--d0 and --d1 must be positive");
    require(c.trials >= 1, "--trials must be positive");
    const SeedStream seeds(c.seed);
    Rng spec_rng = seeds.fork("lift.spec");
    Rng op_rng = seeds.fork("lift.unitary");
    Rng probe_rng = seeds.fork("lift.probe");
    const HiddenBasisSpec spec = HiddenBasisSpec::random(c.d0, c.d1, spec_rng);
    const Index dim = spec.physical_dim(c.n);
    require(dim <= (Index{1} << 22), "physical dimension (d0+d1)^n is too large for this command");

    std::vector<WeightBlockOperator> ops;
    std::string source = "random";
    if (!c.unitary_file.empty()) {
        std::ifstream in(c.unitary_file);
        require(static_cast<bool>(in), "cannot open unitary file '" + c.unitary_file + "'");
        io::Json doc;
        try {
            doc = io::Json::parse(in);
        } catch (const io::Json::parse_error &e) {
            throw ConfigError("unitary file is not valid JSON: " + std::string(e.what()));
        }
        ops.push_back(io::operator_from_json(doc));
        require(ops.back().n() == c.n, "unitary file has n = " + std::to_string(ops.back().n()) +
                                           " but --n is " + std::to_string(c.n));
        source = "file";
    } else if (c.identity) {
        ops.push_back(WeightBlockOperator::identity(c.n));
        source = "identity";
    } else {
        for (int k = 0; k < c.trials; ++k) {
            ops.push_back(WeightBlockOperator::random_unitary(c.n, op_rng));
        }
    }

    double max_dev = 0.0;
    double max_unitarity = 0.0;
    bool identical = true;
    bool dense_checked = false;
    for (const auto &op : ops) {
        const LiftedUnitary lifted = lift_unitary(op, spec);
        for (Label y = 0; y < (Label{1} << c.n); ++y) {
            const LogicalState e = LogicalState::basis(c.n, y);
            const Vector lhs = lifted.apply(embed(spec, e).amplitudes());
            const Vector rhs =
                embed(spec, LogicalState(c.n, op.apply(e.amplitudes()), kChainTol)).amplitudes();
            max_dev = std::max(max_dev, (lhs - rhs).norm());
        }
        const Vector probe = random_unit_vector(dim, probe_rng);
        identical = identical && lifted.apply(probe, kernels::Exec::Serial) ==
                                     lifted.apply(probe, kernels::Exec::Parallel);
        if (dim <= kDenseDimCap) {
            dense_checked = true;
            const Matrix u = lifted.dense().matrix();
            max_unitarity = std::max(
                max_unitarity, max_abs_entry(u * u.adjoint() - Matrix::Identity(dim, dim)));
        }
    }

    io::Json report;
    report["command"] = "lift";
    report["n"] = c.n;
    report["d0"] = c.d0;
    report["d1"] = c.d1;
    report["seed"] = c.seed;
    report["source"] = source;
    report["operators"] = ops.size();
    report["physical_dim"] = dim;
    report["spec"] = io::to_json(spec);
    report["max_deviation"] = max_dev;
    report["max_unitarity_deviation"] = max_unitarity;
    report["dense_checked"] = dense_checked;
    Checks checks;
    checks.add("embedding_commutes", max_dev <= c.tol_chain);
    checks.add("unitary", max_unitarity <= c.tol_chain);
    checks.add("serial_parallel_identical", identical);
    return finish(std::move(report), checks);
}

CommandResult cmd_prep(const ExperimentConfig &c) {
    require(c.n >= 1 && c.n <= 16, "--n must lie in 1..16");
    require(c.w >= 0 && c.w <= c.n, "--w must lie in 0..n");
    require(c.trials >= 1, "--trials must be positive");
    Rng rng = SeedStream(c.seed).fork("prep.eta");
    const auto size = static_cast<Index>(binomial(c.n, c.w));

    double max_infidelity = 0.0;
    bool copies_ok = true;
    io::Json trace;
    for (int k = 0; k < c.trials; ++k) {
        const Vector eta = random_unit_vector(size, rng);
        const PrepCircuit circuit = prepare_weight_state(eta, c.n, c.w);
        const LogicalState out = circuit.run();
        const double f = std::abs(weight_coordinates(out.amplitudes(), c.n, c.w).dot(eta));
        max_infidelity = std::max(max_infidelity, 1.0 - f);
        copies_ok = copies_ok && circuit.copies() == std::make_pair(c.n - c.w, c.w) &&
                    hamming_weight(circuit.initial_label()) == c.w;
        if (k == 0 && c.trace) {
            trace = io::to_json(circuit);
        }
    }
    const LogicalState sym = prepare_weight_state(symmetric_coefficients(c.n, c.w), c.n, c.w).run();
    const double sym_dev =
        (sym.amplitudes() - symmetric_state(c.n, c.w).amplitudes()).cwiseAbs().maxCoeff();

    io::Json report;
    report["command"] = "prep";
    report["n"] = c.n;
    report["w"] = c.w;
    report["seed"] = c.seed;
    report["trials"] = c.trials;
    report["copies"] = io::Json::array({c.n - c.w, c.w});
    report["max_infidelity"] = max_infidelity;
    report["symmetric_max_deviation"] = sym_dev;
    if (c.trace) {
        report["trace"] = trace;
    }
    Checks checks;
    checks.add("fidelity", max_infidelity <= c.tol_chain);
    checks.add("symmetric_target", sym_dev <= c.tol_chain);
    checks.add("copies", copies_ok);
    return finish(std::move(report), checks);
}

CommandResult cmd_hadamard_chain(const ExperimentConfig &c) {
    require(c.t >= 3, "--t must be at least 3");
    require(c.l >= 0, "--l must be nonnegative");
    require(2 * c.l < c.t, "--l too large: the reference supports l < t/2 uses");
    require(c.alpha >= 0.0 && c.alpha <= 1.0, "--alpha must lie in [0, 1]");
    std::vector<GateSpec> gates;
    for (int i = 0; i < c.l; ++i) {
        gates.push_back(GateSpec::h_theta(0, c.alpha));
        if (c.alternate_z && i + 1 < c.l) {
            gates.push_back(GateSpec::z(0));
        }
    }
    const ReferenceStart start = c.start_at_zero ? ReferenceStart::Zero : ReferenceStart::One;
    RunOptions options;
    options.per_gate_overlaps = !c.start_at_zero;
    const CircuitRun run =
        run_circuit(LogicalState::basis(1, 0), gates, make_reference(c.theta, c.t, start), options);

    io::Json report;
    report["command"] = "hadamard-chain";
    report["alpha"] = c.alpha;
    report["reference_start"] = c.start_at_zero ? 0 : 1;
    const io::Json fields = io::to_json(run.report);
    for (const auto &[key, value] : fields.items()) {
        report[key] = value;
    }
    Checks checks;
    if (!c.start_at_zero) {
        double worst = 0.0;
        for (std::size_t i = 0; i < run.report.per_gate_overlap.size(); ++i) {
            const double k = static_cast<double>(i);
            const double expect = std::sqrt((c.t - 2.0 * (k + 1)) / (c.t - 2.0 * k));
            worst = std::max(worst, std::abs(run.report.per_gate_overlap[i] - expect));
        }
        report["per_gate_max_deviation"] = worst;
        checks.add("per_gate_overlap", worst <= c.tol_chain);
        checks.add("fidelity_bound", run.report.final_fidelity >=
                                         run.report.bound_sqrt_1_minus_2l_over_t - c.tol_chain);
    }
    checks.add("norm", std::abs(run.joint.norm() - 1.0) <= c.tol_chain);
    return finish(std::move(report), checks);
}

CommandResult cmd_id_protocol(const ExperimentConfig &c) {
    Checks checks;
    io::Json report;
    report["command"] = "id-protocol";
    if (c.sweep) {
        std::vector<int> values = c.sweep_values;
        if (values.empty()) {
            for (int r = 4; r <= 512; r *= 2) {
                values.push_back(r);
            }
        }
        for (int v : values) {
            require(v >= 3, "sweep values must be at least 3");
        }
        std::vector<double> pass(values.size());
        const auto count = static_cast<std::int64_t>(values.size());
        // Sweep points are independent; results land in declared order.
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i) {
            pass[static_cast<std::size_t>(i)] =
                kernel_eve(values[static_cast<std::size_t>(i)], kernels::Exec::Serial);
        }
        io::Json rows = io::Json::array();
        std::vector<double> x, y;
        bool below_one = true;
        bool increasing = true;
        for (std::size_t i = 0; i < values.size(); ++i) {
            io::Json row;
            row["r_prime"] = values[i];
            row["pass_prob"] = pass[i];
            rows.push_back(std::move(row));
            below_one = below_one && pass[i] < 1.0;
            if (i > 0 && values[i] != values[i - 1]) {
                increasing = increasing && (values[i] > values[i - 1]) == (pass[i] > pass[i - 1]);
            }
            x.push_back(values[i]);
            y.push_back(1.0 - pass[i]);
        }
        report["mode"] = "sweep";
        report["rows"] = std::move(rows);
        checks.add("below_one", below_one);
        checks.add("increasing", increasing);
        if (values.size() >= 2 && below_one) {
            const double slope = log_log_slope(x, y);
            report["log_log_slope"] = slope;
            checks.add("slope_near_minus_one", slope >= -1.3 && slope <= -0.7);
        }
        return finish(std::move(report), checks);
    }

    require(c.prover == "honest" || c.prover == "eve", "--prover must be honest or eve");
    require(c.r >= 1 && c.s >= 1, "--r and --s must be positive");
    const ProverKind kind = c.prover == "honest" ? ProverKind::Honest : ProverKind::Eve;
    require(kind == ProverKind::Honest || c.r >= 4, "--prover eve needs r >= 4 (r - 1 >= 3 copies)");
    const SessionReport session = run_session(c.r, c.s, kind);
    const io::Json fields = io::to_json(session);
    for (const auto &[key, value] : fields.items()) {
        report[key] = value;
    }
    double product = 1.0;
    for (double p : session.kernel_pass_prob) {
        product *= p;
    }
    checks.add("accept_is_product", std::abs(product - session.accept_prob) <= 1e-12);
    if (kind == ProverKind::Honest) {
        checks.add("complete", std::abs(session.accept_prob - 1.0) <= 1e-12);
    } else {
        const double pass = session.kernel_pass_prob.front();
        checks.add("kernel_below_one", pass < 1.0);
        require(c.epsilon > 0.0 && c.epsilon < 1.0, "--epsilon must lie in (0, 1)");
        report["epsilon"] = c.epsilon;
        report["min_s_for_epsilon"] = minimum_security_parameter(pass, c.epsilon);
        report["r_log_r_over_epsilon"] = c.r * std::log(c.r / c.epsilon);
    }
    return finish(std::move(report), checks);
}

CommandResult cmd_squash(const ExperimentConfig &c) {
    require(c.M > 4, "--M must exceed 4");
    require(c.copies >= 1, "--t must be positive");
    require(c.epsilon > 0.0 && c.epsilon < 0.5, "--epsilon must lie in (0, 1/2)");
    const CopyBound bound = squash_copy_lower_bound(c.M, c.epsilon);
    Checks checks;
    io::Json rows = io::Json::array();
    const int first = c.sweep ? 1 : c.copies;
    bool dense_ok = true;
    bool consistent = true;
    ChainReport last;
    for (int t = first; t <= c.copies; ++t) {
        last = verify_chain(c.M, t, c.epsilon);
        io::Json row;
        row["M"] = c.M;
        row["epsilon"] = c.epsilon;
        row["bound_t"] = last.bound_t;
        row["chain_lhs"] = last.chain_lhs;
        row["chain_rhs"] = last.chain_rhs;
        row["dense_check_pass"] = last.dense_check_pass;
        row["t"] = t;
        rows.push_back(std::move(row));
        dense_ok = dense_ok && last.dense_check_pass;
        consistent = consistent && last.consistent_with_bound;
    }
    io::Json report;
    report["command"] = "squash";
    report["chain"] = io::to_json(last);
    report["bound_slope"] = bound.slope;
    report["bound_ratio_2M_over_M"] = squash_copy_lower_bound(2 * c.M, c.epsilon).bound / bound.bound;
    report["rows"] = std::move(rows);
    checks.add("dense_check", dense_ok);
    checks.add("chain_matches_bound", consistent);
    return finish(std::move(report), checks);
}

CommandResult cmd_forge(const ExperimentConfig &c) {
    require(c.n >= 1 && c.n <= 8, "--n must lie in 1..8");
    require(c.samples >= 0, "--samples must be nonnegative");
    require(c.signature == "plus" || c.signature == "symmetric",
            "--signature must be plus or symmetric");
    SignatureDescription sigma;
    if (c.signature == "plus") {
        sigma = plus_signature(c.n);
    } else {
        require(c.w >= 0 && c.w <= c.n, "--w must lie in 0..n");
        sigma = symmetric_signature(c.n, c.w);
    }
    Rng rng = SeedStream(c.seed).fork("forge.samples");
    const ForgeryReport f = forge_signature_mixture(sigma, c.n, rng, c.samples);

    io::Json report;
    report["command"] = "forge";
    report["signature"] = c.signature;
    report["seed"] = c.seed;
    const io::Json fields = io::to_json(f);
    for (const auto &[key, value] : fields.items()) {
        report[key] = value;
    }
    double register_gap = 0.0;
    for (std::size_t j = 0; j < f.register_swap_authentic.size(); ++j) {
        register_gap = std::max(register_gap,
                                std::abs(f.register_swap_authentic[j] - f.register_swap_forged[j]));
    }
    const double control_gap = std::abs(f.control_authentic - f.control_forged);
    report["control_gap"] = control_gap;
    Checks checks;
    checks.add("joint_swap_equal",
               std::abs(f.joint_swap_authentic - f.joint_swap_forged) <= c.tol_exact);
    checks.add("register_swap_equal", register_gap <= c.tol_exact);
    checks.add("copies_within_n", f.max_zero_copies <= c.n && f.max_one_copies <= c.n);
    if (c.signature == "plus") {
        checks.add("control_distinguishes", control_gap >= 0.1);
    } else {
        checks.add("already_invariant", control_gap <= c.tol_exact);
    }
    return finish(std::move(report), checks);
}

CommandResult run_command(const ExperimentConfig &c) {
    if (c.command == "lift") {
        return cmd_lift(c);
    }
    if (c.command == "prep") {
        return cmd_prep(c);
    }
    if (c.command == "hadamard-chain") {
        return cmd_hadamard_chain(c);
    }
    if (c.command == "id-protocol") {
        return cmd_id_protocol(c);
    }
    if (c.command == "squash") {
        return cmd_squash(c);
    }
    if (c.command == "forge") {
        return cmd_forge(c);
    }
    throw ConfigError("unknown command '" + c.command + "'");
}

} // namespace hiddenbasis::cli
