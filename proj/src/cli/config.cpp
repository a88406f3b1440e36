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
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hiddenbasis/cli.hpp"

namespace hiddenbasis::cli {

namespace {

// A flag that a JSON config may also set; the flag wins when given.
struct Binding {
    CLI::App *app;
    std::string key;
    CLI::Option *option;
    std::function<void(const io::Json &)> assign;
};

class Builder {
  public:
    template <typename T>
    void add(CLI::App *app, const std::string &key, T &field, const std::string &help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        CLI::Option *opt = nullptr;
        if constexpr (std::is_same_v<T, bool>) {
            opt = app->add_flag(flag, field, help);
        } else {
            opt = app->add_option(flag, field, help)->capture_default_str();
        }
        bindings_.push_back({app, key, opt, [&field, key](const io::Json &j) {
                                 try {
                                     field = j.get<T>();
                                 } catch (const io::Json::exception &) {
                                     throw ConfigError("config key '" + key +
                                                       "' has the wrong type");
                                 }
                             }});
    }

    void apply_json(const CLI::App *active, const io::Json &doc) const {
        if (!doc.is_object()) {
            throw ConfigError("config file must hold a JSON object");
        }
        for (const auto &[key, value] : doc.items()) {
            if (key == "command") {
                continue;
            }
            const Binding *hit = nullptr;
            for (const auto &b : bindings_) {
                if (b.key == key && b.app == active) {
                    hit = &b;
                    break;
                }
            }
            if (hit == nullptr) {
                throw ConfigError("config key '" + key + "' is not a parameter of '" +
                                  active->get_name() + "'");
            }
            if (hit->option->count() == 0) {
                hit->assign(value);
            }
        }
    }

  private:
    std::vector<Binding> bindings_;
};

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_cell(const io::Json &v) {
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

void validate(const ExperimentConfig &c) {
    if (c.format != "json" && c.format != "csv") {
        throw ConfigError("--format must be json or csv, got '" + c.format + "'");
    }
    if (!(c.tol_exact > 0.0) || !(c.tol_chain > 0.0)) {
        throw ConfigError("tolerances must be positive");
    }
}

} // namespace

bool parse_config(int argc, const char *const *argv, ExperimentConfig &c, std::ostream &out) {
    CLI::App app{"Exact simulator for computation in a hidden basis"};
    app.require_subcommand(1);
    std::string config_path;
    Builder b;

    auto common = [&](CLI::App *sub) {
        b.add(sub, "seed", c.seed, "Root RNG seed");
        b.add(sub, "format", c.format, "Report format: json or csv");
        b.add(sub, "output", c.output, "Report path (default stdout)");
        b.add(sub, "tol_exact", c.tol_exact, "Tolerance for constructed identities");
        b.add(sub, "tol_chain", c.tol_chain, "Tolerance for chained computations");
        sub->add_option("--config", config_path, "JSON config; flags override its values");
    };

    auto *lift = app.add_subcommand("lift", "Lift random phase-invariant unitaries and compare with the embedding");
    common(lift);
    b.add(lift, "n", c.n, "Logical qubits");
    b.add(lift, "d0", c.d0, "Dimension of S_0");
    b.add(lift, "d1", c.d1, "Dimension of S_1");
    b.add(lift, "trials", c.trials, "Random unitaries to check");
    b.add(lift, "identity", c.identity, "Lift the identity instead of random unitaries");
    b.add(lift, "unitary_file", c.unitary_file, "Lift this WeightBlockOperator JSON instead");

    auto *prep = app.add_subcommand("prep", "Prepare random weight-w states and check the output");
    common(prep);
    b.add(prep, "n", c.n, "Logical qubits");
    b.add(prep, "w", c.w, "Hamming weight");
    b.add(prep, "trials", c.trials, "Random targets");
    b.add(prep, "trace", c.trace, "Include the first circuit's step trace");

    auto *chain = app.add_subcommand("hadamard-chain", "Run l reference-driven Hadamards on one qubit");
    common(chain);
    b.add(chain, "t", c.t, "Reference size");
    b.add(chain, "l", c.l, "Hadamard uses");
    b.add(chain, "theta", c.theta, "Reference phase");
    b.add(chain, "alpha", c.alpha, "Gate parameter in [0, 1]");
    b.add(chain, "alternate_z", c.alternate_z, "Insert Z between Hadamards");
    b.add(chain, "start_at_zero", c.start_at_zero, "Reference support starts at w = 0");

    auto *idp = app.add_subcommand("id-protocol", "Identification kernel sessions and the attack curve");
    common(idp);
    b.add(idp, "prover", c.prover, "honest or eve");
    b.add(idp, "r", c.r, "Public-key copies in circulation");
    b.add(idp, "s", c.s, "Kernel repetitions");
    b.add(idp, "epsilon", c.epsilon, "Target soundness error for the s estimate");
    b.add(idp, "sweep", c.sweep, "Emit (r_prime, pass_prob) rows instead of a session");
    b.add(idp, "sweep_values", c.sweep_values, "r' values for --sweep (default 4..512, doubling)");

    auto *squash = app.add_subcommand("squash", "Copy lower bound and distance chain for the search family");
    common(squash);
    b.add(squash, "M", c.M, "Ambient dimension");
    b.add(squash, "t", c.copies, "Copies");
    b.add(squash, "epsilon", c.epsilon, "Squashing error in (0, 1/2)");
    b.add(squash, "sweep", c.sweep, "One row per t = 1..t");

    auto *forge = app.add_subcommand("forge", "Forge a theta-averaged signature and compare verifiers");
    common(forge);
    b.add(forge, "n", c.n, "Registers in the signature");
    b.add(forge, "w", c.w, "Weight for --signature symmetric");
    b.add(forge, "signature", c.signature, "plus or symmetric");
    b.add(forge, "samples", c.samples, "Sampled preparations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, out);
        return false;
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }

    const CLI::App *active = nullptr;
    for (const auto *sub : app.get_subcommands()) {
        active = sub;
    }
    c.command = active->get_name();

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError("cannot open config file '" + config_path + "'");
        }
        io::Json doc;
        try {
            doc = io::Json::parse(in);
        } catch (const io::Json::parse_error &e) {
            throw ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
        }
        if (doc.contains("command") && doc["command"] != c.command) {
            throw ConfigError("config file is for command '" +
                              doc["command"].get<std::string>() + "', not '" + c.command + "'");
        }
        b.apply_json(active, doc);
    }
    validate(c);
    return true;
}

std::string render(const io::Json &report, const std::string &format) {
    if (format == "json") {
        return report.dump(2) + "\n";
    }
    // Sweeps carry their table under "rows"; anything else is one row.
    const io::Json rows = report.contains("rows") ? report["rows"] : io::Json::array({report});
    std::ostringstream out;
    if (rows.empty()) {
        return "";
    }
    std::vector<std::string> keys;
    for (const auto &[key, value] : rows[0].items()) {
        if (!value.is_structured()) {
            keys.push_back(key);
        }
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out << (i ? "," : "") << keys[i];
    }
    out << "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            out << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
        }
        out << "\n";
    }
    return out.str();
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    auto error = [&](const char *kind, const std::string &message, int code) {
        io::Json e;
        e["error"] = kind;
        e["message"] = message;
        err << e.dump() << "\n";
        return code;
    };
    ExperimentConfig config;
    CommandResult result;
    try {
        if (!parse_config(argc, argv, config, out)) {
            return kExitOk;
        }
        result = run_command(config);
    } catch (const ConfigError &e) {
        return error("config", e.what(), kExitConfig);
    } catch (const io::JsonFormatError &e) {
        return error("config", e.what(), kExitConfig);
    } catch (const InvariantViolation &e) {
        return error("invariant", e.what(), kExitConfig);
    } catch (const DimensionMismatch &e) {
        return error("dimension", e.what(), kExitConfig);
    } catch (const ReferenceExhausted &e) {
        return error("reference", e.what(), kExitConfig);
    } catch (const std::logic_error &e) {
        return error("parameter", e.what(), kExitConfig);
    } catch (const std::exception &e) {
        return error("runtime", e.what(), kExitAssertion);
    }

    const std::string text = render(result.report, config.format);
    if (config.output.empty()) {
        out << text;
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file) {
            return error("config", "cannot write '" + config.output + "'", kExitConfig);
        }
        file << text;
    }
    if (!result.pass) {
        err << "one or more checks failed\n";
        return kExitAssertion;
    }
    return kExitOk;
}

} // namespace hiddenbasis::cli
