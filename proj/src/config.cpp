// Copyright 2026 The HQ-PINN Authors
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
#include "hqpinn/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json &j, const std::string &key) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ConfigError(key, "has the wrong type");
    }
}

std::size_t get_count(const json &j, const std::string &key) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw ConfigError(key, "expected a non-negative integer");
    }
    const auto v = j.get<std::int64_t>();
    if (v < 0) {
        throw ConfigError(key, "expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

double get_number(const json &j, const std::string &key) {
    if (!j.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j.get<double>();
}

std::vector<double> get_numbers(const json &j, const std::string &key) {
    if (!j.is_array()) {
        throw ConfigError(key, "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto &v : j) {
        out.push_back(get_number(v, key));
    }
    return out;
}

Preparation parse_preparation(const std::string &s) {
    if (s == "circuit") {
        return Preparation::Circuit;
    }
    if (s == "direct") {
        return Preparation::Direct;
    }
    throw ConfigError("preparation", "expected circuit or direct, got '" + s + "'");
}

} // namespace

void RunConfig::sync_shared() {
    synth.angles = inversion.angles;
    synth.peak_frequency = inversion.peak_frequency;
    synth.dt = inversion.dt;
    synth.gamma = inversion.gamma;
    synth.prior_window = inversion.prior_window;
    synth.seed = inversion.seed;
}

std::string ansatz_name(Ansatz ansatz, Axis axis) {
    if (ansatz == Ansatz::None) {
        return "none";
    }
    switch (axis) {
    case Axis::X:
        return "rx";
    case Axis::Y:
        return "ry";
    case Axis::Z:
        return "rz";
    }
    return "rx";
}

void parse_ansatz(const std::string &name, Ansatz &ansatz, Axis &axis) {
    if (name == "none") {
        ansatz = Ansatz::None;
        return;
    }
    ansatz = Ansatz::BasicEntangler;
    if (name == "rx") {
        axis = Axis::X;
    } else if (name == "ry") {
        axis = Axis::Y;
    } else if (name == "rz") {
        axis = Axis::Z;
    } else {
        throw ConfigError("ansatz", "expected rx, ry, rz or none, got '" + name + "'");
    }
}

RunConfig parse_config(const std::string &json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("<document>", "top level must be an object");
    }

    RunConfig cfg;
    auto &inv = cfg.inversion;
    auto &syn = cfg.synth;
    std::vector<double> zp;
    std::vector<double> zs;
    bool have_zp = false;
    bool have_zs = false;

    using Setter = std::function<void(const json &, const std::string &)>;
    const std::map<std::string, Setter> setters = {
        {"seed", [&](const json &j, const std::string &k) { inv.seed = get_count(j, k); }},
        {"threads", [&](const json &j, const std::string &k) { cfg.threads = static_cast<int>(get_count(j, k)); }},
        {"grad",
         [&](const json &j, const std::string &k) {
             try {
                 inv.grad.method = parse_grad_method(get_as<std::string>(j, k));
             } catch (const DomainError &e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"ansatz",
         [&](const json &j, const std::string &k) {
             parse_ansatz(get_as<std::string>(j, k), inv.ansatz, inv.rotation_axis);
         }},
        {"n_layers", [&](const json &j, const std::string &k) { inv.n_layers = get_count(j, k); }},
        {"qubits", [&](const json &j, const std::string &k) { inv.n_qubits = get_count(j, k); }},
        {"preparation",
         [&](const json &j, const std::string &k) { inv.preparation = parse_preparation(get_as<std::string>(j, k)); }},
        {"epochs", [&](const json &j, const std::string &k) { inv.epochs = get_count(j, k); }},
        {"lr", [&](const json &j, const std::string &k) { inv.learning_rate = get_number(j, k); }},
        {"lambda", [&](const json &j, const std::string &k) { inv.reg_weight = get_number(j, k); }},
        {"angles", [&](const json &j, const std::string &k) { inv.angles = get_numbers(j, k); }},
        {"freq", [&](const json &j, const std::string &k) { inv.peak_frequency = get_number(j, k); }},
        {"dt", [&](const json &j, const std::string &k) { inv.dt = get_number(j, k); }},
        {"gamma", [&](const json &j, const std::string &k) { inv.gamma = get_number(j, k); }},
        {"prior_window", [&](const json &j, const std::string &k) { inv.prior_window = get_count(j, k); }},
        {"bounds_margin", [&](const json &j, const std::string &k) { inv.bounds_margin = get_number(j, k); }},
        {"patience", [&](const json &j, const std::string &k) { inv.patience = get_count(j, k); }},
        {"fd_delta", [&](const json &j, const std::string &k) { inv.grad.fd_delta = get_number(j, k); }},
        {"spsa_epsilon", [&](const json &j, const std::string &k) { inv.grad.spsa_epsilon = get_number(j, k); }},
        {"spsa_samples", [&](const json &j, const std::string &k) { inv.grad.spsa_num_samples = get_count(j, k); }},
        {"n_samples", [&](const json &j, const std::string &k) { syn.n_samples = get_count(j, k); }},
        {"n_traces", [&](const json &j, const std::string &k) { syn.n_traces = get_count(j, k); }},
        {"n_sections", [&](const json &j, const std::string &k) { syn.n_sections = get_count(j, k); }},
        {"model_zp",
         [&](const json &j, const std::string &k) {
             zp = get_numbers(j, k);
             have_zp = true;
         }},
        {"model_zs",
         [&](const json &j, const std::string &k) {
             zs = get_numbers(j, k);
             have_zs = true;
         }},
        {"wedge", [&](const json &j, const std::string &k) { syn.wedge = get_as<bool>(j, k); }},
        {"wedge_min_fraction",
         [&](const json &j, const std::string &k) { syn.wedge_min_fraction = get_number(j, k); }},
        {"noise_sigma", [&](const json &j, const std::string &k) { syn.noise_sigma = get_number(j, k); }},
        {"gradcheck_qubits", [&](const json &j, const std::string &k) { cfg.gradcheck_qubits = get_count(j, k); }},
        {"gradcheck_spsa_samples",
         [&](const json &j, const std::string &k) { cfg.gradcheck_spsa_samples = get_count(j, k); }},
    };

    for (const auto &[key, value] : root.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError(key, "unknown key");
        }
        it->second(value, key);
    }

    if (have_zp || have_zs) {
        if (!have_zp) {
            zp.clear();
            for (const auto &l : syn.layers) {
                zp.push_back(l.zp);
            }
        }
        if (!have_zs) {
            zs.clear();
            for (const auto &l : syn.layers) {
                zs.push_back(l.zs);
            }
        }
        if (zp.size() != zs.size()) {
            throw ConfigError("model_zs", "must have as many layers as model_zp");
        }
        syn.layers.clear();
        for (std::size_t i = 0; i < zp.size(); ++i) {
            syn.layers.push_back({zp[i], zs[i]});
        }
    }
    cfg.sync_shared();
    inv.grad.rng_seed = inv.seed;
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig &cfg) {
    const auto &inv = cfg.inversion;
    const auto &syn = cfg.synth;
    json zp = json::array();
    json zs = json::array();
    for (const auto &l : syn.layers) {
        zp.push_back(l.zp);
        zs.push_back(l.zs);
    }
    json j = {
        {"seed", inv.seed},
        {"threads", cfg.threads},
        {"grad", std::string(to_string(inv.grad.method))},
        {"ansatz", ansatz_name(inv.ansatz, inv.rotation_axis)},
        {"n_layers", inv.n_layers},
        {"qubits", inv.n_qubits},
        {"preparation", inv.preparation == Preparation::Circuit ? "circuit" : "direct"},
        {"epochs", inv.epochs},
        {"lr", inv.learning_rate},
        {"lambda", inv.reg_weight},
        {"angles", inv.angles},
        {"freq", inv.peak_frequency},
        {"dt", inv.dt},
        {"gamma", inv.gamma},
        {"prior_window", inv.prior_window},
        {"bounds_margin", inv.bounds_margin},
        {"patience", inv.patience},
        {"fd_delta", inv.grad.fd_delta},
        {"spsa_epsilon", inv.grad.spsa_epsilon},
        {"spsa_samples", inv.grad.spsa_num_samples},
        {"n_samples", syn.n_samples},
        {"n_traces", syn.n_traces},
        {"n_sections", syn.n_sections},
        {"model_zp", zp},
        {"model_zs", zs},
        {"wedge", syn.wedge},
        {"wedge_min_fraction", syn.wedge_min_fraction},
        {"noise_sigma", syn.noise_sigma},
        {"gradcheck_qubits", cfg.gradcheck_qubits},
        {"gradcheck_spsa_samples", cfg.gradcheck_spsa_samples},
    };
    return j.dump(2);
}

} // namespace hqpinn
