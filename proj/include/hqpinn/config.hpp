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
/**
 * @file
 * Run configuration: one flat JSON object shared by every subcommand.
 *
 * Keys (all optional, defaults in parentheses):
 *
 *   seed (0)               threads (0 = runtime default)
 *   grad ("adjoint")       ansatz ("rx": rx | ry | rz | none)
 *   n_layers (2)           qubits (0 = derive from data)
 *   preparation ("circuit": circuit | direct)
 *   epochs (500)           lr (0.1)            lambda (0.1)
 *   angles ([0])           freq (40)           dt (0.002)
 *   gamma (0.5)            prior_window (15)   bounds_margin (0.2)
 *   patience (0)           fd_delta (1e-4)     spsa_epsilon (0.01)
 *   spsa_samples (1)
 *   n_samples (64)         n_traces (1)        n_sections (1)
 *   model_zp ([6.0, 7.4, 6.6])                 model_zs ([3.0, 3.8, 3.2])
 *   wedge (true)           wedge_min_fraction (0.25)
 *   noise_sigma (0)
 *   gradcheck_qubits (4)   gradcheck_spsa_samples (2000)
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hqpinn/invert.hpp"
#include "hqpinn/synth.hpp"

namespace hqpinn {

struct RunConfig {
    InversionConfig inversion;
    SynthConfig synth;
    int threads = 0;
    std::size_t gradcheck_qubits = 4;
    std::size_t gradcheck_spsa_samples = 2000;

    /// Copies the shared keys (angles, freq, dt, gamma, prior_window, seed)
    /// from the inversion block into the synth block.
    void sync_shared();
};

/// Parses a JSON object; unknown keys or wrong types raise ConfigError.
[[nodiscard]] RunConfig parse_config(const std::string &json_text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path &path);

/// Every key with its resolved value, pretty-printed JSON.
[[nodiscard]] std::string serialize_config(const RunConfig &cfg);

[[nodiscard]] std::string ansatz_name(Ansatz ansatz, Axis axis);
/// "rx" | "ry" | "rz" | "none"; throws ConfigError on anything else.
void parse_ansatz(const std::string &name, Ansatz &ansatz, Axis &axis);

} // namespace hqpinn
