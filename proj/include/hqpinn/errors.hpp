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
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqpinn {

/// Argument outside an operation's domain (bad wire, shape, range).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Input that cannot be encoded as a quantum state.
class EmbeddingError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Caller violated an API contract (e.g. SPSA routed through a Jacobian path).
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Training hit a non-finite loss.
class TrainingError : public std::runtime_error {
  public:
    TrainingError(const std::string &what, std::size_t epoch)
        : std::runtime_error(what), epoch_(epoch) {}
    [[nodiscard]] std::size_t epoch() const noexcept { return epoch_; }

  private:
    std::size_t epoch_;
};

/// Invalid configuration value or unknown key.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(const std::string &key, const std::string &what)
        : std::invalid_argument("config key '" + key + "': " + what), key_(key) {}
    [[nodiscard]] const std::string &key() const noexcept { return key_; }

  private:
    std::string key_;
};

/// Missing or malformed input file.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hqpinn
