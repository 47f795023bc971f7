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
#include "hqpinn/invert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

std::vector<double> concat_data(std::span<const SeismicGather> gathers) {
    std::vector<double> out;
    for (const auto &g : gathers) {
        out.insert(out.end(), g.data.begin(), g.data.end());
    }
    return out;
}

// dL/d(predicted) split back into per-trace gathers shaped like `like`.
std::vector<SeismicGather> split_data(std::span<const double> flat, std::span<const SeismicGather> like) {
    std::vector<SeismicGather> out;
    out.reserve(like.size());
    std::size_t offset = 0;
    for (const auto &g : like) {
        SeismicGather s(g.n_samples, g.angles, g.dt);
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(offset), s.data.size(), s.data.begin());
        offset += s.data.size();
        out.push_back(std::move(s));
    }
    return out;
}

template <typename T>
std::vector<std::vector<T>> regroup(std::vector<T> flat, const InversionTask &task) {
    std::vector<std::vector<T>> out;
    std::size_t offset = 0;
    for (const auto &section : task.observed) {
        out.emplace_back(std::make_move_iterator(flat.begin() + static_cast<std::ptrdiff_t>(offset)),
                         std::make_move_iterator(flat.begin() +
                                                 static_cast<std::ptrdiff_t>(offset + section.size())));
        offset += section.size();
    }
    return out;
}

void require(bool ok, const std::string &key, const std::string &what) {
    if (!ok) {
        throw ConfigError(key, what);
    }
}

} // namespace

std::string_view to_string(InversionMode m) {
    switch (m) {
    case InversionMode::PostStack1D:
        return "post-stack-1d";
    case InversionMode::PreStack1D:
        return "pre-stack-1d";
    case InversionMode::PostStack2D:
        return "post-stack-2d";
    case InversionMode::Simultaneous2D:
        return "simultaneous-2d";
    }
    return "unknown";
}

InversionMode parse_inversion_mode(std::string_view s) {
    for (auto m : {InversionMode::PostStack1D, InversionMode::PreStack1D, InversionMode::PostStack2D,
                   InversionMode::Simultaneous2D}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw DomainError("unknown inversion mode '" + std::string(s) + "'");
}

void InversionConfig::validate() const {
    require(epochs >= 1, "epochs", "must be >= 1");
    require(learning_rate > 0.0, "lr", "must be positive");
    require(reg_weight >= 0.0, "lambda", "must be >= 0");
    require(ansatz == Ansatz::None || n_layers >= 1, "layers", "must be >= 1 with an ansatz");
    require(!angles.empty(), "angles", "needs at least one angle");
    for (const double a : angles) {
        require(a >= 0.0 && a <= kMaxAngleDeg, "angles", "each angle must lie in [0, 40] degrees");
    }
    require(dt > 0.0, "dt", "must be positive");
    require(peak_frequency > 0.0 && peak_frequency < 0.5 / dt, "freq", "must lie in (0, Nyquist)");
    require(gamma > 0.0, "gamma", "must be positive");
    require(prior_window % 2 == 1, "prior_window", "must be odd");
    require(bounds_margin >= 0.0, "bounds_margin", "must be >= 0");
    require(grad.fd_delta > 0.0, "fd_delta", "must be positive");
    require(grad.spsa_epsilon > 0.0, "spsa_epsilon", "must be positive");
    require(grad.spsa_num_samples >= 1, "spsa_samples", "must be >= 1");
}

std::size_t InversionTask::n_traces() const noexcept {
    std::size_t n = 0;
    for (const auto &s : observed) {
        n += s.size();
    }
    return n;
}

std::size_t InversionTask::n_samples() const {
    if (observed.empty() || observed.front().empty()) {
        throw DomainError("inversion task has no observed data");
    }
    return observed.front().front().n_samples;
}

const std::vector<double> &InversionTask::angles() const {
    if (observed.empty() || observed.front().empty()) {
        throw DomainError("inversion task has no observed data");
    }
    return observed.front().front().angles;
}

bool InversionTask::elastic() const {
    const auto &a = angles();
    return std::any_of(a.begin(), a.end(), [](double v) { return v != 0.0; });
}

std::size_t InversionTask::n_outputs() const { return n_traces() * n_samples() * (elastic() ? 2 : 1); }

void InversionTask::validate() const {
    if (observed.empty() || observed.size() != prior.size()) {
        throw DomainError("inversion task needs one prior per observed section");
    }
    const std::size_t nt = n_samples();
    const auto &ang = angles();
    const bool el = elastic();
    for (std::size_t s = 0; s < observed.size(); ++s) {
        if (observed[s].empty() || observed[s].size() != prior[s].size()) {
            throw DomainError("section " + std::to_string(s) + ": trace/prior count mismatch");
        }
        for (std::size_t t = 0; t < observed[s].size(); ++t) {
            const auto &g = observed[s][t];
            const auto &p = prior[s][t];
            if (g.n_samples != nt || g.angles != ang || g.data.size() != nt * ang.size()) {
                throw DomainError("section " + std::to_string(s) + " trace " + std::to_string(t) +
                                  ": gather shape differs from the first trace");
            }
            if (p.samples() != nt || p.elastic() != el) {
                throw DomainError("section " + std::to_string(s) + " trace " + std::to_string(t) +
                                  ": prior shape does not match the data");
            }
        }
    }
    switch (mode) {
    case InversionMode::PostStack1D:
        if (n_traces() != 1 || el) {
            throw DomainError("post-stack-1d expects a single normal-incidence trace");
        }
        break;
    case InversionMode::PreStack1D:
        if (n_traces() != 1) {
            throw DomainError("pre-stack-1d expects a single gather");
        }
        break;
    case InversionMode::PostStack2D:
        if (n_sections() != 1) {
            throw DomainError("post-stack-2d expects one section");
        }
        break;
    case InversionMode::Simultaneous2D:
        if (n_sections() < 2) {
            throw DomainError("simultaneous-2d expects at least two sections");
        }
        for (const auto &s : observed) {
            if (s.size() != observed.front().size()) {
                throw DomainError("simultaneous-2d sections must share a shape");
            }
        }
        break;
    }
}

PaddedVector flatten_input(const InversionTask &task) {
    if (task.observed.empty()) {
        throw DomainError("flatten_input: no observed data");
    }
    return pad_and_normalize(concat_data(flatten_sections(task.observed)));
}

ElasticBounds derive_bounds(const InversionTask &task, double margin) {
    const auto priors = flatten_sections(task.prior);
    const bool el = task.elastic();
    std::vector<ParameterRange> ranges;
    const auto range_of = [&](bool shear) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto &p : priors) {
            const auto &z = shear ? *p.zs : p.zp;
            for (const double v : z) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        // A flat prior widens by a fraction of its level instead.
        const double span = hi > lo ? hi - lo : std::abs(hi);
        const double floor = 0.1 * lo;
        return ParameterRange{std::max(lo - margin * span, floor), hi + margin * span};
    };
    ranges.push_back(range_of(false));
    if (el) {
        ranges.push_back(range_of(true));
    }
    std::vector<std::size_t> property;
    const std::size_t nt = task.n_samples();
    for (std::size_t t = 0; t < priors.size(); ++t) {
        property.insert(property.end(), nt, 0);
        if (el) {
            property.insert(property.end(), nt, 1);
        }
    }
    return ElasticBounds::broadcast(ranges, property);
}

std::vector<double> flatten_models(std::span<const ImpedanceModel> models) {
    std::vector<double> out;
    for (const auto &m : models) {
        out.insert(out.end(), m.zp.begin(), m.zp.end());
        if (m.zs) {
            out.insert(out.end(), m.zs->begin(), m.zs->end());
        }
    }
    return out;
}

std::vector<ImpedanceModel> unflatten_models(std::span<const double> values, std::size_t n_traces,
                                             std::size_t n_samples, bool elastic) {
    const std::size_t per = n_samples * (elastic ? 2 : 1);
    if (values.size() != n_traces * per) {
        throw DomainError("unflatten_models: length mismatch");
    }
    std::vector<ImpedanceModel> out(n_traces);
    for (std::size_t t = 0; t < n_traces; ++t) {
        const auto base = values.begin() + static_cast<std::ptrdiff_t>(t * per);
        const auto nts = static_cast<std::ptrdiff_t>(n_samples);
        out[t].zp.assign(base, base + nts);
        if (elastic) {
            out[t].zs = std::vector<double>(base + nts, base + 2 * nts);
        }
    }
    return out;
}

double rmse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw DomainError("rmse: shape mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

LossTerms loss(std::span<const double> observed, std::span<const double> predicted, std::span<const double> m_pred,
               std::span<const double> m_prior, const ElasticBounds &bounds, double lambda) {
    if (m_pred.size() != m_prior.size() || m_pred.size() != bounds.size()) {
        throw DomainError("loss: model/prior/bounds lengths differ");
    }
    LossTerms t;
    t.data = rmse(observed, predicted);
    std::vector<double> a(m_pred.size());
    std::vector<double> b(m_pred.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = bounds.normalize(i, m_pred[i]);
        b[i] = bounds.normalize(i, m_prior[i]);
    }
    t.prior = rmse(a, b);
    t.total = t.data + lambda * t.prior;
    return t;
}

LossGradient loss_gradient(std::span<const double> observed, std::span<const double> predicted,
                           std::span<const double> m_pred, std::span<const double> m_prior,
                           const ElasticBounds &bounds, double lambda) {
    const LossTerms t = loss(observed, predicted, m_pred, m_prior, bounds, lambda);
    LossGradient g;
    g.predicted.assign(predicted.size(), 0.0);
    g.model.assign(m_pred.size(), 0.0);
    if (t.data > 0.0) {
        const double scale = 1.0 / (static_cast<double>(predicted.size()) * t.data);
        for (std::size_t i = 0; i < predicted.size(); ++i) {
            g.predicted[i] = (predicted[i] - observed[i]) * scale;
        }
    }
    if (t.prior > 0.0 && lambda != 0.0) {
        const double scale = lambda / (static_cast<double>(m_pred.size()) * t.prior);
        for (std::size_t i = 0; i < m_pred.size(); ++i) {
            const double diff = bounds.normalize(i, m_pred[i]) - bounds.normalize(i, m_prior[i]);
            g.model[i] = diff * scale / bounds.span(i);
        }
    }
    return g;
}

double EpochCost::circuit_equivalents(std::size_t gates_per_circuit) const {
    if (gates_per_circuit == 0) {
        return static_cast<double>(circuit_evaluations);
    }
    return static_cast<double>(gate_applications) / static_cast<double>(gates_per_circuit);
}

std::vector<SeismicGather> synthesize(std::span<const ImpedanceModel> models, std::span<const double> angles_deg,
                                      const Wavelet &w, double gamma) {
    std::vector<SeismicGather> out;
    out.reserve(models.size());
    for (const auto &m : models) {
        out.push_back(forward_model(m, angles_deg, w, gamma));
    }
    return out;
}

InversionObjective::InversionObjective(const InversionTask &task, const InversionConfig &config)
    : config_(config) {
    config_.validate();
    task.validate();

    const PaddedVector input = flatten_input(task);
    std::size_t n_qubits = input.n_qubits;
    if (config_.n_qubits != 0) {
        if (config_.n_qubits < input.n_qubits) {
            throw ConfigError("qubits", "data needs at least " + std::to_string(input.n_qubits) + " qubits");
        }
        n_qubits = config_.n_qubits;
    }
    spec_ = make_qnode_spec(n_qubits, config_.ansatz, config_.rotation_axis, config_.n_layers);
    bounds_ = derive_bounds(task, config_.bounds_margin);
    embedded_ = prepare_input(spec_, input.values, config_.preparation);
    observed_ = flatten_sections(task.observed);
    observed_flat_ = concat_data(observed_);
    prior_flat_ = flatten_models(flatten_sections(task.prior));
    wavelet_ = ricker(config_.peak_frequency, config_.dt);
    angles_ = task.angles();
    elastic_ = task.elastic();
    n_traces_ = task.n_traces();
    n_samples_ = task.n_samples();
}

InversionObjective::Evaluation InversionObjective::evaluate_from(const DenseLayer &dense,
                                                                 std::vector<double> expectations) const {
    Evaluation ev;
    ev.pass = dense_forward(dense, bounds_, std::move(expectations));
    ev.models = unflatten_models(ev.pass.elastic, n_traces_, n_samples_, elastic_);
    ev.predicted = synthesize(ev.models, angles_, wavelet_, config_.gamma);
    ev.predicted_flat = concat_data(ev.predicted);
    ev.terms = loss(observed_flat_, ev.predicted_flat, ev.pass.elastic, prior_flat_, bounds_, config_.reg_weight);
    return ev;
}

InversionObjective::Evaluation InversionObjective::evaluate(const ThetaTensor &theta,
                                                            const DenseLayer &dense) const {
    return evaluate_from(dense, qnode_forward(spec_, theta, embedded_));
}

InversionObjective::Gradient InversionObjective::gradient(const ThetaTensor &theta, const DenseLayer &dense,
                                                          std::uint64_t stream) const {
    Gradient out;
    EpochCost &cost = out.cost;
    const std::size_t gates = ansatz_gate_count(spec_);
    std::vector<double> expectations;
    JacobianResult adjoint_jac;
    if (config_.grad.method == GradMethod::Adjoint) {
        // The adjoint forward sweep doubles as the primal pass.
        adjoint_jac = jacobian_adjoint(spec_, theta, embedded_, &expectations);
        cost.circuit_evaluations = 1;
        cost.gate_applications = adjoint_jac.stats.gate_applications;
    } else {
        expectations = qnode_forward(spec_, theta, embedded_);
        cost.circuit_evaluations = 1;
        cost.gate_applications = gates;
    }
    out.evaluation = evaluate_from(dense, std::move(expectations));
    const Evaluation &ev = out.evaluation;
    if (!std::isfinite(ev.terms.total)) {
        return out;
    }

    const LossGradient lg = loss_gradient(observed_flat_, ev.predicted_flat, ev.pass.elastic, prior_flat_, bounds_,
                                          config_.reg_weight);
    std::vector<double> dL_dm = lg.model;
    const auto dseis = split_data(lg.predicted, observed_);
    const std::size_t per_trace = n_samples_ * (elastic_ ? 2 : 1);
    for (std::size_t t = 0; t < n_traces_; ++t) {
        const auto g = forward_gradient(ev.models[t], angles_, wavelet_, config_.gamma, dseis[t]);
        for (std::size_t i = 0; i < n_samples_; ++i) {
            dL_dm[t * per_trace + i] += g.zp[i];
            if (elastic_) {
                dL_dm[t * per_trace + n_samples_ + i] += (*g.zs)[i];
            }
        }
    }

    DenseGradients dg = dense_backward(dense, bounds_, ev.pass, dL_dm);
    EncoderGradients &grads = out.grads;
    grads.weights = std::move(dg.weights);
    grads.bias = std::move(dg.bias);
    switch (config_.grad.method) {
    case GradMethod::Adjoint:
        grads.theta = adjoint_jac.jacobian.vjp(dg.expectations);
        break;
    case GradMethod::ParameterShift:
    case GradMethod::FiniteDifference: {
        const auto jr = jacobian(spec_, theta, embedded_, config_.grad);
        grads.theta = jr.jacobian.vjp(dg.expectations);
        cost.circuit_evaluations += jr.stats.circuit_evaluations;
        cost.gate_applications += jr.stats.gate_applications;
        break;
    }
    case GradMethod::SPSA: {
        grads.theta.assign(spec_.n_params(), 0.0);
        if (spec_.n_params() == 0) {
            break;
        }
        const LossFn whole_loss = [&](std::span<const double> probe) {
            ThetaTensor t = theta;
            std::copy(probe.begin(), probe.end(), t.flat().begin());
            return evaluate(t, dense).terms.total;
        };
        const auto sr = spsa_loss_gradient(whole_loss, theta.flat(), config_.grad.spsa_epsilon,
                                           config_.grad.spsa_num_samples, derive_seed(config_.seed, stream));
        grads.theta = sr.gradient;
        cost.circuit_evaluations += sr.loss_evaluations;
        cost.gate_applications += sr.loss_evaluations * gates;
        break;
    }
    }
    return out;
}

TrainResult train(const InversionTask &task, const InversionConfig &config) {
    const InversionObjective objective(task, config);
    TrainResult result;
    result.spec = objective.spec();
    result.bounds = objective.bounds();

    auto [theta0, dense0] = init_parameters(objective.spec(), objective.n_outputs(), config.seed);
    TrainState state = make_train_state(std::move(theta0), std::move(dense0));

    double best = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        auto step = objective.gradient(state.theta, state.dense, epoch + 1);
        const double total = step.evaluation.terms.total;
        if (!std::isfinite(total)) {
            throw TrainingError("non-finite loss at epoch " + std::to_string(epoch), epoch);
        }
        state.loss_history.push_back(total);
        result.epoch_costs.push_back(step.cost);
        state = adam_step(std::move(state), step.grads, config.learning_rate);

        if (config.patience > 0) {
            if (total < best) {
                best = total;
                since_best = 0;
            } else if (++since_best >= config.patience) {
                break;
            }
        }
    }

    auto final_ev = objective.evaluate(state.theta, state.dense);
    result.final_loss = final_ev.terms;
    result.loss_history = state.loss_history;
    result.estimates = regroup(std::move(final_ev.models), task);
    result.predicted = regroup(std::move(final_ev.predicted), task);
    result.state = std::move(state);
    return result;
}

MisfitReport evaluate(std::span<const ImpedanceModel> estimate, std::span<const ImpedanceModel> truth,
                      std::span<const SeismicGather> predicted, std::span<const SeismicGather> observed) {
    if (estimate.size() != truth.size() || predicted.size() != observed.size()) {
        throw DomainError("evaluate: trace counts differ");
    }
    MisfitReport r;
    std::vector<double> ep, tp, es, ts;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        if (estimate[i].samples() != truth[i].samples() || estimate[i].elastic() != truth[i].elastic()) {
            throw DomainError("evaluate: impedance shapes differ at trace " + std::to_string(i));
        }
        ep.insert(ep.end(), estimate[i].zp.begin(), estimate[i].zp.end());
        tp.insert(tp.end(), truth[i].zp.begin(), truth[i].zp.end());
        if (truth[i].zs) {
            es.insert(es.end(), estimate[i].zs->begin(), estimate[i].zs->end());
            ts.insert(ts.end(), truth[i].zs->begin(), truth[i].zs->end());
        }
    }
    if (!ep.empty()) {
        r.zp_rmse = rmse(ep, tp);
    }
    if (!es.empty()) {
        r.zs_rmse = rmse(es, ts);
    }
    if (!observed.empty()) {
        const std::size_t n_angles = observed.front().n_angles();
        for (std::size_t a = 0; a < n_angles; ++a) {
            std::vector<double> p, o;
            for (std::size_t i = 0; i < observed.size(); ++i) {
                if (predicted[i].n_samples != observed[i].n_samples || predicted[i].n_angles() != n_angles ||
                    observed[i].n_angles() != n_angles) {
                    throw DomainError("evaluate: seismic shapes differ at trace " + std::to_string(i));
                }
                const auto pc = predicted[i].column(a);
                const auto oc = observed[i].column(a);
                p.insert(p.end(), pc.begin(), pc.end());
                o.insert(o.end(), oc.begin(), oc.end());
            }
            r.seismic_rmse_per_angle.push_back(rmse(p, o));
        }
    }
    return r;
}

} // namespace hqpinn
