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

// Command-line front end: synth | invert | gradcheck | forward.
//
// Numeric outputs are comma-delimited tables (see table_io.hpp); every run
// also writes manifest.json with the resolved configuration, timings and
// evaluation counts. Exit codes: 0 success, 1 usage or configuration error,
// 2 runtime or numeric error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hqpinn/config.hpp"
#include "hqpinn/errors.hpp"
#include "hqpinn/kernels.hpp"
#include "hqpinn/table_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hqpinn;

namespace {

constexpr const char *kVersion = "0.1.0";

// ---------------------------------------------------------------- options

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    std::string grad;
    std::string ansatz;
    std::size_t qubits = 0;
    std::size_t epochs = 0;
    double lr = 0.0;
    double lambda = 0.0;
    std::vector<double> angles;
    double freq = 0.0;
    int threads = 0;
    std::string out;
    std::string data;
    std::string model;

    // Which of the above were given on the command line.
    std::set<std::string> given;
};

struct Resolved {
    RunConfig cfg;
    std::set<std::string> explicit_keys; ///< Set in the config file or by a flag.
};

std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write " + p.string());
    }
}

json parse_json_file(const fs::path &p) {
    try {
        return json::parse(read_file(p));
    } catch (const json::parse_error &e) {
        throw IoError(p.string() + ": malformed JSON: " + e.what());
    }
}

// A manifest is accepted as a config file: its "config" block is used.
Resolved load_config_file(const fs::path &p) {
    const std::string text = read_file(p);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("command") && j.contains("config")) {
        j = j["config"];
    }
    Resolved r;
    r.cfg = parse_config(j.dump());
    for (auto it = j.begin(); it != j.end(); ++it) {
        r.explicit_keys.insert(it.key());
    }
    return r;
}

Resolved resolve(const Options &o) {
    Resolved r;
    if (!o.config.empty()) {
        r = load_config_file(o.config);
    } else {
        r.cfg = parse_config("{}");
    }
    InversionConfig &inv = r.cfg.inversion;
    const auto given = [&](const char *flag, const char *key) {
        if (o.given.count(flag) != 0) {
            r.explicit_keys.insert(key);
            return true;
        }
        return false;
    };
    if (given("seed", "seed")) {
        inv.seed = o.seed;
        inv.grad.rng_seed = o.seed;
    }
    if (given("grad", "grad")) {
        try {
            inv.grad.method = parse_grad_method(o.grad);
        } catch (const DomainError &e) {
            throw ConfigError("grad", e.what());
        }
    }
    if (given("ansatz", "ansatz")) {
        parse_ansatz(o.ansatz, inv.ansatz, inv.rotation_axis);
    }
    if (given("qubits", "qubits")) {
        inv.n_qubits = o.qubits;
    }
    if (given("epochs", "epochs")) {
        inv.epochs = o.epochs;
    }
    if (given("lr", "lr")) {
        inv.learning_rate = o.lr;
    }
    if (given("lambda", "lambda")) {
        inv.reg_weight = o.lambda;
    }
    if (given("angles", "angles")) {
        inv.angles = o.angles;
    }
    if (given("freq", "freq")) {
        inv.peak_frequency = o.freq;
    }
    if (given("threads", "threads")) {
        r.cfg.threads = o.threads;
    }
    r.cfg.sync_shared();
    inv.validate();
    r.cfg.synth.validate();
    return r;
}

// ---------------------------------------------------------------- layout

struct DatasetShape {
    std::size_t n_sections = 1;
    std::size_t n_traces = 1; ///< Per section.
    std::size_t n_samples = 0;
    std::vector<double> angles;
    bool elastic = false;
};

std::string trace_tag(std::size_t s, std::size_t t) {
    return "s" + std::to_string(s) + "_t" + std::to_string(t);
}

std::vector<std::string> impedance_columns(const DatasetShape &d) {
    std::vector<std::string> c;
    for (std::size_t s = 0; s < d.n_sections; ++s) {
        for (std::size_t t = 0; t < d.n_traces; ++t) {
            c.push_back("zp_" + trace_tag(s, t));
            if (d.elastic) {
                c.push_back("zs_" + trace_tag(s, t));
            }
        }
    }
    return c;
}

std::vector<std::string> seismic_columns(const DatasetShape &d) {
    std::vector<std::string> c;
    for (std::size_t s = 0; s < d.n_sections; ++s) {
        for (std::size_t t = 0; t < d.n_traces; ++t) {
            for (std::size_t a = 0; a < d.angles.size(); ++a) {
                c.push_back("d_" + trace_tag(s, t) + "_a" + std::to_string(a));
            }
        }
    }
    return c;
}

Table impedance_table(const std::vector<std::vector<ImpedanceModel>> &models, const DatasetShape &d) {
    Table t(d.n_samples, 0, impedance_columns(d));
    t.cols = t.columns.size();
    t.values.assign(t.rows * t.cols, 0.0);
    std::size_t c = 0;
    for (const auto &section : models) {
        for (const auto &m : section) {
            for (std::size_t i = 0; i < d.n_samples; ++i) {
                t(i, c) = m.zp[i];
            }
            ++c;
            if (d.elastic) {
                for (std::size_t i = 0; i < d.n_samples; ++i) {
                    t(i, c) = (*m.zs)[i];
                }
                ++c;
            }
        }
    }
    return t;
}

Table seismic_table(const std::vector<std::vector<SeismicGather>> &gathers, const DatasetShape &d) {
    Table t(d.n_samples, 0, seismic_columns(d));
    t.cols = t.columns.size();
    t.values.assign(t.rows * t.cols, 0.0);
    std::size_t c = 0;
    for (const auto &section : gathers) {
        for (const auto &g : section) {
            for (std::size_t a = 0; a < d.angles.size(); ++a, ++c) {
                for (std::size_t i = 0; i < d.n_samples; ++i) {
                    t(i, c) = g(i, a);
                }
            }
        }
    }
    return t;
}

Table read_shaped(const fs::path &p, const std::vector<std::string> &columns, std::size_t rows) {
    Table t = read_table(p);
    if (t.columns != columns || t.rows != rows) {
        throw IoError(p.string() + ":1: table layout does not match dataset.json");
    }
    return t;
}

std::vector<std::vector<ImpedanceModel>> read_impedance(const fs::path &p, const DatasetShape &d) {
    const Table t = read_shaped(p, impedance_columns(d), d.n_samples);
    std::vector<std::vector<ImpedanceModel>> out(d.n_sections, std::vector<ImpedanceModel>(d.n_traces));
    std::size_t c = 0;
    for (auto &section : out) {
        for (auto &m : section) {
            m.zp = t.column(c++);
            if (d.elastic) {
                m.zs = t.column(c++);
            }
        }
    }
    return out;
}

std::vector<std::vector<SeismicGather>> read_seismic(const fs::path &p, const DatasetShape &d, double dt) {
    const Table t = read_shaped(p, seismic_columns(d), d.n_samples);
    std::vector<std::vector<SeismicGather>> out(d.n_sections);
    std::size_t c = 0;
    for (auto &section : out) {
        for (std::size_t tr = 0; tr < d.n_traces; ++tr) {
            SeismicGather g(d.n_samples, d.angles, dt);
            for (std::size_t a = 0; a < d.angles.size(); ++a, ++c) {
                for (std::size_t i = 0; i < d.n_samples; ++i) {
                    g(i, a) = t(i, c);
                }
            }
            section.push_back(std::move(g));
        }
    }
    return out;
}

// Impedance layout recovered from the column names alone.
DatasetShape shape_from_impedance(const fs::path &p, const std::vector<double> &angles) {
    const Table t = read_table(p);
    DatasetShape d;
    d.n_samples = t.rows;
    d.angles = angles;
    std::size_t s = 0;
    std::size_t tr = 0;
    if (t.columns.empty() || std::sscanf(t.columns.back().c_str(), "%*[zps]_s%zu_t%zu", &s, &tr) != 2) {
        throw IoError(p.string() + ":1: unrecognized impedance columns");
    }
    d.n_sections = s + 1;
    d.n_traces = tr + 1;
    d.elastic = t.columns.back().rfind("zs_", 0) == 0;
    if (impedance_columns(d) != t.columns) {
        throw IoError(p.string() + ":1: unrecognized impedance columns");
    }
    return d;
}

// ---------------------------------------------------------------- dataset

struct Acquisition {
    std::vector<double> angles;
    double peak_frequency = 0.0;
    double dt = 0.0;
    double gamma = 0.0;
};

struct Dataset {
    DatasetShape shape;
    Acquisition acq;
    fs::path dir;
};

Dataset load_dataset(const fs::path &dir) {
    const fs::path meta = dir / "dataset.json";
    const json j = parse_json_file(meta);
    Dataset ds;
    ds.dir = dir;
    try {
        ds.shape.n_sections = j.at("n_sections").get<std::size_t>();
        ds.shape.n_traces = j.at("n_traces").get<std::size_t>();
        ds.shape.n_samples = j.at("n_samples").get<std::size_t>();
        ds.shape.angles = j.at("angles").get<std::vector<double>>();
        ds.shape.elastic = j.at("elastic").get<bool>();
        ds.acq.angles = ds.shape.angles;
        ds.acq.peak_frequency = j.at("freq").get<double>();
        ds.acq.dt = j.at("dt").get<double>();
        ds.acq.gamma = j.at("gamma").get<double>();
    } catch (const json::exception &e) {
        throw IoError(meta.string() + ": " + e.what());
    }
    return ds;
}

// Explicit settings must agree with the data; defaults adopt it.
void adopt_acquisition(Resolved &r, const Acquisition &acq) {
    InversionConfig &inv = r.cfg.inversion;
    const auto check = [&](const char *key, bool same) {
        if (!same && r.explicit_keys.count(key) != 0) {
            throw ConfigError(key, "conflicts with dataset.json");
        }
    };
    check("angles", inv.angles == acq.angles);
    check("freq", inv.peak_frequency == acq.peak_frequency);
    check("dt", inv.dt == acq.dt);
    check("gamma", inv.gamma == acq.gamma);
    inv.angles = acq.angles;
    inv.peak_frequency = acq.peak_frequency;
    inv.dt = acq.dt;
    inv.gamma = acq.gamma;
    r.cfg.sync_shared();
    inv.validate();
}

// ---------------------------------------------------------------- manifest

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Run {
public:
    Run(std::string command, const Resolved &r, fs::path out)
        : command_(std::move(command)), out_(std::move(out)), started_(utc_now()),
          t0_(std::chrono::steady_clock::now()) {
        fs::create_directories(out_);
        manifest_["command"] = command_;
        manifest_["version"] = kVersion;
        manifest_["config"] = json::parse(serialize_config(r.cfg));
        manifest_["seed"] = r.cfg.inversion.seed;
        manifest_["threads"] = num_threads();
        manifest_["inputs"] = json::array();
        manifest_["outputs"] = json::array();
    }

    void input(const fs::path &p) { manifest_["inputs"].push_back(p.string()); }

    void table(const std::string &name, const Table &t) {
        write_table(out_ / name, t);
        manifest_["outputs"].push_back((out_ / name).string());
    }

    void json_file(const std::string &name, const json &j) {
        write_file(out_ / name, j.dump(2) + "\n");
        manifest_["outputs"].push_back((out_ / name).string());
    }

    json &operator[](const char *key) { return manifest_[key]; }

    void finish() {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        manifest_["started_at"] = started_;
        manifest_["finished_at"] = utc_now();
        manifest_["wall_time_s"] = wall;
        write_file(out_ / "manifest.json", manifest_.dump(2) + "\n");
    }

private:
    std::string command_;
    fs::path out_;
    std::string started_;
    std::chrono::steady_clock::time_point t0_;
    json manifest_;
};

json acquisition_json(const Acquisition &a) {
    return json{{"angles", a.angles}, {"freq", a.peak_frequency}, {"dt", a.dt}, {"gamma", a.gamma}};
}

// ---------------------------------------------------------------- commands

int cmd_synth(const Options &o) {
    Resolved r = resolve(o);
    const SynthConfig &sc = r.cfg.synth;
    set_num_threads(r.cfg.threads);
    const SyntheticDataset ds = make_synthetic(sc);

    DatasetShape shape;
    shape.n_sections = sc.n_sections;
    shape.n_traces = sc.n_traces;
    shape.n_samples = sc.n_samples;
    shape.angles = sc.angles;
    shape.elastic = ds.task.elastic();

    Run run("synth", r, o.out);
    run.table("truth.csv", impedance_table(ds.truth, shape));
    run.table("prior.csv", impedance_table(ds.task.prior, shape));
    run.table("observed.csv", seismic_table(ds.task.observed, shape));
    run.table("clean.csv", seismic_table(ds.clean, shape));

    json meta{{"n_sections", shape.n_sections},
              {"n_traces", shape.n_traces},
              {"n_samples", shape.n_samples},
              {"angles", shape.angles},
              {"elastic", shape.elastic},
              {"freq", sc.peak_frequency},
              {"dt", sc.dt},
              {"gamma", sc.gamma},
              {"prior_window", sc.prior_window},
              {"noise_sigma", sc.noise_sigma},
              {"clean_rms", ds.clean_rms},
              {"noise_rms", ds.noise_rms},
              {"snr_db", std::isfinite(ds.snr_db) ? json(ds.snr_db) : json(nullptr)}};
    run.json_file("dataset.json", meta);
    run["dataset"] = meta;
    run.finish();

    std::cout << "synth: " << shape.n_sections << " section(s) x " << shape.n_traces << " trace(s) x "
              << shape.n_samples << " samples, " << shape.angles.size() << " angle(s)";
    if (std::isfinite(ds.snr_db)) {
        std::cout << ", SNR " << ds.snr_db << " dB";
    }
    std::cout << " -> " << o.out << "\n";
    return 0;
}

InversionMode mode_for(const DatasetShape &d) {
    if (d.n_sections > 1) {
        return InversionMode::Simultaneous2D;
    }
    if (d.n_traces > 1) {
        return InversionMode::PostStack2D;
    }
    return d.elastic ? InversionMode::PreStack1D : InversionMode::PostStack1D;
}

double rms(std::span<const double> v) {
    double acc = 0.0;
    for (const double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

int cmd_invert(const Options &o) {
    if (o.data.empty()) {
        throw ConfigError("data", "invert needs --data DIR (the output of synth)");
    }
    Resolved r = resolve(o);
    const Dataset ds = load_dataset(o.data);
    adopt_acquisition(r, ds.acq);
    const DatasetShape &shape = ds.shape;

    InversionTask task;
    task.mode = mode_for(shape);
    task.observed = read_seismic(ds.dir / "observed.csv", shape, ds.acq.dt);
    task.prior = read_impedance(ds.dir / "prior.csv", shape);
    const fs::path truth_path = ds.dir / "truth.csv";
    const bool have_truth = fs::exists(truth_path);

    set_num_threads(r.cfg.threads);
    Run run("invert", r, o.out);
    run.input(ds.dir / "dataset.json");
    run.input(ds.dir / "observed.csv");
    run.input(ds.dir / "prior.csv");

    const TrainResult res = train(task, r.cfg.inversion);

    run.table("estimate.csv", impedance_table(res.estimates, shape));
    run.table("predicted.csv", seismic_table(res.predicted, shape));

    Table curve(res.loss_history.size(), 4, {"epoch", "loss", "circuit_evaluations", "gate_applications"});
    std::size_t evals = 0;
    std::size_t gate_apps = 0;
    for (std::size_t e = 0; e < res.loss_history.size(); ++e) {
        curve(e, 0) = static_cast<double>(e);
        curve(e, 1) = res.loss_history[e];
        curve(e, 2) = static_cast<double>(res.epoch_costs[e].circuit_evaluations);
        curve(e, 3) = static_cast<double>(res.epoch_costs[e].gate_applications);
        evals += res.epoch_costs[e].circuit_evaluations;
        gate_apps += res.epoch_costs[e].gate_applications;
    }
    run.table("loss.csv", curve);

    // Misfit summary: loss terms, per-angle seismic RMSE with the observed
    // RMS for scale, and (with truth) impedance RMSE with the bound span.
    const auto predicted = flatten_sections(res.predicted);
    const auto observed = flatten_sections(task.observed);
    const auto estimates = flatten_sections(res.estimates);
    std::vector<std::string> names{"loss_total", "loss_data", "loss_prior"};
    std::vector<double> values{res.final_loss.total, res.final_loss.data, res.final_loss.prior};
    const MisfitReport seis = evaluate(estimates, estimates, predicted, observed);
    for (std::size_t a = 0; a < shape.angles.size(); ++a) {
        std::vector<double> col;
        for (const auto &g : observed) {
            const auto c = g.column(a);
            col.insert(col.end(), c.begin(), c.end());
        }
        names.push_back("seismic_rmse_a" + std::to_string(a));
        values.push_back(seis.seismic_rmse_per_angle[a]);
        names.push_back("seismic_rms_a" + std::to_string(a));
        values.push_back(rms(col));
    }
    if (have_truth) {
        run.input(truth_path);
        const auto truth = flatten_sections(read_impedance(truth_path, shape));
        const MisfitReport m = evaluate(estimates, truth, predicted, observed);
        names.push_back("zp_rmse");
        values.push_back(m.zp_rmse);
        names.push_back("zp_span");
        values.push_back(res.bounds.span(0));
        if (m.zs_rmse) {
            names.push_back("zs_rmse");
            values.push_back(*m.zs_rmse);
            names.push_back("zs_span");
            values.push_back(res.bounds.span(shape.n_samples));
        }
    }
    Table misfit(1, values.size(), names);
    misfit.values = values;
    run.table("misfit.csv", misfit);

    run["mode"] = std::string(to_string(task.mode));
    run["n_qubits"] = res.spec.n_qubits;
    run["quantum_parameters"] = res.spec.n_params();
    run["classical_parameters"] = res.state.dense.weights.size() + res.state.dense.bias.size();
    run["epochs_run"] = res.loss_history.size();
    run["evaluation_counts"] = json{
        {"method", std::string(to_string(r.cfg.inversion.grad.method))},
        {"circuit_evaluations_total", evals},
        {"gate_applications_total", gate_apps},
        {"circuit_evaluations_per_epoch", res.epoch_costs.empty() ? 0 : res.epoch_costs[0].circuit_evaluations},
        {"circuit_equivalents_per_epoch",
         res.epoch_costs.empty() ? 0.0 : res.epoch_costs[0].circuit_equivalents(ansatz_gate_count(res.spec))}};
    run["final_loss"] = json{{"total", res.final_loss.total}, {"data", res.final_loss.data},
                             {"prior", res.final_loss.prior}};
    run.finish();

    std::cout << "invert: " << to_string(task.mode) << ", " << res.spec.n_qubits << " qubits, "
              << res.loss_history.size() << " epochs, final loss " << res.final_loss.total << " (data "
              << res.final_loss.data << ")\n";
    return 0;
}

int cmd_gradcheck(const Options &o) {
    Resolved r = resolve(o);
    const InversionConfig &inv = r.cfg.inversion;
    set_num_threads(r.cfg.threads);

    const std::size_t n = r.explicit_keys.count("qubits") != 0 && inv.n_qubits != 0 ? inv.n_qubits
                                                                                     : r.cfg.gradcheck_qubits;
    if (n < 1 || n > 20) {
        throw ConfigError("qubits", "gradcheck supports 1..20 qubits");
    }
    const QNodeSpec spec = make_qnode_spec(n, inv.ansatz, inv.rotation_axis, inv.n_layers);
    std::mt19937_64 rng(derive_seed(inv.seed, 0));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ThetaTensor theta = ThetaTensor::for_spec(spec);
    for (auto &t : theta.flat()) {
        t = angle(rng);
    }
    std::vector<double> x(std::size_t{1} << n);
    for (auto &v : x) {
        v = gauss(rng);
    }
    std::vector<double> weights(n);
    for (auto &w : weights) {
        w = gauss(rng);
    }
    const StateVector embedded = prepare_input(spec, x, inv.preparation);

    // Scalar test loss: a fixed random combination of the expectations.
    struct Row {
        std::string name;
        std::vector<double> gradient;
        EvalStats stats;
        double seconds = 0.0;
    };
    std::vector<Row> rows;
    const auto timed = [](auto &&fn, double &seconds) {
        const auto t0 = std::chrono::steady_clock::now();
        auto out = fn();
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    };
    for (const GradMethod m : {GradMethod::Adjoint, GradMethod::ParameterShift, GradMethod::FiniteDifference}) {
        GradConfig gc = inv.grad;
        gc.method = m;
        Row row{std::string(to_string(m)), {}, {}, 0.0};
        const auto jr = timed([&] { return jacobian(spec, theta, embedded, gc); }, row.seconds);
        row.gradient = jr.jacobian.vjp(weights);
        row.stats = jr.stats;
        rows.push_back(std::move(row));
    }
    {
        const std::size_t gates = ansatz_gate_count(spec);
        const LossFn loss = [&](std::span<const double> probe) {
            ThetaTensor t = theta;
            std::copy(probe.begin(), probe.end(), t.flat().begin());
            const auto e = qnode_forward(spec, t, embedded);
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += weights[k] * e[k];
            }
            return s;
        };
        Row row{"spsa", {}, {}, 0.0};
        const auto sr = timed(
            [&] {
                return spsa_loss_gradient(loss, theta.flat(), inv.grad.spsa_epsilon, r.cfg.gradcheck_spsa_samples,
                                          derive_seed(inv.seed, 1));
            },
            row.seconds);
        row.gradient = sr.gradient;
        row.stats.circuit_evaluations = sr.loss_evaluations;
        row.stats.gate_applications = sr.loss_evaluations * gates;
        rows.push_back(std::move(row));
    }

    const auto &ref = rows.front().gradient;
    Table t(rows.size(), 3, {"max_abs_diff_vs_adjoint", "circuit_evaluations", "gate_applications"});
    json timing = json::object();
    json order = json::array();
    std::cout << "gradcheck: " << n << " qubits, " << spec.n_params() << " parameters\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double diff = 0.0;
        for (std::size_t k = 0; k < ref.size(); ++k) {
            diff = std::max(diff, std::abs(rows[i].gradient[k] - ref[k]));
        }
        t(i, 0) = diff;
        t(i, 1) = static_cast<double>(rows[i].stats.circuit_evaluations);
        t(i, 2) = static_cast<double>(rows[i].stats.gate_applications);
        timing[rows[i].name] = rows[i].seconds;
        order.push_back(rows[i].name);
        std::printf("  %-18s max|d| %.3e  evals %8zu  gates %10zu  %.4f s\n", rows[i].name.c_str(), diff,
                    rows[i].stats.circuit_evaluations, rows[i].stats.gate_applications, rows[i].seconds);
    }

    Run run("gradcheck", r, o.out);
    run.table("gradcheck.csv", t);
    run["rows"] = order;
    run["n_qubits"] = n;
    run["quantum_parameters"] = spec.n_params();
    run["spsa_samples"] = r.cfg.gradcheck_spsa_samples;
    run["wall_time_per_method_s"] = timing;
    run.finish();
    return 0;
}

int cmd_forward(const Options &o) {
    Resolved r = resolve(o);
    Acquisition acq{r.cfg.inversion.angles, r.cfg.inversion.peak_frequency, r.cfg.inversion.dt,
                    r.cfg.inversion.gamma};
    fs::path model = o.model;
    DatasetShape shape;
    if (!o.data.empty()) {
        const Dataset ds = load_dataset(o.data);
        adopt_acquisition(r, ds.acq);
        acq = ds.acq;
        if (model.empty()) {
            model = ds.dir / "truth.csv";
        }
    }
    if (model.empty()) {
        throw ConfigError("model", "forward needs --model FILE or --data DIR");
    }
    shape = shape_from_impedance(model, acq.angles);
    const auto models = read_impedance(model, shape);
    set_num_threads(r.cfg.threads);

    Run run("forward", r, o.out);
    run.input(model);
    const Wavelet w = ricker(acq.peak_frequency, acq.dt);
    std::vector<std::vector<SeismicGather>> seismic;
    for (const auto &section : models) {
        seismic.push_back(synthesize(section, acq.angles, w, acq.gamma));
    }
    run.table("seismic.csv", seismic_table(seismic, shape));
    run["acquisition"] = acquisition_json(acq);
    run.finish();
    std::cout << "forward: " << shape.n_sections * shape.n_traces << " trace(s) -> " << o.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum-classical physics-informed seismic inversion"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    const auto track = [&](CLI::Option *opt, const char *name) {
        opt->each([&o, name](const std::string &) { o.given.insert(name); });
        return opt;
    };
    app.add_option("--config", o.config, "JSON config file (a manifest.json is accepted too)");
    track(app.add_option("--seed", o.seed, "Seed for every random stream"), "seed");
    track(app.add_option("--grad", o.grad, "parameter-shift | adjoint | finite-difference | spsa"), "grad");
    track(app.add_option("--ansatz", o.ansatz, "rx | ry | rz | none"), "ansatz");
    track(app.add_option("--qubits", o.qubits, "Node width (default: derived from the data)"), "qubits");
    track(app.add_option("--epochs", o.epochs, "Training epochs"), "epochs");
    track(app.add_option("--lr", o.lr, "Adam learning rate"), "lr");
    track(app.add_option("--lambda", o.lambda, "Prior-penalty weight"), "lambda");
    track(app.add_option("--angles", o.angles, "Incidence angles in degrees, e.g. 5,15,25")->delimiter(','),
          "angles");
    track(app.add_option("--freq", o.freq, "Ricker peak frequency (Hz)"), "freq");
    track(app.add_option("--threads", o.threads, "Thread cap; 1 guarantees bit-reproducibility"), "threads");
    app.add_option("--out", o.out, "Output directory");

    auto *synth = app.add_subcommand("synth", "Generate a layered/wedge synthetic dataset");
    auto *invert = app.add_subcommand("invert", "Invert a dataset produced by synth");
    invert->add_option("--data", o.data, "Dataset directory")->required();
    auto *gradcheck = app.add_subcommand("gradcheck", "Compare the four gradient methods on a random node");
    auto *forward = app.add_subcommand("forward", "Apply the convolutional decoder to an impedance table");
    forward->add_option("--data", o.data, "Dataset directory (acquisition and default model)");
    forward->add_option("--model", o.model, "Impedance table");
    for (auto *sub : {synth, invert, gradcheck, forward}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (o.out.empty()) {
        std::cerr << "error: --out DIR is required\n";
        return 1;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(o);
        }
        if (invert->parsed()) {
            return cmd_invert(o);
        }
        if (gradcheck->parsed()) {
            return cmd_gradcheck(o);
        }
        return cmd_forward(o);
    } catch (const ConfigError &e) {
        std::cerr << "config error [" << e.key() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
