// Copyright 2026 The ibench Authors
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


#include "ibench/engine.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "ibench/errors.h"
#include "ibench/rng.h"

namespace ibench {

namespace {

constexpr double kStateTolerance = 1e-8;
constexpr uint64_t kShotPurpose = 0x5307;

/// Distribution over measured bitstrings (index 2 * b0 + b1) including readout flips.
std::array<double, 4> readout_distribution(const Eigen::Matrix4cd &rho, double flip) {
    std::array<double, 4> out{};
    for (int y = 0; y < 4; y++) {
        double py = std::max(0.0, rho(y, y).real());
        for (int x = 0; x < 4; x++) {
            double w = 1;
            for (int q = 0; q < 2; q++) {
                int shift = 1 - q;
                bool same = ((x >> shift) & 1) == ((y >> shift) & 1);
                w *= same ? 1 - flip : flip;
            }
            out[x] += py * w;
        }
    }
    return out;
}

/// Expectation of an unsigned Pauli, attenuated by readout flips on its support.
double pauli_expectation(const Eigen::Matrix4cd &rho, const PauliString &p, double flip) {
    double e = (p.matrix() * rho).trace().real();
    for (int q = 0; q < 2; q++) {
        if (p.qubit(q) != Pauli1::I) {
            e *= 1 - 2 * flip;
        }
    }
    return std::clamp(e, -1.0, 1.0);
}

double rademacher(RandomStream &rng, double expectation) {
    return rng.bernoulli((1 + expectation) / 2) ? 1.0 : -1.0;
}

int sample_index(RandomStream &rng, const std::array<double, 4> &probs) {
    double r = rng.uniform();
    double acc = 0;
    for (int k = 0; k < 3; k++) {
        acc += probs[k];
        if (r < acc) {
            return k;
        }
    }
    return 3;
}

std::vector<ShotRecord> circuit_records(const CircuitInstance &circ, const ErrorModel &model, bool exact,
                                        uint64_t seed) {
    Eigen::Matrix4cd rho = final_state(circ, model);
    double flip = model.readout_flip;
    auto record = [&](std::string label, int sign, double outcome) {
        return ShotRecord{circ.depth, circ.circuit, std::move(label), sign, outcome};
    };
    RandomStream rng{seed, fnv1a(circ.protocol), static_cast<uint64_t>(circ.depth),
                     static_cast<uint64_t>(circ.circuit), kShotPurpose};
    switch (circ.measurement) {
        case MeasurementKind::Survival: {
            auto probs = readout_distribution(rho, flip);
            double value = exact ? probs[0] : (sample_index(rng, probs) == 0 ? 1.0 : 0.0);
            return {record(circ.label, 1, value)};
        }
        case MeasurementKind::PerQubitSurvival: {
            auto probs = readout_distribution(rho, flip);
            if (exact) {
                return {record("q0", 1, probs[0] + probs[1]), record("q1", 1, probs[0] + probs[2])};
            }
            int x = sample_index(rng, probs);
            return {record("q0", 1, (x >> 1) == 0 ? 1.0 : 0.0), record("q1", 1, (x & 1) == 0 ? 1.0 : 0.0)};
        }
        case MeasurementKind::PauliExpectation: {
            double e = pauli_expectation(rho, circ.observable, flip);
            return {record(circ.label, circ.sign, exact ? e : rademacher(rng, e))};
        }
        case MeasurementKind::Tomography: {
            double total = 0;
            for (const auto &p : pauli_protocol_labels()) {
                double e = pauli_expectation(rho, p, flip);
                total += exact ? e * e : rademacher(rng, e) * rademacher(rng, e);
            }
            return {record(circ.label, 1, total / 3)};
        }
    }
    throw InvalidInput("unknown measurement kind");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text, const std::vector<std::string> &header) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    int line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (!seen_header) {
            if (cells != header) {
                throw InvalidInput("line " + std::to_string(line_no) + ": expected header " + [&] {
                    std::string h;
                    for (const auto &c : header) {
                        h += (h.empty() ? "" : ",") + c;
                    }
                    return h;
                }());
            }
            seen_header = true;
            continue;
        }
        if (cells.size() != header.size()) {
            throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(cells.size()));
        }
        cells.push_back(std::to_string(line_no));
        rows.push_back(std::move(cells));
    }
    if (!seen_header) {
        throw InvalidInput("line 1: missing header");
    }
    return rows;
}

double parse_number(const std::string &cell, const std::string &line, const char *field) {
    try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v)) {
            throw std::invalid_argument(cell);
        }
        return v;
    } catch (const std::exception &) {
        throw InvalidInput("line " + line + ": invalid " + field + " '" + cell + "'");
    }
}

int parse_int(const std::string &cell, const std::string &line, const char *field) {
    double v = parse_number(cell, line, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw InvalidInput("line " + line + ": invalid " + field + " '" + cell + "'");
    }
    return static_cast<int>(v);
}

}  // namespace

Channel step_channel(const ErrorModel &model, const CircuitStep &step) {
    if (step.local) {
        return noisy_local_layer(model, step.a, step.b);
    }
    GateClass cls = step.role == StepRole::Interleaved ? GateClass::Interleaved : GateClass::TwoQubit;
    return noisy_two_qubit_gate(model, step.ideal, cls, step.layers.empty() ? nullptr : &step.layers);
}

Eigen::Matrix4cd final_state(const CircuitInstance &circ, const ErrorModel &model) {
    Eigen::MatrixXcd rho = circ.initial_state;
    std::optional<Channel> interleaved;
    for (const auto &step : circ.steps) {
        if (step.role == StepRole::Interleaved) {
            if (!interleaved) {
                interleaved = step_channel(model, step);
            }
            interleaved->apply(rho);
        } else {
            step_channel(model, step).apply(rho);
        }
    }
    Eigen::Matrix4cd out = rho;
    double trace_err = std::abs(out.trace() - 1.0);
    double herm_err = (out - out.adjoint()).cwiseAbs().maxCoeff();
    if (trace_err > kStateTolerance || herm_err > kStateTolerance) {
        throw SimulationIntegrity("non-physical state in " + circ.protocol + " at depth " + std::to_string(circ.depth));
    }
    Eigen::Matrix4cd h = (out + out.adjoint()) / 2.0;
    double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (min_eig < -kStateTolerance) {
        throw SimulationIntegrity("negative state eigenvalue " + format_double(min_eig) + " in " + circ.protocol +
                                  " at depth " + std::to_string(circ.depth));
    }
    return h;
}

std::vector<std::pair<std::string, double>> exact_outcomes(const CircuitInstance &circ, const ErrorModel &model) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto &r : circuit_records(circ, model, true, 0)) {
        out.emplace_back(r.label, r.signed_outcome());
    }
    return out;
}

double simulate_circuit(const CircuitInstance &circ, const ErrorModel &model) {
    auto values = exact_outcomes(circ, model);
    if (values.size() != 1) {
        throw InvalidInput("circuit has per-qubit outcomes; use exact_outcomes");
    }
    return values[0].second;
}

ExperimentData run_experiment(const ProtocolSpec &spec, const ErrorModel &model, const EngineOptions &options) {
    model.validate();
    std::vector<std::pair<int, int>> jobs;
    for (auto [depth, count] : schedule(spec)) {
        for (int c = 0; c < count; c++) {
            jobs.emplace_back(depth, c);
        }
    }
    std::vector<std::vector<ShotRecord>> slots(jobs.size());
    int threads = std::clamp(options.threads, 1, 64);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](int t) {
        try {
            for (size_t k = t; k < jobs.size(); k += threads) {
                CircuitInstance circ = build_circuit(spec, jobs[k].first, jobs[k].second);
                slots[k] = circuit_records(circ, model, options.exact, spec.seed);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    ExperimentData data;
    data.protocol = spec.name();
    data.group = spec.group;
    data.kind = spec.kind;
    data.exact = options.exact;
    for (auto &s : slots) {
        for (auto &r : s) {
            data.shots.push_back(std::move(r));
        }
    }
    data.points = aggregate(data.shots);
    return data;
}

std::vector<DecayPoint> aggregate(const std::vector<ShotRecord> &shots) {
    std::map<std::pair<int, std::string>, std::vector<double>> groups;
    for (const auto &s : shots) {
        groups[{s.depth, s.label}].push_back(s.signed_outcome());
    }
    std::vector<DecayPoint> out;
    for (const auto &[key, values] : groups) {
        DecayPoint p;
        p.depth = key.first;
        p.label = key.second;
        p.n = static_cast<int>(values.size());
        double sum = 0;
        for (double v : values) {
            sum += v;
        }
        p.mean = sum / p.n;
        if (p.n > 1) {
            double ss = 0;
            for (double v : values) {
                ss += (v - p.mean) * (v - p.mean);
            }
            p.std_error = std::sqrt(ss / (p.n - 1) / p.n);
        }
        out.push_back(p);
    }
    return out;
}

std::string shots_to_csv(const std::vector<ShotRecord> &shots) {
    std::string out = "depth,circuit,label,sign,outcome\n";
    for (const auto &s : shots) {
        out += std::to_string(s.depth) + "," + std::to_string(s.circuit) + "," + s.label + "," +
               std::to_string(s.sign) + "," + format_double(s.outcome) + "\n";
    }
    return out;
}

std::string points_to_csv(const std::vector<DecayPoint> &points) {
    std::string out = "depth,label,mean,stderr,n\n";
    for (const auto &p : points) {
        out += std::to_string(p.depth) + "," + p.label + "," + format_double(p.mean) + "," +
               format_double(p.std_error) + "," + std::to_string(p.n) + "\n";
    }
    return out;
}

std::vector<DecayPoint> points_from_csv(const std::string &text) {
    std::vector<DecayPoint> out;
    for (const auto &row : parse_csv(text, {"depth", "label", "mean", "stderr", "n"})) {
        const std::string &line = row.back();
        DecayPoint p;
        p.depth = parse_int(row[0], line, "depth");
        p.label = row[1];
        p.mean = parse_number(row[2], line, "mean");
        p.std_error = parse_number(row[3], line, "stderr");
        p.n = parse_int(row[4], line, "n");
        if (p.depth < 1 || p.n < 1 || p.std_error < 0 || p.label.empty()) {
            throw InvalidInput("line " + line + ": depth and n must be positive, stderr non-negative, label non-empty");
        }
        out.push_back(p);
    }
    if (out.empty()) {
        throw InvalidInput("no decay points");
    }
    return out;
}

std::vector<ShotRecord> shots_from_csv(const std::string &text) {
    std::vector<ShotRecord> out;
    for (const auto &row : parse_csv(text, {"depth", "circuit", "label", "sign", "outcome"})) {
        const std::string &line = row.back();
        ShotRecord s;
        s.depth = parse_int(row[0], line, "depth");
        s.circuit = parse_int(row[1], line, "circuit");
        s.label = row[2];
        s.sign = parse_int(row[3], line, "sign");
        s.outcome = parse_number(row[4], line, "outcome");
        if (s.sign != 1 && s.sign != -1) {
            throw InvalidInput("line " + line + ": sign must be +1 or -1");
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace ibench
