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


#include "ibench/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ibench/errors.h"
#include "ibench/gates.h"
#include "ibench/rng.h"

#ifndef IBENCH_VERSION
#define IBENCH_VERSION "0.0.0"
#endif

namespace ibench {

namespace {

constexpr double kDeg = M_PI / 180;

/// Typed field access on a JSON object that remembers which keys were read.
class Fields {
   public:
    Fields(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
        }
    }

    bool has(const std::string &key) {
        seen_.insert(key);
        return j_.contains(key);
    }
    std::string at(const std::string &key) const {
        return path_ + "/" + key;
    }
    const Json &raw(const std::string &key) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            throw ConfigError(at(key), "required field missing");
        }
        return j_.at(key);
    }
    double number(const std::string &key, double fallback) {
        return has(key) ? number(key) : fallback;
    }
    double number(const std::string &key) {
        const Json &v = raw(key);
        if (!v.is_number()) {
            throw ConfigError(at(key), "expected a number");
        }
        double x = v.get<double>();
        if (!std::isfinite(x)) {
            throw ConfigError(at(key), "expected a finite number");
        }
        return x;
    }
    int integer(const std::string &key, int fallback, int min) {
        if (!has(key)) {
            return fallback;
        }
        const Json &v = raw(key);
        if (!v.is_number_integer() || v.get<int64_t>() < min || v.get<int64_t>() > 1'000'000'000) {
            throw ConfigError(at(key), "expected an integer >= " + std::to_string(min));
        }
        return v.get<int>();
    }
    bool boolean(const std::string &key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const Json &v = raw(key);
        if (!v.is_boolean()) {
            throw ConfigError(at(key), "expected true or false");
        }
        return v.get<bool>();
    }
    std::string string(const std::string &key, const std::string &fallback) {
        return has(key) ? string(key) : fallback;
    }
    std::string string(const std::string &key) {
        const Json &v = raw(key);
        if (!v.is_string()) {
            throw ConfigError(at(key), "expected a string");
        }
        return v.get<std::string>();
    }
    std::vector<int> int_list(const std::string &key) {
        const Json &v = raw(key);
        if (!v.is_array()) {
            throw ConfigError(at(key), "expected an array of integers");
        }
        std::vector<int> out;
        for (size_t i = 0; i < v.size(); i++) {
            if (!v.at(i).is_number_integer()) {
                throw ConfigError(at(key) + "/" + std::to_string(i), "expected an integer");
            }
            out.push_back(v.at(i).get<int>());
        }
        if (out.empty()) {
            throw ConfigError(at(key), "depth list is empty");
        }
        for (size_t i = 0; i < out.size(); i++) {
            if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1])) {
                throw ConfigError(at(key) + "/" + std::to_string(i), "depths must be positive and strictly increasing");
            }
        }
        return out;
    }
    /// Rejects keys that were never read.
    void finish() const {
        for (const auto &[key, value] : j_.items()) {
            if (!seen_.count(key)) {
                throw ConfigError(at(key), "unknown key");
            }
        }
    }

   private:
    const Json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename F>
auto wrap_invalid(const std::string &path, F &&f) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(path, e.what());
    }
}

PauliString generator(Fields &f, const std::string &key, const std::string &fallback, int qubits) {
    std::string s = f.string(key, fallback);
    return wrap_invalid(f.at(key), [&] {
        PauliString p = PauliString::from_str(s);
        if (p.num_qubits() != qubits || p.is_identity() || p.sign() < 0) {
            throw ConfigError(f.at(key), "expected a non-identity " + std::to_string(qubits) + "-qubit Pauli");
        }
        return p;
    });
}

ErrorModel parse_error_model(const Json &j, const std::string &path) {
    Fields f(j, path);
    std::string type = f.string("type");
    ErrorModel m;
    std::string convention = f.string("angle_convention", "full");
    if (convention != "full" && convention != "half") {
        throw ConfigError(f.at("angle_convention"), "expected full or half");
    }
    m.angle_convention = convention == "half" ? AngleConvention::Half : AngleConvention::Full;
    std::string placement = f.string("placement", "monolithic");
    if (placement != "monolithic" && placement != "compiled") {
        throw ConfigError(f.at("placement"), "expected monolithic or compiled");
    }
    m.placement = placement == "compiled" ? ErrorPlacement::Compiled : ErrorPlacement::Monolithic;
    m.readout_flip = f.number("readout_flip", 0);
    if (type == "noiseless") {
        m.kind = CustomErrors{};
    } else if (type == "fixed_coherent") {
        FixedCoherent k;
        k.theta2 = f.number("theta2_deg", 0) * kDeg;
        k.theta1 = f.number("theta1_deg", 0) * kDeg;
        k.two_qubit_generator = generator(f, "two_qubit_generator", "ZZ", 2);
        k.single_qubit_generator = generator(f, "single_qubit_generator", "Z", 1);
        m.kind = k;
    } else if (type == "overrotation") {
        Overrotation k;
        k.delta2 = f.number("delta2", 0);
        k.delta1 = f.number("delta1", 0);
        m.kind = k;
    } else if (type == "adversarial") {
        Adversarial k;
        k.interleaved_generator = generator(f, "interleaved_generator", "XZ", 2);
        k.interleaved_theta = f.number("interleaved_theta_deg", 0) * kDeg;
        k.twirl_generator = generator(f, "twirl_generator", "YY", 2);
        k.twirl_theta = f.number("twirl_theta_deg", 0) * kDeg;
        m.kind = k;
    } else if (type == "custom") {
        CustomErrors k;
        if (f.has("one_qubit_pulse")) {
            k.one_qubit_pulse = ptm_from_json(f.raw("one_qubit_pulse"), f.at("one_qubit_pulse"));
        }
        if (f.has("two_qubit")) {
            k.two_qubit = ptm_from_json(f.raw("two_qubit"), f.at("two_qubit"));
        }
        if (f.has("interleaved")) {
            k.interleaved = ptm_from_json(f.raw("interleaved"), f.at("interleaved"));
        }
        m.kind = k;
    } else {
        throw ConfigError(f.at("type"),
                          "unknown error model '" + type +
                              "' (expected noiseless, fixed_coherent, overrotation, adversarial or custom)");
    }
    f.finish();
    wrap_invalid(path, [&] {
        m.validate();
        return 0;
    });
    return m;
}

Json error_model_json(const ErrorModel &m) {
    Json j;
    j["angle_convention"] = to_string(m.angle_convention);
    j["placement"] = to_string(m.placement);
    j["readout_flip"] = m.readout_flip;
    std::visit(
        [&](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, FixedCoherent>) {
                j["type"] = "fixed_coherent";
                j["theta2_deg"] = k.theta2 / kDeg;
                j["theta1_deg"] = k.theta1 / kDeg;
                j["two_qubit_generator"] = k.two_qubit_generator.str().substr(1);
                j["single_qubit_generator"] = k.single_qubit_generator.str().substr(1);
            } else if constexpr (std::is_same_v<T, Overrotation>) {
                j["type"] = "overrotation";
                j["delta2"] = k.delta2;
                j["delta1"] = k.delta1;
            } else if constexpr (std::is_same_v<T, Adversarial>) {
                j["type"] = "adversarial";
                j["interleaved_generator"] = k.interleaved_generator.str().substr(1);
                j["interleaved_theta_deg"] = k.interleaved_theta / kDeg;
                j["twirl_generator"] = k.twirl_generator.str().substr(1);
                j["twirl_theta_deg"] = k.twirl_theta / kDeg;
            } else {
                if (!k.one_qubit_pulse && !k.two_qubit && !k.interleaved) {
                    j["type"] = "noiseless";
                    return;
                }
                j["type"] = "custom";
                if (k.one_qubit_pulse) {
                    j["one_qubit_pulse"] = to_json(*k.one_qubit_pulse);
                }
                if (k.two_qubit) {
                    j["two_qubit"] = to_json(*k.two_qubit);
                }
                if (k.interleaved) {
                    j["interleaved"] = to_json(*k.interleaved);
                }
            }
        },
        m.kind);
    return j;
}

TwirlGroupKind group_at(const std::string &name, const std::string &path) {
    return wrap_invalid(path, [&] { return twirl_group_from_string(name); });
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_or_empty(const std::optional<double> &v) {
    return v ? fmt(*v) : "";
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write " + path.string());
    }
    out << text;
}

double mean_single_qubit_error(const ErrorModel &model) {
    double total = 0;
    for (int k = 0; k < 24; k++) {
        Eigen::Matrix2cd u = CliffordElement::single_qubit(k).unitary().matrix();
        Channel noisy = noisy_single_qubit_gate(model, u);
        Eigen::MatrixXcd inv = u.adjoint();
        total += process_infidelity(compose(noisy, Channel::unitary(UnitaryMatrix::unchecked(inv))).ptm());
    }
    return total / 24;
}

}  // namespace

ProtocolSpec ExperimentConfig::protocol(TwirlGroupKind group, bool interleaved_protocol) const {
    ProtocolSpec s;
    s.group = group;
    s.shots = shots;
    s.seed = seed;
    if (interleaved_protocol) {
        s.interleaved = interleaved;
        s.interleaved_name = interleaved_name;
    }
    const auto &overrides = interleaved_protocol ? interleaved_depths : reference_depths;
    auto it = overrides.find(group);
    s.depths = it != overrides.end() ? it->second : default_depths(group, interleaved_protocol);
    return s;
}

ProtocolSpec ExperimentConfig::xrb_protocol() const {
    ProtocolSpec s;
    s.group = TwirlGroupKind::Clifford2;
    s.kind = ProtocolKind::Xrb;
    s.depths = xrb.depths;
    s.shots = xrb.shots;
    s.seed = seed;
    return s;
}

std::optional<UnitaryMatrix> named_gate(const std::string &name) {
    Eigen::Matrix4cd m;
    if (name == "cnot") {
        m = gates::cnot(0);
    } else if (name == "cnot10") {
        m = gates::cnot(1);
    } else if (name == "cz") {
        m = Eigen::Matrix4cd::Identity();
        m(3, 3) = -1;
    } else if (name == "swap") {
        m = gates::swap();
    } else if (name == "iswap") {
        m = Eigen::Matrix4cd::Zero();
        m(0, 0) = m(3, 3) = 1;
        m(1, 2) = m(2, 1) = std::complex<double>(0, 1);
    } else if (name == "identity") {
        m = Eigen::Matrix4cd::Identity();
    } else {
        return std::nullopt;
    }
    return UnitaryMatrix::unchecked(m);
}

ExperimentConfig parse_config(const Json &j) {
    Fields f(j, "");
    ExperimentConfig c;
    c.name = f.string("name", "experiment");
    {
        const Json &seed = f.raw("seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<int64_t>() >= 0)) {
            throw ConfigError("/seed", "expected a non-negative integer");
        }
        c.seed = seed.get<uint64_t>();
    }
    if (f.has("groups")) {
        const Json &g = f.raw("groups");
        if (!g.is_array() || g.empty()) {
            throw ConfigError("/groups", "expected a non-empty array of group names");
        }
        for (size_t i = 0; i < g.size(); i++) {
            std::string path = "/groups/" + std::to_string(i);
            if (!g.at(i).is_string()) {
                throw ConfigError(path, "expected a group name");
            }
            TwirlGroupKind k = group_at(g.at(i).get<std::string>(), path);
            if (std::find(c.groups.begin(), c.groups.end(), k) != c.groups.end()) {
                throw ConfigError(path, "duplicate group");
            }
            c.groups.push_back(k);
        }
    } else {
        c.groups.assign(kAllGroups.begin(), kAllGroups.end());
    }
    if (f.has("interleaved_gate")) {
        const Json &g = f.raw("interleaved_gate");
        if (g.is_string()) {
            auto u = named_gate(g.get<std::string>());
            if (!u) {
                throw ConfigError("/interleaved_gate",
                                  "unknown gate '" + g.get<std::string>() +
                                      "' (expected cnot, cnot10, cz, swap, iswap, identity or an object)");
            }
            c.interleaved_name = g.get<std::string>();
            c.interleaved = *u;
        } else {
            Fields gf(g, "/interleaved_gate");
            c.interleaved_name = gf.string("name", "custom");
            c.interleaved = unitary_from_json(gf.raw("unitary"), "/interleaved_gate/unitary");
            if (c.interleaved.dim() != 4) {
                throw ConfigError("/interleaved_gate/unitary", "expected a two-qubit gate");
            }
            gf.finish();
        }
    } else {
        c.interleaved = *named_gate("cnot");
    }
    c.shots = f.integer("shots", 1500, 1);
    if (f.has("depths")) {
        const Json &d = f.raw("depths");
        if (!d.is_object()) {
            throw ConfigError("/depths", "expected an object keyed by group");
        }
        for (const auto &[key, value] : d.items()) {
            TwirlGroupKind g = group_at(key, "/depths/" + key);
            Fields df(value, "/depths/" + key);
            if (df.has("reference")) {
                c.reference_depths[g] = df.int_list("reference");
            }
            if (df.has("interleaved")) {
                c.interleaved_depths[g] = df.int_list("interleaved");
            }
            df.finish();
        }
    }
    c.model = f.has("error_model") ? parse_error_model(f.raw("error_model"), "/error_model") : ErrorModel::noiseless();
    if (f.has("estimator")) {
        Fields ef(f.raw("estimator"), "/estimator");
        c.method = wrap_invalid("/estimator/method",
                                [&] { return estimator_method_from_string(ef.string("method", "ratio")); });
        c.stat.method = wrap_invalid("/estimator/statistics",
                                     [&] { return stat_method_from_string(ef.string("statistics", "bootstrap")); });
        c.stat.resamples = ef.integer("resamples", 1000, 1);
        c.stat.confidence = ef.number("confidence", 0.95);
        if (!(c.stat.confidence > 0 && c.stat.confidence < 1)) {
            throw ConfigError("/estimator/confidence", "expected a value in (0, 1)");
        }
        ef.finish();
    }
    c.stat.seed = c.seed;
    if (f.has("xrb")) {
        Fields xf(f.raw("xrb"), "/xrb");
        c.xrb.enabled = xf.boolean("enabled", true);
        if (xf.has("depths")) {
            c.xrb.depths = xf.int_list("depths");
        }
        c.xrb.shots = xf.integer("shots", 1500, 1);
        xf.finish();
    }
    if (f.has("gauge")) {
        Fields gf(f.raw("gauge"), "/gauge");
        c.gauge.enabled = gf.boolean("enabled", true);
        c.gauge.edge_samples = gf.integer("edge_samples", 10000, 1);
        c.gauge.fidelity_samples = gf.integer("fidelity_samples", 10000, 1);
        c.gauge.origin =
            wrap_invalid("/gauge/origin", [&] { return gauge_origin_from_string(gf.string("origin", "U_R")); });
        gf.finish();
    }
    c.exact = f.boolean("exact", false);
    c.threads = f.integer("threads", 1, 1);
    c.output_dir = f.string("output_dir", "");
    f.finish();
    for (auto g : c.groups) {
        for (bool inter : {false, true}) {
            std::string path = "/depths/" + to_string(g) + (inter ? "/interleaved" : "/reference");
            wrap_invalid(path, [&] {
                c.protocol(g, inter).validate();
                return 0;
            });
        }
    }
    if (c.xrb.enabled) {
        wrap_invalid("/xrb", [&] {
            c.xrb_protocol().validate();
            return 0;
        });
    }
    return c;
}

ExperimentConfig load_config(const std::string &source) {
    const std::string prefix = "preset:";
    if (source.rfind(prefix, 0) == 0) {
        return parse_config(preset_json(source.substr(prefix.size())));
    }
    std::ifstream in(source);
    if (!in) {
        throw ConfigError("/", "cannot read config file " + source);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError("/", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

std::vector<std::string> preset_names() {
    return {"fig4_coherent_z", "fig5_overrotation", "adversarial_destructive", "adversarial_constructive",
            "fig2_theta1_sweep"};
}

Json preset_json(const std::string &name) {
    Json coherent_z = {{"type", "fixed_coherent"},      {"theta2_deg", 10},           {"theta1_deg", 1},
                       {"two_qubit_generator", "ZZ"},   {"single_qubit_generator", "Z"},
                       {"angle_convention", "half"},    {"placement", "compiled"}};
    Json base = {{"seed", 2026},
                 {"groups", {"haar", "clifford", "local_clifford", "pauli"}},
                 {"interleaved_gate", "cnot"},
                 {"shots", 1500},
                 {"estimator", {{"method", "ratio"}, {"statistics", "bootstrap"}, {"resamples", 1000}}}};
    if (name == "fig4_coherent_z") {
        base["name"] = name;
        base["error_model"] = coherent_z;
        base["xrb"] = {{"enabled", true}, {"depths", {4, 6, 8, 12, 14}}, {"shots", 1500}};
        base["gauge"] = {{"enabled", true}, {"edge_samples", 10000}, {"fidelity_samples", 10000}, {"origin", "U_R"}};
        return base;
    }
    if (name == "fig5_overrotation") {
        base["name"] = name;
        base["error_model"] = {{"type", "overrotation"}, {"delta2", 0.05}, {"delta1", 0.01}, {"placement", "compiled"}};
        base["xrb"] = {{"enabled", true}, {"depths", {4, 6, 8, 12, 14}}, {"shots", 1500}};
        base["gauge"] = {{"enabled", true}, {"edge_samples", 10000}, {"fidelity_samples", 10000}, {"origin", "U_R"}};
        return base;
    }
    if (name == "adversarial_destructive" || name == "adversarial_constructive") {
        base["name"] = name;
        double sign = name == "adversarial_destructive" ? 1 : -1;
        base["error_model"] = {{"type", "adversarial"},          {"interleaved_generator", "XZ"},
                               {"interleaved_theta_deg", 10},    {"twirl_generator", "YY"},
                               {"twirl_theta_deg", 10 * sign},   {"angle_convention", "half"},
                               {"placement", "monolithic"}};
        return base;
    }
    if (name == "fig2_theta1_sweep") {
        base["name"] = name;
        base["error_model"] = coherent_z;
        base["exact"] = true;
        return base;
    }
    std::string known;
    for (const auto &n : preset_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw ConfigError("/", "unknown preset '" + name + "' (available: " + known + ")");
}

Json config_to_json(const ExperimentConfig &c) {
    Json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    Json groups = Json::array();
    for (auto g : c.groups) {
        groups.push_back(to_string(g));
    }
    j["groups"] = groups;
    j["interleaved_gate"] = {{"name", c.interleaved_name}, {"unitary", to_json(c.interleaved)}};
    j["shots"] = c.shots;
    Json depths = Json::object();
    for (auto g : c.groups) {
        depths[to_string(g)] = {{"reference", c.protocol(g, false).depths},
                                {"interleaved", c.protocol(g, true).depths}};
    }
    j["depths"] = depths;
    j["error_model"] = error_model_json(c.model);
    j["estimator"] = {{"method", to_string(c.method)},
                      {"statistics", to_string(c.stat.method)},
                      {"resamples", c.stat.resamples},
                      {"confidence", c.stat.confidence}};
    j["xrb"] = {{"enabled", c.xrb.enabled}, {"depths", c.xrb.depths}, {"shots", c.xrb.shots}};
    j["gauge"] = {{"enabled", c.gauge.enabled},
                  {"edge_samples", c.gauge.edge_samples},
                  {"fidelity_samples", c.gauge.fidelity_samples},
                  {"origin", to_string(c.gauge.origin)}};
    j["exact"] = c.exact;
    return j;
}

std::string config_hash(const ExperimentConfig &config) {
    return hex64(fnv1a(config_to_json(config).dump()));
}

RunResult run_config(const ExperimentConfig &config) {
    RunResult result;
    result.config = config;
    result.theoretical_infidelity = theoretical_infidelity(config.model, config.interleaved);
    EngineOptions engine{config.exact, config.threads};
    if (config.xrb.enabled) {
        result.xrb = run_experiment(config.xrb_protocol(), config.model, engine);
        result.unitarity = unitarity_from_xrb(result.xrb->points, config.stat.confidence);
    }
    for (auto g : config.groups) {
        GroupResult r;
        r.group = g;
        r.reference = run_experiment(config.protocol(g, false), config.model, engine);
        r.interleaved = run_experiment(config.protocol(g, true), config.model, engine);
        AnalysisOptions opts;
        opts.method = config.method;
        opts.stat = config.stat;
        std::optional<double> u;
        if (result.unitarity && g == TwirlGroupKind::Clifford2) {
            u = result.unitarity->u;
        }
        r.estimate = analyze_pair(r.reference, r.interleaved, opts, u);
        if (config.gauge.enabled) {
            ScgOptions so;
            so.edge_samples = config.gauge.edge_samples;
            so.fidelity_samples = config.gauge.fidelity_samples;
            so.origin = config.gauge.origin;
            so.seed = config.seed;
            r.scg = self_consistent_gauge(g, config.model, so, config.interleaved);
        }
        result.groups.push_back(std::move(r));
    }
    return result;
}

Json report_json(const RunResult &result, const std::string &timestamp) {
    Json j;
    j["provenance"] = {{"tool", "ibench"},
                       {"version", version_string()},
                       {"config_hash", config_hash(result.config)},
                       {"seed", result.config.seed},
                       {"timestamp", timestamp}};
    j["config"] = config_to_json(result.config);
    j["theoretical_infidelity"] = result.theoretical_infidelity;
    Json estimates = Json::array();
    for (const auto &g : result.groups) {
        Json e = to_json(g.estimate);
        e["scg"] = g.scg ? to_json(*g.scg) : Json(nullptr);
        estimates.push_back(e);
    }
    j["estimates"] = estimates;
    j["unitarity"] = result.unitarity ? to_json(*result.unitarity) : Json(nullptr);
    return j;
}

void write_artifacts(const RunResult &result, const std::string &dir, const std::string &timestamp) {
    namespace fs = std::filesystem;
    fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) {
        throw InvalidInput("cannot create output directory " + dir + ": " + ec.message());
    }
    write_file(root / "report.json", report_json(result, timestamp).dump(2) + "\n");
    std::string table =
        "protocol,epsilon,stat_low,stat_high,sys_low,sys_high,xrb_low,xrb_high,theoretical,scg,eps_reference,"
        "eps_dressed\n";
    for (const auto &g : result.groups) {
        const auto &e = g.estimate;
        std::string name = to_string(g.group);
        table += name + "," + fmt(e.epsilon) + "," + (e.stat_ci ? fmt(e.stat_ci->low) : "") + "," +
                 (e.stat_ci ? fmt(e.stat_ci->high) : "") + "," + fmt(e.systematic.bounds.low) + "," +
                 fmt(e.systematic.bounds.high) + "," + (e.xrb ? fmt(e.xrb->epsilon.low) : "") + "," +
                 (e.xrb ? fmt(e.xrb->epsilon.high) : "") + "," + fmt(result.theoretical_infidelity) + "," +
                 fmt_or_empty(g.scg ? g.scg->interleaved_infidelity : std::nullopt) + "," +
                 fmt(e.reference.epsilon) + "," + fmt(e.interleaved.epsilon) + "\n";
        write_file(root / (name + "_reference_decay.csv"), points_to_csv(g.reference.points));
        write_file(root / (name + "_interleaved_decay.csv"), points_to_csv(g.interleaved.points));
        write_file(root / (name + "_reference_shots.csv"), shots_to_csv(g.reference.shots));
        write_file(root / (name + "_interleaved_shots.csv"), shots_to_csv(g.interleaved.shots));
    }
    write_file(root / "estimates.csv", table);
    if (result.xrb) {
        write_file(root / "xrb_decay.csv", points_to_csv(result.xrb->points));
        write_file(root / "xrb_shots.csv", shots_to_csv(result.xrb->shots));
    }
}

std::vector<double> parse_grid(const std::string &grid) {
    std::vector<double> parts;
    std::stringstream ss(grid);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw InvalidInput("grid '" + grid + "': '" + item + "' is not a number");
        }
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
        throw InvalidInput("grid must be start:stop:step with step > 0 and stop >= start");
    }
    std::vector<double> out;
    long n = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= n; k++) {
        out.push_back(parts[0] + k * parts[2]);
    }
    return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig &config, const std::string &parameter,
                            const std::vector<double> &grid) {
    if (parameter != "theta1_deg") {
        throw InvalidInput("unsupported sweep parameter '" + parameter + "' (expected theta1_deg)");
    }
    if (!std::holds_alternative<FixedCoherent>(config.model.kind)) {
        throw UnsupportedCombination("theta1_deg sweeps need a fixed_coherent error model");
    }
    std::vector<SweepRow> rows;
    for (double value : grid) {
        ExperimentConfig c = config;
        std::get<FixedCoherent>(c.model.kind).theta1 = value * kDeg;
        c.stat.method = StatMethod::None;
        c.xrb.enabled = false;
        c.gauge.enabled = false;
        RunResult r = run_config(c);
        double q = mean_single_qubit_error(c.model);
        for (const auto &g : r.groups) {
            rows.push_back({value, q, g.group, g.estimate.reference.epsilon, g.estimate.interleaved.epsilon,
                            g.estimate.epsilon, g.estimate.systematic.bounds});
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow> &rows) {
    std::string out = "theta1_deg,single_qubit_error,protocol,eps_reference,eps_dressed,epsilon,sys_low,sys_high,sys_width\n";
    for (const auto &r : rows) {
        out += fmt(r.value) + "," + fmt(r.single_qubit_error) + "," + to_string(r.group) + "," +
               fmt(r.eps_reference) + "," + fmt(r.eps_dressed) + "," + fmt(r.epsilon) + "," +
               fmt(r.systematic.low) + "," + fmt(r.systematic.high) + "," + fmt(r.systematic.width()) + "\n";
    }
    return out;
}

TwirlGroupKind infer_group(const std::vector<DecayPoint> &points) {
    bool pauli = !points.empty();
    for (const auto &p : points) {
        if (p.label == "q0" || p.label == "q1") {
            return TwirlGroupKind::LocalClifford;
        }
        bool is_pauli_label = p.label.size() == 2 && p.label != "II" &&
                              p.label.find_first_not_of("IXYZ") == std::string::npos;
        pauli = pauli && is_pauli_label;
    }
    return pauli ? TwirlGroupKind::Pauli : TwirlGroupKind::Clifford2;
}

InfidelityEstimate ingest(const std::vector<DecayPoint> &reference, const std::vector<DecayPoint> &interleaved,
                          const IngestOptions &options) {
    TwirlGroupKind group = options.group ? *options.group : infer_group(reference);
    ExperimentData ref;
    ref.group = group;
    ref.protocol = to_string(group) + "(I)";
    ref.points = reference;
    ExperimentData inter;
    inter.group = group;
    inter.protocol = to_string(group) + "(G)";
    inter.points = interleaved;
    AnalysisOptions opts;
    opts.method = options.method;
    opts.stat = options.stat;
    return analyze_pair(ref, inter, opts, options.unitarity);
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string version_string() {
    return IBENCH_VERSION;
}

}  // namespace ibench
