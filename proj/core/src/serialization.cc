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


#include "ibench/serialization.h"

#include "ibench/errors.h"

namespace ibench {

namespace {

Json interval_json(const Interval &i) {
    return Json::array({i.low, i.high});
}

std::string role_name(StepRole r) {
    switch (r) {
        case StepRole::Twirl:
            return "twirl";
        case StepRole::Interleaved:
            return "interleaved";
        case StepRole::Correction:
            return "correction";
    }
    return "twirl";
}

std::string measurement_name(MeasurementKind m) {
    switch (m) {
        case MeasurementKind::Survival:
            return "survival";
        case MeasurementKind::PerQubitSurvival:
            return "per_qubit_survival";
        case MeasurementKind::PauliExpectation:
            return "pauli_expectation";
        case MeasurementKind::Tomography:
            return "tomography";
    }
    return "survival";
}

int square_dim(const Json &j, const std::string &path) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw ConfigError(path, "expected an object with dim and entries");
    }
    if (!j.at("dim").is_number_integer()) {
        throw ConfigError(path + "/dim", "expected an integer");
    }
    int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 4) {
        throw ConfigError(path + "/dim", "dimension must be 2 or 4");
    }
    return dim;
}

}  // namespace

Json interval_or_null(const std::optional<Interval> &interval) {
    return interval ? interval_json(*interval) : Json(nullptr);
}

Json to_json(const PauliTransferMatrix &ptm) {
    Json rows = Json::array();
    for (int i = 0; i < ptm.matrix().rows(); i++) {
        Json row = Json::array();
        for (int k = 0; k < ptm.matrix().cols(); k++) {
            row.push_back(ptm(i, k));
        }
        rows.push_back(row);
    }
    return {{"dim", ptm.dim()}, {"basis", "pauli-normalized"}, {"entries", rows}};
}

PauliTransferMatrix ptm_from_json(const Json &j, const std::string &path) {
    int dim = square_dim(j, path);
    if (j.contains("basis") && j.at("basis") != "pauli-normalized") {
        throw ConfigError(path + "/basis", "only the pauli-normalized basis is supported");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "dim" && key != "basis" && key != "entries") {
            throw ConfigError(path + "/" + key, "unknown key");
        }
    }
    const Json &e = j.at("entries");
    int n = dim * dim;
    if (!e.is_array() || static_cast<int>(e.size()) != n) {
        throw ConfigError(path + "/entries", "expected " + std::to_string(n) + " rows");
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; i++) {
        const Json &row = e.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ConfigError(path + "/entries/" + std::to_string(i), "expected " + std::to_string(n) + " numbers");
        }
        for (int k = 0; k < n; k++) {
            if (!row.at(k).is_number()) {
                throw ConfigError(path + "/entries/" + std::to_string(i) + "/" + std::to_string(k), "expected a number");
            }
            m(i, k) = row.at(k).get<double>();
        }
    }
    return PauliTransferMatrix(m);
}

Json to_json(const UnitaryMatrix &u) {
    Json rows = Json::array();
    for (int i = 0; i < u.dim(); i++) {
        Json row = Json::array();
        for (int k = 0; k < u.dim(); k++) {
            row.push_back(Json::array({u.matrix()(i, k).real(), u.matrix()(i, k).imag()}));
        }
        rows.push_back(row);
    }
    return {{"dim", u.dim()}, {"entries", rows}};
}

UnitaryMatrix unitary_from_json(const Json &j, const std::string &path) {
    int dim = square_dim(j, path);
    for (const auto &[key, value] : j.items()) {
        if (key != "dim" && key != "entries") {
            throw ConfigError(path + "/" + key, "unknown key");
        }
    }
    const Json &e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != dim) {
        throw ConfigError(path + "/entries", "expected " + std::to_string(dim) + " rows");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; i++) {
        const Json &row = e.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw ConfigError(path + "/entries/" + std::to_string(i), "expected " + std::to_string(dim) + " entries");
        }
        for (int k = 0; k < dim; k++) {
            const Json &c = row.at(k);
            std::string where = path + "/entries/" + std::to_string(i) + "/" + std::to_string(k);
            if (c.is_number()) {
                m(i, k) = c.get<double>();
            } else if (c.is_array() && c.size() == 2 && c.at(0).is_number() && c.at(1).is_number()) {
                m(i, k) = {c.at(0).get<double>(), c.at(1).get<double>()};
            } else {
                throw ConfigError(where, "expected a number or [re, im]");
            }
        }
    }
    try {
        return UnitaryMatrix(m);
    } catch (const std::exception &ex) {
        throw ConfigError(path, ex.what());
    }
}

Json to_json(const DecayFit &fit) {
    Json j = {{"label", fit.label}, {"model", to_string(fit.model)}, {"A", fit.A},
              {"p", fit.p},         {"p_stderr", fit.p_std_error()},  {"chi2", fit.chi2_reduced}};
    j["B"] = fit.model == FitModel::ApB ? Json(fit.B) : Json(nullptr);
    j["B_fixed"] = fit.asymptote_fixed;
    return j;
}

Json to_json(const ProtocolFit &fit) {
    Json fits = Json::array();
    for (const auto &f : fit.fits) {
        fits.push_back(to_json(f));
    }
    return {{"protocol", fit.protocol}, {"epsilon", fit.epsilon}, {"p", fit.p}, {"decays", fits}};
}

Json to_json(const InfidelityEstimate &e) {
    Json j;
    j["protocol"] = e.protocol;
    j["method"] = to_string(e.method);
    j["epsilon"] = e.epsilon;
    j["stat_ci"] = interval_or_null(e.stat_ci);
    j["sys_bounds"] = interval_json(e.systematic.bounds);
    j["xrb_bounds"] = e.xrb ? interval_json(e.xrb->epsilon) : Json(nullptr);
    j["fit"] = {{"reference", to_json(e.reference)}, {"interleaved", to_json(e.interleaved)}};
    j["flags"] = e.flags;
    return j;
}

Json to_json(const UnitarityEstimate &u) {
    return {{"u", u.u}, {"stderr", u.std_error}, {"ci", interval_json(u.ci)}, {"fit", to_json(u.fit)}};
}

Json to_json(const ScgReport &r) {
    auto side = [](const ScgSide &s) {
        return Json{{"scg_infidelity_U_R", s.infidelity_ur},
                    {"scg_infidelity_U_L_inverse", s.infidelity_ul_inverse},
                    {"identity_gauge_infidelity", s.infidelity_identity},
                    {"edge_choi_floor", s.edges.choi_floor},
                    {"edge_exact", s.edges.exact}};
    };
    Json j;
    j["group"] = to_string(r.group);
    j["gauge_origin"] = to_string(r.origin);
    j["scg_infidelity"] = r.interleaved_infidelity ? Json(*r.interleaved_infidelity) : Json(nullptr);
    j["scg_infidelity_alternate_origin"] =
        r.interleaved_infidelity_alternate ? Json(*r.interleaved_infidelity_alternate) : Json(nullptr);
    j["edge_choi_floor"] = r.reference.edges.choi_floor;
    j["N"] = r.edge_samples;
    j["M"] = r.fidelity_samples;
    j["reference"] = side(r.reference);
    j["dressed"] = r.dressed ? side(*r.dressed) : Json(nullptr);
    return j;
}

Json to_json(const CircuitInstance &c) {
    Json steps = Json::array();
    for (const auto &s : c.steps) {
        steps.push_back({{"role", role_name(s.role)}, {"gate", s.tag}});
    }
    Json j = {{"protocol", c.protocol}, {"depth", c.depth},     {"circuit", c.circuit},
              {"label", c.label},       {"steps", steps},       {"measurement", measurement_name(c.measurement)},
              {"sign", c.sign},         {"ideal_outcome", c.ideal_outcome}};
    if (c.measurement == MeasurementKind::PauliExpectation) {
        j["observable"] = c.observable.str().substr(1);
    }
    return j;
}

}  // namespace ibench
