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

// Acceptance checks. Prints one PASS/FAIL line per criterion; `--only N` runs a
// single criterion. Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "ibench/errors.h"
#include "ibench/experiment.h"
#include "oracles.h"

using namespace ibench;

namespace {

constexpr uint64_t kBaseSeed = 2026;
constexpr int kSeeds = 10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

ExperimentConfig preset(const std::string &name) {
    return load_config("preset:" + name);
}

GroupResult run_group(const ExperimentConfig &config, TwirlGroupKind group) {
    ExperimentConfig c = config;
    c.groups = {group};
    c.xrb.enabled = false;
    c.gauge.enabled = false;
    return run_config(c).groups.at(0);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Standard error of a protocol's reference infidelity from a shot bootstrap.
double reference_sigma(const ExperimentData &ref, const StatOptions &stat) {
    auto r = bootstrap_ci(
        ref.shots, [&](const std::vector<DecayPoint> &pts) { return fit_protocol(pts, ref.group).epsilon; }, stat);
    double z = 1.959963984540054;
    return r.ci.width() / (2 * z);
}

Outcome criterion_adversarial() {
    auto t0 = std::chrono::steady_clock::now();
    auto destructive = preset("adversarial_destructive");
    auto constructive = preset("adversarial_constructive");
    auto d = run_group(destructive, TwirlGroupKind::Clifford2);
    auto c = run_group(constructive, TwirlGroupKind::Clifford2);
    double theory = theoretical_infidelity(constructive.model, constructive.interleaved);
    double sd = reference_sigma(d.reference, destructive.stat);
    double sc = reference_sigma(c.reference, constructive.stat);
    double diff = std::abs(d.estimate.reference.epsilon - c.estimate.reference.epsilon);
    bool a = diff <= 2 * std::sqrt(sd * sd + sc * sc);
    bool b = d.estimate.epsilon < 0 && d.estimate.has_flag("unphysical_negative");
    bool cc = c.estimate.epsilon > theory;
    double secs = seconds_since(t0);
    Outcome o;
    o.pass = a && b && cc && secs < 300;
    o.detail = fmt("ref eps %.3e vs %.3e (|diff| %.1e <= 2sigma %.1e)", d.estimate.reference.epsilon,
                   c.estimate.reference.epsilon, diff, 2 * std::sqrt(sd * sd + sc * sc)) +
               fmt("; destructive %.3e; constructive %.3e > theory %.3e", d.estimate.epsilon, c.estimate.epsilon,
                   theory) +
               fmt("; %.0f s", secs);
    return o;
}

Outcome criterion_overrotation() {
    auto base = preset("fig5_overrotation");
    double theory = theoretical_infidelity(base.model, base.interleaved);
    int stat_pass = 0;
    int haar_negative = 0;
    int inside_sys = 0;
    std::string per_seed;
    for (int s = 0; s < kSeeds; s++) {
        auto c = base;
        c.seed = kBaseSeed + s;
        c.stat.seed = c.seed;
        bool outside_ci = true;
        bool inside = true;
        for (auto g : {TwirlGroupKind::Haar, TwirlGroupKind::Clifford2}) {
            auto r = run_group(c, g);
            outside_ci = outside_ci && r.estimate.stat_ci && !r.estimate.stat_ci->contains(theory);
            inside = inside && r.estimate.systematic.bounds.contains(theory);
            if (g == TwirlGroupKind::Haar) {
                haar_negative += r.estimate.epsilon < 0;
                per_seed += fmt(" %.2e", r.estimate.epsilon);
            }
        }
        stat_pass += outside_ci && inside;
        inside_sys += inside;
    }
    Outcome o;
    o.pass = stat_pass >= 8 && haar_negative >= 8;
    o.detail = fmt("theory %.3e; outside 95%% CI and inside bounds for both %g/10 (inside bounds %g/10);", theory,
                   stat_pass, inside_sys) +
               fmt(" haar negative %g/10; haar estimates", haar_negative) + per_seed;
    return o;
}

Outcome criterion_bound_widths() {
    auto c = preset("fig4_coherent_z");
    c.exact = true;
    c.stat.method = StatMethod::None;
    c.xrb.enabled = false;
    c.gauge.enabled = false;
    auto r = run_config(c);
    std::map<TwirlGroupKind, double> w;
    for (const auto &g : r.groups) {
        w[g.group] = g.estimate.systematic.bounds.width();
    }
    double haar = w[TwirlGroupKind::Haar];
    double cl = w[TwirlGroupKind::Clifford2];
    double lc = w[TwirlGroupKind::LocalClifford];
    double pa = w[TwirlGroupKind::Pauli];
    double rel = std::abs(lc - pa) / std::max(lc, pa);
    bool order = haar >= cl && cl > lc && cl > pa && rel <= 0.2;

    auto rows = sweep(c, "theta1_deg", parse_grid("0:2:0.25"));
    bool monotone = true;
    std::map<TwirlGroupKind, double> previous;
    for (const auto &row : rows) {
        auto it = previous.find(row.group);
        if (it != previous.end() && !(row.systematic.width() > it->second)) {
            monotone = false;
        }
        previous[row.group] = row.systematic.width();
    }
    Outcome o;
    o.pass = order && monotone;
    o.detail = fmt("widths haar %.3e clifford %.3e local_clifford %.3e pauli %.3e", haar, cl, lc, pa) +
               fmt("; lc/pauli rel diff %.1f%%; monotone in theta1: ", 100 * rel) + (monotone ? "yes" : "no");
    return o;
}

Outcome criterion_estimator_forms() {
    auto c = preset("fig4_coherent_z");
    c.exact = true;
    c.stat.method = StatMethod::None;
    c.xrb.enabled = false;
    c.gauge.enabled = false;
    auto r = run_config(c);
    double worst = 0;
    for (const auto &g : r.groups) {
        AnalysisOptions irb;
        irb.method = EstimatorMethod::Irb;
        irb.stat.method = StatMethod::None;
        auto e = analyze_pair(g.reference, g.interleaved, irb);
        worst = std::max(worst, std::abs(e.epsilon - g.estimate.epsilon));
    }
    auto sampled = preset("fig4_coherent_z");
    int hits = 0;
    std::string values;
    for (int s = 0; s < kSeeds; s++) {
        auto cs = sampled;
        cs.seed = kBaseSeed + s;
        cs.stat.method = StatMethod::None;
        auto g = run_group(cs, TwirlGroupKind::Clifford2);
        hits += std::abs(g.estimate.epsilon - 6.978e-3) <= 2 * 2.901e-3;
        values += fmt(" %.2e", g.estimate.epsilon);
    }
    Outcome o;
    o.pass = worst < 5e-5 && hits >= 8;
    o.detail = fmt("max |ratio - irb| %.2e (< 5e-5); clifford eps in 6.98e-3 +- 5.80e-3 for %g/10:", worst, hits) +
               values;
    return o;
}

Outcome criterion_bound_validity() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(kBaseSeed);
    std::uniform_real_distribution<double> u01(0, 1);
    auto random_channel = [&] {
        while (true) {
            Eigen::MatrixXcd u = oracle::unitary_power(oracle::haar_unitary(4, rng), 0.3 * u01(rng));
            auto ptm = compose(PauliTransferMatrix::depolarizing(4, 1 - 0.1 * u01(rng)), unitary_to_ptm(UnitaryMatrix(u)));
            if (process_infidelity(ptm) <= 0.1) {
                return ptm;
            }
        }
    };
    int violations = 0;
    double worst = 0;
    const int pairs = 10000;
    for (int i = 0; i < pairs; i++) {
        auto e = random_channel();
        auto f = random_channel();
        double e_f = process_infidelity(f);
        auto b = systematic_bounds(process_infidelity(compose(e, f)), process_infidelity(e));
        double excess = std::max(b.bounds.low - e_f, e_f - b.bounds.high);
        worst = std::max(worst, excess);
        violations += excess > 1e-10;
    }
    double secs = seconds_since(t0);
    Outcome o;
    o.pass = violations == 0 && secs < 60;
    o.detail = fmt("%g pairs, %g violations beyond 1e-10 (largest excess %.1e); %.1f s", pairs, violations, worst, secs);
    return o;
}

Outcome criterion_channel_oracles() {
    double e_zz = 0;
    for (int k = 0; k < 20; k++) {
        double theta = -1.5 + 0.157 * k;
        double eps = process_infidelity(unitary_to_ptm(exp_pauli(PauliString::from_str("ZZ"), theta)));
        e_zz = std::max(e_zz, std::abs(eps - std::pow(std::sin(theta), 2)));
    }
    std::mt19937_64 rng(kBaseSeed);
    double e_u = 0;
    for (int k = 0; k < 20; k++) {
        e_u = std::max(e_u, std::abs(unitarity(unitary_to_ptm(UnitaryMatrix(oracle::haar_unitary(4, rng)))) - 1));
    }
    double e_dep = 0;
    for (int k = 0; k <= 20; k++) {
        double p = k / 20.0;
        e_dep = std::max(e_dep, std::abs(unitarity(PauliTransferMatrix::depolarizing(4, p)) - p * p));
    }
    double e_rt = 0;
    for (int k = 0; k < 100; k++) {
        auto ptm = PauliTransferMatrix(oracle::kraus_ptm(oracle::random_kraus(4, 1 + k % 5, rng)));
        auto choi = ptm_to_choi(ptm);
        e_rt = std::max(e_rt, (choi_to_ptm(choi).matrix() - ptm.matrix()).cwiseAbs().maxCoeff());
        e_rt = std::max(e_rt, (kraus_to_ptm(choi_to_kraus(choi)).matrix() - ptm.matrix()).cwiseAbs().maxCoeff());
    }
    Outcome o;
    o.pass = e_zz < 1e-12 && e_u < 1e-10 && e_dep < 1e-10 && e_rt < 1e-10;
    o.detail = fmt("sin^2 err %.1e; u(unitary) err %.1e; u(dep) err %.1e; round-trip err %.1e", e_zz, e_u, e_dep, e_rt);
    return o;
}

Outcome criterion_gauge() {
    bool pass = true;
    std::string detail;
    double worst_ratio = 0;
    double worst_interleaved = 0;
    for (const char *name : {"fig4_coherent_z", "fig5_overrotation"}) {
        auto base = preset(name);
        for (auto g : kAllGroups) {
            int hits = 0;
            for (int s = 0; s < kSeeds; s++) {
                auto c = base;
                c.seed = kBaseSeed + s;
                c.stat.seed = c.seed;
                auto r = run_group(c, g);
                ScgOptions so;
                so.edge_samples = c.gauge.edge_samples;
                so.fidelity_samples = c.gauge.fidelity_samples;
                so.seed = c.seed;
                auto scg = self_consistent_gauge(g, c.model, so, c.interleaved);
                hits += r.estimate.stat_ci && r.estimate.stat_ci->contains(*scg.interleaved_infidelity);
                worst_interleaved = std::max(
                    worst_interleaved, std::abs(*scg.interleaved_infidelity - *scg.interleaved_infidelity_alternate));
                for (const ScgSide *side : {&scg.reference, &*scg.dressed}) {
                    double ra = side->infidelity(GaugeOrigin::UR);
                    double rb = side->infidelity(GaugeOrigin::ULInverse);
                    worst_ratio = std::max(worst_ratio, std::abs(ra - rb) / (5 * ra * ra));
                }
            }
            pass = pass && hits >= 7;
            detail += std::string(detail.empty() ? "" : ", ") + name + "/" + to_string(g) + " " +
                      std::to_string(hits) + "/10";
        }
    }
    Outcome o;
    o.pass = pass && worst_ratio <= 1;
    o.detail = "SCG inside 95% CI: " + detail +
               fmt("; per gate set max |U_R - U_L^-1| / 5r^2 = %.3f; interleaved max |U_R - U_L^-1| %.1e", worst_ratio,
                   worst_interleaved);
    return o;
}

Outcome criterion_xrb() {
    double p = 0.98;
    CustomErrors k;
    k.two_qubit = PauliTransferMatrix::depolarizing(4, p);
    ErrorModel dep;
    dep.kind = k;
    ProtocolSpec spec;
    spec.kind = ProtocolKind::Xrb;
    spec.group = TwirlGroupKind::Clifford2;
    spec.depths = {4, 6, 8, 12, 14};
    spec.shots = 1500;
    spec.seed = kBaseSeed;
    auto data = run_experiment(spec, dep);
    auto u = unitarity_from_xrb(data.points);
    bool recovered = std::abs(u.u - p * p) <= 3 * u.std_error;

    auto c = preset("fig4_coherent_z");
    c.gauge.enabled = false;
    c.groups = {TwirlGroupKind::Clifford2, TwirlGroupKind::Pauli};
    auto r = run_config(c);
    const auto &cl = r.groups[0].estimate;
    const auto &pa = r.groups[1].estimate;
    bool has = cl.xrb.has_value();
    double xw = has ? cl.xrb->epsilon.width() : 0;
    bool ordered = has && xw < cl.systematic.bounds.width() && xw > pa.systematic.bounds.width();
    Outcome o;
    o.pass = recovered && ordered;
    o.detail = fmt("u %.4f +- %.4f vs p^2 %.4f", u.u, u.std_error, p * p) +
               (has ? fmt("; xrb width %.3e vs clifford sys %.3e and pauli sys %.3e", xw,
                          cl.systematic.bounds.width(), pa.systematic.bounds.width())
                    : std::string("; xrb bounds unavailable"));
    return o;
}

Outcome criterion_fit_bootstrap() {
    std::mt19937_64 rng(kBaseSeed);
    const std::vector<int> depths = {1, 2, 4, 8, 16, 32, 64};
    const double a = 0.7;
    const double p = 0.96;
    const double b = 0.27;
    int recovered = 0;
    for (int t = 0; t < 20; t++) {
        std::vector<ShotRecord> shots;
        int per = 1500 / static_cast<int>(depths.size());
        for (int m : depths) {
            std::bernoulli_distribution coin(a * std::pow(p, m) + b);
            for (int s = 0; s < per; s++) {
                shots.push_back({m, s, "00", 1, double(coin(rng))});
            }
        }
        auto f = fit_decay(aggregate(shots), FitModel::ApB);
        recovered += std::abs(f.p - p) <= 3 * f.p_std_error();
    }

    const std::vector<int> rb_depths = {4, 6, 8, 12, 14};
    const double p_e = 0.98;
    const double p_ef = 0.98 * 0.985;
    auto eps = [](double q) { return 15.0 / 16 * (1 - q); };
    double truth = interleaved_estimate_ratio(eps(p_ef), eps(p_e));
    int covered = 0;
    const int trials = 200;
    for (int t = 0; t < trials; t++) {
        auto make = [&](double q, const char *name) {
            ExperimentData d;
            d.group = TwirlGroupKind::Clifford2;
            d.protocol = name;
            int circuit = 0;
            for (int m : rb_depths) {
                std::bernoulli_distribution coin(0.75 * std::pow(q, m) + 0.25);
                for (int s = 0; s < 300; s++) {
                    d.shots.push_back({m, circuit++, "00", 1, double(coin(rng))});
                }
            }
            d.points = aggregate(d.shots);
            return d;
        };
        auto ref = make(p_e, "clifford(I)");
        auto inter = make(p_ef, "clifford(G)");
        AnalysisOptions o;
        o.stat.resamples = 1000;
        o.stat.seed = kBaseSeed + t;
        auto est = analyze_pair(ref, inter, o);
        covered += est.stat_ci && est.stat_ci->contains(truth);
    }
    double coverage = double(covered) / trials;
    Outcome o;
    o.pass = recovered >= 18 && coverage >= 0.88 && coverage <= 0.99;
    o.detail = fmt("fit truth within 3 sigma %g/20; bootstrap 95%% coverage %.1f%% over %g trials", recovered,
                   100 * coverage, trials);
    return o;
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; i++) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        }
    }
    std::vector<Criterion> criteria = {
        {1, "adversarial_interference", criterion_adversarial},
        {2, "overrotation_systematics", criterion_overrotation},
        {3, "bound_width_ordering", criterion_bound_widths},
        {4, "estimator_forms_and_clifford_value", criterion_estimator_forms},
        {5, "systematic_bound_validity", criterion_bound_validity},
        {6, "exact_channel_oracles", criterion_channel_oracles},
        {7, "self_consistent_gauge", criterion_gauge},
        {8, "xrb_pipeline", criterion_xrb},
        {9, "fit_and_bootstrap_soundness", criterion_fit_bootstrap},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
