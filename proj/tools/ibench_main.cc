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


#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ibench/errors.h"
#include "ibench/experiment.h"

namespace {

using namespace ibench;

constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitFit = 4;

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string default_out_dir(const std::string &flag, const std::string &configured, const std::string &name) {
    if (!flag.empty()) {
        return flag;
    }
    if (!configured.empty()) {
        return configured;
    }
    if (const char *env = std::getenv("IBENCH_OUT_DIR"); env != nullptr && *env != '\0') {
        return (std::filesystem::path(env) / name).string();
    }
    return (std::filesystem::path("ibench_out") / name).string();
}

void print_summary(const RunResult &r, std::ostream &out) {
    char line[256];
    std::snprintf(line, sizeof line, "theoretical infidelity  %.6e\n", r.theoretical_infidelity);
    out << line;
    for (const auto &g : r.groups) {
        const auto &e = g.estimate;
        std::snprintf(line, sizeof line, "%-15s eps=%+.6e  sys=[%.6e, %.6e]", to_string(g.group).c_str(), e.epsilon,
                      e.systematic.bounds.low, e.systematic.bounds.high);
        out << line;
        if (e.stat_ci) {
            std::snprintf(line, sizeof line, "  ci=[%+.6e, %+.6e]", e.stat_ci->low, e.stat_ci->high);
            out << line;
        }
        if (g.scg && g.scg->interleaved_infidelity) {
            std::snprintf(line, sizeof line, "  scg=%.6e", *g.scg->interleaved_infidelity);
            out << line;
        }
        for (const auto &f : e.flags) {
            out << "  [" << f << "]";
        }
        out << "\n";
    }
    if (r.unitarity) {
        std::snprintf(line, sizeof line, "unitarity u=%.6f +- %.6f\n", r.unitarity->u, r.unitarity->std_error);
        out << line;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Interleaved randomized benchmarking simulator and analyzer"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    std::string run_config_path;
    std::string run_out;
    bool run_exact = false;
    int run_threads = 0;
    auto *run = app.add_subcommand("run", "Run a config file or preset:NAME and write a report");
    run->add_option("config", run_config_path, "Config JSON path or preset:NAME")->required();
    run->add_option("--out", run_out, "Output directory (default: config output_dir, then $IBENCH_OUT_DIR)");
    run->add_flag("--exact", run_exact, "Use exact expectation values instead of sampled shots");
    run->add_option("--threads", run_threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string sweep_config_path;
    std::string sweep_param = "theta1_deg";
    std::string sweep_grid = "0:2:0.25";
    std::string sweep_out;
    bool sweep_exact = false;
    int sweep_threads = 0;
    auto *sweep_cmd = app.add_subcommand("sweep", "Sweep a model parameter and tabulate systematic-bound widths");
    sweep_cmd->add_option("config", sweep_config_path, "Config JSON path or preset:NAME")->required();
    sweep_cmd->add_option("--param", sweep_param, "Swept parameter")->capture_default_str();
    sweep_cmd->add_option("--grid", sweep_grid, "start:stop:step")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path (default: stdout)");
    sweep_cmd->add_flag("--exact", sweep_exact, "Use exact expectation values");
    sweep_cmd->add_option("--threads", sweep_threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string ingest_ref;
    std::string ingest_int;
    std::optional<double> ingest_u;
    std::string ingest_group;
    std::string ingest_method = "ratio";
    std::string ingest_stat = "parametric";
    uint64_t ingest_seed = 0;
    int ingest_resamples = 1000;
    std::string ingest_out;
    auto *ingest_cmd = app.add_subcommand("ingest", "Analyze externally measured decay CSVs");
    ingest_cmd->add_option("reference", ingest_ref, "Reference decay CSV (depth,label,mean,stderr,n)")->required();
    ingest_cmd->add_option("interleaved", ingest_int, "Interleaved decay CSV")->required();
    ingest_cmd->add_option("--unitarity", ingest_u, "Unitarity of the reference twirl for XRB bounds");
    ingest_cmd->add_option("--group", ingest_group, "Twirl group (default: inferred from labels)");
    ingest_cmd->add_option("--method", ingest_method, "ratio or irb")->capture_default_str();
    ingest_cmd->add_option("--stat", ingest_stat, "bootstrap, parametric, covariance or none")->capture_default_str();
    ingest_cmd->add_option("--resamples", ingest_resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--seed", ingest_seed, "Resampling seed");
    ingest_cmd->add_option("--out", ingest_out, "Write the estimate JSON here instead of stdout");

    auto *presets = app.add_subcommand("presets", "List embedded presets");
    std::string preset_show;
    presets->add_option("name", preset_show, "Print this preset's config JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*run) {
            ExperimentConfig config = load_config(run_config_path);
            config.exact = config.exact || run_exact;
            if (run_threads > 0) {
                config.threads = run_threads;
            }
            std::string dir = default_out_dir(run_out, config.output_dir, config.name);
            RunResult result = run_config(config);
            write_artifacts(result, dir, utc_timestamp());
            print_summary(result, std::cout);
            std::cout << "report written to " << (std::filesystem::path(dir) / "report.json").string() << "\n";
        } else if (*sweep_cmd) {
            ExperimentConfig config = load_config(sweep_config_path);
            config.exact = config.exact || sweep_exact;
            if (sweep_threads > 0) {
                config.threads = sweep_threads;
            }
            std::string csv = sweep_to_csv(sweep(config, sweep_param, parse_grid(sweep_grid)));
            if (sweep_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream(sweep_out, std::ios::binary) << csv;
            }
        } else if (*ingest_cmd) {
            IngestOptions opts;
            if (!ingest_group.empty()) {
                opts.group = twirl_group_from_string(ingest_group);
            }
            opts.method = estimator_method_from_string(ingest_method);
            opts.stat.method = stat_method_from_string(ingest_stat);
            opts.stat.seed = ingest_seed;
            opts.stat.resamples = ingest_resamples;
            opts.unitarity = ingest_u;
            auto ref = points_from_csv(read_text(ingest_ref));
            auto inter = points_from_csv(read_text(ingest_int));
            std::string text = to_json(ingest(ref, inter, opts)).dump(2) + "\n";
            if (ingest_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(ingest_out, std::ios::binary) << text;
            }
        } else if (*presets) {
            if (preset_show.empty()) {
                for (const auto &n : preset_names()) {
                    std::cout << n << "\n";
                }
            } else {
                std::cout << preset_json(preset_show).dump(2) << "\n";
            }
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error at " << e.what() << "\n";
        return kExitInput;
    } catch (const FitFailure &e) {
        std::cerr << "fit failure: " << e.what() << "\n";
        return kExitFit;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
