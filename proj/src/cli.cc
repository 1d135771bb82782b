// Copyright 2026 The cowwit Authors
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

#include "cowwit/cli.h"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cowwit/cow_sim.h"
#include "cowwit/documents.h"
#include "cowwit/error.h"
#include "cowwit/statistics.h"
#include "cowwit/validity.h"
#include "json.hpp"

namespace cowwit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string output;

    unsigned worker_count() const {
        return threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    }
};

std::string csv_number(double v) { return fmt::format("{:.9g}", v); }
const char *csv_bool(bool v) { return v ? "true" : "false"; }

// Writes the command's result to --output when given, else to `out`.
void emit(const GlobalOptions &g, std::ostream &out, const std::string &text) {
    if (g.output.empty()) {
        out << text;
        out.flush();
    } else {
        write_text_file(g.output, text);
    }
}

void warn_if_unnormalized(const CountsDocument &doc, const std::string &path, std::ostream &err) {
    if (!doc.strict_normalization && doc.normalization_defect() > kNormalizationTolerance)
        err << fmt::format("warning: {}: table pairs deviate from unit sum by up to {:.9g}; "
                           "values used as given\n",
                           path, doc.normalization_defect());
}

int cmd_classify(const GlobalOptions &g, double a, double b, std::ostream &out) {
    const WitnessClass cls = classify({a, b});
    Json j;
    j["a"] = a;
    j["b"] = b;
    j["kind"] = to_string(cls.kind);
    j["branch"] = cls.branch ? Json(to_string(*cls.branch)) : Json(nullptr);
    j["lambda_min"] = cls.lambda_min;
    j["separable_min"] = cls.separable_min;
    emit(g, out, j.dump(2) + "\n");
    return cls.kind == WitnessKind::ValidWitness ? kExitOk : kExitNotAWitness;
}

int cmd_scan(const GlobalOptions &g, Interval a_range, Interval b_range, int steps,
             const std::string &data_path, std::ostream &out, std::ostream &err) {
    std::optional<RenormalizedTable> table;
    if (!data_path.empty()) {
        const auto doc = load_counts_document(data_path);
        warn_if_unnormalized(doc, data_path, err);
        table = doc.table();
    }
    const auto scan = region_scan(a_range, b_range, steps, g.worker_count());

    double zz = 0.0, vis = 0.0;
    if (table) {
        zz = zz_correlation(*table);
        vis = x_visibility(*table);
    }
    std::string text = "a,b,class,branch,lambda_min,separable_min";
    if (table) text += ",expectation,detects";
    text += '\n';
    for (const auto &pt : scan) {
        text += fmt::format("{},{},{},{},{},{}", csv_number(pt.a), csv_number(pt.b),
                            to_string(pt.cls.kind),
                            pt.cls.branch ? to_string(*pt.cls.branch) : std::string_view{},
                            csv_number(pt.cls.lambda_min), csv_number(pt.cls.separable_min));
        if (table) {
            const double e = 1.0 + pt.a * zz + pt.b * vis;
            const bool detects = pt.cls.kind == WitnessKind::ValidWitness && e < 0.0;
            text += fmt::format(",{},{}", csv_number(e), csv_bool(detects));
        }
        text += '\n';
    }
    emit(g, out, text);
    return kExitOk;
}

int cmd_evaluate(const GlobalOptions &g, const std::string &data_path, double a, double b,
                 std::ostream &out, std::ostream &err) {
    const auto doc = load_counts_document(data_path);
    warn_if_unnormalized(doc, data_path, err);
    const auto ev = witness_expectation({a, b}, doc.table());
    Json j;
    j["a"] = a;
    j["b"] = b;
    j["zz_corr"] = ev.zz_corr;
    j["x_vis"] = ev.x_vis;
    j["expectation"] = ev.expectation;
    j["valid_witness"] = ev.valid_witness;
    j["entangled"] = ev.entangled;
    emit(g, out, j.dump(2) + "\n");
    return ev.entangled ? kExitOk : kExitNotEntangled;
}

int cmd_simulate(const GlobalOptions &g, const std::string &config_path, std::ostream &err) {
    if (g.output.empty()) {
        err << "simulate: --output is required\n";
        return kExitUsage;
    }
    const LinkConfig cfg = load_link_config(config_path);
    const RawCounts raw = simulate(cfg, g.seed, g.worker_count());

    CountsDocument doc;
    doc.loss_db = cfg.channel.loss_db;
    doc.groups = raw;
    write_text_file(g.output, serialize(doc));

    auto frac = [](std::uint64_t part, std::uint64_t whole) {
        return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
    };
    err << fmt::format(
        "simulated {} rounds (seed {}); conclusive fractions: alpha0 {:.6g}, 0alpha {:.6g}, "
        "alphaalpha {:.6g}\n",
        cfg.source.n_rounds, g.seed,
        frac(raw.sent_alpha0.conclusive(), raw.sent_alpha0.total()),
        frac(raw.sent_0alpha.conclusive(), raw.sent_0alpha.total()),
        frac(raw.sent_alphaalpha.conclusive(), raw.sent_alphaalpha.total()));
    return kExitOk;
}

int cmd_loss_sweep(const GlobalOptions &g, const std::string &config_path,
                   const std::vector<double> &losses, double a, double b, std::ostream &out,
                   std::ostream &err) {
    if (losses.empty()) {
        err << "loss-sweep: at least one loss value is required\n";
        return kExitUsage;
    }
    const LinkConfig cfg = load_link_config(config_path);
    const auto points = loss_sweep(losses, {a, b}, cfg, g.seed, g.worker_count());

    std::string text;
    if (cfg.channel.visibility)
        text += fmt::format("# visibility fixed V={}\n", csv_number(*cfg.channel.visibility));
    else
        text += fmt::format("# visibility_model V(loss)=v0*exp(-loss_db/l_c) v0={} l_c={}\n",
                            csv_number(cfg.channel.model.v0), csv_number(cfg.channel.model.l_c));
    text += "loss_db,zz_corr,x_vis,expectation,entangled\n";
    for (const auto &pt : points) {
        const auto &ev = pt.evaluation;
        text += fmt::format("{},{},{},{},{}\n", csv_number(pt.loss_db), csv_number(ev.zz_corr),
                            csv_number(ev.x_vis), csv_number(ev.expectation),
                            csv_bool(ev.entangled));
    }
    emit(g, out, text);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement witnesses for coherent one-way QKD statistics", "cowwit"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed for simulations");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    app.add_option("--output", g.output, "Write the result to this file instead of stdout");

    double a = 0.0, b = 0.0;
    std::string data_path, config_path;

    auto *classify_cmd = app.add_subcommand("classify", "Classify W(a,b) as an entanglement witness");
    classify_cmd->add_option("-a", a, "Z⊗Z coefficient")->required();
    classify_cmd->add_option("-b", b, "|x+><x+|⊗X coefficient")->required();

    Interval a_range{-2.0, 2.0}, b_range{-2.0, 2.0};
    int steps = 401;
    auto *scan_cmd = app.add_subcommand("scan", "Classify a grid of (a,b) values as CSV");
    scan_cmd->add_option("--a-min", a_range.lo)->capture_default_str();
    scan_cmd->add_option("--a-max", a_range.hi)->capture_default_str();
    scan_cmd->add_option("--b-min", b_range.lo)->capture_default_str();
    scan_cmd->add_option("--b-max", b_range.hi)->capture_default_str();
    scan_cmd->add_option("--steps", steps, "Grid points per axis")->capture_default_str();
    scan_cmd->add_option("--data", data_path, "Counts document to evaluate on every grid point");

    auto *eval_cmd = app.add_subcommand("evaluate", "Evaluate <W> on a counts document as JSON");
    eval_cmd->add_option("--data", data_path, "Counts document")->required();
    eval_cmd->add_option("-a", a)->required();
    eval_cmd->add_option("-b", b)->required();

    auto *sim_cmd = app.add_subcommand("simulate", "Simulate the link and write raw counts");
    sim_cmd->add_option("--config", config_path, "Link configuration (JSON)")->required();

    std::vector<double> losses;
    auto *sweep_cmd = app.add_subcommand("loss-sweep", "Simulate and evaluate <W> per channel loss");
    sweep_cmd->add_option("--config", config_path, "Link configuration (JSON)")->required();
    sweep_cmd->add_option("--losses", losses, "Comma-separated channel losses in dB")
        ->delimiter(',')
        ->check([](const std::string &v) { return v.empty() ? std::string("empty loss value") : ""; })
        ->required();
    sweep_cmd->add_option("-a", a)->required();
    sweep_cmd->add_option("-b", b)->required();

    for (auto *sub : {classify_cmd, scan_cmd, eval_cmd, sim_cmd, sweep_cmd}) sub->fallthrough();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(g, a, b, out);
        if (*scan_cmd) return cmd_scan(g, a_range, b_range, steps, data_path, out, err);
        if (*eval_cmd) return cmd_evaluate(g, data_path, a, b, out, err);
        if (*sim_cmd) return cmd_simulate(g, config_path, err);
        if (*sweep_cmd) return cmd_loss_sweep(g, config_path, losses, a, b, out, err);
    } catch (const InputError &e) {
        // The only inputs are the counts document and the link config.
        err << "error: " << e.what() << '\n';
        return (*sim_cmd || *sweep_cmd) ? kExitConfig : kExitNoInput;
    } catch (const InsufficientData &e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const FormatError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const InvalidArgument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParameter &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cowwit::cli
