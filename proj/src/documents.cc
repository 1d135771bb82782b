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

#include "cowwit/documents.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "cowwit/error.h"
#include "json.hpp"

namespace cowwit {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text, const char *what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw FormatError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

void reject_unknown(const Json &obj, const std::set<std::string> &known, const std::string &where) {
    for (const auto &[key, _] : obj.items())
        if (!known.contains(key)) throw FormatError(where + ": unknown key '" + key + "'");
}

const Json &require_object(const Json &parent, const char *key, const std::string &where) {
    if (!parent.contains(key) || !parent.at(key).is_object())
        throw FormatError(where + ": missing object '" + key + "'");
    return parent.at(key);
}

std::uint64_t read_count(const Json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) throw FormatError(where + "." + key + ": missing");
    const auto &v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw FormatError(where + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

double read_probability(const Json &obj, const char *key) {
    if (!obj.contains(key) || !obj.at(key).is_number())
        throw FormatError(std::string("groups.") + key + ": expected a number");
    const double g = obj.at(key).get<double>();
    if (!(g >= 0.0 && g <= 1.0))
        throw FormatError(std::string("groups.") + key + ": probability outside [0, 1]");
    return g;
}

DataLineCounts read_data_line(const Json &groups, const char *key) {
    const std::string where = std::string("groups.") + key;
    const auto &obj = require_object(groups, key, "groups");
    reject_unknown(obj, {"early_only", "late_only", "both", "none"}, where);
    return {read_count(obj, "early_only", where), read_count(obj, "late_only", where),
            read_count(obj, "both", where), read_count(obj, "none", where)};
}

MonitorLineCounts read_monitor_line(const Json &groups, const char *key) {
    const std::string where = std::string("groups.") + key;
    const auto &obj = require_object(groups, key, "groups");
    reject_unknown(obj, {"m1_only", "m2_only", "both", "none"}, where);
    return {read_count(obj, "m1_only", where), read_count(obj, "m2_only", where),
            read_count(obj, "both", where), read_count(obj, "none", where)};
}

Json to_json(const DataLineCounts &c) {
    return {{"early_only", c.early_only}, {"late_only", c.late_only}, {"both", c.both},
            {"none", c.none}};
}

Json to_json(const MonitorLineCounts &c) {
    return {{"m1_only", c.m1_only}, {"m2_only", c.m2_only}, {"both", c.both}, {"none", c.none}};
}

// Config fields are typed leaves of a two-level object.
double config_number(const Json &section, const char *key, const std::string &field, double fallback) {
    if (!section.contains(key)) return fallback;
    const auto &v = section.at(key);
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
        return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return v.get<double>();
}

}  // namespace

RenormalizedTable CountsDocument::table() const {
    if (const auto *t = std::get_if<RenormalizedTable>(&groups)) return *t;
    return renormalize(std::get<RawCounts>(groups));
}

double CountsDocument::normalization_defect() const {
    if (const auto *t = std::get_if<RenormalizedTable>(&groups)) return t->normalization_defect();
    return 0.0;
}

CountsDocument parse_counts_document(std::string_view text) {
    const Json j = parse_json(text, "counts document");
    if (!j.is_object()) throw FormatError("counts document: top level must be an object");
    reject_unknown(j, {"schema_version", "loss_db", "normalized", "strict_normalization", "note",
                       "groups"},
                   "counts document");

    CountsDocument doc;
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw FormatError("counts document: missing integer schema_version");
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != CountsDocument::kSchemaVersion)
        throw FormatError("counts document: unsupported schema_version " +
                          std::to_string(doc.schema_version));

    if (j.contains("loss_db")) {
        if (!j.at("loss_db").is_number()) throw FormatError("counts document: loss_db must be a number");
        doc.loss_db = j.at("loss_db").get<double>();
    }
    if (j.contains("note")) {
        if (!j.at("note").is_string()) throw FormatError("counts document: note must be a string");
        doc.note = j.at("note").get<std::string>();
    }
    if (!j.contains("normalized") || !j.at("normalized").is_boolean())
        throw FormatError("counts document: missing boolean 'normalized'");
    const bool normalized = j.at("normalized").get<bool>();
    if (j.contains("strict_normalization")) {
        if (!j.at("strict_normalization").is_boolean())
            throw FormatError("counts document: strict_normalization must be a boolean");
        if (!normalized)
            throw FormatError("counts document: strict_normalization only applies to normalized tables");
        doc.strict_normalization = j.at("strict_normalization").get<bool>();
    }

    const auto &groups = require_object(j, "groups", "counts document");
    if (normalized) {
        reject_unknown(groups, {"g_alpha0_early", "g_alpha0_late", "g_0alpha_early", "g_0alpha_late",
                                "g_aa_m1", "g_aa_m2"},
                       "groups");
        RenormalizedTable t;
        t.g_alpha0_early = read_probability(groups, "g_alpha0_early");
        t.g_alpha0_late = read_probability(groups, "g_alpha0_late");
        t.g_0alpha_early = read_probability(groups, "g_0alpha_early");
        t.g_0alpha_late = read_probability(groups, "g_0alpha_late");
        t.g_aa_m1 = read_probability(groups, "g_aa_m1");
        t.g_aa_m2 = read_probability(groups, "g_aa_m2");
        if (doc.strict_normalization && t.normalization_defect() > kNormalizationTolerance)
            throw FormatError("counts document: table pairs do not sum to 1 (defect " +
                              std::to_string(t.normalization_defect()) + ")");
        doc.groups = t;
    } else {
        reject_unknown(groups, {"sent_alpha0", "sent_0alpha", "sent_alphaalpha"}, "groups");
        RawCounts raw;
        raw.sent_alpha0 = read_data_line(groups, "sent_alpha0");
        raw.sent_0alpha = read_data_line(groups, "sent_0alpha");
        raw.sent_alphaalpha = read_monitor_line(groups, "sent_alphaalpha");
        doc.groups = raw;
    }
    return doc;
}

CountsDocument load_counts_document(const std::filesystem::path &path) {
    return parse_counts_document(read_text_file(path));
}

std::string serialize(const CountsDocument &doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    if (doc.loss_db) j["loss_db"] = *doc.loss_db;
    j["normalized"] = doc.normalized();
    if (doc.normalized() && !doc.strict_normalization) j["strict_normalization"] = false;
    if (!doc.note.empty()) j["note"] = doc.note;
    if (const auto *t = std::get_if<RenormalizedTable>(&doc.groups)) {
        j["groups"] = {{"g_alpha0_early", t->g_alpha0_early}, {"g_alpha0_late", t->g_alpha0_late},
                       {"g_0alpha_early", t->g_0alpha_early}, {"g_0alpha_late", t->g_0alpha_late},
                       {"g_aa_m1", t->g_aa_m1},               {"g_aa_m2", t->g_aa_m2}};
    } else {
        const auto &raw = std::get<RawCounts>(doc.groups);
        j["groups"] = {{"sent_alpha0", to_json(raw.sent_alpha0)},
                       {"sent_0alpha", to_json(raw.sent_0alpha)},
                       {"sent_alphaalpha", to_json(raw.sent_alphaalpha)}};
    }
    return j.dump(2) + "\n";
}

LinkConfig parse_link_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("<document>", "top level must be an object");
    for (const auto &[key, _] : j.items())
        if (key != "source" && key != "channel" && key != "receiver")
            throw ConfigError(key, "unknown section");

    auto section = [&](const char *name, std::set<std::string> known) {
        if (!j.contains(name)) return Json::object();
        const auto &s = j.at(name);
        if (!s.is_object()) throw ConfigError(name, "expected an object");
        for (const auto &[key, _] : s.items())
            if (!known.contains(key)) throw ConfigError(std::string(name) + "." + key, "unknown key");
        return s;
    };

    LinkConfig cfg;
    const Json src = section("source", {"mu", "f", "n_rounds"});
    cfg.source.mu = config_number(src, "mu", "source.mu", cfg.source.mu);
    cfg.source.f = config_number(src, "f", "source.f", cfg.source.f);
    if (src.contains("n_rounds")) {
        const auto &n = src.at("n_rounds");
        if (n.is_number_unsigned() || (n.is_number_integer() && n.get<std::int64_t>() >= 0)) {
            cfg.source.n_rounds = n.get<std::uint64_t>();
        } else if (n.is_number_float() && n.get<double>() >= 0 &&
                   n.get<double>() == std::floor(n.get<double>()) && n.get<double>() < 0x1p63) {
            cfg.source.n_rounds = static_cast<std::uint64_t>(n.get<double>());
        } else {
            throw ConfigError("source.n_rounds", "expected a non-negative integer");
        }
    }

    const Json ch = section("channel", {"loss_db", "v0", "l_c", "visibility"});
    cfg.channel.loss_db = config_number(ch, "loss_db", "channel.loss_db", cfg.channel.loss_db);
    cfg.channel.model.v0 = config_number(ch, "v0", "channel.v0", cfg.channel.model.v0);
    cfg.channel.model.l_c = config_number(ch, "l_c", "channel.l_c", cfg.channel.model.l_c);
    if (ch.contains("visibility"))
        cfg.channel.visibility = config_number(ch, "visibility", "channel.visibility", 0.0);

    const Json rx = section("receiver", {"t_b", "eta_det", "p_dark"});
    cfg.receiver.t_b = config_number(rx, "t_b", "receiver.t_b", cfg.receiver.t_b);
    cfg.receiver.eta_det = config_number(rx, "eta_det", "receiver.eta_det", cfg.receiver.eta_det);
    cfg.receiver.p_dark = config_number(rx, "p_dark", "receiver.p_dark", cfg.receiver.p_dark);

    validate(cfg);
    return cfg;
}

LinkConfig load_link_config(const std::filesystem::path &path) {
    return parse_link_config(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InputError("error reading '" + path.string() + "'");
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw OutputError("error writing '" + path.string() + "'");
}

}  // namespace cowwit
