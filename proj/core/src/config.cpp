#include "wiretap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wiretap/errors.hpp"

namespace wiretap {

using nlohmann::json;

std::vector<double> EvalSettings::snr_grid() const {
    if (!(snr_step_db > 0.0)) throw ParamError("eval.snr_step_db: must be positive");
    if (snr_stop_db < snr_start_db) throw ParamError("eval.snr_stop_db: must not precede snr_start_db");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(snr_start_db + i * snr_step_db);
    return grid;
}

std::string normalization_name(Normalization mode) {
    return mode == Normalization::per_symbol ? "per_symbol" : "batch_average";
}

Normalization normalization_from_name(const std::string& name) {
    if (name == "per_symbol") return Normalization::per_symbol;
    if (name == "batch_average") return Normalization::batch_average;
    throw ParamError("normalization: expected \"batch_average\" or \"per_symbol\", got \"" + name + "\"");
}

namespace {

template <typename T>
T require(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw ParamError(path + key + ": missing required field");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParamError(path + key + ": wrong type");
    }
}

template <typename T>
T optional(const json& j, const std::string& path, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParamError(path + key + ": wrong type");
    }
}

}  // namespace

RunConfig parse_run_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParamError(std::string("config: invalid JSON: ") + e.what());
    }

    RunConfig c;
    c.message_count = require<std::size_t>(j, "", "message_count");
    c.codeword_dim = require<std::size_t>(j, "", "codeword_dim");
    c.cluster_count = require<int>(j, "", "cluster_count");
    c.normalization = normalization_from_name(require<std::string>(j, "", "normalization"));
    c.bob_train_snr_db = require<double>(j, "", "bob_train_snr_db");
    c.eve_extra_train_snr_db = require<double>(j, "", "eve_extra_train_snr_db");
    c.alpha = require<double>(j, "", "alpha");
    if (j.contains("seed")) {
        c.seed = require<std::uint64_t>(j, "", "seed");
        c.seed_set = true;
    }
    c.output_dir = optional<std::string>(j, "", "output_dir", c.output_dir);

    if (j.contains("phases")) {
        const json& p = j.at("phases");
        c.phase1_steps = optional<int>(p, "phases.", "phase1_steps", c.phase1_steps);
        c.phase2_steps = optional<int>(p, "phases.", "phase2_steps", c.phase2_steps);
        c.phase3_steps = optional<int>(p, "phases.", "phase3_steps", c.phase3_steps);
        c.phase4_steps = optional<int>(p, "phases.", "phase4_steps", c.phase4_steps);
    }
    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        c.schedule.lr_start = optional<double>(s, "schedule.", "lr_start", c.schedule.lr_start);
        c.schedule.lr_end = optional<double>(s, "schedule.", "lr_end", c.schedule.lr_end);
        c.schedule.batch_start = optional<int>(s, "schedule.", "batch_start", c.schedule.batch_start);
        c.schedule.batch_end = optional<int>(s, "schedule.", "batch_end", c.schedule.batch_end);
    }
    if (j.contains("eval")) {
        const json& e = j.at("eval");
        c.eval.snr_start_db = optional<double>(e, "eval.", "snr_start_db", c.eval.snr_start_db);
        c.eval.snr_stop_db = optional<double>(e, "eval.", "snr_stop_db", c.eval.snr_stop_db);
        c.eval.snr_step_db = optional<double>(e, "eval.", "snr_step_db", c.eval.snr_step_db);
        c.eval.eve_extra_snr_db = optional<double>(e, "eval.", "eve_extra_snr_db", c.eval.eve_extra_snr_db);
        c.eval.samples_per_point =
            optional<long>(e, "eval.", "samples_per_point", c.eval.samples_per_point);
    }

    validate_run_config(c);
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config_text(buf.str());
}

void validate_run_config(const RunConfig& c) {
    if (c.message_count < 2) throw ParamError("message_count: must be at least 2");
    if (c.codeword_dim < 1) throw ParamError("codeword_dim: must be positive");
    if (c.cluster_count < 1) throw ParamError("cluster_count: must be positive");
    if (c.message_count % static_cast<std::size_t>(c.cluster_count) != 0)
        throw ParamError("cluster_count: l must divide |M|");
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw ParamError("alpha: must lie in [0, 1]");
    if (!std::isfinite(c.bob_train_snr_db)) throw ParamError("bob_train_snr_db: must be finite");
    if (!std::isfinite(c.eve_extra_train_snr_db))
        throw ParamError("eve_extra_train_snr_db: must be finite");
    if (c.phase1_steps <= 0 || c.phase2_steps <= 0 || c.phase3_steps <= 0 || c.phase4_steps <= 0)
        throw ParamError("phases: step counts must be positive");
    if (!(c.schedule.lr_start > 0.0) || !(c.schedule.lr_end > 0.0))
        throw ParamError("schedule: learning rates must be positive");
    if (c.schedule.lr_end > c.schedule.lr_start)
        throw ParamError("schedule.lr_end: decay requires lr_end <= lr_start");
    if (c.schedule.batch_start <= 0) throw ParamError("schedule.batch_start: must be positive");
    if (c.schedule.batch_end < c.schedule.batch_start)
        throw ParamError("schedule.batch_end: must be >= batch_start");
    if (!std::isfinite(c.eval.snr_start_db) || !std::isfinite(c.eval.snr_stop_db) ||
        !std::isfinite(c.eval.eve_extra_snr_db))
        throw ParamError("eval: SNR values must be finite");
    if (!(c.eval.snr_step_db > 0.0)) throw ParamError("eval.snr_step_db: must be positive");
    if (c.eval.snr_stop_db < c.eval.snr_start_db)
        throw ParamError("eval.snr_stop_db: must not precede snr_start_db");
    if (c.eval.samples_per_point < 1000)
        throw ParamError("eval.samples_per_point: must be at least 1000");
    if (!c.seed_set) throw ParamError("seed: required for reproducible runs");
    if (c.output_dir.empty()) throw ParamError("output_dir: must not be empty");
}

std::string serialize_run_config(const RunConfig& c) {
    json j;
    j["message_count"] = c.message_count;
    j["codeword_dim"] = c.codeword_dim;
    j["cluster_count"] = c.cluster_count;
    j["normalization"] = normalization_name(c.normalization);
    j["bob_train_snr_db"] = c.bob_train_snr_db;
    j["eve_extra_train_snr_db"] = c.eve_extra_train_snr_db;
    j["alpha"] = c.alpha;
    j["phases"] = {{"phase1_steps", c.phase1_steps},
                   {"phase2_steps", c.phase2_steps},
                   {"phase3_steps", c.phase3_steps},
                   {"phase4_steps", c.phase4_steps}};
    j["schedule"] = {{"lr_start", c.schedule.lr_start},
                     {"lr_end", c.schedule.lr_end},
                     {"batch_start", c.schedule.batch_start},
                     {"batch_end", c.schedule.batch_end}};
    j["eval"] = {{"snr_start_db", c.eval.snr_start_db},
                 {"snr_stop_db", c.eval.snr_stop_db},
                 {"snr_step_db", c.eval.snr_step_db},
                 {"eve_extra_snr_db", c.eval.eve_extra_snr_db},
                 {"samples_per_point", c.eval.samples_per_point}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j.dump(2);
}

std::string config_hash(const RunConfig& c) {
    const std::string text = serialize_run_config(c);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PipelineOptions pipeline_options(const RunConfig& c) {
    PipelineOptions o;
    o.message_count = c.message_count;
    o.codeword_dim = c.codeword_dim;
    o.cluster_count = c.cluster_count;
    o.normalization = c.normalization;
    o.bob_snr_db = c.bob_train_snr_db;
    o.eve_extra_snr_db = c.eve_extra_train_snr_db;
    o.alpha = c.alpha;
    o.phase1_steps = c.phase1_steps;
    o.phase2_steps = c.phase2_steps;
    o.phase3_steps = c.phase3_steps;
    o.phase4_steps = c.phase4_steps;
    o.schedule = c.schedule;
    o.seed = c.seed;
    return o;
}

}  // namespace wiretap
