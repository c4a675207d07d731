#include "streamsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "streamsim/csv.hpp"

namespace streamsim {

namespace {

const std::map<std::string, std::string>& preset_map() {
    static const std::map<std::string, std::string> presets = {
        {"figure5a",
         "k = 10\n"
         "v = 1e-16\n"
         "controllers = stochastic, fixed:22, fixed:37\n"},
        {"figure5b",
         "k = 1\n"
         "v = 1e-16\n"
         "controllers = stochastic, fixed:22, fixed:37\n"},
        {"figure6",
         "k = 1\n"
         "controllers = stochastic, fixed:22\n"
         "sweep_v = 1e-16, 5e-16\n"},
    };
    return presets;
}

using KvList = std::vector<std::pair<std::string, std::string>>;

KvList scan_kv(std::string_view text) {
    KvList out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected \"key = value\", got \"" + std::string(line) + "\"");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

double need_double(const std::string& key, const std::string& value) {
    double d;
    if (!parse_double(value, d))
        throw ConfigError("config key \"" + key + "\": not a number: \"" + value + "\"");
    return d;
}

int need_int(const std::string& key, const std::string& value) {
    int i;
    if (!parse_int(value, i))
        throw ConfigError("config key \"" + key + "\": not an integer: \"" + value + "\"");
    return i;
}

std::uint64_t need_u64(const std::string& key, const std::string& value) {
    std::uint64_t u;
    if (!parse_int(value, u))
        throw ConfigError("config key \"" + key + "\": not an unsigned integer: \"" + value +
                          "\"");
    return u;
}

std::vector<ControllerSpec> parse_controller_list(const std::string& key,
                                                  const std::string& value) {
    std::vector<ControllerSpec> out;
    for (auto tok : split(value, ',')) {
        tok = trim(tok);
        if (tok.empty())
            throw ConfigError("config key \"" + key + "\": empty controller entry");
        out.push_back(parse_controller(tok));
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "k") {
        cfg.k = need_int(key, value);
        if (cfg.k < 1) throw ConfigError("config key \"k\": must be >= 1");
    } else if (key == "horizon") {
        cfg.horizon = need_int(key, value);
        if (cfg.horizon < 1) throw ConfigError("config key \"horizon\": must be >= 1");
    } else if (key == "v") {
        cfg.v = need_double(key, value);
        if (!(cfg.v > 0.0)) throw ConfigError("config key \"v\": must be > 0");
    } else if (key == "seed") {
        cfg.seed = need_u64(key, value);
    } else if (key == "controller" || key == "controllers") {
        cfg.controllers = parse_controller_list(key, value);
    } else if (key == "channel") {
        if (value == "rayleigh") cfg.channel_kind = FadingKind::rayleigh;
        else if (value == "deterministic") cfg.channel_kind = FadingKind::deterministic;
        else
            throw ConfigError("config key \"channel\": expected rayleigh or deterministic, "
                              "got \"" + value + "\"");
    } else if (key == "fixed_gain") {
        cfg.fixed_gain = need_double(key, value);
        if (cfg.fixed_gain < 0.0) throw ConfigError("config key \"fixed_gain\": must be >= 0");
    } else if (key == "mean_gain") {
        cfg.mean_gain = need_double(key, value);
        if (!(cfg.mean_gain > 0.0)) throw ConfigError("config key \"mean_gain\": must be > 0");
    } else if (key == "bandwidth_hz") {
        cfg.budget.bandwidth_hz = need_double(key, value);
        if (!(cfg.budget.bandwidth_hz > 0.0))
            throw ConfigError("config key \"bandwidth_hz\": must be > 0");
    } else if (key == "tx_power_dbm") {
        cfg.budget.tx_power_dbm = need_double(key, value);
    } else if (key == "noise_mw") {
        cfg.budget.noise_mw = need_double(key, value);
        if (!(cfg.budget.noise_mw > 0.0))
            throw ConfigError("config key \"noise_mw\": must be > 0");
    } else if (key == "stream_duration_s") {
        cfg.stream_duration_s = need_double(key, value);
        if (!(cfg.stream_duration_s > 0.0))
            throw ConfigError("config key \"stream_duration_s\": must be > 0");
    } else if (key == "trace") {
        cfg.trace_path = value;
    } else if (key == "out") {
        cfg.output_dir = value;
    } else if (key == "sweep_v") {
        cfg.sweep_v.clear();
        for (auto tok : split(value, ',')) {
            double d = need_double(key, std::string(trim(tok)));
            if (!(d > 0.0)) throw ConfigError("config key \"sweep_v\": values must be > 0");
            cfg.sweep_v.push_back(d);
        }
        if (cfg.sweep_v.empty()) throw ConfigError("config key \"sweep_v\": empty list");
    } else if (key == "sweep_k") {
        cfg.sweep_k.clear();
        for (auto tok : split(value, ',')) {
            int i = need_int(key, std::string(trim(tok)));
            if (i < 1) throw ConfigError("config key \"sweep_k\": values must be >= 1");
            cfg.sweep_k.push_back(i);
        }
        if (cfg.sweep_k.empty()) throw ConfigError("config key \"sweep_k\": empty list");
    } else if (key == "sweep_seed") {
        cfg.sweep_seed.clear();
        for (auto tok : split(value, ','))
            cfg.sweep_seed.push_back(need_u64(key, std::string(trim(tok))));
        if (cfg.sweep_seed.empty()) throw ConfigError("config key \"sweep_seed\": empty list");
    } else if (key == "diverge_slope") {
        cfg.diverge_slope = need_double(key, value);
    } else if (key == "diverge_ratio") {
        cfg.diverge_ratio = need_double(key, value);
    } else {
        throw ConfigError("unknown config key \"" + key + "\"");
    }
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, text] : preset_map()) out.push_back(name);
        return out;
    }();
    return names;
}

std::string preset_text(const std::string& name) {
    auto it = preset_map().find(name);
    if (it == preset_map().end()) {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset \"" + name + "\" (known: " + known + ")");
    }
    return it->second;
}

ControllerSpec parse_controller(std::string_view text) {
    text = trim(text);
    if (text == "stochastic") return ControllerSpec{};
    if (text.starts_with("fixed:")) {
        int qp;
        if (!parse_int(text.substr(6), qp))
            throw ConfigError("bad controller \"" + std::string(text) +
                              "\": expected fixed:<qp>");
        return ControllerSpec::fixed(qp);
    }
    throw ConfigError("bad controller \"" + std::string(text) +
                      "\": expected stochastic or fixed:<qp>");
}

std::string controller_name(const ControllerSpec& spec) {
    if (spec.kind == ControllerSpec::Kind::stochastic) return "stochastic";
    return "fixed:" + std::to_string(spec.fixed_qp);
}

ExperimentConfig parse_config_text(std::string_view text, const ConfigOverrides& overrides) {
    KvList kvs = scan_kv(text);

    // The preset forms the base layer no matter where the key appears.
    std::optional<std::string> preset = overrides.preset;
    if (!preset)
        for (const auto& [key, value] : kvs)
            if (key == "preset") preset = value;

    ExperimentConfig cfg;
    if (preset) {
        for (const auto& [key, value] : scan_kv(preset_text(*preset)))
            apply_key(cfg, key, value);
        cfg.preset = preset;
    }
    for (const auto& [key, value] : kvs) {
        if (key == "preset") continue;
        apply_key(cfg, key, value);
    }

    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.controller) cfg.controllers = {parse_controller(*overrides.controller)};
    if (overrides.k) {
        if (*overrides.k < 1) throw ConfigError("flag --k: must be >= 1");
        cfg.k = *overrides.k;
    }
    if (overrides.v) {
        if (!(*overrides.v > 0.0)) throw ConfigError("flag --v: must be > 0");
        cfg.v = *overrides.v;
    }
    if (overrides.horizon) {
        if (*overrides.horizon < 1) throw ConfigError("flag --horizon: must be >= 1");
        cfg.horizon = *overrides.horizon;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
    if (path.empty()) return parse_config_text("", overrides);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    auto kv = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    if (cfg.preset) kv("preset", *cfg.preset);
    kv("k", std::to_string(cfg.k));
    kv("horizon", std::to_string(cfg.horizon));
    kv("v", format_double(cfg.v));
    kv("seed", std::to_string(cfg.seed));
    std::string controllers;
    for (const auto& c : cfg.controllers)
        controllers += (controllers.empty() ? "" : ", ") + controller_name(c);
    kv("controllers", controllers);
    kv("channel", cfg.channel_kind == FadingKind::rayleigh ? "rayleigh" : "deterministic");
    kv("fixed_gain", format_double(cfg.fixed_gain));
    kv("mean_gain", format_double(cfg.mean_gain));
    kv("bandwidth_hz", format_double(cfg.budget.bandwidth_hz));
    kv("tx_power_dbm", format_double(cfg.budget.tx_power_dbm));
    kv("noise_mw", format_double(cfg.budget.noise_mw));
    kv("stream_duration_s", format_double(cfg.stream_duration_s));
    if (cfg.trace_path) kv("trace", *cfg.trace_path);
    kv("out", cfg.output_dir);
    auto join_doubles = [](const std::vector<double>& xs) {
        std::string s;
        for (double x : xs) s += (s.empty() ? "" : ", ") + format_double(x);
        return s;
    };
    if (!cfg.sweep_v.empty()) kv("sweep_v", join_doubles(cfg.sweep_v));
    if (!cfg.sweep_k.empty()) {
        std::string s;
        for (int x : cfg.sweep_k) s += (s.empty() ? "" : ", ") + std::to_string(x);
        kv("sweep_k", s);
    }
    if (!cfg.sweep_seed.empty()) {
        std::string s;
        for (auto x : cfg.sweep_seed) s += (s.empty() ? "" : ", ") + std::to_string(x);
        kv("sweep_seed", s);
    }
    kv("diverge_slope", format_double(cfg.diverge_slope));
    kv("diverge_ratio", format_double(cfg.diverge_ratio));
    return out;
}

std::vector<RunSpec> expand_runs(const ExperimentConfig& cfg) {
    if (cfg.controllers.empty()) throw ConfigError("no controllers configured");

    std::vector<int> k_list = cfg.sweep_k.empty() ? std::vector<int>{cfg.k} : cfg.sweep_k;
    std::vector<double> v_list =
        cfg.sweep_v.empty() ? std::vector<double>{cfg.v} : cfg.sweep_v;
    std::vector<std::uint64_t> seed_list =
        cfg.sweep_seed.empty() ? std::vector<std::uint64_t>{cfg.seed} : cfg.sweep_seed;

    std::vector<RunSpec> out;
    int idx = 0;
    auto push = [&](const ControllerSpec& c, int k, std::uint64_t seed,
                    std::optional<double> v) {
        RunSpec r;
        r.controller = c;
        if (v) r.controller.v = *v;
        r.k = k;
        r.horizon = cfg.horizon;
        r.seed = seed;
        ++idx;
        char num[16];
        std::snprintf(num, sizeof(num), "%02d", idx);
        r.run_id = std::string(num) + "_" +
                   (c.kind == ControllerSpec::Kind::stochastic
                        ? "stochastic_k" + std::to_string(k) + "_v" + format_double(*v)
                        : "fixed" + std::to_string(c.fixed_qp) + "_k" + std::to_string(k)) +
                   "_seed" + std::to_string(seed);
        out.push_back(std::move(r));
    };

    for (const auto& c : cfg.controllers) {
        for (int k : k_list) {
            if (c.kind == ControllerSpec::Kind::stochastic) {
                for (double v : v_list)
                    for (auto seed : seed_list) push(c, k, seed, v);
            } else {
                // v has no effect on fixed controllers; one run per (k, seed).
                for (auto seed : seed_list) push(c, k, seed, std::nullopt);
            }
        }
    }
    return out;
}

ChannelModel channel_for(const ExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.channel_kind == FadingKind::deterministic)
        return ChannelModel::deterministic(cfg.fixed_gain);
    return ChannelModel::rayleigh(cfg.mean_gain, seed);
}

}  // namespace streamsim
