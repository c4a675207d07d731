#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamsim/config.hpp"
#include "streamsim/experiment.hpp"
#include "streamsim/trace.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 I/O error,
// 3 trace validation failure.
enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2, kTraceError = 3 };

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw streamsim::IoError("cannot read \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const std::string& config_path, const streamsim::ConfigOverrides& overrides) {
    auto cfg = streamsim::load_config(config_path, overrides);
    streamsim::run_experiment(cfg, std::cout);
    return kOk;
}

int cmd_compare(const std::vector<std::string>& paths) {
    auto rows = streamsim::compare_summaries(paths);
    std::cout << streamsim::comparison_table(rows) << '\n'
              << streamsim::comparison_csv(rows);
    return kOk;
}

int cmd_validate_trace(const std::string& path) {
    auto table = streamsim::parse_trace_csv(read_file_or_throw(path));
    std::cout << "OK: " << table.stream_count() << " streams, " << table.modes().size()
              << " quality modes, " << table.entries().size() << " entries\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven simulator for queue-adaptive wireless video streaming"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment (one engine run per sweep point)");
    std::string config_path;
    streamsim::ConfigOverrides ov;
    std::string preset, out_dir, controller;
    std::uint64_t seed = 0;
    int k = 0, horizon = 0;
    double v = 0.0;
    run->add_option("--config", config_path, "Config file (key = value lines)");
    auto* opt_preset = run->add_option("--preset", preset, "Preset: figure5a, figure5b, figure6");
    auto* opt_out = run->add_option("--out", out_dir, "Output directory");
    auto* opt_seed = run->add_option("--seed", seed, "Channel seed");
    auto* opt_ctrl =
        run->add_option("--controller", controller, "stochastic or fixed:<qp>");
    auto* opt_k = run->add_option("--k", k, "Stream-time scaling factor");
    auto* opt_v = run->add_option("--v", v, "Quality/stability tradeoff");
    auto* opt_horizon = run->add_option("--horizon", horizon, "Unit times to simulate");

    auto* compare = app.add_subcommand("compare", "Merge and rank summary files");
    std::vector<std::string> summaries;
    compare->add_option("summaries", summaries, "Summary CSV files (need at least 2)");

    auto* validate = app.add_subcommand("validate-trace", "Check a trace CSV file");
    std::string trace_path;
    validate->add_option("trace", trace_path, "Trace CSV file")->required();

    try {
        app.parse(argc, argv);

        if (run->parsed()) {
            if (*opt_preset) ov.preset = preset;
            if (*opt_out) ov.output_dir = out_dir;
            if (*opt_seed) ov.seed = seed;
            if (*opt_ctrl) ov.controller = controller;
            if (*opt_k) ov.k = k;
            if (*opt_v) ov.v = v;
            if (*opt_horizon) ov.horizon = horizon;
            return cmd_run(config_path, ov);
        }
        if (compare->parsed()) return cmd_compare(summaries);
        if (validate->parsed()) return cmd_validate_trace(trace_path);
        return kConfigError;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kConfigError;
    } catch (const streamsim::TraceParseError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
        return kTraceError;
    } catch (const streamsim::TraceValidationError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
        return kTraceError;
    } catch (const streamsim::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const streamsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}
