#include "streamsim/experiment.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "streamsim/csv.hpp"

namespace streamsim {

namespace {

constexpr std::string_view kSummaryHeader =
    "run_id,controller,k,v,seed,mean_psnr_db,mean_queue_bits,tail_mean_queue_bits,"
    "tail_slope,verdict";

constexpr std::string_view kComparisonHeader =
    "run_id,mean_psnr_db,tail_mean_queue_bits,verdict";

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write \"" + path.string() + "\"");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for \"" + path.string() + "\"");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string verdict_of(const RunResult& result, double slope_threshold,
                       double ratio_threshold) {
    bool diverging =
        result.tail_slope_bits_per_unit > slope_threshold &&
        result.tail_mean_queue_bits > ratio_threshold * result.first_third_mean_queue_bits;
    return diverging ? "diverging" : "stable";
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out{kSummaryHeader};
    out += '\n';
    for (const auto& r : rows) {
        out += r.run_id;
        out += ',';
        out += r.controller;
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        if (r.v) out += format_double(*r.v);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        if (r.mean_psnr_db) out += format_double(*r.mean_psnr_db);
        out += ',';
        out += format_double(r.mean_queue_bits);
        out += ',';
        out += format_double(r.tail_mean_queue_bits);
        out += ',';
        out += format_double(r.tail_slope);
        out += ',';
        out += r.verdict;
        out += '\n';
    }
    return out;
}

std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
    std::vector<SummaryRow> rows;
    bool saw_header = false;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        if (!saw_header) {
            if (stripped != kSummaryHeader)
                throw ConfigError("summary schema mismatch: bad header \"" +
                                  std::string(stripped) + "\"");
            saw_header = true;
            continue;
        }
        auto f = split(stripped, ',');
        if (f.size() != 10)
            throw ConfigError("summary schema mismatch at line " + std::to_string(line_no) +
                              ": expected 10 columns, got " + std::to_string(f.size()));
        SummaryRow r;
        r.run_id = std::string(trim(f[0]));
        r.controller = std::string(trim(f[1]));
        if (!parse_int(f[2], r.k))
            throw ConfigError("summary line " + std::to_string(line_no) + ": bad k");
        if (!trim(f[3]).empty()) {
            double v;
            if (!parse_double(f[3], v))
                throw ConfigError("summary line " + std::to_string(line_no) + ": bad v");
            r.v = v;
        }
        if (!parse_int(f[4], r.seed))
            throw ConfigError("summary line " + std::to_string(line_no) + ": bad seed");
        if (!trim(f[5]).empty()) {
            double p;
            if (!parse_double(f[5], p))
                throw ConfigError("summary line " + std::to_string(line_no) +
                                  ": bad mean_psnr_db");
            r.mean_psnr_db = p;
        }
        if (!parse_double(f[6], r.mean_queue_bits) ||
            !parse_double(f[7], r.tail_mean_queue_bits) || !parse_double(f[8], r.tail_slope))
            throw ConfigError("summary line " + std::to_string(line_no) + ": bad metrics");
        r.verdict = std::string(trim(f[9]));
        rows.push_back(std::move(r));
    }
    if (!saw_header) throw ConfigError("summary schema mismatch: empty file");
    return rows;
}

TraceTable experiment_table(const ExperimentConfig& cfg) {
    if (!cfg.trace_path) {
        if (cfg.stream_duration_s == 1.0) return builtin_table1();
        return TraceTable(builtin_table1().entries(), cfg.stream_duration_s);
    }
    return parse_trace_csv(read_file(*cfg.trace_path), cfg.stream_duration_s);
}

std::vector<SummaryRow> run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    TraceTable table = experiment_table(cfg);

    // Surface bad fixed-QP settings before any run starts.
    for (const auto& c : cfg.controllers) {
        if (c.kind != ControllerSpec::Kind::fixed) continue;
        bool known = false;
        for (const auto& m : table.modes()) known |= m.qp == c.fixed_qp;
        if (!known)
            throw ConfigError("fixed controller QP " + std::to_string(c.fixed_qp) +
                              " is not a quality mode of the trace table");
    }

    std::vector<RunSpec> runs = expand_runs(cfg);

    std::filesystem::path out_dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory \"" + cfg.output_dir + "\"");

    std::vector<SummaryRow> rows;
    rows.reserve(runs.size());
    for (const auto& spec : runs) {
        SimConfig sim;
        sim.k = spec.k;
        sim.horizon = spec.horizon;
        sim.controller = spec.controller;
        sim.budget = cfg.budget;
        sim.channel = channel_for(cfg, spec.seed);
        sim.table = table;
        RunResult result = run(sim);

        write_file(out_dir / (spec.run_id + "_steps.csv"), step_log_csv(result.steps));

        SummaryRow row;
        row.run_id = spec.run_id;
        row.controller = controller_name(spec.controller);
        row.k = spec.k;
        if (spec.controller.kind == ControllerSpec::Kind::stochastic)
            row.v = spec.controller.v;
        row.seed = spec.seed;
        row.mean_psnr_db = result.mean_psnr_db;
        row.mean_queue_bits = result.mean_queue_bits;
        row.tail_mean_queue_bits = result.tail_mean_queue_bits;
        row.tail_slope = result.tail_slope_bits_per_unit;
        row.verdict = verdict_of(result, cfg.diverge_slope, cfg.diverge_ratio);

        log << row.run_id << " controller=" << row.controller << " k=" << row.k
            << " v=" << (row.v ? format_double(*row.v) : "-") << " seed=" << row.seed
            << " mean_psnr=" << (row.mean_psnr_db ? format_double(*row.mean_psnr_db) : "-")
            << " tail_mean_q=" << format_double(row.tail_mean_queue_bits)
            << " tail_slope=" << format_double(row.tail_slope) << " verdict=" << row.verdict
            << '\n';

        rows.push_back(std::move(row));
    }

    write_file(out_dir / "summary.csv", summary_csv(rows));
    write_file(out_dir / "effective_config.cfg", serialize_config(cfg));
    return rows;
}

std::vector<ComparisonRow> compare_summaries(const std::vector<std::string>& paths) {
    if (paths.size() < 2)
        throw ConfigError("compare needs at least 2 summary files, got " +
                          std::to_string(paths.size()));
    std::vector<ComparisonRow> rows;
    for (const auto& path : paths) {
        for (const auto& s : parse_summary_csv(read_file(path))) {
            ComparisonRow r;
            r.run_id = s.run_id;
            r.mean_psnr_db = s.mean_psnr_db;
            r.tail_mean_queue_bits = s.tail_mean_queue_bits;
            r.verdict = s.verdict;
            rows.push_back(std::move(r));
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ComparisonRow& a, const ComparisonRow& b) {
                         return a.tail_mean_queue_bits < b.tail_mean_queue_bits;
                     });
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out{kComparisonHeader};
    out += '\n';
    for (const auto& r : rows) {
        out += r.run_id;
        out += ',';
        if (r.mean_psnr_db) out += format_double(*r.mean_psnr_db);
        out += ',';
        out += format_double(r.tail_mean_queue_bits);
        out += ',';
        out += r.verdict;
        out += '\n';
    }
    return out;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
    std::vector<std::array<std::string, 4>> cells;
    cells.push_back({"run_id", "mean_psnr_db", "tail_mean_queue_bits", "verdict"});
    for (const auto& r : rows)
        cells.push_back({r.run_id, r.mean_psnr_db ? format_double(*r.mean_psnr_db) : "-",
                         format_double(r.tail_mean_queue_bits), r.verdict});

    size_t width[3] = {0, 0, 0};
    for (const auto& row : cells)
        for (int c = 0; c < 3; ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream os;
    for (const auto& row : cells) {
        os << std::left;
        for (int c = 0; c < 3; ++c) os << std::setw(static_cast<int>(width[c]) + 2) << row[c];
        os << row[3] << '\n';
    }
    return os.str();
}

}  // namespace streamsim
