#include "streamsim/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "streamsim/csv.hpp"

namespace streamsim {

namespace {

constexpr std::string_view kTraceHeader = "stream,qp,psnr_db,bitrate_kbps";

// PSNR (dB) and bitrate (Kbps) per stream at QP 22/27/32/37.
struct RawRow {
    int stream;
    int qp;
    double psnr;
    double kbps;
};

constexpr RawRow kTable1[] = {
    {1, 22, 41.64, 26496},  {1, 27, 39.11, 10658},  {1, 32, 36.61, 5073},  {1, 37, 34.00, 2621},
    {2, 22, 41.64, 26811},  {2, 27, 39.07, 10811},  {2, 32, 36.56, 5128},  {2, 37, 33.97, 2650},
    {3, 22, 41.60, 27888},  {3, 27, 39.00, 11279},  {3, 32, 36.48, 5320},  {3, 37, 33.91, 2721},
    {4, 22, 41.61, 27145},  {4, 27, 39.05, 10958},  {4, 32, 36.53, 5193},  {4, 37, 33.94, 2679},
    {5, 22, 41.63, 26535},  {5, 27, 39.08, 10710},  {5, 32, 36.57, 5095},  {5, 37, 33.98, 2636},
    {6, 22, 41.60, 27630},  {6, 27, 39.02, 11130},  {6, 32, 36.51, 5263},  {6, 37, 33.94, 2703},
    {7, 22, 41.61, 27766},  {7, 27, 39.01, 11237},  {7, 32, 36.49, 5303},  {7, 37, 33.91, 2714},
    {8, 22, 41.63, 26689},  {8, 27, 39.10, 10765},  {8, 32, 36.59, 5118},  {8, 37, 34.00, 2641},
    {9, 22, 41.62, 27083},  {9, 27, 39.06, 10902},  {9, 32, 36.56, 5181},  {9, 37, 33.97, 2678},
    {10, 22, 41.60, 28006}, {10, 27, 39.00, 11378}, {10, 32, 36.47, 5364}, {10, 37, 33.89, 2735},
};

std::string violation_message(const std::vector<TraceViolation>& violations) {
    std::ostringstream os;
    os << "trace validation failed (" << violations.size() << " violation"
       << (violations.size() == 1 ? "" : "s") << "):";
    for (const auto& v : violations) os << "\n  " << v.detail;
    return os.str();
}

}  // namespace

TraceTable::TraceTable(std::vector<TraceEntry> entries, double stream_duration_s)
    : entries_(std::move(entries)), stream_duration_s_(stream_duration_s) {
    std::set<int> qps;
    for (const auto& e : entries_) {
        qps.insert(e.quality.qp);
        stream_count_ = std::max(stream_count_, e.stream);
    }
    int index = 1;
    for (int qp : qps) modes_.push_back({index++, qp});
    // Re-stamp the 1-based index so entries agree with the derived mode list.
    for (auto& e : entries_) {
        auto it = std::find_if(modes_.begin(), modes_.end(),
                               [&](const QualityMode& m) { return m.qp == e.quality.qp; });
        e.quality.index = it->index;
    }
}

const TraceEntry& TraceTable::entry(int stream_index, int qp) const {
    if (stream_index < 1 || stream_index > stream_count_)
        throw std::out_of_range("stream " + std::to_string(stream_index) +
                                " out of range 1.." + std::to_string(stream_count_));
    for (const auto& e : entries_)
        if (e.stream == stream_index && e.quality.qp == qp) return e;
    throw std::out_of_range("no entry for stream " + std::to_string(stream_index) +
                            ", QP " + std::to_string(qp));
}

TraceValidationError::TraceValidationError(std::vector<TraceViolation> v)
    : std::runtime_error(violation_message(v)), violations(std::move(v)) {}

const TraceTable& builtin_table1() {
    static const TraceTable table = [] {
        std::vector<TraceEntry> entries;
        entries.reserve(std::size(kTable1));
        for (const auto& r : kTable1)
            entries.push_back({r.stream, {0, r.qp}, r.psnr, r.kbps});
        return TraceTable(std::move(entries), 1.0);
    }();
    return table;
}

std::vector<TraceViolation> validate(const TraceTable& table) {
    std::vector<TraceViolation> out;
    auto add = [&](TraceViolation::Kind kind, int stream, int qp, std::string detail) {
        out.push_back({kind, stream, qp, std::move(detail)});
    };

    if (table.entries().empty()) {
        add(TraceViolation::Kind::empty_table, 0, 0, "table has no entries");
        return out;
    }

    for (const auto& e : table.entries()) {
        if (e.stream < 1)
            add(TraceViolation::Kind::bad_stream_index, e.stream, e.quality.qp,
                "stream index " + std::to_string(e.stream) + " is not >= 1");
        if (e.bitrate_kbps <= 0.0)
            add(TraceViolation::Kind::nonpositive_bitrate, e.stream, e.quality.qp,
                "stream " + std::to_string(e.stream) + " QP " + std::to_string(e.quality.qp) +
                    " has non-positive bitrate");
    }

    // Completeness: every (stream, mode) pair exactly once.
    std::map<std::pair<int, int>, int> count;
    for (const auto& e : table.entries()) ++count[{e.stream, e.quality.qp}];
    for (int s = 1; s <= table.stream_count(); ++s) {
        for (const auto& m : table.modes()) {
            auto it = count.find({s, m.qp});
            if (it == count.end())
                add(TraceViolation::Kind::missing_entry, s, m.qp,
                    "missing entry for stream " + std::to_string(s) + ", QP " +
                        std::to_string(m.qp));
            else if (it->second > 1)
                add(TraceViolation::Kind::duplicate_entry, s, m.qp,
                    "duplicate entry for stream " + std::to_string(s) + ", QP " +
                        std::to_string(m.qp));
        }
    }

    // Strict monotonicity along each stream: PSNR and bitrate both drop as
    // qp rises.
    for (int s = 1; s <= table.stream_count(); ++s) {
        const TraceEntry* prev = nullptr;
        for (const auto& m : table.modes()) {
            auto it = count.find({s, m.qp});
            if (it == count.end() || it->second != 1) {
                prev = nullptr;  // incomplete stream already reported
                continue;
            }
            const TraceEntry& cur = table.entry(s, m.qp);
            if (prev) {
                if (!(prev->psnr_db > cur.psnr_db))
                    add(TraceViolation::Kind::psnr_not_decreasing, s, m.qp,
                        "stream " + std::to_string(s) + ": PSNR not strictly decreasing at QP " +
                            std::to_string(m.qp));
                if (!(prev->bitrate_kbps > cur.bitrate_kbps))
                    add(TraceViolation::Kind::bitrate_not_decreasing, s, m.qp,
                        "stream " + std::to_string(s) +
                            ": bitrate not strictly decreasing at QP " + std::to_string(m.qp));
            }
            prev = &cur;
        }
    }
    return out;
}

TraceTable parse_trace_csv(std::string_view text, double stream_duration_s) {
    std::vector<TraceEntry> entries;
    int line_no = 0;
    size_t pos = 0;
    bool saw_header = false;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        if (!saw_header) {
            if (stripped != kTraceHeader)
                throw TraceParseError(
                    "expected header \"" + std::string(kTraceHeader) + "\"", line_no);
            saw_header = true;
            continue;
        }
        auto fields = split(stripped, ',');
        if (fields.size() != 4)
            throw TraceParseError("expected 4 columns, got " + std::to_string(fields.size()),
                                  line_no);
        TraceEntry e;
        if (!parse_int(fields[0], e.stream))
            throw TraceParseError("bad stream number \"" + std::string(fields[0]) + "\"",
                                  line_no);
        if (!parse_int(fields[1], e.quality.qp))
            throw TraceParseError("bad qp \"" + std::string(fields[1]) + "\"", line_no);
        if (!parse_double(fields[2], e.psnr_db))
            throw TraceParseError("bad psnr_db \"" + std::string(fields[2]) + "\"", line_no);
        if (!parse_double(fields[3], e.bitrate_kbps))
            throw TraceParseError("bad bitrate_kbps \"" + std::string(fields[3]) + "\"",
                                  line_no);
        entries.push_back(e);
    }
    if (!saw_header) throw TraceParseError("empty file", 1);

    TraceTable table(std::move(entries), stream_duration_s);
    if (auto violations = validate(table); !violations.empty())
        throw TraceValidationError(std::move(violations));
    return table;
}

std::string serialize_trace_csv(const TraceTable& table) {
    std::vector<TraceEntry> sorted = table.entries();
    std::sort(sorted.begin(), sorted.end(), [](const TraceEntry& a, const TraceEntry& b) {
        return std::tie(a.stream, a.quality.qp) < std::tie(b.stream, b.quality.qp);
    });
    std::string out{kTraceHeader};
    out += '\n';
    for (const auto& e : sorted) {
        out += std::to_string(e.stream);
        out += ',';
        out += std::to_string(e.quality.qp);
        out += ',';
        out += format_double(e.psnr_db);
        out += ',';
        out += format_double(e.bitrate_kbps);
        out += '\n';
    }
    return out;
}

double bits_for(const TraceEntry& entry, double stream_duration_s) {
    if (!(stream_duration_s > 0.0))
        throw std::invalid_argument("stream_duration_s must be > 0");
    return entry.bitrate_kbps * 1000.0 * stream_duration_s;
}

std::string to_string(TraceViolation::Kind kind) {
    switch (kind) {
        case TraceViolation::Kind::empty_table: return "empty_table";
        case TraceViolation::Kind::bad_stream_index: return "bad_stream_index";
        case TraceViolation::Kind::duplicate_entry: return "duplicate_entry";
        case TraceViolation::Kind::missing_entry: return "missing_entry";
        case TraceViolation::Kind::psnr_not_decreasing: return "psnr_not_decreasing";
        case TraceViolation::Kind::bitrate_not_decreasing: return "bitrate_not_decreasing";
        case TraceViolation::Kind::nonpositive_bitrate: return "nonpositive_bitrate";
    }
    return "unknown";
}

}  // namespace streamsim
