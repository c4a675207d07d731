#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streamsim {

// One encoded variant of a stream. index is 1-based with 1 = highest
// quality; qp grows as quality drops.
struct QualityMode {
    int index = 0;
    int qp = 0;

    friend bool operator==(const QualityMode&, const QualityMode&) = default;
};

struct TraceEntry {
    int stream = 0;  // 1-based stream number
    QualityMode quality;
    double psnr_db = 0.0;
    double bitrate_kbps = 0.0;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceViolation {
    enum class Kind {
        empty_table,
        bad_stream_index,
        duplicate_entry,
        missing_entry,
        psnr_not_decreasing,
        bitrate_not_decreasing,
        nonpositive_bitrate,
    };

    Kind kind;
    int stream = 0;  // 0 when not tied to one stream
    int qp = 0;      // 0 when not tied to one mode
    std::string detail;
};

// Offline (stream, quality) -> (PSNR, bitrate) measurements. Immutable after
// construction; validity is checked separately by validate().
class TraceTable {
public:
    TraceTable() = default;
    TraceTable(std::vector<TraceEntry> entries, double stream_duration_s = 1.0);

    const std::vector<TraceEntry>& entries() const { return entries_; }
    const std::vector<QualityMode>& modes() const { return modes_; }
    int stream_count() const { return stream_count_; }
    double stream_duration_s() const { return stream_duration_s_; }

    // The unique entry for (stream_index, qp); throws std::out_of_range if
    // the stream or quality is not in the table.
    const TraceEntry& entry(int stream_index, int qp) const;
    const TraceEntry& entry(int stream_index, const QualityMode& quality) const {
        return entry(stream_index, quality.qp);
    }

    friend bool operator==(const TraceTable&, const TraceTable&) = default;

private:
    std::vector<TraceEntry> entries_;
    std::vector<QualityMode> modes_;  // sorted by qp ascending, index 1..n
    int stream_count_ = 0;
    double stream_duration_s_ = 1.0;
};

struct TraceParseError : std::runtime_error {
    TraceParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct TraceValidationError : std::runtime_error {
    explicit TraceValidationError(std::vector<TraceViolation> violations);
    std::vector<TraceViolation> violations;
};

// The ten 4K UHD sample streams at QP 22/27/32/37, one second of video each.
const TraceTable& builtin_table1();

// All structural checks: completeness of the (stream, mode) grid, strict
// per-stream monotonicity of PSNR and bitrate in qp, positive bitrates.
// Empty result means the table is valid.
std::vector<TraceViolation> validate(const TraceTable& table);

// Format: header "stream,qp,psnr_db,bitrate_kbps", one row per pair, row
// order free. Throws TraceParseError for malformed rows and
// TraceValidationError when the parsed table breaks an invariant.
TraceTable parse_trace_csv(std::string_view text, double stream_duration_s = 1.0);

// Rows sorted by (stream, qp); parse_trace_csv(serialize_trace_csv(t)) == t.
std::string serialize_trace_csv(const TraceTable& table);

// Bits one stream contributes to the queue: bitrate_kbps * 1000 * duration.
// Throws std::invalid_argument when the duration is not positive.
double bits_for(const TraceEntry& entry, double stream_duration_s);
inline double bits_for(const TraceEntry& entry, const TraceTable& table) {
    return bits_for(entry, table.stream_duration_s());
}

std::string to_string(TraceViolation::Kind kind);

}  // namespace streamsim
