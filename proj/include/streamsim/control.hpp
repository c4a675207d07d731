#pragma once

#include <optional>

#include "streamsim/trace.hpp"

namespace streamsim {

// Which policy picks the quality mode at each placement. The stochastic
// policy trades quality against backlog through v; fixed policies ignore
// the queue entirely.
struct ControllerSpec {
    enum class Kind { stochastic, fixed };

    Kind kind = Kind::stochastic;
    double v = 1e-16;   // stochastic only, > 0
    int fixed_qp = 37;  // fixed only, must exist in the table

    static ControllerSpec stochastic(double v);
    static ControllerSpec fixed(int qp);

    friend bool operator==(const ControllerSpec&, const ControllerSpec&) = default;
};

struct Decision {
    QualityMode quality;
    std::optional<double> score;  // winning score, stochastic only
    double psnr_db = 0.0;
    double arrival_bits = 0.0;
};

// Per-mode decision score: PSNR minus the v-weighted product of stream size
// and current backlog, both in bits.
double quality_score(double psnr_db, double stream_bits, double queue_bits, double v);

// Maximizes quality_score over the table's modes for one stream. Ties go to
// the lower QP, so quality wins when backlog pressure is equal.
Decision select_quality(const TraceTable& table, int stream_index, double queue_bits,
                        double v);

// Dispatch on the controller kind. Fixed controllers return their pinned
// mode no matter the backlog; throws ConfigError (std::invalid_argument)
// when the pinned QP is not in the table.
Decision decide(const ControllerSpec& spec, const TraceTable& table, int stream_index,
                double queue_bits);

}  // namespace streamsim
