#include "streamsim/control.hpp"

#include <stdexcept>
#include <string>

namespace streamsim {

ControllerSpec ControllerSpec::stochastic(double v) {
    if (!(v > 0.0)) throw std::invalid_argument("stochastic controller requires v > 0");
    ControllerSpec s;
    s.kind = Kind::stochastic;
    s.v = v;
    return s;
}

ControllerSpec ControllerSpec::fixed(int qp) {
    ControllerSpec s;
    s.kind = Kind::fixed;
    s.fixed_qp = qp;
    return s;
}

double quality_score(double psnr_db, double stream_bits, double queue_bits, double v) {
    return psnr_db - v * stream_bits * queue_bits;
}

Decision select_quality(const TraceTable& table, int stream_index, double queue_bits,
                        double v) {
    Decision winner;
    bool have = false;
    // Modes are ordered by ascending qp; keeping only strictly better scores
    // leaves the first maximizer, i.e. the higher-quality mode, on ties.
    for (const auto& mode : table.modes()) {
        const TraceEntry& e = table.entry(stream_index, mode);
        double bits = bits_for(e, table);
        double score = quality_score(e.psnr_db, bits, queue_bits, v);
        if (!have || score > *winner.score) {
            winner = Decision{mode, score, e.psnr_db, bits};
            have = true;
        }
    }
    if (!have) throw std::out_of_range("trace table has no quality modes");
    return winner;
}

Decision decide(const ControllerSpec& spec, const TraceTable& table, int stream_index,
                double queue_bits) {
    if (spec.kind == ControllerSpec::Kind::stochastic)
        return select_quality(table, stream_index, queue_bits, spec.v);

    for (const auto& mode : table.modes()) {
        if (mode.qp != spec.fixed_qp) continue;
        const TraceEntry& e = table.entry(stream_index, mode);
        return Decision{mode, std::nullopt, e.psnr_db, bits_for(e, table)};
    }
    throw std::invalid_argument("fixed controller QP " + std::to_string(spec.fixed_qp) +
                                " is not a quality mode of the trace table");
}

}  // namespace streamsim
