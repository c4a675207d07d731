#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamsim/channel.hpp"
#include "streamsim/control.hpp"
#include "streamsim/trace.hpp"

namespace streamsim {

struct SimConfig {
    int k = 10;          // unit times per stream time
    int horizon = 3000;  // unit times simulated
    ControllerSpec controller;
    LinkBudget budget;
    ChannelModel channel;
    TraceTable table;
};

// One unit-time tick. Placement fields (t_s, stream_index, chosen_qp,
// psnr_db) are meaningful only when is_placement is set.
struct StepRecord {
    int t = 0;
    bool is_placement = false;
    int t_s = 0;
    int stream_index = 0;
    int chosen_qp = 0;
    double psnr_db = 0.0;
    double arrival_bits = 0.0;
    double departure_bits = 0.0;
    double queue_bits_after = 0.0;
};

struct RunResult {
    std::vector<StepRecord> steps;
    std::optional<double> mean_psnr_db;  // over placements; absent when none
    double mean_queue_bits = 0.0;
    double first_third_mean_queue_bits = 0.0;
    double tail_mean_queue_bits = 0.0;        // mean over the last third
    double tail_slope_bits_per_unit = 0.0;    // OLS slope over the last third
    int placements = 0;
};

// Streams are placed at positive multiples of k; t = 0 only initializes the
// queue.
bool is_placement_time(std::int64_t t, int k);

// t / k, valid only at placement times (throws std::logic_error otherwise).
std::int64_t stream_time(std::int64_t t, int k);

// Q(t+1) = max(Q(t) + arrivals - departures, 0).
double queue_update(double queue_bits, double arrival_bits, double departure_bits);

// Aggregates over a finished step log; throws std::invalid_argument when the
// log is empty.
RunResult summarize(std::vector<StepRecord> steps);

// Full simulation: per unit time, sample the channel, place a stream when
// the stream clock fires (decision sees the backlog before the arrival),
// then apply the queue recurrence. Deterministic per config.
RunResult run(const SimConfig& config);

// Step log CSV: "t,t_s,stream,qp,psnr_db,arrival_bits,departure_bits,queue_bits";
// placement-only columns stay empty on transmission-only ticks.
std::string step_log_csv(const std::vector<StepRecord>& steps);

}  // namespace streamsim
