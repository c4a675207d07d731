#include "streamsim/engine.hpp"

#include <stdexcept>

#include "streamsim/csv.hpp"

namespace streamsim {

bool is_placement_time(std::int64_t t, int k) {
    if (t < 0 || k < 1) throw std::invalid_argument("need t >= 0 and k >= 1");
    return t > 0 && t % k == 0;
}

std::int64_t stream_time(std::int64_t t, int k) {
    if (!is_placement_time(t, k))
        throw std::logic_error("stream_time called outside a placement time");
    return t / k;
}

double queue_update(double queue_bits, double arrival_bits, double departure_bits) {
    double next = queue_bits + arrival_bits - departure_bits;
    return next > 0.0 ? next : 0.0;
}

RunResult summarize(std::vector<StepRecord> steps) {
    if (steps.empty()) throw std::invalid_argument("summarize needs at least one step");

    RunResult r;
    r.steps = std::move(steps);

    double psnr_sum = 0.0;
    double queue_sum = 0.0;
    for (const auto& s : r.steps) {
        queue_sum += s.queue_bits_after;
        if (s.is_placement) {
            ++r.placements;
            psnr_sum += s.psnr_db;
        }
    }
    if (r.placements > 0) r.mean_psnr_db = psnr_sum / r.placements;
    r.mean_queue_bits = queue_sum / static_cast<double>(r.steps.size());

    size_t n = r.steps.size();
    size_t third = n / 3 > 0 ? n / 3 : 1;

    double head_sum = 0.0;
    for (size_t i = 0; i < third; ++i) head_sum += r.steps[i].queue_bits_after;
    r.first_third_mean_queue_bits = head_sum / static_cast<double>(third);

    double tail_sum = 0.0;
    for (size_t i = n - third; i < n; ++i) tail_sum += r.steps[i].queue_bits_after;
    r.tail_mean_queue_bits = tail_sum / static_cast<double>(third);

    // Least-squares slope of Q against t over the tail window.
    double t_mean = 0.0;
    for (size_t i = n - third; i < n; ++i) t_mean += r.steps[i].t;
    t_mean /= static_cast<double>(third);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = n - third; i < n; ++i) {
        double dt = r.steps[i].t - t_mean;
        sxy += dt * (r.steps[i].queue_bits_after - r.tail_mean_queue_bits);
        sxx += dt * dt;
    }
    r.tail_slope_bits_per_unit = sxx > 0.0 ? sxy / sxx : 0.0;

    return r;
}

RunResult run(const SimConfig& config) {
    if (config.k < 1) throw std::invalid_argument("k must be >= 1");
    if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (config.table.stream_count() < 1)
        throw std::invalid_argument("trace table has no streams");

    std::vector<StepRecord> steps;
    steps.reserve(static_cast<size_t>(config.horizon));

    double queue_bits = 0.0;
    for (int t = 0; t < config.horizon; ++t) {
        StepRecord rec;
        rec.t = t;
        if (t == 0) {
            // Initialization tick: queue starts empty, nothing moves.
            steps.push_back(rec);
            continue;
        }

        rec.departure_bits = capacity_bits(config.budget, config.channel.sample_gain(t));

        if (is_placement_time(t, config.k)) {
            auto t_s = stream_time(t, config.k);
            int stream = static_cast<int>(t_s % config.table.stream_count()) + 1;
            // The decision sees Q(t), before this tick's arrival lands.
            Decision d = decide(config.controller, config.table, stream, queue_bits);
            rec.is_placement = true;
            rec.t_s = static_cast<int>(t_s);
            rec.stream_index = stream;
            rec.chosen_qp = d.quality.qp;
            rec.psnr_db = d.psnr_db;
            rec.arrival_bits = d.arrival_bits;
        }

        queue_bits = queue_update(queue_bits, rec.arrival_bits, rec.departure_bits);
        rec.queue_bits_after = queue_bits;
        steps.push_back(rec);
    }

    return summarize(std::move(steps));
}

std::string step_log_csv(const std::vector<StepRecord>& steps) {
    std::string out = "t,t_s,stream,qp,psnr_db,arrival_bits,departure_bits,queue_bits\n";
    for (const auto& s : steps) {
        out += std::to_string(s.t);
        out += ',';
        if (s.is_placement) {
            out += std::to_string(s.t_s);
            out += ',';
            out += std::to_string(s.stream_index);
            out += ',';
            out += std::to_string(s.chosen_qp);
            out += ',';
            out += format_double(s.psnr_db);
        } else {
            out += ",,,";
        }
        out += ',';
        out += format_double(s.arrival_bits);
        out += ',';
        out += format_double(s.departure_bits);
        out += ',';
        out += format_double(s.queue_bits_after);
        out += '\n';
    }
    return out;
}

}  // namespace streamsim
