#include "streamsim/channel.hpp"

#include <cmath>

#include "streamsim/rng.hpp"

namespace streamsim {

double dbm_to_mw(double p_dbm) { return std::pow(10.0, p_dbm / 10.0); }

double LinkBudget::tx_power_mw() const { return dbm_to_mw(tx_power_dbm); }

double capacity_bits(const LinkBudget& budget, double gain) {
    return budget.bandwidth_hz * std::log2(1.0 + budget.tx_power_mw() * gain / budget.noise_mw);
}

ChannelModel ChannelModel::deterministic(double gain) {
    ChannelModel m;
    m.kind = FadingKind::deterministic;
    m.fixed_gain = gain;
    return m;
}

ChannelModel ChannelModel::rayleigh(double mean_gain, std::uint64_t seed) {
    ChannelModel m;
    m.kind = FadingKind::rayleigh;
    m.mean_gain = mean_gain;
    m.seed = seed;
    return m;
}

double ChannelModel::sample_gain(std::int64_t t) const {
    if (kind == FadingKind::deterministic) return fixed_gain;
    // Rayleigh fading: power gain is exponential. Inverse CDF keeps the
    // draw identical on every platform.
    double u = bits_to_unit_open(counter_draw(seed, static_cast<std::uint64_t>(t)));
    return -mean_gain * std::log(u);
}

}  // namespace streamsim
