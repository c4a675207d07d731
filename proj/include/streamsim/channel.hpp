#pragma once

#include <cstdint>

namespace streamsim {

// Bandwidth, transmit power and noise floor of the single wireless link.
struct LinkBudget {
    double bandwidth_hz = 1e6;
    double tx_power_dbm = 5.0;
    double noise_mw = 1.0;

    double tx_power_mw() const;

    friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

double dbm_to_mw(double p_dbm);

// Shannon rate BW * log2(1 + P_mW * gain / N_mW) in bits per unit time.
double capacity_bits(const LinkBudget& budget, double gain);

enum class FadingKind { deterministic, rayleigh };

// Channel power gain source. Deterministic returns fixed_gain everywhere;
// rayleigh draws i.i.d. Exp(mean_gain) values addressed by (seed, t), so
// queries are stateless and reproducible.
struct ChannelModel {
    FadingKind kind = FadingKind::rayleigh;
    double fixed_gain = 1.0;
    double mean_gain = 1.0;
    std::uint64_t seed = 1;

    static ChannelModel deterministic(double gain);
    static ChannelModel rayleigh(double mean_gain, std::uint64_t seed);

    double sample_gain(std::int64_t t) const;

    friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

}  // namespace streamsim
