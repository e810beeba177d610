#include "fog/env/channel.hpp"

#include <algorithm>
#include <cmath>

#include "fog/common/errors.hpp"

namespace fog::env {

double Position::distance_to(const Position& other) const {
  return std::hypot(x_km - other.x_km, y_km - other.y_km);
}

void ChannelParams::validate() const {
  auto require_positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("channel.") + key + " must be positive");
    }
  };
  require_positive(bandwidth_hz, "bandwidth_hz");
  require_positive(tx_power_w, "tx_power_w");
  require_positive(fading_gain, "fading_gain");
  require_positive(reference_distance_km, "reference_distance_km");
  require_positive(min_distance_km, "min_distance_km");
  require_positive(radius_km, "radius_km");
  require_positive(slot_seconds, "slot_seconds");
  require_positive(bits_per_task_unit, "bits_per_task_unit");
  require_positive(pathloss_exponent, "pathloss_exponent");
  if (!std::isfinite(noise_psd_dbm_per_hz)) {
    throw ConfigError("channel.noise_psd_dbm_per_hz must be finite");
  }
  if (!std::isfinite(pathloss_ref_db)) {
    throw ConfigError("channel.pathloss_ref_db must be finite");
  }
}

double shannon_rate(double bandwidth, double snr) {
  return bandwidth * std::log2(1.0 + snr);
}

double pathloss_db(const ChannelParams& params, double distance_km) {
  const double d = std::max(distance_km, params.min_distance_km);
  return params.pathloss_ref_db +
         10.0 * params.pathloss_exponent * std::log10(d / params.reference_distance_km);
}

double link_snr(const ChannelParams& params, double distance_km) {
  const double gain = std::pow(10.0, -pathloss_db(params, distance_km) / 10.0);
  const double noise_psd_w = std::pow(10.0, (params.noise_psd_dbm_per_hz - 30.0) / 10.0);
  return gain * params.fading_gain * params.tx_power_w / (noise_psd_w * params.bandwidth_hz);
}

double link_rate_bps(const ChannelParams& params, double distance_km) {
  return shannon_rate(params.bandwidth_hz, link_snr(params, distance_km));
}

double transmission_rate(const ChannelParams& params, double distance_km) {
  return link_rate_bps(params, distance_km) * params.slot_seconds / params.bits_per_task_unit;
}

}  // namespace fog::env
