#pragma once

#include <compare>

namespace fog::env {

struct Position {
  double x_km = 0.0;
  double y_km = 0.0;

  double distance_to(const Position& other) const;
  bool operator==(const Position&) const = default;
};

// Wireless link budget shared by every task-FN -> service-FN link.
//
// Path loss follows the log-distance form PL(d) = A + 10 n log10(d / d0) in dB.
// Rates are reported in normalized task units per slot:
//   bits/s * slot_seconds / bits_per_task_unit.
struct ChannelParams {
  double bandwidth_hz = 10e6;
  double tx_power_w = 0.2;
  double noise_psd_dbm_per_hz = -174.0;
  double fading_gain = 1.0;
  double pathloss_ref_db = 128.1;
  double pathloss_exponent = 3.76;
  double reference_distance_km = 1.0;
  // Links shorter than this are evaluated at this distance (the log-distance
  // model diverges at d = 0).
  double min_distance_km = 0.035;
  double radius_km = 2.0;
  double slot_seconds = 0.01;
  double bits_per_task_unit = 1000.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const ChannelParams&) const = default;
};

// B * log2(1 + snr).
double shannon_rate(double bandwidth, double snr);

double pathloss_db(const ChannelParams& params, double distance_km);

// g * h * P / (sigma^2 * B), with sigma^2 the noise power spectral density.
double link_snr(const ChannelParams& params, double distance_km);

double link_rate_bps(const ChannelParams& params, double distance_km);

// Average transmission rate of a link in task units per slot.
double transmission_rate(const ChannelParams& params, double distance_km);

}  // namespace fog::env
