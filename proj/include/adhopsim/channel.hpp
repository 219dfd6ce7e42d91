#pragma once

namespace adhopsim {

struct ChannelParams {
  double tx_power_mw = 1.0;
  double sensitivity_dbm = -85.0;
  double freq_hz = 2.4e9;
  double frame_loss_prob = 0.0;  // independent per receiver per frame
};

double dbm_from_mw(double mw);

// Free-space path-loss inversion: the distance at which the received power
// drops to the sensitivity threshold. Disk connectivity model.
double communication_range_m(double tx_power_mw, double sensitivity_dbm, double freq_hz);

}  // namespace adhopsim
