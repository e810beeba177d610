#pragma once

namespace fog::policies {

// Implicit-exploration loss estimate l / (p + beta * l) for the chosen arm and
// 0 otherwise. Throws ImpossibleStateError when a chosen arm has p <= 0.
double estimate_loss(double loss, double p_chosen, double beta, bool chosen);

}  // namespace fog::policies
