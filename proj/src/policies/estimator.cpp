#include "fog/policies/estimator.hpp"

#include "fog/common/errors.hpp"

namespace fog::policies {

double estimate_loss(double loss, double p_chosen, double beta, bool chosen) {
  if (!chosen) return 0.0;
  if (!(p_chosen > 0.0)) {
    throw ImpossibleStateError("estimate_loss: chosen arm has zero probability");
  }
  if (loss == 0.0) return 0.0;
  return loss / (p_chosen + beta * loss);
}

}  // namespace fog::policies
