#pragma once

#include <vector>

#include "holorec/hypterm.hpp"
#include "holorec/recurrence.hpp"

namespace holorec {

// Least-order holonomic recurrence satisfied by hypergeometric terms with the
// given consecutive-term ratios.  Every input ratio r satisfies
// apply_to_ratio(result, r) == 0.
Recurrence sum_hyper_re(const std::vector<RatioNF>& ratios);

} // namespace holorec
