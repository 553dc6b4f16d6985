#pragma once

#include "cayleyfp/znset.hpp"

namespace cayleyfp::reference {

// Naive element-pair implementations kept as the ground truth the rotation
// kernels are tested and benchmarked against. Serial by construction.
ZnSet sumset(const ZnSet& A, const ZnSet& B);
ZnSet restricted_sumset(const ZnSet& A);

}  // namespace cayleyfp::reference
