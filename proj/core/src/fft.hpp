#pragma once

#include <vector>

#include "opuc/grid_fourier.hpp"

namespace opuc::detail {

/// Unnormalized in-place DFT; forward uses exp(-2 pi i k m / N).
void fft_inplace(std::vector<cplx>& data, bool forward);

}  // namespace opuc::detail
