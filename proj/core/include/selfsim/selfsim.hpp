#pragma once

#include "selfsim/diffusion.hpp"
#include "selfsim/dynamics.hpp"
#include "selfsim/error.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/operator.hpp"
#include "selfsim/params.hpp"
#include "selfsim/quadrature.hpp"
#include "selfsim/series.hpp"
#include "selfsim/spectral.hpp"
#include "selfsim/statics.hpp"

namespace selfsim {

/// Library version, e.g. "0.1.0".
const char* version() noexcept;

}  // namespace selfsim
