#ifndef ADBR_ADBR_HPP
#define ADBR_ADBR_HPP

// Umbrella header for the adiabatic-DBR toolkit.

#include "adbr/analysis.hpp"
#include "adbr/bloch.hpp"
#include "adbr/common.hpp"
#include "adbr/coupled_mode.hpp"
#include "adbr/diagnostics.hpp"
#include "adbr/geometry.hpp"
#include "adbr/runner.hpp"
#include "adbr/serialization.hpp"
#include "adbr/tmm.hpp"

#endif  // ADBR_ADBR_HPP
