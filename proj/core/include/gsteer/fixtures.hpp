#pragma once

#include "gsteer/comb.hpp"

namespace gsteer::fixtures {

/// Reference calibration: 8 Hermite-Gauss eigenmodes, orders 0-7,
/// -5 dB down to -0.3 dB, 1 dB excess anti-squeezing, 85% efficiency.
CombModel default_comb();

/// One eigenmode whose profile is constant on each coarse band.
CombModel single_eigenmode();

/// Band B entangled with an A/D pixel pattern invisible at 4 pixels.
CombModel one_way();

/// EPR pairs B<->C and A<->D on the coarse bands.
CombModel mirror_pairs();

/// One flat eigenmode squeezed with 2r: the {A,B}|{C,D} split steers with
/// ln cosh 2r in both directions.
CombModel tmsv_like(double r);

CovarianceMatrix two_mode_squeezed_vacuum(double r);

}  // namespace gsteer::fixtures
