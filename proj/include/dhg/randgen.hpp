#pragma once

#include <cstdint>

#include "dhg/holo.hpp"
#include "dhg/polygon.hpp"

namespace dhg {

// Seeded random immersion: i.i.d. uniform [-1,1]^4 affine values per vertex,
// resampled while any black triangle has two values closer than 1e-6.
Immersion random_immersion(const RegularTorus& torus, std::uint64_t seed,
                           bool complex_values = false);

DiscreteCurve random_polygon(long n, std::uint64_t seed,
                             bool complex_values = false);

// Regular planar n-gon on the unit circle in C.
DiscreteCurve regular_ngon(long n);

}  // namespace dhg
