#pragma once

#include <cstdint>

#include "epls/image.hpp"

namespace epls::testimage {

// Deterministic procedural scenes used by the tests and the benchmark
// metrics. Everything is generated from a fixed-seed xorshift stream, so the
// content is identical across platforms and runs.

/// Piecewise-smooth scene: soft-edged flat regions over a low-frequency
/// illumination ramp, plus fine sinusoidal texture and a little noise.
PlanarImage natural_scene(int width, int height, int channels, std::uint64_t seed = 7);

/// Vertical step (0.3 -> 0.7 at the midline) carrying a horizontal sinusoid
/// of the given period and amplitude.
PlanarImage step_texture_scene(int width, int height, double period = 6.0, double amplitude = 0.1);

/// Two-tone shapes with ringing of the given amplitude within `ring_width`
/// pixels of every edge, imitating compression artifacts around clip-art
/// edges.
PlanarImage clipart_scene(int width, int height, double ring_amplitude = 0.05, int ring_width = 3);

/// Uniform random samples in [lo, hi], reproducible across platforms.
PlanarImage random_image(int width, int height, int channels, std::uint64_t seed,
                         double lo = 0.0, double hi = 1.0);

} // namespace epls::testimage
