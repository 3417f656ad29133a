#pragma once

#include "epls/image.hpp"

namespace epls {

double mse(const PlanarImage& a, const PlanarImage& b);

/// Peak signal-to-noise ratio in dB against the given peak (1.0 for [0,1] images).
double psnr(const PlanarImage& a, const PlanarImage& b, double peak = 1.0);

/// Largest |forward difference| over both axes, all channels.
double max_abs_gradient(const PlanarImage& img);

/// max|grad smoothed| / max|grad input|; <= 1 means no gradient was amplified.
double max_grad_ratio(const PlanarImage& smoothed, const PlanarImage& input);

/// Number of (pixel, channel) sites where the input carries a gradient above
/// tau on some axis and the enhanced image's gradient on that axis points
/// the opposite way.
long long gradient_reversal_count(const PlanarImage& input, const PlanarImage& enhanced,
                                  double tau = 0.03);

} // namespace epls
