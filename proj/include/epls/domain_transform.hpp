#pragma once

#include "epls/image.hpp"

namespace epls {

/// Domain-transform filter parameters (normalized-convolution variant).
struct DtParams {
    double sigma_s = 8.0;
    double sigma_r = 0.1;
    int iterations = 3;
};

/// Edge-aware smoothing by normalized convolution over the domain transform:
/// per scanline, coordinates are warped by the accumulated guide gradient
/// magnitude and the signal is box-averaged over a window in the warped
/// domain, alternating horizontal and vertical passes. The per-pass box
/// radius shrinks so the iterated result matches a Gaussian of sigma_s in
/// the smooth-region limit.
PlanarImage nc_filter(const PlanarImage& src, const PlanarImage& guide, const DtParams& p);

/// Box radius of pass `iter` (1-based) out of `total` for a target sigma.
double nc_box_radius(double sigma_s, int iter, int total);

} // namespace epls
