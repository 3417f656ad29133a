#pragma once

#include "epls/image.hpp"

namespace epls {

/// Spatial / range Gaussian widths shared by all bilateral-family filters.
/// sigma_r is expressed in the intensity units of the guide, so [0,1]
/// inputs give it the usual meaning.
struct RangeSpatialParams {
    double sigma_s = 8.0;
    double sigma_r = 0.1;
};

/// Bilateral-grid cell sizes. The canonical choice samples the grid at the
/// filter bandwidths themselves.
struct GridParams {
    double spatial_sampling = 0.0; // <=0 means sigma_s
    double range_sampling = 0.0;   // <=0 means sigma_r
};

/// Exact joint bilateral filter: per-pixel weighted average over the square
/// window of radius ceil(3*sigma_s), Gaussian spatial and range weights, the
/// range distance taken as the Euclidean norm across guide channels.
/// guide == src gives the classic bilateral filter.
PlanarImage blf_brute(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p);

/// Grid-based fast approximation (splat / blur / slice). The guide must be
/// single channel. Accuracy is controlled by GridParams; defaults reproduce
/// the usual (sigma_s, sigma_r) sampling.
PlanarImage blf_grid(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p,
                     const GridParams& gp = {});

} // namespace epls
