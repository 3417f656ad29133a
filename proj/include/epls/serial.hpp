#pragma once

#include "epls/bilateral.hpp"
#include "epls/domain_transform.hpp"
#include "epls/image.hpp"

namespace epls::serial {

// Single-threaded reference kernels, written as literal transcriptions of
// the filter definitions. They stay deliberately naive (no kernel tables, no
// sliding windows) so the parallel kernels can be checked against an
// independent evaluation path; the kernel benchmark also times them.

PlanarImage gaussian_blur(const PlanarImage& img, double sigma);

PlanarImage blf_brute(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p);

PlanarImage nc_filter(const PlanarImage& src, const PlanarImage& guide, const DtParams& p);

} // namespace epls::serial
