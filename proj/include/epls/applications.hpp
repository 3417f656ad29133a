#pragma once

#include "epls/pipelines.hpp"

namespace epls {

/// Detail enhancement: out = base + boost * (input - base), clamped to [0,1]
/// at the very end. boost is the total detail multiplier, so boost = 1 is
/// the identity and boost = 5 gives a 5x-boosted detail layer.
struct EnhanceParams {
    double boost = 5.0;
    SmootherSpec smoother{SmootherKind::BLF_LS, {6.0, 0.02}};
};

/// Base/detail tone mapping on log10 luminance. target_contrast is the log10
/// dynamic range of the compressed base; saturation is the color-ratio
/// exponent.
struct TonemapParams {
    double target_contrast = 1.0;
    double saturation = 0.6;
    SmootherSpec smoother{SmootherKind::BLF_LS, {8.0, 0.03}};
};

PlanarImage detail_enhance(const PlanarImage& g, const EnhanceParams& p);

PlanarImage tonemap_hdr(const PlanarImage& hdr, const TonemapParams& p);

/// Smooths a noisy no-flash image with the flash image as gradient guidance.
PlanarImage flash_no_flash(const PlanarImage& noflash, const PlanarImage& flash, SmootherSpec spec);

PlanarImage texture_removal(const PlanarImage& g, const DtParams& dt = {8.0, 0.02, 3},
                            const RollingParams& rp = {3, 2.5}, const SolveParams& sp = {});

PlanarImage clipart_cleanup(const PlanarImage& g, const DtParams& dt = {6.0, 0.02, 3},
                            const RollingParams& rp = {2, 0.75}, const SolveParams& sp = {});

} // namespace epls
