#include "epls/applications.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epls {

PlanarImage detail_enhance(const PlanarImage& g, const EnhanceParams& p)
{
    if (!(p.boost >= 0.0) || !std::isfinite(p.boost))
        throw std::invalid_argument("detail_enhance: boost must be finite and >= 0");
    const PlanarImage base = smooth(g, p.smoother);
    PlanarImage out = g;
    // g + (boost-1)*(g-base) keeps boost = 1 an exact identity.
    const double extra = p.boost - 1.0;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] = g.data()[i] + extra * (g.data()[i] - base.data()[i]);
    return clamp01(out);
}

PlanarImage tonemap_hdr(const PlanarImage& hdr, const TonemapParams& p)
{
    if (hdr.channels() != 3)
        throw std::invalid_argument("tonemap_hdr: expected a 3-channel HDR image");
    if (!(p.target_contrast > 0.0) || !(p.saturation > 0.0) || p.saturation > 1.5)
        throw std::invalid_argument("tonemap_hdr: target_contrast must be positive, saturation in (0,1.5]");
    require_finite(hdr, "tonemap_hdr");
    if (min_value(hdr) < 0.0)
        throw std::invalid_argument("tonemap_hdr: HDR samples must be non-negative");

    const auto [loglum, lum] = to_log_luminance(hdr);
    const PlanarImage base = smooth(loglum, p.smoother);
    const double bmax = max_value(base);
    const double bmin = min_value(base);
    // Degenerate base range (constant luminance) keeps the scale at 1.
    const double s = (bmax - bmin) > 1e-9 ? p.target_contrast / (bmax - bmin) : 1.0;

    const int w = hdr.width(), h = hdr.height();
    PlanarImage out(w, h, 3);
    const double* ll = loglum.plane(0);
    const double* bb = base.plane(0);
    const double* lm = lum.plane(0);
    const std::size_t n = lum.plane_size();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const double detail = ll[i] - bb[i];
        const double mapped = std::pow(10.0, s * (bb[i] - bmax) + detail);
        const double denom = std::max(lm[i], 1e-9);
        for (int c = 0; c < 3; ++c) {
            const double ratio = std::max(hdr.plane(c)[i] / denom, 0.0);
            out.plane(c)[i] = std::clamp(mapped * std::pow(ratio, p.saturation), 0.0, 1.0);
        }
    }
    return out;
}

PlanarImage flash_no_flash(const PlanarImage& noflash, const PlanarImage& flash, SmootherSpec spec)
{
    if (!noflash.same_shape(flash))
        throw std::invalid_argument("flash_no_flash: image pair shapes differ");
    spec.guidance = &flash;
    return smooth(noflash, spec);
}

PlanarImage texture_removal(const PlanarImage& g, const DtParams& dt, const RollingParams& rp,
                            const SolveParams& sp)
{
    return rolling_nc_ls(g, dt, sp, rp);
}

PlanarImage clipart_cleanup(const PlanarImage& g, const DtParams& dt, const RollingParams& rp,
                            const SolveParams& sp)
{
    return rolling_nc_ls(g, dt, sp, rp);
}

} // namespace epls
