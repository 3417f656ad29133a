#include "epls/pipelines.hpp"

#include <cmath>
#include <stdexcept>

namespace epls {

namespace {

PlanarImage plane_view(const PlanarImage& img, int c)
{
    PlanarImage out(img.width(), img.height(), 1);
    std::copy(img.plane(c), img.plane(c) + img.plane_size(), out.plane(0));
    return out;
}

// [-1,1] gradients to [0,1] and back.
PlanarImage to_unit_range(const PlanarImage& grad)
{
    PlanarImage out = grad;
    for (double& v : out.data()) v = (v + 1.0) * 0.5;
    return out;
}

void from_unit_range_into(const PlanarImage& filtered, PlanarImage& dst, int c)
{
    const double* src = filtered.plane(0);
    double* out = dst.plane(c);
    for (std::size_t i = 0; i < dst.plane_size(); ++i)
        out[i] = 2.0 * src[i] - 1.0;
}

GradientField filter_gradients(const GradientField& grads, const GradientField& guide_grads,
                               const SmootherSpec& spec)
{
    const PlanarImage& any = grads.gx;
    GradientField target{PlanarImage(any.width(), any.height(), any.channels()),
                         PlanarImage(any.width(), any.height(), any.channels())};
    for (int axis = 0; axis < 2; ++axis) {
        const PlanarImage& src = axis == 0 ? grads.gx : grads.gy;
        const PlanarImage& gd = axis == 0 ? guide_grads.gx : guide_grads.gy;
        PlanarImage& dst = axis == 0 ? target.gx : target.gy;
        for (int c = 0; c < any.channels(); ++c) {
            const PlanarImage src01 = to_unit_range(plane_view(src, c));
            const PlanarImage guide01 = to_unit_range(plane_view(gd, c));
            PlanarImage filtered = spec.kind == SmootherKind::BLF_LS
                                       ? blf_grid(src01, guide01, spec.blf)
                                       : nc_filter(src01, guide01, spec.dt);
            from_unit_range_into(filtered, dst, c);
        }
    }
    return target;
}

} // namespace

PlanarImage smooth(const PlanarImage& g, const SmootherSpec& spec)
{
    require_finite(g, "smooth");
    if (spec.guidance && (spec.guidance->width() != g.width() || spec.guidance->height() != g.height() ||
                          spec.guidance->channels() != g.channels()))
        throw std::invalid_argument("smooth: guidance image shape does not match input");

    auto [gn, rec] = normalize_to_unit(g);

    switch (spec.kind) {
    case SmootherKind::LS:
        return denormalize(ls_solve_fft(gn, spec.solve), rec);
    case SmootherKind::WLS:
        return denormalize(wls_solve(gn, spec.wls), rec);
    case SmootherKind::BLF_LS:
    case SmootherKind::NC_LS:
        break;
    }

    const int pad = spec.solve.pad;
    const PlanarImage gp = reflect_pad(gn, pad);
    const GradientField grads = forward_gradients(gp);

    GradientField target;
    if (spec.guidance) {
        const PlanarImage guide_n = normalize_to_unit(*spec.guidance).first;
        const GradientField guide_grads = forward_gradients(reflect_pad(guide_n, pad));
        target = filter_gradients(grads, guide_grads, spec);
    } else {
        target = filter_gradients(grads, grads, spec);
    }

    // Gradients were produced on the padded grid, so the solve runs unpadded
    // and the crop happens once, here.
    const SolveParams inner{spec.solve.lambda, 0};
    PlanarImage u = crop_border(lsgrad_solve_fft(gp, target, inner), pad);
    return denormalize(u, rec);
}

PlanarImage rolling_nc_ls(const PlanarImage& g, const DtParams& dt, const SolveParams& sp,
                          const RollingParams& rp)
{
    if (rp.n < 1)
        throw std::invalid_argument("rolling_nc_ls: n must be >= 1");
    if (!(rp.init_sigma > 0.0))
        throw std::invalid_argument("rolling_nc_ls: init_sigma must be positive");

    SmootherSpec spec;
    spec.kind = SmootherKind::NC_LS;
    spec.dt = dt;
    spec.solve = sp;

    PlanarImage guide = gaussian_blur(g, rp.init_sigma);
    PlanarImage u;
    for (int k = 0; k < rp.n; ++k) {
        spec.guidance = &guide;
        u = smooth(g, spec);
        guide = u;
    }
    return u;
}

} // namespace epls
