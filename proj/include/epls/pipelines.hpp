#pragma once

#include "epls/bilateral.hpp"
#include "epls/domain_transform.hpp"
#include "epls/image.hpp"
#include "epls/solver.hpp"

namespace epls {

enum class SmootherKind { LS, WLS, BLF_LS, NC_LS };

/// Full configuration of one smoothing run. `guidance` is a non-owning
/// pointer to an image of the same shape as the input; when set, the
/// gradient filters take their range weights from its gradients instead of
/// the input's (joint filtering).
struct SmootherSpec {
    SmootherKind kind = SmootherKind::BLF_LS;
    RangeSpatialParams blf{12.0, 0.04};
    DtParams dt{12.0, 0.05, 3};
    SolveParams solve{};
    WlsParams wls{};
    const PlanarImage* guidance = nullptr;
};

struct RollingParams {
    int n = 3;
    double init_sigma = 2.5;
};

/// Edge-preserving smoothing. LS/WLS act on intensities directly. BLF_LS and
/// NC_LS smooth the per-axis, per-channel forward-difference gradients with
/// the chosen filter (gradients remapped to [0,1] first so sigma_r keeps its
/// usual scale) and reconstruct the image from the filtered gradients by the
/// closed-form Fourier solve. Input is normalized to [0,1] and reflect-padded
/// up front; the result is cropped and mapped back at the very end.
PlanarImage smooth(const PlanarImage& g, const SmootherSpec& spec);

/// Iterated joint NC_LS smoothing of the original input, guided first by a
/// Gaussian-blurred copy and then by the previous round's output.
PlanarImage rolling_nc_ls(const PlanarImage& g, const DtParams& dt, const SolveParams& sp,
                          const RollingParams& rp);

} // namespace epls
