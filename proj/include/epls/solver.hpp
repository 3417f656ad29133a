#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "epls/image.hpp"

namespace epls {

/// Regularization weight and reflect-pad width for the Fourier-domain solves.
struct SolveParams {
    double lambda = 1024.0;
    int pad = 16;
};

/// Weighted-least-squares baseline parameters.
struct WlsParams {
    double lambda = 0.8;
    double alpha = 1.2;
    double eps = 1e-4;
};

/// Transfer functions of the circular forward-difference kernels [-1,+1]
/// embedded at the origin of an h x w grid:
///   otf_x(u,v) = exp(-2*pi*i*v/w) - 1,  otf_y(u,v) = exp(-2*pi*i*u/h) - 1.
/// Returned row-major as (otf_x, otf_y).
std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
difference_otf(int height, int width);

/// F(1) + lambda*(|otf_x|^2 + |otf_y|^2), real-valued, every entry >= 1.
PlanarImage spectral_denominator(int height, int width, double lambda);

/// Minimizer of sum (u-g)^2 + lambda*|grad u|^2 on the (padded) periodic
/// grid, solved per channel by pointwise spectral division. lambda = 0
/// returns g.
PlanarImage ls_solve_fft(const PlanarImage& g, const SolveParams& p);

/// Minimizer of sum (u-g)^2 + lambda*sum_axis (grad_axis u - target_axis)^2.
/// Targets are padded as plain rasters when p.pad > 0; callers that need the
/// targets consistent with the padded image (the smoothing pipelines) pad
/// upstream and pass pad = 0.
PlanarImage lsgrad_solve_fft(const PlanarImage& g, const GradientField& target, const SolveParams& p);

/// WLS smoothing: (I + lambda*L_g) u = g with the five-point inhomogeneous
/// Laplacian weighted by (|grad log-luminance|^alpha + eps)^-1, solved by
/// sparse direct factorization shared across channels.
PlanarImage wls_solve(const PlanarImage& g, const WlsParams& p);

/// Dense normal-equations ground truth for the two FFT solves. Assembles the
/// circular difference matrices explicitly; refuses images beyond 4096
/// pixels.
PlanarImage ls_solve_dense_oracle(const PlanarImage& g, double lambda);
PlanarImage ls_solve_dense_oracle(const PlanarImage& g, const GradientField& target, double lambda);

} // namespace epls
