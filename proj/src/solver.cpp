#include "epls/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft2d.hpp"

namespace epls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_solve_params(const SolveParams& p)
{
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda))
        throw std::invalid_argument("solver: lambda must be finite and >= 0");
    if (p.pad < 0)
        throw std::invalid_argument("solver: pad must be >= 0");
}

// |exp(-i*theta) - 1|^2 = 4 sin^2(theta/2), exact and non-negative.
inline double diff_gain_sq(int k, int n)
{
    const double s = std::sin(std::numbers::pi * k / n);
    return 4.0 * s * s;
}

} // namespace

std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
difference_otf(int height, int width)
{
    if (height < 2 || width < 2)
        throw std::invalid_argument("difference_otf: grid must be at least 2x2");
    std::vector<std::complex<double>> ox(static_cast<std::size_t>(height) * width);
    std::vector<std::complex<double>> oy(static_cast<std::size_t>(height) * width);
    for (int u = 0; u < height; ++u) {
        const double ay = -kTwoPi * u / height;
        const std::complex<double> ey(std::cos(ay) - 1.0, std::sin(ay));
        for (int v = 0; v < width; ++v) {
            const double ax = -kTwoPi * v / width;
            ox[static_cast<std::size_t>(u) * width + v] = {std::cos(ax) - 1.0, std::sin(ax)};
            oy[static_cast<std::size_t>(u) * width + v] = ey;
        }
    }
    return {std::move(ox), std::move(oy)};
}

PlanarImage spectral_denominator(int height, int width, double lambda)
{
    if (height < 2 || width < 2)
        throw std::invalid_argument("spectral_denominator: grid must be at least 2x2");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("spectral_denominator: lambda must be finite and >= 0");
    PlanarImage d(width, height, 1);
    double* out = d.plane(0);
    for (int u = 0; u < height; ++u) {
        const double gy = diff_gain_sq(u, height);
        for (int v = 0; v < width; ++v)
            out[static_cast<std::size_t>(u) * width + v] = 1.0 + lambda * (gy + diff_gain_sq(v, width));
    }
    return d;
}

PlanarImage ls_solve_fft(const PlanarImage& g, const SolveParams& p)
{
    validate_solve_params(p);
    require_finite(g, "ls_solve_fft");
    const PlanarImage gp = reflect_pad(g, p.pad);
    const int h = gp.height(), w = gp.width(), wc = w / 2 + 1;

    PlanarImage up(w, h, gp.channels());
    for (int c = 0; c < gp.channels(); ++c) {
        auto spec = detail::rfft2(gp.plane(c), h, w);
#pragma omp parallel for schedule(static)
        for (int u = 0; u < h; ++u) {
            const double gy = diff_gain_sq(u, h);
            for (int v = 0; v < wc; ++v)
                spec[static_cast<std::size_t>(u) * wc + v] /= 1.0 + p.lambda * (gy + diff_gain_sq(v, w));
        }
        detail::irfft2(spec, h, w, up.plane(c));
    }
    return crop_border(up, p.pad);
}

PlanarImage lsgrad_solve_fft(const PlanarImage& g, const GradientField& target, const SolveParams& p)
{
    validate_solve_params(p);
    require_finite(g, "lsgrad_solve_fft");
    if (!g.same_shape(target.gx) || !g.same_shape(target.gy))
        throw std::invalid_argument("lsgrad_solve_fft: target shape does not match image");
    require_finite(target.gx, "lsgrad_solve_fft");
    require_finite(target.gy, "lsgrad_solve_fft");

    const PlanarImage gp = reflect_pad(g, p.pad);
    const PlanarImage tx = reflect_pad(target.gx, p.pad);
    const PlanarImage ty = reflect_pad(target.gy, p.pad);
    const int h = gp.height(), w = gp.width(), wc = w / 2 + 1;

    PlanarImage up(w, h, gp.channels());
    for (int c = 0; c < gp.channels(); ++c) {
        auto spec = detail::rfft2(gp.plane(c), h, w);
        const auto sx = detail::rfft2(tx.plane(c), h, w);
        const auto sy = detail::rfft2(ty.plane(c), h, w);
#pragma omp parallel for schedule(static)
        for (int u = 0; u < h; ++u) {
            const double ay = -kTwoPi * u / h;
            // Adjoint transfer functions of the forward differences.
            const std::complex<double> oy(std::cos(ay) - 1.0, std::sin(ay));
            const double gy = diff_gain_sq(u, h);
            for (int v = 0; v < wc; ++v) {
                const double ax = -kTwoPi * v / w;
                const std::complex<double> ox(std::cos(ax) - 1.0, std::sin(ax));
                const std::size_t i = static_cast<std::size_t>(u) * wc + v;
                const double den = 1.0 + p.lambda * (gy + diff_gain_sq(v, w));
                spec[i] = (spec[i] + p.lambda * (ox * sx[i] + oy * sy[i])) / den;
            }
        }
        detail::irfft2(spec, h, w, up.plane(c));
    }
    return crop_border(up, p.pad);
}

} // namespace epls
