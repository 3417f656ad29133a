#include "epls/bilateral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace epls {

namespace {

void validate_params(const RangeSpatialParams& p)
{
    if (!(p.sigma_s > 0.0) || !std::isfinite(p.sigma_s) || !(p.sigma_r > 0.0) || !std::isfinite(p.sigma_r))
        throw std::invalid_argument("bilateral: sigma_s and sigma_r must be positive and finite");
}

void validate_pair(const PlanarImage& src, const PlanarImage& guide)
{
    if (src.width() != guide.width() || src.height() != guide.height())
        throw std::invalid_argument("bilateral: src and guide dimensions differ");
    if (guide.channels() != 1 && guide.channels() != src.channels())
        throw std::invalid_argument("bilateral: guide channels must be 1 or match src");
}

} // namespace

PlanarImage blf_brute(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p)
{
    validate_params(p);
    validate_pair(src, guide);
    require_finite(src, "blf_brute");
    require_finite(guide, "blf_brute");

    const int w = src.width(), h = src.height();
    const int cs = src.channels(), cg = guide.channels();
    const int radius = static_cast<int>(std::ceil(3.0 * p.sigma_s));
    const double inv2ss = 1.0 / (2.0 * p.sigma_s * p.sigma_s);
    const double inv2sr = 1.0 / (2.0 * p.sigma_r * p.sigma_r);

    // Spatial weights depend only on the offset; tabulate once.
    const int kd = 2 * radius + 1;
    std::vector<double> spatial(static_cast<std::size_t>(kd) * kd);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            spatial[static_cast<std::size_t>(dy + radius) * kd + (dx + radius)] =
                std::exp(-(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy) * inv2ss);

    PlanarImage out(w, h, cs);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        std::vector<double> num(cs);
        for (int x = 0; x < w; ++x) {
            std::fill(num.begin(), num.end(), 0.0);
            double z = 0.0;
            const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            for (int ty = y0; ty <= y1; ++ty) {
                const double* srow = spatial.data() + static_cast<std::size_t>(ty - y + radius) * kd + radius - x;
                for (int tx = x0; tx <= x1; ++tx) {
                    double d2 = 0.0;
                    for (int c = 0; c < cg; ++c) {
                        const double d = guide.at(c, y, x) - guide.at(c, ty, tx);
                        d2 += d * d;
                    }
                    const double wgt = srow[tx] * std::exp(-d2 * inv2sr);
                    z += wgt;
                    for (int c = 0; c < cs; ++c)
                        num[c] += wgt * src.at(c, ty, tx);
                }
            }
            for (int c = 0; c < cs; ++c)
                out.at(c, y, x) = num[c] / z;
        }
    }
    return out;
}

namespace {

// 1-D Gaussian blur of the grid along one axis, kernel radius 2, sigma 1 cell.
void grid_blur_axis(std::vector<double>& grid, int n0, int n1, int n2,
                    std::size_t s0, std::size_t s1, std::size_t s2)
{
    static const double raw[5] = {std::exp(-2.0), std::exp(-0.5), 1.0, std::exp(-0.5), std::exp(-2.0)};
    double ksum = 0.0;
    for (double v : raw) ksum += v;
    double k[5];
    for (int i = 0; i < 5; ++i) k[i] = raw[i] / ksum;

    std::vector<double> blurred(grid.size());
#pragma omp parallel for schedule(static)
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i0 = 0; i0 < n0; ++i0) {
            const std::size_t base = s0 * i0 + s1 * i1;
            for (int i2 = 0; i2 < n2; ++i2) {
                double acc = 0.0;
                for (int t = -2; t <= 2; ++t) {
                    const int j = i0 + t;
                    if (j >= 0 && j < n0)
                        acc += k[t + 2] * grid[s0 * j + s1 * i1 + s2 * i2];
                }
                blurred[base + s2 * i2] = acc;
            }
        }
    }
    grid.swap(blurred);
}

} // namespace

PlanarImage blf_grid(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p,
                     const GridParams& gp)
{
    validate_params(p);
    validate_pair(src, guide);
    if (guide.channels() != 1)
        throw std::invalid_argument("blf_grid: guide must be single-channel (pass luminance or filter per channel)");
    require_finite(src, "blf_grid");
    require_finite(guide, "blf_grid");

    const double ss = gp.spatial_sampling > 0.0 ? gp.spatial_sampling : p.sigma_s;
    const double sr = gp.range_sampling > 0.0 ? gp.range_sampling : p.sigma_r;
    if (!std::isfinite(ss) || !std::isfinite(sr))
        throw std::invalid_argument("blf_grid: invalid grid sampling");

    const int w = src.width(), h = src.height(), cs = src.channels();
    const double* edge = guide.plane(0);
    const double emin = min_value(guide);
    const double emax = max_value(guide);

    const int kpad = 2; // blur kernel radius
    const int gw = static_cast<int>(std::floor((w - 1) / ss)) + 1 + 2 * kpad;
    const int gh = static_cast<int>(std::floor((h - 1) / ss)) + 1 + 2 * kpad;
    const int gd = static_cast<int>(std::floor((emax - emin) / sr)) + 1 + 2 * kpad;

    const std::size_t cells = static_cast<std::size_t>(gw) * gh * gd;
    std::vector<double> wgrid(cells, 0.0);
    std::vector<std::vector<double>> vgrid(cs, std::vector<double>(cells, 0.0));
    const std::size_t sy = static_cast<std::size_t>(gw) * gd, sx = gd, sz = 1;

    // Image rows map monotonically onto grid rows, so grid rows can be
    // splatted in parallel: each owns a contiguous band of image rows and
    // accumulates them in row-major order, which keeps the result
    // independent of the thread count.
    std::vector<int> row_lo(gh, h), row_hi(gh, 0);
    for (int y = 0; y < h; ++y) {
        const int gy = static_cast<int>(std::lround(y / ss)) + kpad;
        row_lo[gy] = std::min(row_lo[gy], y);
        row_hi[gy] = std::max(row_hi[gy], y + 1);
    }
#pragma omp parallel for schedule(static)
    for (int gy = 0; gy < gh; ++gy) {
        for (int y = row_lo[gy]; y < row_hi[gy]; ++y) {
            for (int x = 0; x < w; ++x) {
                const int gx = static_cast<int>(std::lround(x / ss)) + kpad;
                const int gz = static_cast<int>(std::lround((edge[static_cast<std::size_t>(y) * w + x] - emin) / sr)) + kpad;
                const std::size_t cell = sy * gy + sx * gx + sz * gz;
                wgrid[cell] += 1.0;
                for (int c = 0; c < cs; ++c)
                    vgrid[c][cell] += src.at(c, y, x);
            }
        }
    }

    grid_blur_axis(wgrid, gh, gw, gd, sy, sx, sz); // y
    grid_blur_axis(wgrid, gw, gh, gd, sx, sy, sz); // x
    grid_blur_axis(wgrid, gd, gh, gw, sz, sy, sx); // range
    for (int c = 0; c < cs; ++c) {
        grid_blur_axis(vgrid[c], gh, gw, gd, sy, sx, sz);
        grid_blur_axis(vgrid[c], gw, gh, gd, sx, sy, sz);
        grid_blur_axis(vgrid[c], gd, gh, gw, sz, sy, sx);
    }

    PlanarImage out(w, h, cs);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double fy = y / ss + kpad;
            const double fx = x / ss + kpad;
            const double fz = (edge[static_cast<std::size_t>(y) * w + x] - emin) / sr + kpad;
            const int iy = std::min(static_cast<int>(fy), gh - 2);
            const int ix = std::min(static_cast<int>(fx), gw - 2);
            const int iz = std::min(static_cast<int>(fz), gd - 2);
            const double ay = fy - iy, ax = fx - ix, az = fz - iz;

            double cw[8];
            std::size_t ci[8];
            int n = 0;
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx)
                    for (int dz = 0; dz < 2; ++dz) {
                        cw[n] = (dy ? ay : 1.0 - ay) * (dx ? ax : 1.0 - ax) * (dz ? az : 1.0 - az);
                        ci[n] = sy * (iy + dy) + sx * (ix + dx) + sz * (iz + dz);
                        ++n;
                    }
            double wsum = 0.0;
            for (int i = 0; i < 8; ++i) wsum += cw[i] * wgrid[ci[i]];
            for (int c = 0; c < cs; ++c) {
                double vsum = 0.0;
                for (int i = 0; i < 8; ++i) vsum += cw[i] * vgrid[c][ci[i]];
                out.at(c, y, x) = wsum > 1e-12 ? vsum / wsum : src.at(c, y, x);
            }
        }
    }
    return out;
}

} // namespace epls
