#include "epls/domain_transform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace epls {

double nc_box_radius(double sigma_s, int iter, int total)
{
    // Per-pass Gaussian bandwidth; the box of radius sqrt(3)*sigma_i has the
    // same variance, and the bandwidths sum so that all passes together
    // realize sigma_s.
    const double sigma_i = sigma_s * std::sqrt(3.0) * std::pow(2.0, total - iter)
                         / std::sqrt(std::pow(4.0, total) - 1.0);
    return std::sqrt(3.0) * sigma_i;
}

namespace {

void validate(const PlanarImage& src, const PlanarImage& guide, const DtParams& p)
{
    if (src.width() != guide.width() || src.height() != guide.height())
        throw std::invalid_argument("nc_filter: src and guide dimensions differ");
    if (!(p.sigma_s > 0.0) || !(p.sigma_r > 0.0) || !std::isfinite(p.sigma_s) || !std::isfinite(p.sigma_r))
        throw std::invalid_argument("nc_filter: sigma_s and sigma_r must be positive and finite");
    if (p.iterations < 1)
        throw std::invalid_argument("nc_filter: iterations must be >= 1");
}

// Warped coordinates along each row: ct(x) = sum_{k<=x} 1 + (ss/sr)*sum_c |g_c(k)-g_c(k-1)|.
std::vector<double> transform_rows(const PlanarImage& guide, double ratio)
{
    const int w = guide.width(), h = guide.height(), ch = guide.channels();
    std::vector<double> ct(static_cast<std::size_t>(w) * h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        double* row = ct.data() + static_cast<std::size_t>(y) * w;
        double acc = 1.0;
        row[0] = acc;
        for (int x = 1; x < w; ++x) {
            double d = 0.0;
            for (int c = 0; c < ch; ++c)
                d += std::abs(guide.at(c, y, x) - guide.at(c, y, x - 1));
            acc += 1.0 + ratio * d;
            row[x] = acc;
        }
    }
    return ct;
}

std::vector<double> transform_cols(const PlanarImage& guide, double ratio)
{
    const int w = guide.width(), h = guide.height(), ch = guide.channels();
    std::vector<double> ct(static_cast<std::size_t>(w) * h);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < w; ++x) {
        double acc = 1.0;
        ct[x] = acc;
        for (int y = 1; y < h; ++y) {
            double d = 0.0;
            for (int c = 0; c < ch; ++c)
                d += std::abs(guide.at(c, y, x) - guide.at(c, y - 1, x));
            acc += 1.0 + ratio * d;
            ct[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return ct;
}

// Normalized box filter over the warped coordinates of one scanline, sliding
// window via prefix sums. Both window bounds advance monotonically because
// ct is strictly increasing.
void box_pass_rows(PlanarImage& img, const std::vector<double>& ct, double radius)
{
    const int w = img.width(), h = img.height(), ch = img.channels();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const double* t = ct.data() + static_cast<std::size_t>(y) * w;
        std::vector<double> prefix(static_cast<std::size_t>(ch) * (w + 1));
        for (int c = 0; c < ch; ++c) {
            double* pc = prefix.data() + static_cast<std::size_t>(c) * (w + 1);
            pc[0] = 0.0;
            for (int x = 0; x < w; ++x)
                pc[x + 1] = pc[x] + img.at(c, y, x);
        }
        int lo = 0, hi = 0;
        for (int x = 0; x < w; ++x) {
            while (t[lo] < t[x] - radius) ++lo;
            if (hi < x) hi = x;
            while (hi + 1 < w && t[hi + 1] <= t[x] + radius) ++hi;
            const double inv = 1.0 / (hi - lo + 1);
            for (int c = 0; c < ch; ++c) {
                const double* pc = prefix.data() + static_cast<std::size_t>(c) * (w + 1);
                img.at(c, y, x) = (pc[hi + 1] - pc[lo]) * inv;
            }
        }
    }
}

void box_pass_cols(PlanarImage& img, const std::vector<double>& ct, double radius)
{
    const int w = img.width(), h = img.height(), ch = img.channels();
#pragma omp parallel for schedule(static)
    for (int x = 0; x < w; ++x) {
        std::vector<double> prefix(static_cast<std::size_t>(ch) * (h + 1));
        for (int c = 0; c < ch; ++c) {
            double* pc = prefix.data() + static_cast<std::size_t>(c) * (h + 1);
            pc[0] = 0.0;
            for (int y = 0; y < h; ++y)
                pc[y + 1] = pc[y] + img.at(c, y, x);
        }
        int lo = 0, hi = 0;
        for (int y = 0; y < h; ++y) {
            const double tc = ct[static_cast<std::size_t>(y) * w + x];
            while (ct[static_cast<std::size_t>(lo) * w + x] < tc - radius) ++lo;
            if (hi < y) hi = y;
            while (hi + 1 < h && ct[static_cast<std::size_t>(hi + 1) * w + x] <= tc + radius) ++hi;
            const double inv = 1.0 / (hi - lo + 1);
            for (int c = 0; c < ch; ++c) {
                const double* pc = prefix.data() + static_cast<std::size_t>(c) * (h + 1);
                img.at(c, y, x) = (pc[hi + 1] - pc[lo]) * inv;
            }
        }
    }
}

} // namespace

PlanarImage nc_filter(const PlanarImage& src, const PlanarImage& guide, const DtParams& p)
{
    validate(src, guide, p);
    require_finite(src, "nc_filter");
    require_finite(guide, "nc_filter");

    const double ratio = p.sigma_s / p.sigma_r;
    const std::vector<double> ct_h = transform_rows(guide, ratio);
    const std::vector<double> ct_v = transform_cols(guide, ratio);

    PlanarImage out = src;
    for (int it = 1; it <= p.iterations; ++it) {
        const double radius = nc_box_radius(p.sigma_s, it, p.iterations);
        box_pass_rows(out, ct_h, radius);
        box_pass_cols(out, ct_v, radius);
    }
    return out;
}

} // namespace epls
