#include "epls/serial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace epls::serial {

PlanarImage gaussian_blur(const PlanarImage& img, double sigma)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("serial::gaussian_blur: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;

    const int w = img.width(), h = img.height(), ch = img.channels();
    PlanarImage tmp(w, h, ch), out(w, h, ch);
    for (int c = 0; c < ch; ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i)
                    acc += k[i + radius] * img.at(c, y, std::clamp(x + i, 0, w - 1));
                tmp.at(c, y, x) = acc;
            }
    for (int c = 0; c < ch; ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i)
                    acc += k[i + radius] * tmp.at(c, std::clamp(y + i, 0, h - 1), x);
                out.at(c, y, x) = acc;
            }
    return out;
}

PlanarImage blf_brute(const PlanarImage& src, const PlanarImage& guide, const RangeSpatialParams& p)
{
    if (src.width() != guide.width() || src.height() != guide.height())
        throw std::invalid_argument("serial::blf_brute: src and guide dimensions differ");
    const int w = src.width(), h = src.height();
    const int cs = src.channels(), cg = guide.channels();
    const int radius = static_cast<int>(std::ceil(3.0 * p.sigma_s));

    PlanarImage out(w, h, cs);
    std::vector<double> num(cs);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::fill(num.begin(), num.end(), 0.0);
            double z = 0.0;
            for (int ty = std::max(0, y - radius); ty <= std::min(h - 1, y + radius); ++ty)
                for (int tx = std::max(0, x - radius); tx <= std::min(w - 1, x + radius); ++tx) {
                    const double ds2 = static_cast<double>(tx - x) * (tx - x)
                                     + static_cast<double>(ty - y) * (ty - y);
                    double dr2 = 0.0;
                    for (int c = 0; c < cg; ++c) {
                        const double d = guide.at(c, y, x) - guide.at(c, ty, tx);
                        dr2 += d * d;
                    }
                    const double wgt = std::exp(-ds2 / (2.0 * p.sigma_s * p.sigma_s))
                                     * std::exp(-dr2 / (2.0 * p.sigma_r * p.sigma_r));
                    z += wgt;
                    for (int c = 0; c < cs; ++c)
                        num[c] += wgt * src.at(c, ty, tx);
                }
            for (int c = 0; c < cs; ++c)
                out.at(c, y, x) = num[c] / z;
        }
    return out;
}

namespace {

std::vector<double> scanline_transform(const std::vector<double>& diffsum, double ratio)
{
    std::vector<double> ct(diffsum.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < diffsum.size(); ++i) {
        acc += 1.0 + ratio * diffsum[i];
        ct[i] = acc;
    }
    return ct;
}

// O(n^2) windowed mean in the warped domain, one scanline.
void scanline_box(std::vector<double>& vals, const std::vector<double>& ct, double radius)
{
    const std::size_t n = vals.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(ct[j] - ct[i]) <= radius) {
                acc += vals[j];
                ++cnt;
            }
        out[i] = acc / cnt;
    }
    vals.swap(out);
}

} // namespace

PlanarImage nc_filter(const PlanarImage& src, const PlanarImage& guide, const DtParams& p)
{
    if (src.width() != guide.width() || src.height() != guide.height())
        throw std::invalid_argument("serial::nc_filter: src and guide dimensions differ");
    const int w = src.width(), h = src.height(), cs = src.channels(), cg = guide.channels();
    const double ratio = p.sigma_s / p.sigma_r;

    PlanarImage out = src;
    for (int it = 1; it <= p.iterations; ++it) {
        const double radius = nc_box_radius(p.sigma_s, it, p.iterations);
        for (int y = 0; y < h; ++y) {
            std::vector<double> diffsum(w, 0.0);
            for (int x = 1; x < w; ++x)
                for (int c = 0; c < cg; ++c)
                    diffsum[x] += std::abs(guide.at(c, y, x) - guide.at(c, y, x - 1));
            const std::vector<double> ct = scanline_transform(diffsum, ratio);
            for (int c = 0; c < cs; ++c) {
                std::vector<double> vals(w);
                for (int x = 0; x < w; ++x) vals[x] = out.at(c, y, x);
                scanline_box(vals, ct, radius);
                for (int x = 0; x < w; ++x) out.at(c, y, x) = vals[x];
            }
        }
        for (int x = 0; x < w; ++x) {
            std::vector<double> diffsum(h, 0.0);
            for (int y = 1; y < h; ++y)
                for (int c = 0; c < cg; ++c)
                    diffsum[y] += std::abs(guide.at(c, y, x) - guide.at(c, y - 1, x));
            const std::vector<double> ct = scanline_transform(diffsum, ratio);
            for (int c = 0; c < cs; ++c) {
                std::vector<double> vals(h);
                for (int y = 0; y < h; ++y) vals[y] = out.at(c, y, x);
                scanline_box(vals, ct, radius);
                for (int y = 0; y < h; ++y) out.at(c, y, x) = vals[y];
            }
        }
    }
    return out;
}

} // namespace epls::serial
