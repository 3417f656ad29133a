#include "epls/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace epls {

PlanarImage::PlanarImage(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels)
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("PlanarImage: width and height must be positive");
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("PlanarImage: channels must be 1 or 3");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

void require_finite(const PlanarImage& img, const char* what)
{
    for (double v : img.data()) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite sample in input image");
    }
}

double min_value(const PlanarImage& img)
{
    return *std::min_element(img.data().begin(), img.data().end());
}

double max_value(const PlanarImage& img)
{
    return *std::max_element(img.data().begin(), img.data().end());
}

double mean_value(const PlanarImage& img)
{
    double sum = 0.0;
    for (double v : img.data()) sum += v;
    return sum / static_cast<double>(img.size());
}

std::pair<PlanarImage, NormalizationRecord> normalize_to_unit(const PlanarImage& img)
{
    require_finite(img, "normalize_to_unit");
    const double lo = min_value(img);
    const double hi = max_value(img);
    PlanarImage out = img;
    if (hi <= lo) {
        // Constant image: map to zeros, keep denormalize exact.
        std::fill(out.data().begin(), out.data().end(), 0.0);
        return {std::move(out), NormalizationRecord{lo, lo + 1.0}};
    }
    const double scale = 1.0 / (hi - lo);
    for (double& v : out.data()) v = (v - lo) * scale;
    return {std::move(out), NormalizationRecord{lo, hi}};
}

PlanarImage denormalize(const PlanarImage& img, const NormalizationRecord& rec)
{
    if (!(rec.hi > rec.lo))
        throw std::invalid_argument("denormalize: record requires hi > lo");
    PlanarImage out = img;
    const double range = rec.hi - rec.lo;
    for (double& v : out.data()) v = rec.lo + v * range;
    return out;
}

GradientField forward_gradients(const PlanarImage& img)
{
    const int w = img.width(), h = img.height(), ch = img.channels();
    GradientField g{PlanarImage(w, h, ch), PlanarImage(w, h, ch)};
    for (int c = 0; c < ch; ++c) {
        const double* src = img.plane(c);
        double* gx = g.gx.plane(c);
        double* gy = g.gy.plane(c);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            const int yn = (y + 1 == h) ? 0 : y + 1;
            const double* row = src + static_cast<std::size_t>(y) * w;
            const double* rown = src + static_cast<std::size_t>(yn) * w;
            double* gxr = gx + static_cast<std::size_t>(y) * w;
            double* gyr = gy + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const int xn = (x + 1 == w) ? 0 : x + 1;
                gxr[x] = row[xn] - row[x];
                gyr[x] = rown[x] - row[x];
            }
        }
    }
    return g;
}

namespace {

std::vector<double> gaussian_kernel(double sigma)
{
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

} // namespace

PlanarImage gaussian_blur(const PlanarImage& img, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian_blur: sigma must be positive and finite");
    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    const int w = img.width(), h = img.height(), ch = img.channels();

    PlanarImage tmp(w, h, ch);
    for (int c = 0; c < ch; ++c) {
        const double* src = img.plane(c);
        double* dst = tmp.plane(c);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            const double* row = src + static_cast<std::size_t>(y) * w;
            double* out = dst + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int xi = std::clamp(x + i, 0, w - 1);
                    acc += k[i + radius] * row[xi];
                }
                out[x] = acc;
            }
        }
    }

    PlanarImage out(w, h, ch);
    for (int c = 0; c < ch; ++c) {
        const double* src = tmp.plane(c);
        double* dst = out.plane(c);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            double* outrow = dst + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int yi = std::clamp(y + i, 0, h - 1);
                    acc += k[i + radius] * src[static_cast<std::size_t>(yi) * w + x];
                }
                outrow[x] = acc;
            }
        }
    }
    return out;
}

PlanarImage luminance(const PlanarImage& img)
{
    if (img.channels() == 1) return img;
    const int w = img.width(), h = img.height();
    PlanarImage lum(w, h, 1);
    const double* r = img.plane(0);
    const double* g = img.plane(1);
    const double* b = img.plane(2);
    double* out = lum.plane(0);
    const std::size_t n = lum.plane_size();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[i] = 0.2126 * r[i] + 0.7152 * g[i] + 0.0722 * b[i];
    return lum;
}

std::pair<PlanarImage, PlanarImage> to_log_luminance(const PlanarImage& img)
{
    PlanarImage lum = luminance(img);
    PlanarImage loglum = lum;
    for (double& v : loglum.data()) v = std::log10(v + 1e-6);
    return {std::move(loglum), std::move(lum)};
}

int reflect_index(int q, int n)
{
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    q = std::abs(q) % period;
    return q < n ? q : period - q;
}

PlanarImage reflect_pad(const PlanarImage& img, int pad)
{
    if (pad < 0) throw std::invalid_argument("reflect_pad: pad must be non-negative");
    if (pad == 0) return img;
    const int w = img.width(), h = img.height(), ch = img.channels();
    PlanarImage out(w + 2 * pad, h + 2 * pad, ch);
    for (int c = 0; c < ch; ++c) {
        const double* src = img.plane(c);
        double* dst = out.plane(c);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h + 2 * pad; ++y) {
            const int sy = reflect_index(y - pad, h);
            const double* srow = src + static_cast<std::size_t>(sy) * w;
            double* drow = dst + static_cast<std::size_t>(y) * (w + 2 * pad);
            for (int x = 0; x < w + 2 * pad; ++x)
                drow[x] = srow[reflect_index(x - pad, w)];
        }
    }
    return out;
}

PlanarImage crop_border(const PlanarImage& img, int pad)
{
    if (pad == 0) return img;
    if (pad < 0 || img.width() <= 2 * pad || img.height() <= 2 * pad)
        throw std::invalid_argument("crop_border: pad too large for image");
    const int w = img.width() - 2 * pad, h = img.height() - 2 * pad;
    PlanarImage out(w, h, img.channels());
    for (int c = 0; c < img.channels(); ++c) {
        const double* src = img.plane(c);
        double* dst = out.plane(c);
        for (int y = 0; y < h; ++y) {
            const double* srow = src + static_cast<std::size_t>(y + pad) * img.width() + pad;
            std::copy(srow, srow + w, dst + static_cast<std::size_t>(y) * w);
        }
    }
    return out;
}

PlanarImage clamp01(const PlanarImage& img)
{
    PlanarImage out = img;
    for (double& v : out.data()) v = std::clamp(v, 0.0, 1.0);
    return out;
}

} // namespace epls
