#include "epls/testimage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace epls::testimage {

namespace {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

constexpr double kPi = std::numbers::pi;

} // namespace

PlanarImage natural_scene(int width, int height, int channels, std::uint64_t seed)
{
    SplitMix64 rng(seed);

    // Low-frequency illumination, per channel.
    PlanarImage base(width, height, channels);
    for (int c = 0; c < channels; ++c) {
        const double fx = rng.uniform(0.5, 1.5), fy = rng.uniform(0.5, 1.5);
        const double px = rng.uniform(0.0, 2.0 * kPi), py = rng.uniform(0.0, 2.0 * kPi);
        const double level = rng.uniform(0.35, 0.65);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                base.at(c, y, x) = level + 0.15 * std::sin(2.0 * kPi * fx * x / width + px)
                                          + 0.12 * std::sin(2.0 * kPi * fy * y / height + py);
    }

    // Flat shapes with distinct albedos; soft edges come from a small blur.
    PlanarImage shapes(width, height, channels, 0.5);
    const int nshapes = 12;
    for (int s = 0; s < nshapes; ++s) {
        const double cx = rng.uniform(0.1, 0.9) * width;
        const double cy = rng.uniform(0.1, 0.9) * height;
        const double rx = rng.uniform(0.06, 0.22) * width;
        const double ry = rng.uniform(0.06, 0.22) * height;
        const bool rect = rng.uniform() < 0.4;
        double albedo[3];
        for (int c = 0; c < 3; ++c) albedo[c] = rng.uniform(0.12, 0.88);
        const int x0 = std::max(0, static_cast<int>(cx - rx)), x1 = std::min(width - 1, static_cast<int>(cx + rx));
        const int y0 = std::max(0, static_cast<int>(cy - ry)), y1 = std::min(height - 1, static_cast<int>(cy + ry));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double nx = (x - cx) / rx, ny = (y - cy) / ry;
                const bool inside = rect ? true : nx * nx + ny * ny <= 1.0;
                if (inside)
                    for (int c = 0; c < channels; ++c)
                        shapes.at(c, y, x) = albedo[std::min(c, 2)];
            }
    }
    shapes = gaussian_blur(shapes, 1.4);

    PlanarImage out(width, height, channels);
    for (int c = 0; c < channels; ++c) {
        const double tphase = rng.uniform(0.0, 2.0 * kPi);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const double texture = 0.035 * std::sin(2.0 * kPi * x / 7.3 + tphase)
                                             * std::sin(2.0 * kPi * y / 11.1 + 0.7 * tphase);
                const double noise = 0.008 * (rng.uniform() - 0.5);
                const double v = 0.45 * base.at(c, y, x) + 0.55 * shapes.at(c, y, x) + texture + noise;
                out.at(c, y, x) = std::clamp(v, 0.02, 0.98);
            }
    }
    return out;
}

PlanarImage step_texture_scene(int width, int height, double period, double amplitude)
{
    PlanarImage out(width, height, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double step = x < width / 2 ? 0.3 : 0.7;
            out.at(0, y, x) = step + amplitude * std::sin(2.0 * kPi * x / period);
        }
    return out;
}

PlanarImage clipart_scene(int width, int height, double ring_amplitude, int ring_width)
{
    PlanarImage out(width, height, 1);
    SplitMix64 rng(99);
    const double cx = width * 0.5, cy = height * 0.5;
    const double r = 0.3 * std::min(width, height);

    // Two-tone disc, then ringing within ring_width of the edge.
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double d = std::hypot(x - cx, y - cy) - r;
            double v = d <= 0.0 ? 0.75 : 0.25;
            if (std::abs(d) <= ring_width && d != 0.0)
                v += ring_amplitude * std::sin(kPi * d) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
            out.at(0, y, x) = v;
        }
    return out;
}

PlanarImage random_image(int width, int height, int channels, std::uint64_t seed, double lo, double hi)
{
    SplitMix64 rng(seed);
    PlanarImage out(width, height, channels);
    for (double& v : out.data()) v = rng.uniform(lo, hi);
    return out;
}

} // namespace epls::testimage
