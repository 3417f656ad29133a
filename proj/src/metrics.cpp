#include "epls/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epls {

double mse(const PlanarImage& a, const PlanarImage& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("mse: image shapes differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double psnr(const PlanarImage& a, const PlanarImage& b, double peak)
{
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / m);
}

double max_abs_gradient(const PlanarImage& img)
{
    const GradientField g = forward_gradients(img);
    double m = 0.0;
    for (double v : g.gx.data()) m = std::max(m, std::abs(v));
    for (double v : g.gy.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_grad_ratio(const PlanarImage& smoothed, const PlanarImage& input)
{
    const double gin = max_abs_gradient(input);
    return gin > 0.0 ? max_abs_gradient(smoothed) / gin : 0.0;
}

long long gradient_reversal_count(const PlanarImage& input, const PlanarImage& enhanced, double tau)
{
    if (!input.same_shape(enhanced))
        throw std::invalid_argument("gradient_reversal_count: image shapes differ");
    const GradientField gi = forward_gradients(input);
    const GradientField ge = forward_gradients(enhanced);
    long long count = 0;
    for (int c = 0; c < input.channels(); ++c) {
        const double* ix = gi.gx.plane(c);
        const double* iy = gi.gy.plane(c);
        const double* ex = ge.gx.plane(c);
        const double* ey = ge.gy.plane(c);
        for (std::size_t i = 0; i < input.plane_size(); ++i) {
            const bool rx = std::abs(ix[i]) > tau && ex[i] * ix[i] < 0.0;
            const bool ry = std::abs(iy[i]) > tau && ey[i] * iy[i] < 0.0;
            if (rx || ry) ++count;
        }
    }
    return count;
}

} // namespace epls
