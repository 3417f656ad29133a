#include <doctest.h>

#include <cmath>

#include "epls/domain_transform.hpp"
#include "epls/serial.hpp"
#include "epls/testimage.hpp"

using namespace epls;

namespace {

double max_abs_diff(const PlanarImage& a, const PlanarImage& b)
{
    REQUIRE(a.same_shape(b));
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace

TEST_CASE("constant signals are fixed points")
{
    const PlanarImage src(15, 11, 3, 0.3);
    const PlanarImage guide(15, 11, 3, 0.8);
    CHECK(max_abs_diff(nc_filter(src, guide, {4.0, 0.1, 3}), src) < 1e-12);
}

TEST_CASE("an infinite-contrast guide step blocks all mixing")
{
    PlanarImage src(8, 1, 1), guide(8, 1, 1);
    const double vals[8] = {0.1, 0.5, 0.3, 0.9, 0.2, 0.6, 0.4, 0.8};
    for (int x = 0; x < 8; ++x) {
        src.at(0, 0, x) = vals[x];
        guide.at(0, 0, x) = x < 4 ? 0.0 : 1.0;
    }
    const PlanarImage out = nc_filter(src, guide, {2.0, 1e-4, 1});
    const double left = (vals[0] + vals[1] + vals[2] + vals[3]) / 4.0;
    const double right = (vals[4] + vals[5] + vals[6] + vals[7]) / 4.0;
    for (int x = 0; x < 4; ++x) CHECK(out.at(0, 0, x) == doctest::Approx(left).epsilon(1e-12));
    for (int x = 4; x < 8; ++x) CHECK(out.at(0, 0, x) == doctest::Approx(right).epsilon(1e-12));
}

TEST_CASE("sliding-window kernel matches the scalar reference on a 1x8 signal")
{
    PlanarImage src(8, 1, 1), guide(8, 1, 1);
    const double vals[8] = {0.0, 0.2, 0.9, 0.4, 0.41, 0.39, 0.8, 0.1};
    for (int x = 0; x < 8; ++x) {
        src.at(0, 0, x) = vals[x];
        guide.at(0, 0, x) = vals[x];
    }
    const DtParams p{2.0, 0.5, 1};
    CHECK(max_abs_diff(nc_filter(src, guide, p), serial::nc_filter(src, guide, p)) < 1e-10);
}

TEST_CASE("sliding-window kernel matches the scalar reference on 2-D images")
{
    const PlanarImage img = testimage::natural_scene(16, 16, 3, 6);
    const DtParams p{3.0, 0.1, 3};
    CHECK(max_abs_diff(nc_filter(img, img, p), serial::nc_filter(img, img, p)) < 1e-10);
}

TEST_CASE("outputs stay within the convex hull of the input")
{
    const PlanarImage img = testimage::random_image(24, 24, 1, 17);
    const PlanarImage out = nc_filter(img, img, {6.0, 0.05, 3});
    CHECK(min_value(out) >= min_value(img) - 1e-12);
    CHECK(max_value(out) <= max_value(img) + 1e-12);
}

TEST_CASE("huge sigma_r degenerates into an iterated box blur near a Gaussian")
{
    // Constant-border scene; windows quantize to integer radii, so allow a
    // few percent against the true Gaussian.
    PlanarImage img(96, 96, 1, 0.4);
    const double c = 47.5, sb = 20.0;
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x)
            img.at(0, y, x) += 0.2 * std::exp(-((x - c) * (x - c) + (y - c) * (y - c)) / (2.0 * sb * sb));
    const PlanarImage out = nc_filter(img, img, {4.0, 1e9, 3});
    const PlanarImage blurred = gaussian_blur(img, 4.0);
    CHECK(max_abs_diff(out, blurred) < 0.02);
}

TEST_CASE("repeated runs are deterministic")
{
    const PlanarImage img = testimage::natural_scene(32, 24, 3, 12);
    const DtParams p{8.0, 0.02, 3};
    CHECK(max_abs_diff(nc_filter(img, img, p), nc_filter(img, img, p)) == 0.0);
}

TEST_CASE("parameter validation")
{
    const PlanarImage img(8, 8, 1, 0.5);
    CHECK_THROWS_AS(nc_filter(img, img, {0.0, 0.1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(nc_filter(img, img, {2.0, 0.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(nc_filter(img, img, {2.0, 0.1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(nc_filter(img, PlanarImage(7, 8, 1, 0.5), {2.0, 0.1, 3}), std::invalid_argument);
}
