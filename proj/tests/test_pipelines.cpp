#include <doctest.h>

#include <cmath>

#include "epls/metrics.hpp"
#include "epls/pipelines.hpp"
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

SmootherSpec spec_of(SmootherKind kind)
{
    SmootherSpec s;
    s.kind = kind;
    s.blf = {6.0, 0.05};
    s.dt = {6.0, 0.05, 3};
    return s;
}

} // namespace

TEST_CASE("every smoother maps constant images to themselves")
{
    const PlanarImage g(40, 30, 3, 0.55);
    for (const auto kind : {SmootherKind::LS, SmootherKind::WLS, SmootherKind::BLF_LS, SmootherKind::NC_LS})
        CHECK(max_abs_diff(smooth(g, spec_of(kind)), g) < 1e-6);
}

TEST_CASE("tiny lambda with a wide-open range kernel reproduces the input")
{
    const PlanarImage g = testimage::natural_scene(48, 40, 1, 3);
    SmootherSpec s = spec_of(SmootherKind::BLF_LS);
    s.blf.sigma_r = 1e6;
    s.solve.lambda = 1e-9;
    CHECK(max_abs_diff(smooth(g, s), g) < 1e-4);
}

TEST_CASE("guidance equal to the input matches self-guided smoothing exactly")
{
    const PlanarImage g = testimage::natural_scene(40, 32, 3, 4);
    SmootherSpec self = spec_of(SmootherKind::BLF_LS);
    SmootherSpec joint = self;
    joint.guidance = &g;
    CHECK(max_abs_diff(smooth(g, self), smooth(g, joint)) == 0.0);
}

TEST_CASE("fidelity distance grows with lambda")
{
    const PlanarImage g = testimage::natural_scene(56, 56, 1, 9);
    double prev = -1.0;
    for (const double lambda : {32.0, 128.0, 512.0, 1024.0}) {
        SmootherSpec s = spec_of(SmootherKind::BLF_LS);
        s.solve.lambda = lambda;
        const double dist = mse(smooth(g, s), g);
        CHECK(dist >= prev - 1e-15);
        prev = dist;
    }
}

TEST_CASE("gradient targets are met more closely as lambda grows")
{
    // The solve-domain distance between grad(u) and the filtered target is
    // non-increasing in lambda regardless of the filter that produced it.
    const PlanarImage g = testimage::natural_scene(48, 48, 1, 10);
    const auto gn = normalize_to_unit(g).first;
    const GradientField grads = forward_gradients(gn);
    GradientField target = grads;
    PlanarImage tx = target.gx, ty = target.gy;
    for (double& v : tx.data()) v = (v + 1.0) * 0.5;
    for (double& v : ty.data()) v = (v + 1.0) * 0.5;
    tx = blf_grid(tx, tx, {6.0, 0.05});
    ty = blf_grid(ty, ty, {6.0, 0.05});
    for (double& v : tx.data()) v = 2.0 * v - 1.0;
    for (double& v : ty.data()) v = 2.0 * v - 1.0;
    target = {tx, ty};

    double prev = std::numeric_limits<double>::infinity();
    for (const double lambda : {32.0, 128.0, 512.0, 1024.0}) {
        const PlanarImage u = lsgrad_solve_fft(gn, target, {lambda, 0});
        const GradientField gu = forward_gradients(u);
        const double dist = 0.5 * (mse(gu.gx, target.gx) + mse(gu.gy, target.gy));
        CHECK(dist <= prev + 1e-15);
        prev = dist;
    }
}

TEST_CASE("rolling with a no-op initial blur equals joint smoothing by the input")
{
    const PlanarImage g = testimage::natural_scene(32, 32, 1, 11);
    const DtParams dt{4.0, 0.05, 3};
    const SolveParams sp{1024.0, 8};
    const PlanarImage rolled = rolling_nc_ls(g, dt, sp, {1, 1e-3});

    SmootherSpec s;
    s.kind = SmootherKind::NC_LS;
    s.dt = dt;
    s.solve = sp;
    s.guidance = &g;
    CHECK(max_abs_diff(rolled, smooth(g, s)) < 1e-4);
}

TEST_CASE("rolling keeps constants for any iteration count")
{
    const PlanarImage g(24, 24, 1, 0.8);
    for (const int n : {1, 2, 3})
        CHECK(max_abs_diff(rolling_nc_ls(g, {8.0, 0.02, 3}, {}, {n, 2.5}), g) < 1e-6);
}

TEST_CASE("guidance shape mismatches are rejected")
{
    const PlanarImage g(16, 16, 1, 0.5);
    const PlanarImage wrong(17, 16, 1, 0.5);
    SmootherSpec s = spec_of(SmootherKind::BLF_LS);
    s.guidance = &wrong;
    CHECK_THROWS_AS(smooth(g, s), std::invalid_argument);
}
