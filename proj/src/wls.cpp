#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "epls/solver.hpp"

namespace epls {

PlanarImage wls_solve(const PlanarImage& g, const WlsParams& p)
{
    if (!(p.lambda > 0.0) || !(p.eps > 0.0) || !std::isfinite(p.lambda) || !std::isfinite(p.alpha))
        throw std::invalid_argument("wls_solve: lambda and eps must be positive");
    require_finite(g, "wls_solve");

    const int w = g.width(), h = g.height();
    const auto n = static_cast<Eigen::Index>(g.plane_size());
    const auto [loglum, lum] = to_log_luminance(g);
    const double* ll = loglum.plane(0);

    // Smoothness weights from the log-luminance gradients; the last
    // column/row carries no link (open boundary).
    auto weight = [&](double grad) { return 1.0 / (std::pow(std::abs(grad), p.alpha) + p.eps); };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n) * 5);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Eigen::Index i = static_cast<Eigen::Index>(y) * w + x;
            double diag = 1.0;
            if (x + 1 < w) {
                const double wx = p.lambda * weight(ll[i + 1] - ll[i]);
                diag += wx;
                trip.emplace_back(i, i + 1, -wx);
            }
            if (x > 0) {
                const double wx = p.lambda * weight(ll[i] - ll[i - 1]);
                diag += wx;
                trip.emplace_back(i, i - 1, -wx);
            }
            if (y + 1 < h) {
                const double wy = p.lambda * weight(ll[i + w] - ll[i]);
                diag += wy;
                trip.emplace_back(i, i + w, -wy);
            }
            if (y > 0) {
                const double wy = p.lambda * weight(ll[i] - ll[i - w]);
                diag += wy;
                trip.emplace_back(i, i - w, -wy);
            }
            trip.emplace_back(i, i, diag);
        }
    }

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("wls_solve: sparse factorization failed");

    PlanarImage out(w, h, g.channels());
    for (int c = 0; c < g.channels(); ++c) {
        Eigen::Map<const Eigen::VectorXd> rhs(g.plane(c), n);
        Eigen::VectorXd u = solver.solve(rhs);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("wls_solve: sparse solve failed");
        Eigen::Map<Eigen::VectorXd>(out.plane(c), n) = u;
    }
    return out;
}

namespace {

// Circular forward-difference matrices of an h x w grid, row-major indexing.
void circular_differences(int h, int w, Eigen::SparseMatrix<double>& dx, Eigen::SparseMatrix<double>& dy)
{
    const Eigen::Index n = static_cast<Eigen::Index>(h) * w;
    std::vector<Eigen::Triplet<double>> tx, ty;
    tx.reserve(2 * n);
    ty.reserve(2 * n);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Eigen::Index i = static_cast<Eigen::Index>(y) * w + x;
            const Eigen::Index ie = static_cast<Eigen::Index>(y) * w + (x + 1) % w;
            const Eigen::Index is = static_cast<Eigen::Index>((y + 1) % h) * w + x;
            tx.emplace_back(i, i, -1.0);
            tx.emplace_back(i, ie, 1.0);
            ty.emplace_back(i, i, -1.0);
            ty.emplace_back(i, is, 1.0);
        }
    }
    dx.resize(n, n);
    dy.resize(n, n);
    dx.setFromTriplets(tx.begin(), tx.end());
    dy.setFromTriplets(ty.begin(), ty.end());
}

PlanarImage dense_solve(const PlanarImage& g, const GradientField* target, double lambda)
{
    if (g.plane_size() > 4096)
        throw std::length_error("ls_solve_dense_oracle: refusing images beyond 4096 pixels");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("ls_solve_dense_oracle: lambda must be finite and >= 0");
    require_finite(g, "ls_solve_dense_oracle");

    const int w = g.width(), h = g.height();
    const auto n = static_cast<Eigen::Index>(g.plane_size());
    Eigen::SparseMatrix<double> dx, dy;
    circular_differences(h, w, dx, dy);

    Eigen::MatrixXd A = Eigen::MatrixXd(dx.transpose() * dx + dy.transpose() * dy);
    A *= lambda;
    A += Eigen::MatrixXd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    PlanarImage out(w, h, g.channels());
    for (int c = 0; c < g.channels(); ++c) {
        Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(g.plane(c), n);
        if (target) {
            Eigen::Map<const Eigen::VectorXd> tx(target->gx.plane(c), n);
            Eigen::Map<const Eigen::VectorXd> ty(target->gy.plane(c), n);
            b += lambda * (dx.transpose() * tx + dy.transpose() * ty);
        }
        Eigen::Map<Eigen::VectorXd>(out.plane(c), n) = lu.solve(b);
    }
    return out;
}

} // namespace

PlanarImage ls_solve_dense_oracle(const PlanarImage& g, double lambda)
{
    return dense_solve(g, nullptr, lambda);
}

PlanarImage ls_solve_dense_oracle(const PlanarImage& g, const GradientField& target, double lambda)
{
    if (!g.same_shape(target.gx) || !g.same_shape(target.gy))
        throw std::invalid_argument("ls_solve_dense_oracle: target shape does not match image");
    return dense_solve(g, &target, lambda);
}

} // namespace epls
