#include "epls/bench.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "epls/applications.hpp"
#include "epls/metrics.hpp"
#include "epls/pipelines.hpp"
#include "epls/testimage.hpp"

namespace epls {

void set_num_threads(int n)
{
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int num_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

PlanarImage smooth_raw_blf(const PlanarImage& g, const RangeSpatialParams& p)
{
    auto [gn, rec] = normalize_to_unit(g);
    PlanarImage out(gn.width(), gn.height(), gn.channels());
    for (int c = 0; c < gn.channels(); ++c) {
        PlanarImage chan(gn.width(), gn.height(), 1);
        std::copy(gn.plane(c), gn.plane(c) + gn.plane_size(), chan.plane(0));
        const PlanarImage filtered = blf_grid(chan, chan, p);
        std::copy(filtered.plane(0), filtered.plane(0) + gn.plane_size(), out.plane(c));
    }
    return denormalize(out, rec);
}

PlanarImage smooth_raw_nc(const PlanarImage& g, const DtParams& p)
{
    auto [gn, rec] = normalize_to_unit(g);
    return denormalize(nc_filter(gn, gn, p), rec);
}

namespace {

using SmoothFn = std::function<PlanarImage(const PlanarImage&)>;

SmoothFn method_fn(const std::string& name)
{
    if (name == "ls") {
        return [](const PlanarImage& g) {
            SmootherSpec s;
            s.kind = SmootherKind::LS;
            return smooth(g, s);
        };
    }
    if (name == "ls-nopad") {
        return [](const PlanarImage& g) {
            SmootherSpec s;
            s.kind = SmootherKind::LS;
            s.solve.pad = 0;
            return smooth(g, s);
        };
    }
    if (name == "wls") {
        return [](const PlanarImage& g) {
            SmootherSpec s;
            s.kind = SmootherKind::WLS;
            s.wls = WlsParams{0.8, 1.2, 1e-4};
            return smooth(g, s);
        };
    }
    if (name == "blf")
        return [](const PlanarImage& g) { return smooth_raw_blf(g, RangeSpatialParams{12.0, 0.1}); };
    if (name == "nc")
        return [](const PlanarImage& g) { return smooth_raw_nc(g, DtParams{12.0, 0.2, 3}); };
    if (name == "blf-ls") {
        return [](const PlanarImage& g) {
            SmootherSpec s;
            s.kind = SmootherKind::BLF_LS;
            s.blf = RangeSpatialParams{12.0, 0.04};
            return smooth(g, s);
        };
    }
    if (name == "nc-ls") {
        return [](const PlanarImage& g) {
            SmootherSpec s;
            s.kind = SmootherKind::NC_LS;
            s.dt = DtParams{12.0, 0.05, 3};
            return smooth(g, s);
        };
    }
    throw std::invalid_argument("run_bench: unknown method '" + name + "'");
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double time_once(const SmoothFn& fn, const PlanarImage& img)
{
    const auto t0 = std::chrono::steady_clock::now();
    volatile double sink = fn(img).data()[0];
    (void)sink;
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

const std::vector<std::string>& bench_methods()
{
    static const std::vector<std::string> names = {"ls", "ls-nopad", "wls", "blf", "nc", "blf-ls", "nc-ls"};
    return names;
}

BenchReport run_bench(const std::vector<std::pair<int, int>>& sizes,
                      const std::vector<std::string>& methods, int k)
{
    if (k < 3)
        throw std::invalid_argument("run_bench: k must be >= 3");
    std::vector<SmoothFn> fns;
    for (const auto& m : methods) fns.push_back(method_fn(m));

    const PlanarImage metrics_scene = testimage::natural_scene(256, 256, 3);

    BenchReport report;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        // Artifact metrics once per method, on the fixed scene.
        const PlanarImage smoothed = fns[mi](metrics_scene);
        PlanarImage enhanced = metrics_scene;
        for (std::size_t i = 0; i < enhanced.size(); ++i)
            enhanced.data()[i] = metrics_scene.data()[i]
                               + 4.0 * (metrics_scene.data()[i] - smoothed.data()[i]);
        enhanced = clamp01(enhanced);
        const long long reversals = gradient_reversal_count(metrics_scene, enhanced, 0.03);
        const double ratio = max_grad_ratio(smoothed, metrics_scene);

        for (const auto& [w, h] : sizes) {
            const PlanarImage scene = testimage::natural_scene(w, h, 3);
            time_once(fns[mi], scene); // warm-up
            std::vector<double> times(static_cast<std::size_t>(k));
            for (int r = 0; r < k; ++r) times[r] = time_once(fns[mi], scene);
            report.rows.push_back({methods[mi], w, h, median(times), reversals, ratio});
        }
    }
    return report;
}

void write_csv(const BenchReport& report, std::ostream& os)
{
    os << "method,width,height,seconds,reversals,max_grad_ratio\n";
    for (const auto& r : report.rows)
        os << r.method << ',' << r.width << ',' << r.height << ',' << r.seconds << ','
           << r.reversals << ',' << r.max_grad_ratio << '\n';
}

} // namespace epls
