#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "epls/bilateral.hpp"
#include "epls/domain_transform.hpp"
#include "epls/image.hpp"

namespace epls {

/// Set the worker-thread count for all parallel kernels (0 = hardware
/// default). Thread count never changes numeric results.
void set_num_threads(int n);
int num_threads();

struct BenchRow {
    std::string method;
    int width = 0;
    int height = 0;
    double seconds = 0.0;        // median of the timed runs
    long long reversals = 0;     // enhancement gradient reversals on the metrics scene
    double max_grad_ratio = 0.0; // max|grad u| / max|grad g| on the metrics scene
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Known method names: ls, ls-nopad, wls, blf, nc, blf-ls, nc-ls.
const std::vector<std::string>& bench_methods();

/// Times each method on deterministic synthetic scenes of the given sizes:
/// one warm-up then k >= 3 timed runs, median reported. Quality metrics are
/// computed once per method on a fixed 256x256 scene (5x detail boost,
/// tau = 0.03). Unknown method names throw std::invalid_argument.
BenchReport run_bench(const std::vector<std::pair<int, int>>& sizes,
                      const std::vector<std::string>& methods, int k);

/// Fixed-schema CSV: method,width,height,seconds,reversals,max_grad_ratio.
void write_csv(const BenchReport& report, std::ostream& os);

/// Intensity-domain smoothing with the raw local filters, used for the
/// benchmark rows and artifact metrics of the plain BLF / NC baselines.
PlanarImage smooth_raw_blf(const PlanarImage& g, const RangeSpatialParams& p);
PlanarImage smooth_raw_nc(const PlanarImage& g, const DtParams& p);

} // namespace epls
