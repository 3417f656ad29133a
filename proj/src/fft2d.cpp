#include "fft2d.hpp"

#include <fftw3.h>

#include <mutex>

namespace epls::detail {

namespace {
std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

std::vector<std::complex<double>> rfft2(const double* data, int h, int w)
{
    const int wc = w / 2 + 1;
    std::vector<double> in(data, data + static_cast<std::size_t>(h) * w);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(h) * wc);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_r2c_2d(h, w, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

void irfft2(std::vector<std::complex<double>>& spec, int h, int w, double* out)
{
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_c2r_2d(h, w, reinterpret_cast<fftw_complex*>(spec.data()), out,
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / (static_cast<double>(h) * w);
    const std::size_t n = static_cast<std::size_t>(h) * w;
    for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

} // namespace epls::detail
