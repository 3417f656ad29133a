#pragma once

#include <complex>
#include <vector>

namespace epls::detail {

// Half-spectrum (h x (w/2+1)) real-to-complex 2-D FFT and its inverse.
// Plans use FFTW_ESTIMATE so the algorithm choice, and hence round-off, is
// reproducible run to run; plan creation is serialized internally.
std::vector<std::complex<double>> rfft2(const double* data, int h, int w);

// Inverse transform with 1/(h*w) scaling. The spectrum buffer is clobbered.
void irfft2(std::vector<std::complex<double>>& spec, int h, int w, double* out);

} // namespace epls::detail
