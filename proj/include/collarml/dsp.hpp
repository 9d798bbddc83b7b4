#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace collarml::dsp {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

std::size_t next_pow2(std::size_t n);

struct Psd {
    std::vector<double> freq_hz;  // one-sided, DC .. Nyquist
    std::vector<double> power;    // density, units^2 / Hz
};

// Welch PSD estimate with rectangular taper. Segments of `nperseg`
// samples with 50% overlap; a segment longer than the input uses the
// full input as a single segment. Non-power-of-two segment lengths are
// handled by direct DFT.
Psd welch_psd(const std::vector<double>& x, double sample_rate_hz, std::size_t nperseg);

// Biased autocorrelation at a single lag: (1/(N var)) sum (x_i-mu)(x_{i+lag}-mu).
double autocorrelation(const std::vector<double>& x, std::size_t lag);

// All lags 0..max_lag at once (direct evaluation).
std::vector<double> autocorrelation_function(const std::vector<double>& x, std::size_t max_lag);

}  // namespace collarml::dsp
