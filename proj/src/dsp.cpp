#include "collarml/dsp.hpp"

#include <cmath>
#include <numbers>

#include "collarml/errors.hpp"

namespace collarml::dsp {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw ContractError("fft size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& v : a) v /= static_cast<double>(n);
    }
}

namespace {

// One-sided periodogram of one segment, length n, rectangular taper.
// Returns |X_k|^2 for k = 0..n/2 (direct DFT when n is not a power of 2).
std::vector<double> segment_power(const double* x, std::size_t n) {
    const std::size_t nfreq = n / 2 + 1;
    std::vector<double> p(nfreq);
    if ((n & (n - 1)) == 0) {
        std::vector<std::complex<double>> buf(n);
        for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
        fft(buf);
        for (std::size_t k = 0; k < nfreq; ++k) p[k] = std::norm(buf[k]);
    } else {
        for (std::size_t k = 0; k < nfreq; ++k) {
            double re = 0.0, im = 0.0;
            const double w = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double a = w * static_cast<double>(i);
                re += x[i] * std::cos(a);
                im += x[i] * std::sin(a);
            }
            p[k] = re * re + im * im;
        }
    }
    return p;
}

}  // namespace

Psd welch_psd(const std::vector<double>& x, double sample_rate_hz, std::size_t nperseg) {
    if (x.empty()) throw ContractError("welch_psd: empty input");
    if (sample_rate_hz <= 0.0) throw ContractError("welch_psd: sample rate must be positive");
    const std::size_t n = std::min(nperseg, x.size());
    const std::size_t hop = std::max<std::size_t>(1, n / 2);
    const std::size_t nfreq = n / 2 + 1;

    std::vector<double> acc(nfreq, 0.0);
    std::size_t count = 0;
    for (std::size_t start = 0; start + n <= x.size(); start += hop) {
        const auto p = segment_power(x.data() + start, n);
        for (std::size_t k = 0; k < nfreq; ++k) acc[k] += p[k];
        ++count;
        if (start + n == x.size()) break;
    }
    if (count == 0) {  // x shorter than nperseg cannot happen (n clamped), defensive
        const auto p = segment_power(x.data(), n);
        for (std::size_t k = 0; k < nfreq; ++k) acc[k] += p[k];
        count = 1;
    }

    Psd out;
    out.freq_hz.resize(nfreq);
    out.power.resize(nfreq);
    const double scale = 1.0 / (sample_rate_hz * static_cast<double>(n) * static_cast<double>(count));
    for (std::size_t k = 0; k < nfreq; ++k) {
        out.freq_hz[k] = sample_rate_hz * static_cast<double>(k) / static_cast<double>(n);
        double p = acc[k] * scale;
        // one-sided density: interior bins carry both halves of the spectrum
        if (k != 0 && !(n % 2 == 0 && k == nfreq - 1)) p *= 2.0;
        out.power[k] = p;
    }
    return out;
}

double autocorrelation(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    if (n == 0 || lag >= n) return 0.0;
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mu) * (v - mu);
    if (var == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += (x[i] - mu) * (x[i + lag] - mu);
    return s / var;
}

std::vector<double> autocorrelation_function(const std::vector<double>& x, std::size_t max_lag) {
    const std::size_t n = x.size();
    std::vector<double> acf(max_lag + 1, 0.0);
    if (n == 0) return acf;
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mu) * (v - mu);
    if (var == 0.0) return acf;
    for (std::size_t lag = 0; lag <= max_lag && lag < n; ++lag) {
        double s = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) s += (x[i] - mu) * (x[i + lag] - mu);
        acf[lag] = s / var;
    }
    return acf;
}

}  // namespace collarml::dsp
