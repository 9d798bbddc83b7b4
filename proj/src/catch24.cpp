#include "collarml/catch24.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "collarml/dsp.hpp"
#include "collarml/errors.hpp"
#include "collarml/stats.hpp"

namespace collarml {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

// Smallest lag >= 1 with acf <= 0; last index when none.
std::size_t first_zero_crossing(const std::vector<double>& acf) {
    for (std::size_t i = 1; i < acf.size(); ++i) {
        if (acf[i] <= 0.0) return i;
    }
    return acf.size() - 1;
}

double histogram_mode(const std::vector<double>& y, std::size_t nbins) {
    const double lo = *std::min_element(y.begin(), y.end());
    const double hi = *std::max_element(y.begin(), y.end());
    if (hi == lo) return lo;
    const double width = (hi - lo) / static_cast<double>(nbins);
    std::vector<std::size_t> counts(nbins, 0);
    for (double v : y) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        ++counts[std::min(idx, nbins - 1)];
    }
    const std::size_t best = *std::max_element(counts.begin(), counts.end());
    double center_sum = 0.0;
    std::size_t n_best = 0;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (counts[b] == best) {
            center_sum += lo + (static_cast<double>(b) + 0.5) * width;
            ++n_best;
        }
    }
    return center_sum / static_cast<double>(n_best);
}

double longest_run(const std::vector<bool>& b) {
    std::size_t best = 0, cur = 0;
    for (bool v : b) {
        cur = v ? cur + 1 : 0;
        best = std::max(best, cur);
    }
    return static_cast<double>(best);
}

double outlier_include_mdrmd(const std::vector<double>& y, double sign) {
    const std::size_t n = y.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = sign * y[i];
    const double wmax = *std::max_element(w.begin(), w.end());
    const double inc = 0.01;

    std::vector<double> stats;
    for (std::size_t j = 0; static_cast<double>(j) * inc <= wmax; ++j) {
        const double th = static_cast<double>(j) * inc;
        std::vector<double> positions;  // 1-based
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] >= th) positions.push_back(static_cast<double>(i + 1));
        }
        if (positions.size() < 2 ||
            100.0 * static_cast<double>(positions.size()) / static_cast<double>(n) <= 2.0) {
            break;
        }
        stats.push_back(stats::median(positions) / (static_cast<double>(n) / 2.0) - 1.0);
    }
    if (stats.empty()) return 0.0;
    return stats::median(stats);
}

double f1ecac(const std::vector<double>& acf, std::size_t n) {
    for (std::size_t i = 1; i < acf.size(); ++i) {
        if (acf[i] < kInvE) {
            return static_cast<double>(i - 1) + (acf[i - 1] - kInvE) / (acf[i - 1] - acf[i]);
        }
    }
    return static_cast<double>(n);
}

double first_min_ac(const std::vector<double>& acf, std::size_t n) {
    for (std::size_t i = 1; i + 1 < acf.size(); ++i) {
        if (acf[i] < acf[i - 1] && acf[i] < acf[i + 1]) return static_cast<double>(i);
    }
    return static_cast<double>(n);
}

struct Spectrum {
    std::vector<double> w;  // angular frequency
    std::vector<double> s;  // one-sided density
};

// Single-segment rectangular spectrum, zero-padded to a power of two.
Spectrum welch_rect_spectrum(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t nfft = dsp::next_pow2(n);
    std::vector<std::complex<double>> buf(nfft, 0.0);
    for (std::size_t i = 0; i < n; ++i) buf[i] = y[i];
    dsp::fft(buf);
    const std::size_t nfreq = nfft / 2 + 1;
    Spectrum out;
    out.w.resize(nfreq);
    out.s.resize(nfreq);
    for (std::size_t k = 0; k < nfreq; ++k) {
        double p = std::norm(buf[k]) / (2.0 * std::numbers::pi * static_cast<double>(n));
        if (k != 0 && k != nfreq - 1) p *= 2.0;
        out.s[k] = p;
        out.w[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nfft);
    }
    return out;
}

double welch_area_5_1(const Spectrum& sp) {
    const double dw = sp.w[1] - sp.w[0];
    const std::size_t n_low = sp.s.size() / 5;
    double area = 0.0;
    for (std::size_t k = 0; k < n_low; ++k) area += sp.s[k];
    return area * dw;
}

double welch_centroid(const Spectrum& sp) {
    const double dw = sp.w[1] - sp.w[0];
    double total = 0.0;
    for (double p : sp.s) total += p;
    total *= dw;
    if (total <= 0.0) return 0.0;
    double cs = 0.0;
    for (std::size_t k = 0; k < sp.s.size(); ++k) {
        cs += sp.s[k] * dw;
        if (cs >= total / 2.0) return sp.w[k];
    }
    return sp.w.back();
}

double local_simple_mean3_stderr(const std::vector<double>& y) {
    std::vector<double> res;
    for (std::size_t i = 0; i + 3 < y.size(); ++i) {
        res.push_back(y[i + 3] - (y[i] + y[i + 1] + y[i + 2]) / 3.0);
    }
    return stats::stddev_sample(res);
}

double trev_1_num(const std::vector<double>& y) {
    if (y.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double d = y[i + 1] - y[i];
        s += d * d * d;
    }
    return s / static_cast<double>(y.size() - 1);
}

double histogram_ami_even_2_5(const std::vector<double>& y) {
    constexpr std::size_t tau = 2, nbins = 5;
    const double lo = *std::min_element(y.begin(), y.end()) - 0.1;
    const double hi = *std::max_element(y.begin(), y.end()) + 0.1;
    const double width = (hi - lo) / static_cast<double>(nbins);
    auto bin_of = [&](double v) {
        const auto b = static_cast<long>((v - lo) / width);
        return static_cast<std::size_t>(std::clamp<long>(b, 0, nbins - 1));
    };
    std::array<std::array<double, nbins>, nbins> joint{};
    const std::size_t m = y.size() - tau;
    for (std::size_t i = 0; i < m; ++i) joint[bin_of(y[i])][bin_of(y[i + tau])] += 1.0;
    std::array<double, nbins> pi{}, pj{};
    for (std::size_t a = 0; a < nbins; ++a) {
        for (std::size_t b = 0; b < nbins; ++b) {
            joint[a][b] /= static_cast<double>(m);
            pi[a] += joint[a][b];
            pj[b] += joint[a][b];
        }
    }
    double ami = 0.0;
    for (std::size_t a = 0; a < nbins; ++a) {
        for (std::size_t b = 0; b < nbins; ++b) {
            if (joint[a][b] > 0.0) ami += joint[a][b] * std::log(joint[a][b] / (pi[a] * pj[b]));
        }
    }
    return ami;
}

double auto_mi_fmmi(const std::vector<double>& acf, std::size_t n) {
    const std::size_t tau_max = std::min<std::size_t>(40, n / 2);
    std::vector<double> ami(tau_max);
    for (std::size_t t = 1; t <= tau_max; ++t) {
        const double r2 = std::min(acf[t] * acf[t], 1.0 - 1e-15);
        ami[t - 1] = -0.5 * std::log(1.0 - r2);
    }
    for (std::size_t i = 1; i + 1 < ami.size(); ++i) {
        if (ami[i] < ami[i - 1] && ami[i] < ami[i + 1]) return static_cast<double>(i + 1);
    }
    return static_cast<double>(ami.size());
}

double binary_stats_diff_longstretch0(const std::vector<double>& y) {
    std::vector<bool> dec;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) dec.push_back(y[i + 1] - y[i] < 0.0);
    return longest_run(dec);
}

// Rank-based equiprobable 3-letter symbolization (stable ties).
std::vector<int> tercile_symbols(const std::vector<double>& y) {
    const std::size_t n = y.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
    std::vector<int> sym(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        sym[order[pos]] = static_cast<int>(std::min<std::size_t>(2, 3 * pos / n));
    }
    return sym;
}

double motif_three_quantile_hh(const std::vector<double>& y) {
    const auto s = tercile_symbols(y);
    std::array<std::array<double, 3>, 3> pairs{};
    for (std::size_t i = 0; i + 1 < s.size(); ++i) pairs[s[i]][s[i + 1]] += 1.0;
    const double total = static_cast<double>(s.size() - 1);
    double h = 0.0;
    for (const auto& row : pairs) {
        for (double c : row) {
            if (c > 0.0) {
                const double p = c / total;
                h -= p * std::log(p);
            }
        }
    }
    return h;
}

double local_simple_mean1_tauresrat(const std::vector<double>& y) {
    std::vector<double> res;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) res.push_back(y[i + 1] - y[i]);
    const auto acf_y = dsp::autocorrelation_function(y, y.size() - 1);
    const auto acf_r = dsp::autocorrelation_function(res, res.size() - 1);
    return static_cast<double>(first_zero_crossing(acf_r)) /
           static_cast<double>(first_zero_crossing(acf_y));
}

double embed2_dist_expfit_meandiff(const std::vector<double>& y,
                                   const std::vector<double>& acf) {
    const std::size_t n = y.size();
    std::size_t tau = first_zero_crossing(acf);
    tau = std::max<std::size_t>(1, std::min(tau, n / 10));
    const std::size_t m = n - tau;
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double dx = y[i + 1] - y[i];
        const double dy = y[i + 1 + tau] - y[i + tau];
        d.push_back(std::sqrt(dx * dx + dy * dy));
    }
    if (d.size() < 2) return 0.0;
    const double mean_d = stats::mean(d);
    if (mean_d == 0.0) return 0.0;
    const double lambda = 1.0 / mean_d;
    const double lo = *std::min_element(d.begin(), d.end());
    const double hi = *std::max_element(d.begin(), d.end());
    if (hi - lo < 1e-10 * std::max(1.0, std::abs(hi))) return 0.0;
    const auto nbins = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(d.size()))));
    const double width = (hi - lo) / static_cast<double>(nbins);
    std::vector<double> counts(nbins, 0.0);
    for (double v : d) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(idx, nbins - 1)] += 1.0;
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) {
        const double dens = counts[b] / (static_cast<double>(d.size()) * width);
        const double center = lo + (static_cast<double>(b) + 0.5) * width;
        sum += std::abs(dens - lambda * std::exp(-lambda * center));
    }
    return sum / static_cast<double>(nbins);
}

// residual sum of squares of an OLS line fit
double linfit_rss(const double* x, const double* y, std::size_t n) {
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * sxx - sx * sx;
    const double slope = denom == 0.0 ? 0.0 : (nn * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / nn;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - slope * x[i] - icept;
        rss += r * r;
    }
    return rss;
}

// slope+intercept fit used by the fluctuation analysis buffers
void linfit(const double* y, std::size_t n, double& slope, double& icept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        sx += t;
        sy += y[i];
        sxx += t * t;
        sxy += t * y[i];
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * sxx - sx * sx;
    slope = denom == 0.0 ? 0.0 : (nn * sxy - sx * sy) / denom;
    icept = (sy - slope * sx) / nn;
}

enum class FluctKind { dfa, rsrangefit };

double fluct_anal_prop_r1(const std::vector<double>& y, std::size_t lag, FluctKind kind) {
    std::vector<double> x;
    for (std::size_t i = 0; i < y.size(); i += lag) x.push_back(y[i]);
    const std::size_t ncs = x.size();
    std::vector<double> ycs(ncs);
    double acc = 0.0;
    for (std::size_t i = 0; i < ncs; ++i) {
        acc += x[i];
        ycs[i] = acc;
    }
    const std::size_t lo = 5, hi = ncs / 2;
    if (hi < lo) return 0.0;
    const double la = std::log(static_cast<double>(lo));
    const double lb = std::log(static_cast<double>(hi));
    const double step = (lb - la) / 49.0;
    std::vector<std::size_t> taus;
    for (int j = 0; j < 50; ++j) {
        const double t = std::exp(j == 49 ? lb : la + step * static_cast<double>(j));
        const auto ti = static_cast<std::size_t>(t);
        if (ti >= lo && ti <= hi && (taus.empty() || taus.back() != ti)) taus.push_back(ti);
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const std::size_t ntau = taus.size();
    if (ntau < 4) return 0.0;

    std::vector<double> logtt(ntau), logff(ntau);
    for (std::size_t k = 0; k < ntau; ++k) {
        const std::size_t tau = taus[k];
        const std::size_t nbuf = ncs / tau;
        double total = 0.0;
        for (std::size_t b = 0; b < nbuf; ++b) {
            const double* seg = ycs.data() + b * tau;
            double slope, icept;
            linfit(seg, tau, slope, icept);
            if (kind == FluctKind::dfa) {
                for (std::size_t i = 0; i < tau; ++i) {
                    const double r = seg[i] - slope * static_cast<double>(i) - icept;
                    total += r * r;
                }
            } else {
                double rmin = 0.0, rmax = 0.0;
                for (std::size_t i = 0; i < tau; ++i) {
                    const double r = seg[i] - slope * static_cast<double>(i) - icept;
                    rmin = i == 0 ? r : std::min(rmin, r);
                    rmax = i == 0 ? r : std::max(rmax, r);
                }
                total += (rmax - rmin) * (rmax - rmin);
            }
        }
        const double f = kind == FluctKind::dfa
                             ? std::sqrt(total / static_cast<double>(nbuf * tau))
                             : std::sqrt(total / static_cast<double>(nbuf));
        logtt[k] = std::log(static_cast<double>(tau));
        logff[k] = std::log(std::max(f, 1e-12));
    }

    const std::size_t minside = ntau >= 12 ? 6 : 2;
    if (ntau < 2 * minside) return 0.0;
    std::size_t best_k = 0;
    double best_sse = 0.0;
    bool have = false;
    for (std::size_t k = minside; k + minside <= ntau; ++k) {
        const double sse = linfit_rss(logtt.data(), logff.data(), k) +
                           linfit_rss(logtt.data() + k, logff.data() + k, ntau - k);
        if (!have || sse < best_sse - 1e-15) {
            best_k = k;
            best_sse = sse;
            have = true;
        }
    }
    return static_cast<double>(best_k) / static_cast<double>(ntau);
}

double transition_matrix_sumdiagcov(const std::vector<double>& y,
                                    const std::vector<double>& acf) {
    const std::size_t tau = std::max<std::size_t>(1, first_zero_crossing(acf));
    std::vector<double> z;
    for (std::size_t i = 0; i < y.size(); i += tau) z.push_back(y[i]);
    if (z.size() < 4) return 0.0;
    const auto s = tercile_symbols(z);
    std::array<std::array<double, 3>, 3> t{};
    for (std::size_t i = 0; i + 1 < s.size(); ++i) t[s[i]][s[i + 1]] += 1.0;
    const double total = static_cast<double>(s.size() - 1);
    for (auto& row : t) {
        for (double& v : row) v /= total;
    }
    // trace of the covariance between columns = sum of column variances
    double trace = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        const double mu = (t[0][c] + t[1][c] + t[2][c]) / 3.0;
        double var = 0.0;
        for (std::size_t r = 0; r < 3; ++r) var += (t[r][c] - mu) * (t[r][c] - mu);
        trace += var / 2.0;  // ddof = 1
    }
    return trace;
}

double periodicity_wang(const std::vector<double>& y) {
    const std::size_t n = y.size();
    // detrend with a two-piece least-squares cubic spline
    Eigen::MatrixXd basis(n, 5);
    const double m = static_cast<double>(n / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        basis(static_cast<Eigen::Index>(i), 0) = 1.0;
        basis(static_cast<Eigen::Index>(i), 1) = t;
        basis(static_cast<Eigen::Index>(i), 2) = t * t;
        basis(static_cast<Eigen::Index>(i), 3) = t * t * t;
        const double u = std::max(t - m, 0.0);
        basis(static_cast<Eigen::Index>(i), 4) = u * u * u;
    }
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = y[i];
    const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd fit = basis * coef;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - fit(static_cast<Eigen::Index>(i));

    const std::size_t max_tau = n / 3;
    const auto a = dsp::autocorrelation_function(r, max_tau);
    std::vector<std::size_t> troughs, peaks;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        if (a[i] < a[i - 1] && a[i] < a[i + 1]) troughs.push_back(i);
        else if (a[i] > a[i - 1] && a[i] > a[i + 1]) peaks.push_back(i);
    }
    for (std::size_t tr : troughs) {
        for (std::size_t p : peaks) {
            if (p > tr && a[p] > 0.0 && a[p] - a[tr] >= 0.01) return static_cast<double>(p);
        }
    }
    return 0.0;
}

}  // namespace

const std::vector<std::string>& catch22_feature_names() {
    static const std::vector<std::string> names{
        "DN_HistogramMode_5",
        "DN_HistogramMode_10",
        "SB_BinaryStats_mean_longstretch1",
        "DN_OutlierInclude_p_001_mdrmd",
        "DN_OutlierInclude_n_001_mdrmd",
        "CO_f1ecac",
        "CO_FirstMin_ac",
        "SP_Summaries_welch_rect_area_5_1",
        "SP_Summaries_welch_rect_centroid",
        "FC_LocalSimple_mean3_stderr",
        "CO_trev_1_num",
        "CO_HistogramAMI_even_2_5",
        "IN_AutoMutualInfoStats_40_gaussian_fmmi",
        "MD_hrv_classic_pnn40",
        "SB_BinaryStats_diff_longstretch0",
        "SB_MotifThree_quantile_hh",
        "FC_LocalSimple_mean1_tauresrat",
        "CO_Embed2_Dist_tau_d_expfit_meandiff",
        "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
        "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
        "SB_TransitionMatrix_3ac_sumdiagcov",
        "PD_PeriodicityWang_th0_01",
    };
    return names;
}

double pnn40(const std::vector<double>& channel) {
    if (channel.size() < 2) return 0.0;
    const double sigma = stats::stddev_pop(channel);
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < channel.size(); ++i) {
        if (std::abs(channel[i + 1] - channel[i]) > 0.04 * sigma) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(channel.size() - 1);
}

std::vector<double> catch24_values(const std::vector<double>& channel, const Catch24Spec& spec) {
    const std::size_t n = channel.size();
    if (n < 10) throw ContractError("catch24: need at least 10 samples");

    std::vector<double> out;
    out.reserve(kNumCatch22 + 2);
    if (stats::variance_pop(channel) == 0.0) {
        // constant-input fallback: all 22 characteristics are 0
        out.assign(kNumCatch22, 0.0);
    } else {
        const std::vector<double> y =
            spec.zscore_input ? stats::zscore(channel) : channel;
        const auto acf = dsp::autocorrelation_function(y, y.size() - 1);
        const auto spectrum = welch_rect_spectrum(y);

        std::vector<bool> above_mean;
        const double mu = stats::mean(y);
        for (double v : y) above_mean.push_back(v > mu);

        out.push_back(histogram_mode(y, 5));
        out.push_back(histogram_mode(y, 10));
        out.push_back(longest_run(above_mean));
        out.push_back(outlier_include_mdrmd(y, +1.0));
        out.push_back(outlier_include_mdrmd(y, -1.0));
        out.push_back(f1ecac(acf, n));
        out.push_back(first_min_ac(acf, n));
        out.push_back(welch_area_5_1(spectrum));
        out.push_back(welch_centroid(spectrum));
        out.push_back(local_simple_mean3_stderr(y));
        out.push_back(trev_1_num(y));
        out.push_back(histogram_ami_even_2_5(y));
        out.push_back(auto_mi_fmmi(acf, n));
        out.push_back(pnn40(y));
        out.push_back(binary_stats_diff_longstretch0(y));
        out.push_back(motif_three_quantile_hh(y));
        out.push_back(local_simple_mean1_tauresrat(y));
        out.push_back(embed2_dist_expfit_meandiff(y, acf));
        out.push_back(fluct_anal_prop_r1(y, 2, FluctKind::dfa));
        out.push_back(fluct_anal_prop_r1(y, 1, FluctKind::rsrangefit));
        out.push_back(transition_matrix_sumdiagcov(y, acf));
        out.push_back(periodicity_wang(y));
    }
    if (spec.include_mean_std) {
        out.push_back(stats::mean(channel));
        out.push_back(stats::stddev_pop(channel));
    }
    return out;
}

FeatureVector catch24_vector(const std::vector<double>& channel, const Catch24Spec& spec) {
    FeatureVector fv;
    fv.names = catch22_feature_names();
    if (spec.include_mean_std) {
        fv.names.push_back("raw_mean");
        fv.names.push_back("raw_std");
    }
    fv.values = catch24_values(channel, spec);
    return fv;
}

FeatureVector catch24_features(const LabeledWindow& window, const Catch24Spec& spec) {
    FeatureVector fv;
    for (Channel c : all_channels) {
        const auto vals = catch24_values(window.channel(c), spec);
        const auto& names = catch22_feature_names();
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const std::string base =
                i < kNumCatch22 ? names[i] : (i == kNumCatch22 ? "raw_mean" : "raw_std");
            fv.names.push_back(std::string(channel_name(c)) + "__" + base);
            fv.values.push_back(vals[i]);
        }
    }
    return fv;
}

}  // namespace collarml
