#!/usr/bin/env python3
"""Independent oracle for the 22 canonical time-series characteristics.

Implements the published feature definitions with numpy, in vectorized
style, deliberately independent of the C++ code path. Used to freeze the
golden fixtures under tests/fixtures/.
"""
import numpy as np

E_THRESH = 1.0 / np.e


def zscore(y):
    s = y.std()  # population
    if s == 0:
        return np.zeros_like(y)
    return (y - y.mean()) / s


def acf(y, max_lag=None):
    n = len(y)
    if max_lag is None:
        max_lag = n - 1
    mu = y.mean()
    d = y - mu
    var = np.dot(d, d)
    out = np.zeros(max_lag + 1)
    if var == 0:
        return out
    for lag in range(0, min(max_lag, n - 1) + 1):
        out[lag] = np.dot(d[: n - lag], d[lag:]) / var
    return out


def first_zero_crossing(a):
    """Smallest lag >= 1 with acf <= 0; len(a)-1 when none."""
    idx = np.nonzero(a[1:] <= 0)[0]
    return int(idx[0]) + 1 if len(idx) else len(a) - 1


def histogram_mode(y, nbins):
    lo, hi = y.min(), y.max()
    if hi == lo:
        return float(lo)
    edges = np.linspace(lo, hi, nbins + 1)
    width = edges[1] - edges[0]
    idx = np.minimum(((y - lo) / width).astype(int), nbins - 1)
    counts = np.bincount(idx, minlength=nbins)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return float(centers[counts == counts.max()].mean())


def longest_run(b):
    best = cur = 0
    for v in b:
        cur = cur + 1 if v else 0
        best = max(best, cur)
    return float(best)


def outlier_include_mdrmd(y, sign):
    w = sign * y
    n = len(w)
    inc = 0.01
    stats = []
    j = 0
    while j * inc <= w.max():
        th = j * inc
        r = np.nonzero(w >= th)[0] + 1  # 1-based positions
        if len(r) < 2 or 100.0 * len(r) / n <= 2.0:
            break
        stats.append(np.median(r) / (n / 2.0) - 1.0)
        j += 1
    if not stats:
        return 0.0
    return float(np.median(stats))


def f1ecac(a, n):
    for i in range(1, len(a)):
        if a[i] < E_THRESH:
            # linear interpolation of the crossing point
            return float(i - 1 + (a[i - 1] - E_THRESH) / (a[i - 1] - a[i]))
    return float(n)


def first_min_ac(a, n):
    for i in range(1, len(a) - 1):
        if a[i] < a[i - 1] and a[i] < a[i + 1]:
            return float(i)
    return float(n)


def welch_rect_spectrum(y):
    """Single-segment rectangular-window spectrum, zero-padded to a power
    of two; angular frequencies, one-sided density."""
    n = len(y)
    nfft = 1
    while nfft < n:
        nfft *= 2
    spec = np.fft.rfft(y, nfft)
    s = np.abs(spec) ** 2 / (2.0 * np.pi * n)
    s[1:] *= 2.0
    if nfft % 2 == 0:
        s[-1] /= 2.0
    w = 2.0 * np.pi * np.arange(len(s)) / nfft
    return w, s


def welch_area_5_1(y):
    w, s = welch_rect_spectrum(y)
    dw = w[1] - w[0]
    n_low = len(s) // 5
    return float(s[:n_low].sum() * dw)


def welch_centroid(y):
    w, s = welch_rect_spectrum(y)
    dw = w[1] - w[0]
    cs = np.cumsum(s) * dw
    total = cs[-1]
    if total <= 0:
        return 0.0
    idx = np.nonzero(cs >= total / 2.0)[0][0]
    return float(w[idx])


def local_simple_mean3_stderr(y):
    res = y[3:] - np.convolve(y, np.ones(3) / 3.0, mode="valid")[:-1]
    return float(res.std(ddof=1))


def trev_1_num(y):
    return float(np.mean(np.diff(y) ** 3))


def histogram_ami_even_2_5(y):
    tau, nbins = 2, 5
    lo, hi = y.min() - 0.1, y.max() + 0.1
    edges = np.linspace(lo, hi, nbins + 1)
    a = np.clip(np.searchsorted(edges, y[:-tau], side="right") - 1, 0, nbins - 1)
    b = np.clip(np.searchsorted(edges, y[tau:], side="right") - 1, 0, nbins - 1)
    joint = np.zeros((nbins, nbins))
    for i, j in zip(a, b):
        joint[i, j] += 1
    joint /= joint.sum()
    pi = joint.sum(axis=1)
    pj = joint.sum(axis=0)
    ami = 0.0
    for i in range(nbins):
        for j in range(nbins):
            if joint[i, j] > 0:
                ami += joint[i, j] * np.log(joint[i, j] / (pi[i] * pj[j]))
    return float(ami)


def auto_mi_stats_40_gaussian_fmmi(y):
    n = len(y)
    tau_max = min(40, n // 2)
    a = acf(y, tau_max)
    with np.errstate(divide="ignore"):
        ami = -0.5 * np.log(1.0 - np.minimum(a[1:] ** 2, 1.0 - 1e-15))
    for i in range(1, len(ami) - 1):
        if ami[i] < ami[i - 1] and ami[i] < ami[i + 1]:
            return float(i + 1)  # ami[i] corresponds to lag i+1
    return float(len(ami))


def pnn40(y):
    sigma = y.std()
    d = np.abs(np.diff(y))
    if len(d) == 0:
        return 0.0
    return float(np.mean(d > 0.04 * sigma))


def binary_stats_diff_longstretch0(y):
    b = np.diff(y) >= 0
    return longest_run(~b)


def tercile_symbols(y):
    """Rank-based equiprobable 3-letter symbolization (stable ties)."""
    n = len(y)
    order = np.argsort(y, kind="stable")
    sym = np.empty(n, dtype=int)
    for pos, idx in enumerate(order):
        sym[idx] = min(2, 3 * pos // n)
    return sym


def motif_three_quantile_hh(y):
    s = tercile_symbols(y)
    pairs = np.zeros((3, 3))
    for a, b in zip(s[:-1], s[1:]):
        pairs[a, b] += 1
    p = pairs / pairs.sum()
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def local_simple_mean1_tauresrat(y):
    res = np.diff(y)
    tau_y = first_zero_crossing(acf(y))
    tau_r = first_zero_crossing(acf(res))
    return float(tau_r) / float(tau_y)


def embed2_dist_tau_d_expfit_meandiff(y):
    n = len(y)
    tau = first_zero_crossing(acf(y))
    tau = max(1, min(tau, n // 10))
    m = n - tau
    p0 = y[:m]
    p1 = y[tau : tau + m]
    d = np.sqrt(np.diff(p0) ** 2 + np.diff(p1) ** 2)
    if len(d) < 2 or d.mean() == 0:
        return 0.0
    lam = 1.0 / d.mean()
    nbins = int(np.ceil(np.sqrt(len(d))))
    lo, hi = d.min(), d.max()
    # degenerate spread: histogram binning is numerically meaningless
    if hi - lo < 1e-10 * max(1.0, abs(hi)):
        return 0.0
    edges = np.linspace(lo, hi, nbins + 1)
    counts, _ = np.histogram(d, bins=edges)
    width = edges[1] - edges[0]
    dens = counts / (len(d) * width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    pdf = lam * np.exp(-lam * centers)
    return float(np.mean(np.abs(dens - pdf)))


def _linfit_rss(x, y):
    n = len(x)
    if n < 2:
        return 0.0
    A = np.vstack([x, np.ones(n)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    r = y - A @ coef
    return float(np.dot(r, r))


def fluct_anal_prop_r1(y, lag, how):
    x = y[::lag]
    ncs = len(x)
    ycs = np.cumsum(x)
    lo, hi = 5, ncs // 2
    if hi < lo:
        return 0.0
    raw = np.exp(np.linspace(np.log(lo), np.log(hi), 50))
    taus = sorted(set(int(t) for t in raw if lo <= int(t) <= hi))
    ntau = len(taus)
    if ntau < 4:
        return 0.0
    logtt, logff = [], []
    for tau in taus:
        nbuf = ncs // tau
        t = np.arange(tau, dtype=float)
        A = np.vstack([t, np.ones(tau)]).T
        if how == "dfa":
            total = 0.0
            for b in range(nbuf):
                seg = ycs[b * tau : (b + 1) * tau]
                coef, *_ = np.linalg.lstsq(A, seg, rcond=None)
                r = seg - A @ coef
                total += np.dot(r, r)
            f = np.sqrt(total / (nbuf * tau))
        else:  # rsrangefit
            total = 0.0
            for b in range(nbuf):
                seg = ycs[b * tau : (b + 1) * tau]
                coef, *_ = np.linalg.lstsq(A, seg, rcond=None)
                r = seg - A @ coef
                total += (r.max() - r.min()) ** 2
            f = np.sqrt(total / nbuf)
        logtt.append(np.log(tau))
        logff.append(np.log(max(f, 1e-12)))
    logtt = np.array(logtt)
    logff = np.array(logff)
    minside = 6 if ntau >= 12 else 2
    best_k, best_sse = None, None
    for k in range(minside, ntau - minside + 1):
        sse = _linfit_rss(logtt[:k], logff[:k]) + _linfit_rss(logtt[k:], logff[k:])
        if best_sse is None or sse < best_sse - 1e-15:
            best_k, best_sse = k, sse
    if best_k is None:
        return 0.0
    return float(best_k) / float(ntau)


def transition_matrix_3ac_sumdiagcov(y):
    tau = max(1, first_zero_crossing(acf(y)))
    z = y[::tau]
    if len(z) < 4:
        return 0.0
    s = tercile_symbols(z)
    t = np.zeros((3, 3))
    for a, b in zip(s[:-1], s[1:]):
        t[a, b] += 1
    t /= t.sum()
    cov = np.cov(t.T)  # covariance between columns
    return float(np.trace(cov))


def periodicity_wang_th001(y):
    n = len(y)
    t = np.arange(n, dtype=float)
    m = float(n // 2)
    basis = np.vstack([np.ones(n), t, t**2, t**3, np.maximum(t - m, 0.0) ** 3]).T
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    r = y - basis @ coef
    max_tau = n // 3
    a = acf(r, max_tau)
    troughs, peaks = [], []
    for i in range(1, len(a) - 1):
        if a[i] < a[i - 1] and a[i] < a[i + 1]:
            troughs.append(i)
        elif a[i] > a[i - 1] and a[i] > a[i + 1]:
            peaks.append(i)
    for tr in troughs:
        for p in peaks:
            if p > tr and a[p] > 0 and a[p] - a[tr] >= 0.01:
                return float(p)
    return 0.0


FEATURE_NAMES = [
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
]


def catch22_all(raw):
    raw = np.asarray(raw, dtype=float)
    n = len(raw)
    if raw.std() == 0:
        return {name: 0.0 for name in FEATURE_NAMES}
    y = zscore(raw)
    a = acf(y)
    return {
        "DN_HistogramMode_5": histogram_mode(y, 5),
        "DN_HistogramMode_10": histogram_mode(y, 10),
        "SB_BinaryStats_mean_longstretch1": longest_run(y > y.mean()),
        "DN_OutlierInclude_p_001_mdrmd": outlier_include_mdrmd(y, +1),
        "DN_OutlierInclude_n_001_mdrmd": outlier_include_mdrmd(y, -1),
        "CO_f1ecac": f1ecac(a, n),
        "CO_FirstMin_ac": first_min_ac(a, n),
        "SP_Summaries_welch_rect_area_5_1": welch_area_5_1(y),
        "SP_Summaries_welch_rect_centroid": welch_centroid(y),
        "FC_LocalSimple_mean3_stderr": local_simple_mean3_stderr(y),
        "CO_trev_1_num": trev_1_num(y),
        "CO_HistogramAMI_even_2_5": histogram_ami_even_2_5(y),
        "IN_AutoMutualInfoStats_40_gaussian_fmmi": auto_mi_stats_40_gaussian_fmmi(y),
        "MD_hrv_classic_pnn40": pnn40(y),
        "SB_BinaryStats_diff_longstretch0": binary_stats_diff_longstretch0(y),
        "SB_MotifThree_quantile_hh": motif_three_quantile_hh(y),
        "FC_LocalSimple_mean1_tauresrat": local_simple_mean1_tauresrat(y),
        "CO_Embed2_Dist_tau_d_expfit_meandiff": embed2_dist_tau_d_expfit_meandiff(y),
        "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1": fluct_anal_prop_r1(y, 2, "dfa"),
        "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1": fluct_anal_prop_r1(y, 1, "rsrangefit"),
        "SB_TransitionMatrix_3ac_sumdiagcov": transition_matrix_3ac_sumdiagcov(y),
        "PD_PeriodicityWang_th0_01": periodicity_wang_th001(y),
    }


def catch24_all(raw):
    out = catch22_all(raw)
    raw = np.asarray(raw, dtype=float)
    out["raw_mean"] = float(raw.mean())
    out["raw_std"] = float(raw.std())  # population
    return out


def make_fixtures():
    rng = np.random.default_rng(20240817)
    fixtures = {}
    fixtures["gauss_75"] = rng.normal(size=75)
    t = np.arange(75)
    fixtures["sine_p25_75"] = np.sin(2 * np.pi * (t + 0.3) / 25.0)
    fixtures["sine_noise_75"] = np.sin(2 * np.pi * t / 25.0) + 0.3 * rng.normal(size=75)
    ar = np.zeros(100)
    for i in range(1, 100):
        ar[i] = 0.8 * ar[i - 1] + rng.normal()
    fixtures["ar1_100"] = ar
    fixtures["walk_75"] = np.cumsum(rng.normal(size=75))
    drift = 0.05 * np.arange(90)
    fixtures["alt_drift_90"] = drift + np.where(np.arange(90) % 2 == 0, 1.0, -1.0)
    fixtures["constant_75"] = np.full(75, 2.5)
    fixtures["uniform_128"] = rng.uniform(-1, 1, size=128)
    fixtures["spiky_75"] = rng.normal(size=75) + 5.0 * (rng.uniform(size=75) < 0.05)
    fixtures["slow_sine_200"] = np.sin(2 * np.pi * np.arange(200) / 80.0) + 0.1 * rng.normal(size=200)
    return fixtures


def main():
    import os

    here = os.path.dirname(os.path.abspath(__file__))
    fixdir = os.path.normpath(os.path.join(here, "..", "fixtures"))
    fixtures = make_fixtures()

    with open(os.path.join(fixdir, "catch24_inputs.csv"), "w") as f:
        f.write("fixture_id,index,value\n")
        for name, series in fixtures.items():
            for i, v in enumerate(series):
                f.write(f"{name},{i},{float(v)!r}\n")

    with open(os.path.join(fixdir, "catch24_expected.csv"), "w") as f:
        f.write("feature_name,input_fixture_id,expected_value\n")
        for name, series in fixtures.items():
            for feat, val in catch24_all(series).items():
                f.write(f"{feat},{name},{float(val)!r}\n")
    print(f"wrote fixtures for {len(fixtures)} series to {fixdir}")


if __name__ == "__main__":
    main()
