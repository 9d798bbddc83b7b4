#include "collarml/metrics.hpp"

#include <algorithm>
#include <map>

#include "collarml/errors.hpp"

namespace collarml {

MetricsReport compute_metrics(const std::vector<Behaviour>& actual,
                              const std::vector<Behaviour>& predicted,
                              const std::vector<Behaviour>& classes) {
    if (actual.size() != predicted.size()) {
        throw ContractError("compute_metrics: label vectors differ in length");
    }
    const std::size_t K = classes.size();
    if (K == 0) throw ContractError("compute_metrics: empty class list");
    auto index_of = [&](Behaviour b) {
        const auto it = std::find(classes.begin(), classes.end(), b);
        if (it == classes.end()) throw ContractError("compute_metrics: label outside class list");
        return static_cast<std::size_t>(it - classes.begin());
    };

    MetricsReport report;
    report.n_test_windows = actual.size();
    report.confusion.assign(K * K, 0);
    for (std::size_t i = 0; i < actual.size(); ++i) {
        ++report.confusion[index_of(actual[i]) * K + index_of(predicted[i])];
    }

    report.per_class.resize(K);
    double sens_sum = 0.0;
    for (std::size_t c = 0; c < K; ++c) {
        std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t p = 0; p < K; ++p) {
                const std::size_t count = report.confusion[a * K + p];
                if (a == c && p == c) tp += count;
                else if (a == c) fn += count;
                else if (p == c) fp += count;
                else tn += count;
            }
        }
        ClassMetrics& m = report.per_class[c];
        m.sensitivity = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        m.specificity = tn + fp > 0 ? static_cast<double>(tn) / static_cast<double>(tn + fp) : 0.0;
        if (tp + fp > 0) {
            m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        } else {
            m.precision = 0.0;
            m.precision_defined = false;
        }
        sens_sum += m.sensitivity;
    }
    report.balanced_accuracy = sens_sum / static_cast<double>(K);
    return report;
}

double cohens_kappa(const std::vector<LabelCode>& a, const std::vector<LabelCode>& b) {
    if (a.size() != b.size()) throw ContractError("cohens_kappa: sequences differ in length");
    if (a.empty()) throw ContractError("cohens_kappa: empty sequences");
    const double n = static_cast<double>(a.size());

    std::map<LabelCode, double> pa, pb;
    double agree = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa[a[i]] += 1.0;
        pb[b[i]] += 1.0;
        if (a[i] == b[i]) agree += 1.0;
    }
    const double po = agree / n;
    double pe = 0.0;
    for (const auto& [label, ca] : pa) {
        const auto it = pb.find(label);
        if (it != pb.end()) pe += (ca / n) * (it->second / n);
    }
    if (pe >= 1.0) return 1.0;  // both raters constant and equal
    return (po - pe) / (1.0 - pe);
}

}  // namespace collarml
