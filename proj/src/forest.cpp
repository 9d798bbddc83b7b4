#include "collarml/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "collarml/errors.hpp"
#include "collarml/rng.hpp"

namespace collarml {

namespace {

struct BuildContext {
    const FeatureMatrix& X;
    const std::vector<std::size_t>& class_index;  // per row
    const std::vector<double>& row_weight;
    std::size_t num_classes;
    const ForestSpec& spec;
    std::size_t features_per_split;
    Rng* rng;
    std::vector<TreeNode>* nodes;
};

double impurity(const std::vector<double>& cw, SplitCriterion criterion) {
    double total = 0.0;
    for (double v : cw) total += v;
    if (total <= 0.0) return 0.0;
    if (criterion == SplitCriterion::gini) {
        double s = 0.0;
        for (double v : cw) {
            const double p = v / total;
            s += p * p;
        }
        return 1.0 - s;
    }
    double h = 0.0;
    for (double v : cw) {
        if (v > 0.0) {
            const double p = v / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

struct BestSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = 0.0;
};

// Exhaustive scan over (candidate feature, midpoint threshold); ties break
// to the lowest feature index, then the lowest threshold.
BestSplit find_split(const BuildContext& ctx, const std::vector<std::size_t>& rows,
                     const std::vector<double>& node_cw, double node_imp,
                     const std::vector<std::size_t>& candidates) {
    BestSplit best;
    double node_w = 0.0;
    for (double v : node_cw) node_w += v;

    std::vector<std::size_t> order(rows.size());
    std::vector<double> left_cw(ctx.num_classes);
    for (std::size_t f : candidates) {
        order.assign(rows.begin(), rows.end());
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ctx.X.at(a, f) < ctx.X.at(b, f);
        });
        std::fill(left_cw.begin(), left_cw.end(), 0.0);
        double left_w = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const std::size_t r = order[i];
            left_cw[ctx.class_index[r]] += ctx.row_weight[r];
            left_w += ctx.row_weight[r];
            const double a = ctx.X.at(r, f);
            const double b = ctx.X.at(order[i + 1], f);
            if (a == b) continue;
            const double threshold = a + (b - a) / 2.0;
            std::vector<double> right_cw(ctx.num_classes);
            for (std::size_t k = 0; k < ctx.num_classes; ++k) {
                right_cw[k] = node_cw[k] - left_cw[k];
            }
            const double right_w = node_w - left_w;
            const double child = (left_w * impurity(left_cw, ctx.spec.criterion) +
                                  right_w * impurity(right_cw, ctx.spec.criterion)) /
                                 node_w;
            const double decrease = node_imp - child;
            const bool better =
                !best.found || decrease > best.decrease + 1e-12 ||
                (std::abs(decrease - best.decrease) <= 1e-12 &&
                 (f < best.feature || (f == best.feature && threshold < best.threshold)));
            if (better && decrease > 1e-12) {
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
                best.decrease = decrease;
            }
        }
    }
    return best;
}

std::uint32_t build_node(const BuildContext& ctx, std::vector<std::size_t>&& rows,
                         std::size_t depth) {
    std::vector<double> cw(ctx.num_classes, 0.0);
    for (std::size_t r : rows) cw[ctx.class_index[r]] += ctx.row_weight[r];

    const auto make_leaf = [&]() {
        TreeNode leaf;
        double total = 0.0;
        for (double v : cw) total += v;
        leaf.distribution.resize(ctx.num_classes);
        for (std::size_t k = 0; k < ctx.num_classes; ++k) {
            leaf.distribution[k] = total > 0.0 ? cw[k] / total : 0.0;
        }
        ctx.nodes->push_back(std::move(leaf));
        return static_cast<std::uint32_t>(ctx.nodes->size() - 1);
    };

    const double node_imp = impurity(cw, ctx.spec.criterion);
    const bool depth_ok = !ctx.spec.max_depth || depth < *ctx.spec.max_depth;
    if (!depth_ok || rows.size() < ctx.spec.min_samples_split || node_imp <= 0.0) {
        return make_leaf();
    }

    std::vector<std::size_t> candidates;
    if (ctx.features_per_split >= ctx.X.cols()) {
        candidates.resize(ctx.X.cols());
        std::iota(candidates.begin(), candidates.end(), 0);
    } else {
        candidates = ctx.rng->sample_without_replacement(ctx.X.cols(), ctx.features_per_split);
        std::sort(candidates.begin(), candidates.end());
    }

    const BestSplit split = find_split(ctx, rows, cw, node_imp, candidates);
    if (!split.found) return make_leaf();

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
        (ctx.X.at(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) return make_leaf();
    rows.clear();
    rows.shrink_to_fit();

    const auto index = static_cast<std::uint32_t>(ctx.nodes->size());
    TreeNode node;
    node.feature = static_cast<std::uint32_t>(split.feature);
    node.threshold = split.threshold;
    ctx.nodes->push_back(std::move(node));
    const std::uint32_t left = build_node(ctx, std::move(left_rows), depth + 1);
    const std::uint32_t right = build_node(ctx, std::move(right_rows), depth + 1);
    (*ctx.nodes)[index].left = left;
    (*ctx.nodes)[index].right = right;
    return index;
}

}  // namespace

double gini_impurity(const std::vector<double>& class_weights) {
    return impurity(class_weights, SplitCriterion::gini);
}

double entropy_impurity(const std::vector<double>& class_weights) {
    return impurity(class_weights, SplitCriterion::entropy);
}

ForestModel forest_fit(const FeatureMatrix& X, const ForestSpec& spec) {
    if (spec.n_estimators < 1) throw ContractError("forest_fit: n_estimators must be >= 1");
    if (spec.min_samples_split < 2) throw ContractError("forest_fit: min_samples_split must be >= 2");
    const std::size_t n = X.rows();
    if (n < 2) throw ContractError("forest_fit: need at least 2 rows");
    if (X.labels.size() != n) throw ContractError("forest_fit: label count mismatch");
    for (double v : X.values) {
        if (std::isnan(v)) throw DataError("forest_fit: NaN in feature matrix");
    }

    ForestModel model;
    model.spec = spec;
    model.feature_names = X.feature_names;
    {
        std::set<Behaviour> seen(X.labels.begin(), X.labels.end());
        model.classes.assign(seen.begin(), seen.end());
    }
    const std::size_t K = model.classes.size();
    if (K < 2) throw ContractError("forest_fit: need at least 2 classes");

    std::vector<std::size_t> class_index(n);
    std::vector<double> class_count(K, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto it = std::find(model.classes.begin(), model.classes.end(), X.labels[r]);
        class_index[r] = static_cast<std::size_t>(it - model.classes.begin());
        class_count[class_index[r]] += 1.0;
    }
    std::vector<double> row_weight(n, 1.0);
    if (spec.class_weight == ClassWeight::balanced) {
        for (std::size_t r = 0; r < n; ++r) {
            row_weight[r] = static_cast<double>(n) /
                            (static_cast<double>(K) * class_count[class_index[r]]);
        }
    }

    std::size_t fps = X.cols();
    if (spec.max_features == MaxFeatures::sqrt_) {
        fps = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(X.cols()))));
    } else if (spec.max_features == MaxFeatures::log2_) {
        fps = std::max<std::size_t>(1, static_cast<std::size_t>(std::log2(static_cast<double>(X.cols()))));
    }

    model.trees.resize(spec.n_estimators);
    for (std::size_t t = 0; t < spec.n_estimators; ++t) {
        Rng rng = Rng::derive(spec.seed, t);
        std::vector<std::size_t> rows;
        rows.reserve(n);
        if (spec.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) rows.push_back(rng.uniform_index(n));
        } else {
            rows.resize(n);
            std::iota(rows.begin(), rows.end(), 0);
        }
        BuildContext ctx{X, class_index, row_weight, K, spec, fps, &rng, &model.trees[t]};
        build_node(ctx, std::move(rows), 0);
    }
    return model;
}

std::vector<double> forest_proba(const ForestModel& model, const FeatureMatrix& X) {
    if (X.feature_names != model.feature_names) {
        throw ContractError("forest_proba: feature schema mismatch");
    }
    const std::size_t n = X.rows();
    const std::size_t K = model.classes.size();
    std::vector<double> out(n * K, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& tree : model.trees) {
            std::uint32_t i = 0;
            while (tree[i].feature != TreeNode::kLeaf) {
                i = X.at(r, tree[i].feature) <= tree[i].threshold ? tree[i].left : tree[i].right;
            }
            for (std::size_t k = 0; k < K; ++k) out[r * K + k] += tree[i].distribution[k];
        }
        for (std::size_t k = 0; k < K; ++k) {
            out[r * K + k] /= static_cast<double>(model.trees.size());
        }
    }
    return out;
}

std::vector<Behaviour> forest_predict(const ForestModel& model, const FeatureMatrix& X) {
    const auto proba = forest_proba(model, X);
    const std::size_t K = model.classes.size();
    std::vector<Behaviour> out(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < K; ++k) {
            if (proba[r * K + k] > proba[r * K + best]) best = k;
        }
        out[r] = model.classes[best];
    }
    return out;
}

}  // namespace collarml
