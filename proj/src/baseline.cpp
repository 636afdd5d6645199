#include "cforge/baseline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "cforge/rng.hpp"
#include "json.hpp"

namespace cforge {

std::uint16_t Document::count_of(std::uint32_t feature) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), feature,
                               [](const auto& entry, std::uint32_t f) { return entry.first < f; });
    return it != counts.end() && it->first == feature ? it->second : 0;
}

namespace {

std::string document_text(const RealizedPair& ex) {
    std::string doc = ex.premise_text;
    if (!doc.empty() && !ex.hypothesis_text.empty()) doc += " ";
    doc += ex.hypothesis_text;
    return doc;
}

Document make_document(const std::string& text, const BowSpace& space) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& tok : tokenize(text)) {
        auto it = space.index.find(tok);
        if (it != space.index.end()) ++counts[it->second];
    }
    Document doc;
    doc.counts.reserve(counts.size());
    for (const auto& [f, c] : counts)
        doc.counts.emplace_back(f, static_cast<std::uint16_t>(std::min<std::uint32_t>(c, 65535)));
    return doc;
}

}  // namespace

BowSpace build_bow_space(const DatasetSplit& split) {
    std::set<std::string> vocab;
    for (const auto& ex : split.examples)
        for (const auto& tok : tokenize(document_text(ex))) vocab.insert(tok);
    BowSpace space;
    space.tokens.assign(vocab.begin(), vocab.end());
    space.doc_count.assign(space.tokens.size(), 0);
    for (std::uint32_t i = 0; i < space.tokens.size(); ++i) space.index[space.tokens[i]] = i;
    for (const auto& ex : split.examples) {
        std::set<std::string> seen;
        for (const auto& tok : tokenize(document_text(ex)))
            if (seen.insert(tok).second) ++space.doc_count[space.index[tok]];
    }
    return space;
}

FeatureMatrix featurize(const DatasetSplit& split, const BowSpace& space) {
    FeatureMatrix m;
    m.n_features = space.tokens.size();
    m.docs.reserve(split.examples.size());
    m.labels.reserve(split.examples.size());
    for (const auto& ex : split.examples) {
        m.docs.push_back(make_document(document_text(ex), space));
        m.labels.push_back(ex.label == Label::Contradiction ? 1 : 0);
    }
    return m;
}

std::uint8_t DecisionTree::predict(const Document& doc) const {
    std::int32_t at = 0;
    for (;;) {
        const TreeNode& n = nodes[static_cast<std::size_t>(at)];
        if (n.feature < 0) return n.leaf_label;
        at = static_cast<float>(doc.count_of(static_cast<std::uint32_t>(n.feature))) <= n.threshold
                 ? n.left
                 : n.right;
    }
}

std::uint8_t ForestModel::predict(const Document& doc) const {
    std::size_t ones = 0;
    for (const auto& t : trees) ones += t.predict(doc);
    return 2 * ones > trees.size() ? 1 : 0;
}

namespace {

constexpr int kValueCap = 63;  // token counts above this share a histogram bin

struct TreeBuilder {
    const FeatureMatrix& data;
    const ForestParams& params;
    Rng rng;
    std::size_t mtry;

    DecisionTree tree;
    // feature -> slot in the per-node histograms, stamped per node
    std::vector<std::int32_t> slot_of_feature;
    std::vector<std::array<std::array<std::uint32_t, 2>, kValueCap + 1>> hist;

    TreeBuilder(const FeatureMatrix& data, const ForestParams& params, std::uint64_t seed)
        : data(data), params(params), rng(seed) {
        mtry = params.features_per_split > 0
                   ? static_cast<std::size_t>(params.features_per_split)
                   : std::max<std::size_t>(
                         1, static_cast<std::size_t>(std::sqrt(static_cast<double>(data.n_features))));
        mtry = std::min(mtry, data.n_features);
        slot_of_feature.assign(data.n_features, -1);
        hist.resize(mtry);
    }

    std::int32_t grow(std::vector<std::uint32_t>& rows, int depth) {
        std::array<std::uint32_t, 2> totals{0, 0};
        for (auto r : rows) ++totals[data.labels[r]];
        std::uint8_t majority = totals[1] > totals[0] ? 1 : 0;

        bool stop = totals[0] == 0 || totals[1] == 0 ||
                    rows.size() < 2 * static_cast<std::size_t>(params.min_leaf) ||
                    (params.max_depth > 0 && depth >= params.max_depth);
        if (!stop) {
            auto split = best_split(rows, totals);
            if (split.feature >= 0) {
                std::vector<std::uint32_t> left, right;
                left.reserve(rows.size());
                right.reserve(rows.size());
                for (auto r : rows) {
                    if (static_cast<float>(data.docs[r].count_of(
                            static_cast<std::uint32_t>(split.feature))) <= split.threshold)
                        left.push_back(r);
                    else
                        right.push_back(r);
                }
                rows.clear();
                rows.shrink_to_fit();
                std::int32_t id = static_cast<std::int32_t>(tree.nodes.size());
                tree.nodes.push_back(TreeNode{split.feature, split.threshold, -1, -1, 0});
                std::int32_t l = grow(left, depth + 1);
                std::int32_t r = grow(right, depth + 1);
                tree.nodes[static_cast<std::size_t>(id)].left = l;
                tree.nodes[static_cast<std::size_t>(id)].right = r;
                return id;
            }
        }
        std::int32_t id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{-1, 0, -1, -1, majority});
        return id;
    }

    struct Split {
        std::int32_t feature = -1;
        float threshold = 0;
    };

    Split best_split(const std::vector<std::uint32_t>& rows,
                     const std::array<std::uint32_t, 2>& totals) {
        std::vector<std::size_t> sampled = rng.sample_indices(data.n_features, mtry);
        std::sort(sampled.begin(), sampled.end());
        for (std::size_t s = 0; s < sampled.size(); ++s) {
            slot_of_feature[sampled[s]] = static_cast<std::int32_t>(s);
            for (auto& row : hist[s]) row = {0, 0};
        }
        for (auto r : rows) {
            std::uint8_t label = data.labels[r];
            for (const auto& [f, c] : data.docs[r].counts) {
                std::int32_t slot = slot_of_feature[f];
                if (slot >= 0) ++hist[static_cast<std::size_t>(slot)][std::min<int>(c, kValueCap)][label];
            }
        }

        double n = static_cast<double>(rows.size());
        double parent =
            1.0 - (static_cast<double>(totals[0]) / n) * (static_cast<double>(totals[0]) / n) -
            (static_cast<double>(totals[1]) / n) * (static_cast<double>(totals[1]) / n);
        // Any valid split is taken, zero-gain included; with feature
        // subsampling the informative features turn up further down. Leaves
        // stop at purity or the size/depth limits, with no pruning.
        double best_gain = -std::numeric_limits<double>::infinity();
        Split best;

        for (std::size_t s = 0; s < sampled.size(); ++s) {
            auto& h = hist[s];
            std::array<std::uint32_t, 2> nz{0, 0};
            for (int v = 1; v <= kValueCap; ++v) {
                nz[0] += h[v][0];
                nz[1] += h[v][1];
            }
            h[0][0] = totals[0] - nz[0];
            h[0][1] = totals[1] - nz[1];

            std::array<std::uint32_t, 2> left{0, 0};
            for (int v = 0; v < kValueCap; ++v) {
                left[0] += h[v][0];
                left[1] += h[v][1];
                std::uint32_t ln = left[0] + left[1];
                std::uint32_t rn = static_cast<std::uint32_t>(rows.size()) - ln;
                if (ln == 0) continue;
                if (rn == 0) break;
                if (ln < static_cast<std::uint32_t>(params.min_leaf) ||
                    rn < static_cast<std::uint32_t>(params.min_leaf))
                    continue;
                double lp0 = static_cast<double>(left[0]) / ln;
                double lp1 = static_cast<double>(left[1]) / ln;
                double rp0 = static_cast<double>(totals[0] - left[0]) / rn;
                double rp1 = static_cast<double>(totals[1] - left[1]) / rn;
                double gini = (ln * (1.0 - lp0 * lp0 - lp1 * lp1) +
                               rn * (1.0 - rp0 * rp0 - rp1 * rp1)) /
                              n;
                double gain = parent - gini;
                // strict improvement keeps the lowest (feature, threshold) on ties
                if (gain > best_gain) {
                    best_gain = gain;
                    best.feature = static_cast<std::int32_t>(sampled[s]);
                    best.threshold = static_cast<float>(v) + 0.5f;
                }
            }
        }
        for (auto f : sampled) slot_of_feature[f] = -1;
        return best;
    }
};

}  // namespace

ForestModel train_forest(const FeatureMatrix& data, const ForestParams& params) {
    std::size_t n = data.docs.size();
    if (n < 2) throw DataError("train_forest: need at least two examples");
    bool has0 = false, has1 = false;
    for (auto l : data.labels) (l ? has1 : has0) = true;
    if (!has0 || !has1) throw DataError("train_forest: training data has a single class");
    if (params.n_trees < 1) throw DataError("train_forest: need at least one tree");

    ForestModel model;
    model.params = params;
    model.trees.resize(static_cast<std::size_t>(params.n_trees));
    std::vector<std::vector<std::uint8_t>> in_bag(
        static_cast<std::size_t>(params.n_trees));

    auto build_one = [&](int t) {
        std::uint64_t tree_seed = derive_seed(params.seed, "tree", static_cast<std::uint64_t>(t));
        TreeBuilder builder(data, params, tree_seed);
        std::vector<std::uint32_t> rows;
        rows.reserve(n);
        if (params.bootstrap) {
            auto& bag = in_bag[static_cast<std::size_t>(t)];
            bag.assign(n, 0);
            Rng boot(derive_seed(tree_seed, "bootstrap"));
            for (std::size_t i = 0; i < n; ++i) {
                std::uint32_t r = static_cast<std::uint32_t>(boot.below(n));
                rows.push_back(r);
                bag[r] = 1;
            }
            std::sort(rows.begin(), rows.end());
        } else {
            for (std::uint32_t i = 0; i < n; ++i) rows.push_back(i);
        }
        builder.grow(rows, 0);
        model.trees[static_cast<std::size_t>(t)] = std::move(builder.tree);
    };

    int jobs = std::max(1, params.jobs);
    if (jobs == 1) {
        for (int t = 0; t < params.n_trees; ++t) build_one(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (int t = next.fetch_add(1); t < params.n_trees; t = next.fetch_add(1))
                    build_one(t);
            });
        }
        for (auto& w : workers) w.join();
    }

    if (params.bootstrap) {
        std::uint64_t correct = 0, counted = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t votes = 0, voters = 0;
            for (int t = 0; t < params.n_trees; ++t) {
                if (in_bag[static_cast<std::size_t>(t)][i]) continue;
                votes += model.trees[static_cast<std::size_t>(t)].predict(data.docs[i]);
                ++voters;
            }
            if (voters == 0) continue;
            std::uint8_t pred = 2 * votes > voters ? 1 : 0;
            ++counted;
            if (pred == data.labels[i]) ++correct;
        }
        model.oob_accuracy =
            counted ? static_cast<double>(correct) / static_cast<double>(counted) : -1;
    }
    return model;
}

EvalResult evaluate(const ForestModel& model, const DatasetSplit& split, const BowSpace& space) {
    if (split.examples.empty()) throw DataError("evaluate: empty split");
    FeatureMatrix m = featurize(split, space);
    EvalResult result;
    std::uint64_t correct = 0;
    for (std::size_t i = 0; i < m.docs.size(); ++i) {
        std::uint8_t pred = model.predict(m.docs[i]);
        ++result.confusion[m.labels[i]][pred];
        if (pred == m.labels[i]) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(m.docs.size());
    return result;
}

std::vector<SweepPoint> proportion_sweep(const DatasetSplit& train, const DatasetSplit& test,
                                         const std::vector<double>& proportions,
                                         const ForestParams& params) {
    std::vector<std::size_t> order(train.examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(params.seed, "sweep-shuffle"));
    rng.shuffle(order);

    std::vector<SweepPoint> points;
    for (double p : proportions) {
        if (!(p > 0.0) || p > 1.0)
            throw DataError("sweep proportion must be in (0, 1]: " + std::to_string(p));
        std::size_t k = static_cast<std::size_t>(
            std::llround(p * static_cast<double>(train.examples.size())));
        if (k < 2) throw DataError("sweep proportion yields fewer than two examples");
        DatasetSplit prefix;
        prefix.meta = train.meta;
        prefix.examples.reserve(k);
        for (std::size_t i = 0; i < k; ++i) prefix.examples.push_back(train.examples[order[i]]);
        BowSpace space = build_bow_space(prefix);
        ForestModel model = train_forest(featurize(prefix, space), params);
        EvalResult result = evaluate(model, test, space);
        points.push_back({p, k, result.accuracy, model.oob_accuracy});
    }
    return points;
}

void save_forest(const std::string& path, const ForestModel& model, const BowSpace& space) {
    nlohmann::ordered_json j;
    j["format"] = "contraforge-forest";
    j["version"] = kVersion;
    j["params"] = {{"n_trees", model.params.n_trees},
                   {"max_depth", model.params.max_depth},
                   {"min_leaf", model.params.min_leaf},
                   {"features_per_split", model.params.features_per_split},
                   {"bootstrap", model.params.bootstrap},
                   {"seed", model.params.seed}};
    j["oob_accuracy"] = model.oob_accuracy;
    j["vocab"] = space.tokens;
    j["doc_count"] = space.doc_count;
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const auto& tree : model.trees) {
        nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
        for (const auto& n : tree.nodes)
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_label});
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model: " + path);
    out << j.dump() << '\n';
}

std::pair<ForestModel, BowSpace> load_forest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model: " + path);
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("format") != "contraforge-forest") throw DataError(path + ": not a forest file");
        ForestModel model;
        const auto& p = j.at("params");
        model.params.n_trees = p.at("n_trees").get<int>();
        model.params.max_depth = p.at("max_depth").get<int>();
        model.params.min_leaf = p.at("min_leaf").get<int>();
        model.params.features_per_split = p.at("features_per_split").get<int>();
        model.params.bootstrap = p.at("bootstrap").get<bool>();
        model.params.seed = p.at("seed").get<std::uint64_t>();
        model.oob_accuracy = j.at("oob_accuracy").get<double>();
        BowSpace space;
        space.tokens = j.at("vocab").get<std::vector<std::string>>();
        space.doc_count = j.at("doc_count").get<std::vector<std::uint32_t>>();
        for (std::uint32_t i = 0; i < space.tokens.size(); ++i) space.index[space.tokens[i]] = i;
        for (const auto& tnodes : j.at("trees")) {
            DecisionTree tree;
            for (const auto& n : tnodes) {
                tree.nodes.push_back(TreeNode{n.at(0).get<std::int32_t>(), n.at(1).get<float>(),
                                              n.at(2).get<std::int32_t>(),
                                              n.at(3).get<std::int32_t>(),
                                              n.at(4).get<std::uint8_t>()});
            }
            model.trees.push_back(std::move(tree));
        }
        return {std::move(model), std::move(space)};
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace cforge
