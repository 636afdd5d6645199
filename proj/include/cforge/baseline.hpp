#pragma once

// Bag-of-words featurization and a from-scratch random forest (CART trees,
// Gini impurity, threshold splits on token counts). Deterministic given the
// seed, including across thread counts.

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cforge/dataset.hpp"

namespace cforge {

struct BowSpace {
    std::vector<std::string> tokens;  // dense index -> token, sorted
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::uint32_t> doc_count;  // documents containing the token
};

struct Document {
    // (feature, count), sorted by feature; tokens outside the space are dropped
    std::vector<std::pair<std::uint32_t, std::uint16_t>> counts;

    std::uint16_t count_of(std::uint32_t feature) const;
};

struct FeatureMatrix {
    std::vector<Document> docs;
    std::vector<std::uint8_t> labels;  // 1 = contradiction
    std::size_t n_features = 0;
};

// The document is the concatenation of premise and hypothesis.
BowSpace build_bow_space(const DatasetSplit& split);
FeatureMatrix featurize(const DatasetSplit& split, const BowSpace& space);

struct ForestParams {
    int n_trees = 100;
    int max_depth = 0;          // 0 = unlimited
    int min_leaf = 1;
    int features_per_split = 0;  // 0 = floor(sqrt(n_features)), at least 1
    bool bootstrap = true;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    float threshold = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t leaf_label = 0;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    std::uint8_t predict(const Document& doc) const;
};

struct ForestModel {
    ForestParams params;
    std::vector<DecisionTree> trees;
    double oob_accuracy = -1;  // -1 when bootstrap is off

    // Majority vote; ties go to label 0 (non-contradiction).
    std::uint8_t predict(const Document& doc) const;
};

// Requires at least two examples and both labels present.
ForestModel train_forest(const FeatureMatrix& data, const ForestParams& params);

struct EvalResult {
    double accuracy = 0;
    std::array<std::array<std::uint64_t, 2>, 2> confusion{};  // [actual][predicted]
};

EvalResult evaluate(const ForestModel& model, const DatasetSplit& split, const BowSpace& space);

struct SweepPoint {
    double proportion = 0;
    std::size_t train_examples = 0;
    double accuracy = 0;
    double oob_accuracy = -1;
};

// Trains on seeded-shuffle prefixes of the training split, evaluating each
// model on the full test split.
std::vector<SweepPoint> proportion_sweep(const DatasetSplit& train, const DatasetSplit& test,
                                         const std::vector<double>& proportions,
                                         const ForestParams& params);

void save_forest(const std::string& path, const ForestModel& model, const BowSpace& space);
std::pair<ForestModel, BowSpace> load_forest(const std::string& path);

}  // namespace cforge
