#pragma once

// Split persistence (JSONL with logical forms, TSV for plain classifiers),
// vocabulary/length statistics, and the dataset ablation transforms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cforge/realization.hpp"

namespace cforge {

enum class VocabMode : std::uint8_t { Disjoint, FullIntersection };
std::string to_string(VocabMode m);  // "disjoint" / "intersect"
VocabMode vocab_mode_from_string(std::string_view s);

enum class SplitRole : std::uint8_t { Train, Test };
std::string to_string(SplitRole r);

enum class AblationMode : std::uint8_t { NoiseLabel, PremiseOnly, HypothesisOnly };
std::string to_string(AblationMode m);
AblationMode ablation_from_string(std::string_view s);

struct SplitMeta {
    int task = 0;
    Language language = Language::English;
    VocabMode vocab_mode = VocabMode::Disjoint;
    std::uint64_t seed = 0;
    std::string generator_version;
    SplitRole split_role = SplitRole::Train;
    std::optional<AblationMode> ablation;
};

struct DatasetSplit {
    std::vector<RealizedPair> examples;
    SplitMeta meta;
    std::vector<std::string> warnings;  // generation-time sanity notes
};

enum class FileFormat : std::uint8_t { Jsonl, Tsv };

// Stable-field-order serialization; see the README for the record schema.
void write_split(const DatasetSplit& split, const std::string& path, FileFormat format);

// Validates labels and logical forms; imbalance is reported as a warning on
// the returned split, schema violations throw DataError with a line number.
DatasetSplit read_split(const std::string& path);

struct TaskStats {
    std::size_t vocab_size = 0;          // distinct tokens over train + test
    std::size_t vocab_intersection = 0;  // tokens occurring in both splits
    double mean_input_words = 0;
    double mean_input_chars = 0;
    std::size_t max_input_words = 0;
    std::size_t max_input_chars = 0;
    std::vector<std::string> intersection_tokens;
};

TaskStats compute_stats(const DatasetSplit& train, const DatasetSplit& test);

// NoiseLabel resamples labels uniformly (texts unchanged); PremiseOnly blanks
// the hypothesis; HypothesisOnly blanks the premise. Labels of the two
// field-blanking modes stay intact.
DatasetSplit ablate(const DatasetSplit& split, AblationMode mode, std::uint64_t seed);

}  // namespace cforge
