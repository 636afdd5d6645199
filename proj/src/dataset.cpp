#include "cforge/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cforge/rng.hpp"
#include "json.hpp"

namespace cforge {

std::string to_string(VocabMode m) {
    return m == VocabMode::Disjoint ? "disjoint" : "intersect";
}

VocabMode vocab_mode_from_string(std::string_view s) {
    if (s == "disjoint") return VocabMode::Disjoint;
    if (s == "intersect" || s == "full-intersection") return VocabMode::FullIntersection;
    throw DataError("unknown vocab mode: '" + std::string(s) + "'");
}

std::string to_string(SplitRole r) { return r == SplitRole::Train ? "train" : "test"; }

std::string to_string(AblationMode m) {
    switch (m) {
        case AblationMode::NoiseLabel: return "noise-label";
        case AblationMode::PremiseOnly: return "premise-only";
        default: return "hypothesis-only";
    }
}

AblationMode ablation_from_string(std::string_view s) {
    if (s == "noise-label") return AblationMode::NoiseLabel;
    if (s == "premise-only") return AblationMode::PremiseOnly;
    if (s == "hypothesis-only") return AblationMode::HypothesisOnly;
    throw DataError("unknown ablation mode: '" + std::string(s) + "'");
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void check_tsv_safe(const std::string& field, const std::string& path) {
    if (field.find('\t') != std::string::npos || field.find('\n') != std::string::npos)
        throw DataError(path + ": field contains a tab or newline, not TSV-safe");
}

}  // namespace

void write_split(const DatasetSplit& split, const std::string& path, FileFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write: " + path);
    if (format == FileFormat::Tsv) {
        out << "id\tpremise\thypothesis\tlabel\n";
        for (const auto& ex : split.examples) {
            check_tsv_safe(ex.premise_text, path);
            check_tsv_safe(ex.hypothesis_text, path);
            out << ex.id << '\t' << ex.premise_text << '\t' << ex.hypothesis_text << '\t'
                << (ex.label == Label::Contradiction ? '1' : '0') << '\n';
        }
    } else {
        for (const auto& ex : split.examples) {
            nlohmann::ordered_json rec;
            rec["id"] = ex.id;
            rec["task"] = ex.task;
            rec["language"] = to_string(ex.language);
            rec["premise"] = ex.premise_text;
            rec["hypothesis"] = ex.hypothesis_text;
            rec["label"] = to_string(ex.label);
            nlohmann::ordered_json logical = nlohmann::ordered_json::array();
            for (const auto& f : ex.symbolic.premise) logical.push_back(print_formula(f));
            rec["logical_premise"] = std::move(logical);
            rec["logical_hypothesis"] =
                ex.symbolic.hypothesis.empty() ? "" : print_formula(ex.symbolic.hypothesis);
            rec["template_id"] = ex.symbolic.template_id;
            rec["seed"] = ex.seed;
            out << rec.dump() << '\n';
        }
    }
    if (!out) throw DataError("write failed: " + path);
}

DatasetSplit read_split(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    DatasetSplit split;
    split.meta.generator_version = kVersion;

    std::string line;
    std::size_t lineno = 0;
    std::set<std::string> ids;
    bool tsv = ends_with(path, ".tsv");
    if (!tsv && !ends_with(path, ".jsonl"))
        throw DataError(path + ": unsupported format (expected .jsonl or .tsv)");

    if (tsv) {
        if (!std::getline(in, line) || line != "id\tpremise\thypothesis\tlabel")
            throw DataError(path + ":1: bad TSV header");
        lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::vector<std::string> cols;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= line.size(); ++i) {
                if (i == line.size() || line[i] == '\t') {
                    cols.push_back(line.substr(start, i - start));
                    start = i + 1;
                }
            }
            if (cols.size() != 4)
                throw DataError(path + ":" + std::to_string(lineno) + ": expected 4 columns");
            RealizedPair ex;
            ex.id = cols[0];
            ex.premise_text = cols[1];
            ex.hypothesis_text = cols[2];
            ex.label = label_from_string(cols[3]);
            ex.symbolic.label = ex.label;
            split.examples.push_back(std::move(ex));
        }
    } else {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            nlohmann::json rec;
            try {
                rec = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
            try {
                RealizedPair ex;
                ex.id = rec.at("id").get<std::string>();
                ex.task = rec.at("task").get<int>();
                ex.language = language_from_string(rec.at("language").get<std::string>());
                ex.premise_text = rec.at("premise").get<std::string>();
                ex.hypothesis_text = rec.at("hypothesis").get<std::string>();
                ex.label = label_from_string(rec.at("label").get<std::string>());
                for (const auto& lf : rec.at("logical_premise"))
                    ex.symbolic.premise.push_back(parse_formula(lf.get<std::string>()));
                std::string lh = rec.at("logical_hypothesis").get<std::string>();
                if (!lh.empty()) ex.symbolic.hypothesis = parse_formula(lh);
                ex.symbolic.label = ex.label;
                ex.symbolic.task = ex.task;
                ex.symbolic.template_id = rec.at("template_id").get<std::string>();
                ex.seed = rec.at("seed").get<std::uint64_t>();
                split.examples.push_back(std::move(ex));
            } catch (const nlohmann::json::exception& e) {
                throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
            } catch (const ParseError& e) {
                throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }

    if (split.examples.empty()) throw DataError(path + ": empty split");
    std::size_t contradictions = 0;
    for (const auto& ex : split.examples) {
        if (!ids.insert(ex.id).second)
            throw DataError(path + ": duplicate id '" + ex.id + "'");
        if (ex.label == Label::Contradiction) ++contradictions;
    }
    if (contradictions * 2 != split.examples.size())
        split.warnings.push_back("label imbalance: " + std::to_string(contradictions) + "/" +
                                 std::to_string(split.examples.size()) + " contradictions");
    if (!split.examples.empty()) {
        split.meta.task = split.examples.front().task;
        split.meta.language = split.examples.front().language;
    }
    return split;
}

TaskStats compute_stats(const DatasetSplit& train, const DatasetSplit& test) {
    if (train.examples.empty() || test.examples.empty())
        throw DataError("compute_stats: empty split");
    if (train.meta.task != test.meta.task)
        throw DataError("compute_stats: train/test task mismatch");
    if (train.meta.language != test.meta.language)
        throw DataError("compute_stats: train/test language mismatch");

    TaskStats stats;
    std::set<std::string> train_vocab, test_vocab;
    double words_sum = 0, chars_sum = 0;
    std::size_t n = 0;
    auto scan = [&](const DatasetSplit& split, std::set<std::string>& vocab) {
        for (const auto& ex : split.examples) {
            std::string doc = ex.premise_text;
            if (!doc.empty() && !ex.hypothesis_text.empty()) doc += " ";
            doc += ex.hypothesis_text;
            auto tokens = tokenize(doc);
            for (const auto& t : tokens) vocab.insert(t);
            words_sum += static_cast<double>(tokens.size());
            chars_sum += static_cast<double>(doc.size());
            stats.max_input_words = std::max(stats.max_input_words, tokens.size());
            stats.max_input_chars = std::max(stats.max_input_chars, doc.size());
            ++n;
        }
    };
    scan(train, train_vocab);
    scan(test, test_vocab);
    stats.mean_input_words = words_sum / static_cast<double>(n);
    stats.mean_input_chars = chars_sum / static_cast<double>(n);
    std::set<std::string> all = train_vocab;
    all.insert(test_vocab.begin(), test_vocab.end());
    stats.vocab_size = all.size();
    for (const auto& t : train_vocab)
        if (test_vocab.count(t)) stats.intersection_tokens.push_back(t);
    stats.vocab_intersection = stats.intersection_tokens.size();
    return stats;
}

DatasetSplit ablate(const DatasetSplit& split, AblationMode mode, std::uint64_t seed) {
    DatasetSplit out = split;
    out.meta.ablation = mode;
    out.warnings.clear();
    for (std::size_t i = 0; i < out.examples.size(); ++i) {
        auto& ex = out.examples[i];
        switch (mode) {
            case AblationMode::NoiseLabel: {
                Rng rng(derive_seed(seed, "noise-label", i));
                ex.label = rng.coin() ? Label::Contradiction : Label::NonContradiction;
                ex.symbolic.label = ex.label;
                break;
            }
            case AblationMode::PremiseOnly:
                ex.hypothesis_text.clear();
                ex.symbolic.hypothesis = Formula();
                break;
            case AblationMode::HypothesisOnly:
                ex.premise_text.clear();
                ex.symbolic.premise.clear();
                break;
        }
    }
    return out;
}

}  // namespace cforge
