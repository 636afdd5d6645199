#pragma once

// Seeded generators for the seven tasks. Every emitted pair's label is
// re-derived through the semantic labeler before it leaves the generator; a
// mismatch aborts, it is never repaired.

#include <cstdint>
#include <string>
#include <vector>

#include "cforge/dataset.hpp"
#include "cforge/logic.hpp"
#include "cforge/realization.hpp"

namespace cforge {

// 1 SimpleNegation, 2 BooleanCoordination, 3 Quantification,
// 4 DefiniteDescription, 5 Comparatives, 6 Counting, 7 Mixed.
std::string task_name(int task);

struct IntRange {
    int lo = 0;
    int hi = 0;
};

enum class Task6Premise : std::uint8_t { Dual, Single, Mixed };

struct TaskConfig {
    int task = 1;
    std::size_t train_size = 10000;
    std::size_t test_size = 1000;
    std::uint64_t seed = 0;
    IntRange facts_range{2, 12};        // task 1 premise facts
    IntRange order_facts_range{4, 10};  // task 5 order atoms
    IntRange count_range{1, 30};        // task 6 counting indices
    IntRange coordination_range{2, 4};  // task 2 coordinated agents
    VocabMode vocab_mode = VocabMode::Disjoint;
    Task6Premise task6_premise = Task6Premise::Mixed;
    JoinStyle join = JoinStyle::Comma;
    double leak_sigma = 6.0;  // chi-square warning threshold, in sigmas

    void validate() const;  // throws DataError
};

struct ConstantPool {
    std::vector<Constant> persons;
    std::vector<Constant> places;

    // x1..x40 / p1..p40; large enough for every default template.
    static ConstantPool standard();
};

// Exactly `count` symbolic pairs, half of them contradictions, deterministic
// in (cfg, pool, count, stream_seed). Labels are generator-constructed and
// re-verified; no realized-text deduplication happens at this level.
std::vector<SymbolicPair> generate_pairs(const TaskConfig& cfg, const ConstantPool& pool,
                                         std::size_t count, std::uint64_t stream_seed);

// Task 7: a balanced uniform mixture over tasks 1..6. `cfgs` supplies the
// per-task knobs (index 0 -> task 1, ...). template_id keeps the origin task.
std::vector<SymbolicPair> generate_mixed(const std::vector<TaskConfig>& cfgs, std::size_t total,
                                         std::uint64_t seed);

// Generates, realizes and deduplicates the train/test splits. In Disjoint
// mode the two lexicons must have disjoint name inventories per sort; in
// FullIntersection mode the test side reuses lex_train.
std::pair<DatasetSplit, DatasetSplit> make_split(const TaskConfig& cfg, const Lexicon& lex_train,
                                                 const Lexicon& lex_test);

// Highest task whose characteristic operator appears in the formula
// (visit/negation 1, conjunction 2, quantifiers 3, description 4,
// comparatives 5, counting 6). Used by the hierarchy checks.
int operator_intro_level(const Formula& f);
int operator_intro_level(const SymbolicPair& pair);

}  // namespace cforge
