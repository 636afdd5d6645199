#include "cforge/taskgen.hpp"

#include <map>

#include "cforge/semantics.hpp"
#include "doctest.h"
#include "gen_support.hpp"

using namespace cforge;

namespace {

std::string lexdir() { return CFORGE_BUNDLED_LEXDIR; }

TaskConfig cfg_for(int task, std::uint64_t seed) {
    TaskConfig cfg;
    cfg.task = task;
    cfg.seed = seed;
    return cfg;
}

std::size_t contradictions(const std::vector<SymbolicPair>& pairs) {
    std::size_t n = 0;
    for (const auto& p : pairs)
        if (p.label == Label::Contradiction) ++n;
    return n;
}

bool pairs_equal(const SymbolicPair& a, const SymbolicPair& b) {
    if (a.premise.size() != b.premise.size() || a.label != b.label ||
        a.template_id != b.template_id)
        return false;
    for (std::size_t i = 0; i < a.premise.size(); ++i)
        if (a.premise[i] != b.premise[i]) return false;
    return a.hypothesis == b.hypothesis;
}

}  // namespace

TEST_CASE("balance is exact for every task") {
    ConstantPool pool = ConstantPool::standard();
    for (int task = 1; task <= 7; ++task) {
        auto pairs = generate_pairs(cfg_for(task, 7), pool, 400, 7);
        CHECK(pairs.size() == 400);
        CHECK(contradictions(pairs) == 200);
    }
}

TEST_CASE("task 6 at scale: histogram is exactly half and half") {
    ConstantPool pool = ConstantPool::standard();
    auto pairs = generate_pairs(cfg_for(6, 7), pool, 10000, derive_seed(7, "train"));
    CHECK(pairs.size() == 10000);
    CHECK(contradictions(pairs) == 5000);
}

TEST_CASE("generation is deterministic in (cfg, pool, seed)") {
    ConstantPool pool = ConstantPool::standard();
    for (int task : {1, 3, 5, 6}) {
        auto a = generate_pairs(cfg_for(task, 11), pool, 60, 99);
        auto b = generate_pairs(cfg_for(task, 11), pool, 60, 99);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(pairs_equal(a[i], b[i]));
        auto c = generate_pairs(cfg_for(task, 11), pool, 60, 100);
        bool all_same = true;
        for (std::size_t i = 0; i < a.size(); ++i) all_same = all_same && pairs_equal(a[i], c[i]);
        CHECK_FALSE(all_same);
    }
}

TEST_CASE("every emitted pair self-verifies through the labeler") {
    ConstantPool pool = ConstantPool::standard();
    for (int task = 1; task <= 7; ++task) {
        auto pairs = generate_pairs(cfg_for(task, 3), pool, 200, 3);
        for (const auto& p : pairs)
            CHECK(label_pair(p.premise, p.hypothesis) == p.label);
    }
}

TEST_CASE("mixed sets draw every source task roughly uniformly") {
    std::vector<TaskConfig> cfgs;
    for (int t = 1; t <= 6; ++t) cfgs.push_back(cfg_for(t, 1));
    auto pairs = generate_mixed(cfgs, 600, 1);
    CHECK(pairs.size() == 600);
    CHECK(contradictions(pairs) == 300);
    std::map<char, int> per_task;
    for (const auto& p : pairs) {
        CHECK(p.task == 7);
        REQUIRE(p.template_id.size() >= 2);
        per_task[p.template_id[1]]++;  // template ids look like "t3.xxx"
    }
    CHECK(per_task.size() == 6);
    for (const auto& [task, n] : per_task) {
        CHECK(n >= 80);
        CHECK(n <= 120);
    }

    auto tiny = generate_mixed(cfgs, 2, 1);
    CHECK(contradictions(tiny) == 1);

    auto sixty = generate_mixed(cfgs, 60, 5);
    std::set<char> seen;
    for (const auto& p : sixty) seen.insert(p.template_id[1]);
    CHECK(seen.size() == 6);
}

TEST_CASE("operator census respects the task hierarchy") {
    ConstantPool pool = ConstantPool::standard();
    for (int task = 1; task <= 6; ++task) {
        auto pairs = generate_pairs(cfg_for(task, 17), pool, 100, 17);
        for (const auto& p : pairs) CHECK(operator_intro_level(p) <= task);
    }
    // Mixed pairs may use anything up to task 6.
    auto pairs = generate_pairs(cfg_for(7, 17), pool, 100, 17);
    for (const auto& p : pairs) CHECK(operator_intro_level(p) <= 6);
}

TEST_CASE("premise sizes respect the configured ranges") {
    ConstantPool pool = ConstantPool::standard();
    auto t1 = generate_pairs(cfg_for(1, 23), pool, 300, 23);
    for (const auto& p : t1) {
        CHECK(p.premise.size() >= 2);
        CHECK(p.premise.size() <= 12);
    }
    auto t5 = generate_pairs(cfg_for(5, 23), pool, 300, 23);
    for (const auto& p : t5) {
        CHECK(p.premise.size() >= 4);
        CHECK(p.premise.size() <= 10);
    }
    auto t6 = generate_pairs(cfg_for(6, 23), pool, 300, 23);
    for (const auto& p : t6) {
        const auto& premise = p.premise.front();
        auto check_count = [](const Formula& f) {
            const auto& c = std::get<CountNode>(f.node());
            CHECK(c.count >= 1);
            CHECK(c.count <= 30);
        };
        if (const auto* a = std::get_if<AndNode>(&premise.node())) {
            for (const auto& part : a->parts) check_count(part);
        } else {
            check_count(premise);
        }
    }
}

TEST_CASE("pool exhaustion is reported") {
    ConstantPool tiny;
    for (int i = 1; i <= 3; ++i) {
        tiny.persons.push_back(Constant{"x" + std::to_string(i), Sort::Person});
        tiny.places.push_back(Constant{"p" + std::to_string(i), Sort::Place});
    }
    CHECK_THROWS_AS(generate_pairs(cfg_for(1, 1), tiny, 10, 1), PoolError);
}

TEST_CASE("odd sizes are rejected") {
    ConstantPool pool = ConstantPool::standard();
    CHECK_THROWS_AS(generate_pairs(cfg_for(1, 1), pool, 7, 1), DataError);
}

TEST_CASE("labeler agrees with the enumeration oracle on small instances") {
    ConstantPool pool = ConstantPool::standard();
    for (int task = 1; task <= 6; ++task) {
        TaskConfig cfg = testgen::small_config(task, 31);
        auto pairs = generate_pairs(cfg, pool, 200, 31);
        int checked = 0;
        for (const auto& p : pairs) {
            std::vector<Formula> fs = p.premise;
            fs.push_back(p.hypothesis);
            if (!oracle_admissible(fs)) continue;
            ++checked;
            bool sat = brute_force_consistent(fs);
            CHECK((p.label == Label::Contradiction) == !sat);
        }
        CHECK(checked >= 100);  // most small-config instances fit the oracle
    }
}

TEST_CASE("labels are invariant under constant renaming") {
    ConstantPool pool = ConstantPool::standard();
    Rng rng(2024);
    for (int task = 1; task <= 6; ++task) {
        auto pairs = generate_pairs(cfg_for(task, 41), pool, 60, 41);
        for (const auto& p : pairs) {
            // Fresh names, deterministically scrambled per pair.
            std::map<Constant, Constant> sigma;
            SortedConstants used = free_constants(p.premise);
            SortedConstants hyp = free_constants(p.hypothesis);
            used.persons.insert(hyp.persons.begin(), hyp.persons.end());
            used.places.insert(hyp.places.begin(), hyp.places.end());
            int i = 0;
            for (const auto& id : used.persons)
                sigma[Constant{id, Sort::Person}] =
                    Constant{"rz" + std::to_string(rng.range(0, 9)) + std::to_string(i++),
                             Sort::Person};
            for (const auto& id : used.places)
                sigma[Constant{id, Sort::Place}] =
                    Constant{"rw" + std::to_string(rng.range(0, 9)) + std::to_string(i++),
                             Sort::Place};
            std::vector<Formula> renamed;
            for (const auto& f : p.premise) renamed.push_back(rename_constants(f, sigma));
            Formula rh = rename_constants(p.hypothesis, sigma);
            CHECK(label_pair(renamed, rh) == p.label);
        }
    }
}

TEST_CASE("make_split: disjoint lexicons required in disjoint mode") {
    Lexicon train = load_lexicon(lexdir() + "/en_train.json");
    TaskConfig cfg = cfg_for(1, 5);
    cfg.train_size = 20;
    cfg.test_size = 10;
    CHECK_THROWS_AS(make_split(cfg, train, train), LexiconError);
}

TEST_CASE("make_split produces balanced, deduplicated, self-labeled splits") {
    Lexicon train = load_lexicon(lexdir() + "/en_train.json");
    Lexicon test = load_lexicon(lexdir() + "/en_test.json");
    TaskConfig cfg = cfg_for(3, 97);
    cfg.train_size = 400;
    cfg.test_size = 100;
    auto [tr, te] = make_split(cfg, train, test);
    CHECK(tr.examples.size() == 400);
    CHECK(te.examples.size() == 100);

    std::set<std::string> texts;
    std::size_t onecount = 0;
    for (const auto& ex : tr.examples) {
        CHECK(texts.insert(ex.premise_text + "|" + ex.hypothesis_text).second);
        if (ex.label == Label::Contradiction) ++onecount;
        CHECK(label_pair(ex.symbolic.premise, ex.symbolic.hypothesis) == ex.label);
    }
    CHECK(onecount == 200);
    CHECK(tr.warnings.empty());  // no name/label leak at this size

    // FullIntersection reuses the train lexicon on the test side.
    cfg.vocab_mode = VocabMode::FullIntersection;
    auto [tr2, te2] = make_split(cfg, train, test);
    std::set<std::string> train_names, test_names;
    for (const auto& ex : tr2.examples)
        for (const auto& tok : tokenize(ex.premise_text)) train_names.insert(tok);
    std::size_t shared = 0;
    for (const auto& ex : te2.examples)
        for (const auto& tok : tokenize(ex.premise_text))
            if (train_names.count(tok)) ++shared;
    CHECK(shared > 0);
}

TEST_CASE("make_split: identical symbolic streams across languages") {
    Lexicon en_train = load_lexicon(lexdir() + "/en_train.json");
    Lexicon en_test = load_lexicon(lexdir() + "/en_test.json");
    Lexicon pt_train = load_lexicon(lexdir() + "/pt_train.json");
    Lexicon pt_test = load_lexicon(lexdir() + "/pt_test.json");
    for (int task : {1, 4, 7}) {
        TaskConfig cfg = cfg_for(task, 1234);
        cfg.train_size = 100;
        cfg.test_size = 40;
        auto [en_tr, en_te] = make_split(cfg, en_train, en_test);
        auto [pt_tr, pt_te] = make_split(cfg, pt_train, pt_test);
        REQUIRE(en_tr.examples.size() == pt_tr.examples.size());
        for (std::size_t i = 0; i < en_tr.examples.size(); ++i) {
            CHECK(pairs_equal(en_tr.examples[i].symbolic, pt_tr.examples[i].symbolic));
            CHECK(en_tr.examples[i].label == pt_tr.examples[i].label);
        }
        for (std::size_t i = 0; i < en_te.examples.size(); ++i)
            CHECK(pairs_equal(en_te.examples[i].symbolic, pt_te.examples[i].symbolic));
    }
}
