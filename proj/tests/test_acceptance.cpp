// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Runs the full default-size generation (7 tasks, two
// languages, both vocabulary modes) plus the baseline protocol on top of it.

#include <chrono>
#include <cstdio>
#include <map>

#include "cforge/baseline.hpp"
#include "cforge/dataset.hpp"
#include "cforge/manifest.hpp"
#include "cforge/semantics.hpp"
#include "cforge/taskgen.hpp"
#include "doctest.h"
#include "gen_support.hpp"

using namespace cforge;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 2024;

std::string lexdir() { return CFORGE_BUNDLED_LEXDIR; }

struct Criterion {
    const char* id;
    const char* name;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::string detail;

    Criterion(const char* id, const char* name) : id(id), name(name) {}

    void expect(bool cond, const std::string& what) {
        CHECK_MESSAGE(cond, id, ": ", what);
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }

    void finish() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
        std::printf("[%s] %s: %s (%lld ms)%s%s\n", id, name, ok ? "PASS" : "FAIL",
                    static_cast<long long>(ms.count()), detail.empty() ? "" : " — ",
                    detail.c_str());
        std::fflush(stdout);
    }
};

struct Suite {
    // (task, language) -> train/test at default sizes, disjoint vocabulary
    std::map<std::pair<int, Language>, std::pair<DatasetSplit, DatasetSplit>> disjoint;
    // task -> English full-intersection splits
    std::map<int, std::pair<DatasetSplit, DatasetSplit>> full_en;
    std::uint64_t disjoint_gen_ms = 0;

    Lexicon en_train, en_test, pt_train, pt_test;
};

const Suite& suite() {
    static Suite s = [] {
        Suite s;
        s.en_train = load_lexicon(lexdir() + "/en_train.json");
        s.en_test = load_lexicon(lexdir() + "/en_test.json");
        s.pt_train = load_lexicon(lexdir() + "/pt_train.json");
        s.pt_test = load_lexicon(lexdir() + "/pt_test.json");
        auto t0 = Clock::now();
        for (int task = 1; task <= 7; ++task) {
            TaskConfig cfg;
            cfg.task = task;
            cfg.seed = kSeed;
            s.disjoint[{task, Language::English}] = make_split(cfg, s.en_train, s.en_test);
            s.disjoint[{task, Language::Portuguese}] = make_split(cfg, s.pt_train, s.pt_test);
        }
        s.disjoint_gen_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
        for (int task = 1; task <= 7; ++task) {
            TaskConfig cfg;
            cfg.task = task;
            cfg.seed = kSeed;
            cfg.vocab_mode = VocabMode::FullIntersection;
            s.full_en[task] = make_split(cfg, s.en_train, s.en_test);
        }
        return s;
    }();
    return s;
}

double baseline_accuracy(const DatasetSplit& train, const DatasetSplit& test) {
    BowSpace space = build_bow_space(train);
    ForestParams params;
    params.seed = 7;
    params.jobs = 2;
    ForestModel model = train_forest(featurize(train, space), params);
    return evaluate(model, test, space).accuracy;
}

const std::map<int, double>& disjoint_en_accuracy() {
    static std::map<int, double> acc = [] {
        std::map<int, double> acc;
        for (int task = 1; task <= 7; ++task) {
            const auto& [train, test] = suite().disjoint.at({task, Language::English});
            acc[task] = baseline_accuracy(train, test);
        }
        return acc;
    }();
    return acc;
}

}  // namespace

TEST_CASE("criterion 1: label soundness against the enumeration oracle") {
    Criterion c{"C1", "label soundness (labeler = oracle on small instances)"};
    ConstantPool pool = ConstantPool::standard();
    std::size_t total_checked = 0, total_agreed = 0;
    for (int task = 1; task <= 7; ++task) {
        TaskConfig cfg = testgen::small_config(task, kSeed + task);
        std::size_t checked = 0;
        for (std::uint64_t batch = 0; batch < 12 && checked < 500; ++batch) {
            auto pairs = generate_pairs(cfg, pool, 500, derive_seed(kSeed + task, "c1", batch));
            for (const auto& p : pairs) {
                if (checked >= 500) break;
                std::vector<Formula> fs = p.premise;
                fs.push_back(p.hypothesis);
                if (!oracle_admissible(fs)) continue;
                ++checked;
                bool sat = brute_force_consistent(fs);
                bool agree = (p.label == Label::Contradiction) == !sat;
                if (agree) ++total_agreed;
                else
                    c.expect(false, "task " + std::to_string(task) + " disagreement on " +
                                        p.template_id);
            }
        }
        c.expect(checked >= 500, "task " + std::to_string(task) + ": only " +
                                     std::to_string(checked) + " instances fit the oracle");
        total_checked += checked;
    }
    c.expect(total_agreed == total_checked, "agreement below 100%");
    c.note(std::to_string(total_agreed) + "/" + std::to_string(total_checked) + " agree");
    c.finish();
}

TEST_CASE("criterion 2: self-verification of every default split") {
    Criterion c{"C2", "verify relabels 7 tasks x 2 languages with zero mismatches"};
    std::size_t examples = 0, mismatches = 0;
    for (const auto& [key, splits] : suite().disjoint) {
        for (const DatasetSplit* split : {&splits.first, &splits.second}) {
            for (const auto& ex : split->examples) {
                ++examples;
                if (label_pair(ex.symbolic.premise, ex.symbolic.hypothesis) != ex.label)
                    ++mismatches;
            }
        }
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    c.note(std::to_string(examples) + " examples across " +
           std::to_string(suite().disjoint.size()) + " splits");
    c.finish();
}

TEST_CASE("criterion 3: exact balance at default sizes, generation under budget") {
    Criterion c{"C3", "balance 50/50 at 10000/1000 per split"};
    for (const auto& [key, splits] : suite().disjoint) {
        const auto& [train, test] = splits;
        c.expect(train.examples.size() == 10000, "train size");
        c.expect(test.examples.size() == 1000, "test size");
        for (const DatasetSplit* split : {&train, &test}) {
            std::size_t ones = 0;
            for (const auto& ex : split->examples)
                if (ex.label == Label::Contradiction) ++ones;
            c.expect(ones * 2 == split->examples.size(),
                     "imbalance in task " + std::to_string(key.first));
        }
    }
    c.expect(suite().disjoint_gen_ms < 5 * 60 * 1000, "generation exceeded 5 minutes");
    c.note("full 7x2 suite generated in " + std::to_string(suite().disjoint_gen_ms) + " ms");
    c.finish();
}

TEST_CASE("criterion 4: disjoint vocabularies share only template tokens") {
    Criterion c{"C4", "train/test name sets disjoint; intersection is name-free"};
    for (Language lang : {Language::English, Language::Portuguese}) {
        const Lexicon& lt = lang == Language::English ? suite().en_train : suite().pt_train;
        const Lexicon& le = lang == Language::English ? suite().en_test : suite().pt_test;
        std::set<std::string> train_persons, train_places, name_tokens;
        for (const auto& p : lt.person_names) train_persons.insert(p.name);
        for (const auto& p : lt.place_names) train_places.insert(p);
        for (const auto& p : le.person_names)
            c.expect(!train_persons.count(p.name), "shared person name " + p.name);
        for (const auto& p : le.place_names)
            c.expect(!train_places.count(p), "shared place name " + p);
        for (const Lexicon* lex : {&lt, &le}) {
            for (const auto& p : lex->person_names)
                for (const auto& t : tokenize(p.name)) name_tokens.insert(t);
            for (const auto& p : lex->place_names)
                for (const auto& t : tokenize(p)) name_tokens.insert(t);
        }
        for (int task = 1; task <= 7; ++task) {
            const auto& [train, test] = suite().disjoint.at({task, lang});
            TaskStats stats = compute_stats(train, test);
            c.expect(stats.vocab_intersection < stats.vocab_size / 4,
                     "intersection not small for task " + std::to_string(task));
            for (const auto& tok : stats.intersection_tokens)
                c.expect(!name_tokens.count(tok),
                         "name token '" + tok + "' in the intersection of task " +
                             std::to_string(task));
        }
    }
    c.finish();
}

TEST_CASE("criterion 5: baseline near chance on structure, above chance on 3 and 6") {
    Criterion c{"C5", "bag-of-words forest accuracy bands (English, disjoint)"};
    const auto& acc = disjoint_en_accuracy();
    char buf[160];
    std::snprintf(buf, sizeof(buf), "t1=%.3f t2=%.3f t3=%.3f t4=%.3f t5=%.3f t6=%.3f t7=%.3f",
                  acc.at(1), acc.at(2), acc.at(3), acc.at(4), acc.at(5), acc.at(6), acc.at(7));
    c.note(buf);
    for (int task : {1, 2, 4, 5}) {
        c.expect(acc.at(task) >= 0.45 && acc.at(task) <= 0.60,
                 "task " + std::to_string(task) + " outside [0.45, 0.60]");
    }
    c.expect(acc.at(3) >= 0.58, "task 3 below 0.58");
    c.expect(acc.at(6) >= 0.53, "task 6 below 0.53");
    c.finish();
}

TEST_CASE("criterion 6: full vocabulary intersection lifts the baseline") {
    Criterion c{"C6", "full-intersection average exceeds disjoint by >= 5 points"};
    double disjoint_avg = 0, full_avg = 0;
    for (int task = 1; task <= 7; ++task) {
        disjoint_avg += disjoint_en_accuracy().at(task);
        const auto& [train, test] = suite().full_en.at(task);
        full_avg += baseline_accuracy(train, test);
    }
    disjoint_avg /= 7;
    full_avg /= 7;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "disjoint avg %.3f, full avg %.3f, gap %.1f points",
                  disjoint_avg, full_avg, 100 * (full_avg - disjoint_avg));
    c.note(buf);
    c.expect(full_avg - disjoint_avg >= 0.05, "gap below 5 points");
    c.finish();
}

TEST_CASE("criterion 7: ablations behave as designed") {
    Criterion c{"C7", "noise labels train to chance; field ablations blank one side"};
    const auto& [train, test] = suite().disjoint.at({1, Language::English});

    DatasetSplit noisy = ablate(train, AblationMode::NoiseLabel, kSeed);
    double acc = baseline_accuracy(noisy, test);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "noise-label test accuracy %.3f", acc);
    c.note(buf);
    c.expect(acc >= 0.45 && acc <= 0.55, "noise-label accuracy outside [0.45, 0.55]");

    DatasetSplit premise_only = ablate(train, AblationMode::PremiseOnly, kSeed);
    DatasetSplit hypothesis_only = ablate(train, AblationMode::HypothesisOnly, kSeed);
    for (std::size_t i = 0; i < train.examples.size(); ++i) {
        const auto& orig = train.examples[i];
        const auto& po = premise_only.examples[i];
        const auto& ho = hypothesis_only.examples[i];
        if (po.label != orig.label || ho.label != orig.label) {
            c.expect(false, "ablation changed a label");
            break;
        }
        if (!po.hypothesis_text.empty() || po.premise_text != orig.premise_text) {
            c.expect(false, "premise-only did not blank exactly the hypothesis");
            break;
        }
        if (!ho.premise_text.empty() || ho.hypothesis_text != orig.hypothesis_text) {
            c.expect(false, "hypothesis-only did not blank exactly the premise");
            break;
        }
    }
    c.finish();
}

TEST_CASE("criterion 8: byte-identical regeneration and cross-language symmetry") {
    Criterion c{"C8", "determinism from equal configs; EN/PT symbolic symmetry"};
    REQUIRE(std::system("mkdir -p /tmp/cforge_accept") == 0);
    for (int task : {1, 6}) {
        TaskConfig cfg;
        cfg.task = task;
        cfg.seed = kSeed;
        cfg.train_size = 2000;
        cfg.test_size = 400;
        auto [a_train, a_test] = make_split(cfg, suite().en_train, suite().en_test);
        auto [b_train, b_test] = make_split(cfg, suite().en_train, suite().en_test);
        std::string pa = "/tmp/cforge_accept/a.jsonl", pb = "/tmp/cforge_accept/b.jsonl";
        write_split(a_train, pa, FileFormat::Jsonl);
        write_split(b_train, pb, FileFormat::Jsonl);
        OutputDigest da = digest_file(pa), db = digest_file(pb);
        c.expect(da.sha256 == db.sha256,
                 "regeneration digest differs for task " + std::to_string(task));
    }
    for (int task = 1; task <= 7; ++task) {
        const auto& en = suite().disjoint.at({task, Language::English});
        const auto& pt = suite().disjoint.at({task, Language::Portuguese});
        for (const auto& [e, p] : {std::make_pair(&en.first, &pt.first),
                                   std::make_pair(&en.second, &pt.second)}) {
            bool same = e->examples.size() == p->examples.size();
            for (std::size_t i = 0; same && i < e->examples.size(); ++i) {
                const auto& se = e->examples[i].symbolic;
                const auto& sp = p->examples[i].symbolic;
                same = se.label == sp.label && se.premise.size() == sp.premise.size() &&
                       se.hypothesis == sp.hypothesis;
                for (std::size_t k = 0; same && k < se.premise.size(); ++k)
                    same = se.premise[k] == sp.premise[k];
            }
            c.expect(same, "EN/PT symbolic divergence in task " + std::to_string(task));
        }
    }
    c.finish();
}

TEST_CASE("criterion 9: labels invariant under constant substitution") {
    Criterion c{"C9", "1000 random pairs keep labels under injective renaming"};
    ConstantPool pool = ConstantPool::standard();
    Rng rng(kSeed);
    std::size_t checked = 0;
    for (int task = 1; task <= 6 && c.ok; ++task) {
        TaskConfig cfg;
        cfg.task = task;
        cfg.seed = kSeed;
        auto pairs = generate_pairs(cfg, pool, 168, derive_seed(kSeed, "c9", task));
        for (const auto& p : pairs) {
            std::map<Constant, Constant> sigma;
            SortedConstants used = free_constants(p.premise);
            SortedConstants hyp = free_constants(p.hypothesis);
            used.persons.insert(hyp.persons.begin(), hyp.persons.end());
            used.places.insert(hyp.places.begin(), hyp.places.end());
            int i = 0;
            for (const auto& id : used.persons)
                sigma[Constant{id, Sort::Person}] = Constant{
                    "q" + std::to_string(rng.range(0, 99)) + "n" + std::to_string(i++),
                    Sort::Person};
            for (const auto& id : used.places)
                sigma[Constant{id, Sort::Place}] = Constant{
                    "q" + std::to_string(rng.range(0, 99)) + "n" + std::to_string(i++),
                    Sort::Place};
            std::vector<Formula> renamed;
            for (const auto& f : p.premise) renamed.push_back(rename_constants(f, sigma));
            if (label_pair(renamed, rename_constants(p.hypothesis, sigma)) != p.label) {
                c.expect(false, "label changed under renaming (task " + std::to_string(task) +
                                    ", " + p.template_id + ")");
                break;
            }
            ++checked;
        }
    }
    c.expect(checked >= 1000, "fewer than 1000 pairs checked");
    c.note(std::to_string(checked) + " pairs");
    c.finish();
}
