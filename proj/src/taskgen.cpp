#include "cforge/taskgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "cforge/rng.hpp"
#include "cforge/semantics.hpp"

namespace cforge {

std::string task_name(int task) {
    switch (task) {
        case 1: return "simple-negation";
        case 2: return "boolean-coordination";
        case 3: return "quantification";
        case 4: return "definite-description";
        case 5: return "comparatives";
        case 6: return "counting";
        case 7: return "mixed";
        default: throw DataError("task id out of range: " + std::to_string(task));
    }
}

void TaskConfig::validate() const {
    task_name(task);
    if (train_size == 0 || test_size == 0) throw DataError("split sizes must be positive");
    if (train_size % 2 || test_size % 2)
        throw DataError("split sizes must be even for exact label balance");
    auto range_ok = [](IntRange r, int lo_min) { return r.lo >= lo_min && r.lo <= r.hi; };
    if (!range_ok(facts_range, 1)) throw DataError("bad facts range");
    if (!range_ok(order_facts_range, 1)) throw DataError("bad order-facts range");
    if (!range_ok(coordination_range, 2)) throw DataError("bad coordination range");
    if (!range_ok(count_range, 1) || count_range.hi > 30)
        throw DataError("count range must stay within [1, 30]");
    if (leak_sigma <= 0) throw DataError("leak threshold must be positive");
}

ConstantPool ConstantPool::standard() {
    ConstantPool pool;
    for (int i = 1; i <= 40; ++i) {
        pool.persons.push_back(Constant{"x" + std::to_string(i), Sort::Person});
        pool.places.push_back(Constant{"p" + std::to_string(i), Sort::Place});
    }
    return pool;
}

namespace {

void check_pool(const TaskConfig& cfg, const ConstantPool& pool) {
    auto need = [&](std::size_t persons, std::size_t places) {
        if (pool.persons.size() < persons || pool.places.size() < places)
            throw PoolError("constant pool too small for task " + std::to_string(cfg.task) +
                            ": need " + std::to_string(persons) + " persons / " +
                            std::to_string(places) + " places");
    };
    switch (cfg.task) {
        case 1: need(cfg.facts_range.hi + 1, cfg.facts_range.hi + 1); break;
        case 2: need(cfg.coordination_range.hi + 1, 2); break;
        case 3: need(6, 6); break;
        case 4: need(3, 2); break;
        case 5: need(cfg.order_facts_range.hi + 1, 0); break;
        case 6: need(cfg.count_range.hi + 2, cfg.count_range.hi + 1); break;
        default: break;
    }
}

std::vector<Constant> sample(const std::vector<Constant>& pool, std::size_t k, Rng& rng) {
    auto idx = rng.sample_indices(pool.size(), k);
    std::vector<Constant> out;
    out.reserve(k);
    for (auto i : idx) out.push_back(pool[i]);
    return out;
}

struct Draft {
    std::vector<Formula> premise;
    Formula hypothesis;
    std::string template_id;
};

// Task 1: plain visiting facts; the hypothesis negates one of them or states a
// fresh negative fact.
Draft gen_simple_negation(const TaskConfig& cfg, const ConstantPool& pool, Label target,
                          Rng& rng) {
    int k = rng.range(cfg.facts_range.lo, cfg.facts_range.hi);
    auto persons = sample(pool.persons, k + 1, rng);
    auto places = sample(pool.places, k + 1, rng);
    Draft d;
    for (int i = 0; i < k; ++i) d.premise.push_back(Formula::visit(persons[i], places[i]));
    if (target == Label::Contradiction) {
        int j = rng.range(0, k - 1);
        d.hypothesis = Formula::not_(Formula::visit(persons[j], places[j]));
        d.template_id = "t1.negate_fact";
    } else if (rng.coin()) {
        d.hypothesis = Formula::not_(Formula::visit(persons[k], places[k]));
        d.template_id = "t1.fresh_both";
    } else {
        int j = rng.range(0, k - 1);
        d.hypothesis = Formula::not_(Formula::visit(persons[k], places[j]));
        d.template_id = "t1.fresh_agent";
    }
    return d;
}

// Task 2: one coordinated fact; the hypothesis denies a conjunct or talks
// about an uninvolved agent.
Draft gen_coordination(const TaskConfig& cfg, const ConstantPool& pool, Label target, Rng& rng) {
    int w = rng.range(cfg.coordination_range.lo, cfg.coordination_range.hi);
    auto persons = sample(pool.persons, w + 1, rng);
    auto places = sample(pool.places, 2, rng);
    Draft d;
    std::vector<Formula> conjuncts;
    for (int i = 0; i < w; ++i) conjuncts.push_back(Formula::visit(persons[i], places[0]));
    d.premise.push_back(Formula::and_(std::move(conjuncts)));
    if (target == Label::Contradiction) {
        int j = rng.range(0, w - 1);
        d.hypothesis = Formula::not_(Formula::visit(persons[j], places[0]));
        d.template_id = "t2.negate_conjunct";
    } else if (rng.coin()) {
        d.hypothesis = Formula::not_(Formula::visit(persons[w], places[0]));
        d.template_id = "t2.fresh_agent";
    } else {
        d.hypothesis = Formula::not_(Formula::visit(persons[w], places[1]));
        d.template_id = "t2.fresh_both";
    }
    return d;
}

// Task 3: one quantified statement plus a few plain context facts.
Draft gen_quantification(const TaskConfig&, const ConstantPool& pool, Label target, Rng& rng) {
    int nf = rng.range(1, 3);  // context facts, for surface variety
    auto persons = sample(pool.persons, nf + 2, rng);
    auto places = sample(pool.places, nf + 2, rng);
    const Constant &c = persons[nf], &e = persons[nf + 1];
    const Constant &pl = places[nf], &pl2 = places[nf + 1];
    Variable x{"x", Sort::Person}, p{"p", Sort::Place};

    Draft d;
    int variant = rng.range(0, 4);
    switch (variant) {
        case 0:  // everyone has visited every place
            d.premise.push_back(Formula::forall(x, Formula::forall(p, Formula::visit(x, p))));
            if (target == Label::Contradiction) {
                d.hypothesis = Formula::not_(Formula::visit(c, pl));
                d.template_id = "t3.all_all.neg_instance";
            } else {
                d.hypothesis = Formula::not_(Formula::visit(c, e));
                d.template_id = "t3.all_all.person_trap";
            }
            break;
        case 1:  // c has visited every place
            d.premise.push_back(Formula::forall(p, Formula::visit(c, p)));
            if (target == Label::Contradiction) {
                d.hypothesis = Formula::not_(Formula::visit(c, pl));
                d.template_id = "t3.row_all.neg_instance";
            } else if (rng.coin()) {
                d.hypothesis = Formula::not_(Formula::visit(e, pl));
                d.template_id = "t3.row_all.other_agent";
            } else {
                d.hypothesis = Formula::not_(Formula::visit(c, e));
                d.template_id = "t3.row_all.person_trap";
            }
            break;
        case 2:  // everyone has visited pl
            d.premise.push_back(Formula::forall(x, Formula::visit(x, pl)));
            if (target == Label::Contradiction) {
                d.hypothesis = Formula::not_(Formula::visit(c, pl));
                d.template_id = "t3.col_all.neg_instance";
            } else {
                d.hypothesis = Formula::not_(Formula::visit(c, pl2));
                d.template_id = "t3.col_all.other_place";
            }
            break;
        case 3:  // everyone has visited pl, against "no one"
            d.premise.push_back(Formula::forall(x, Formula::visit(x, pl)));
            if (target == Label::Contradiction) {
                d.hypothesis = Formula::not_(Formula::exists(x, Formula::visit(x, pl)));
                d.template_id = "t3.col_all.no_one";
            } else if (rng.coin()) {
                d.hypothesis = Formula::not_(Formula::exists(x, Formula::visit(x, pl2)));
                d.template_id = "t3.col_all.no_one_elsewhere";
            } else {
                d.hypothesis = Formula::not_(Formula::visit(c, pl2));
                d.template_id = "t3.col_all.fresh_fact";
            }
            break;
        default:  // someone has visited pl
            d.premise.push_back(Formula::exists(x, Formula::visit(x, pl)));
            if (target == Label::Contradiction) {
                d.hypothesis = Formula::not_(Formula::exists(x, Formula::visit(x, pl)));
                d.template_id = "t3.some.no_one";
            } else {
                d.hypothesis = Formula::not_(Formula::visit(c, pl));
                d.template_id = "t3.some.one_abstains";
            }
            break;
    }
    for (int i = 0; i < nf; ++i) d.premise.push_back(Formula::visit(persons[i], places[i]));
    return d;
}

// Task 4: a definite description plus one plain fact about the described
// agent; the hypothesis must be tied to the right referent.
Draft gen_description(const TaskConfig&, const ConstantPool& pool, Label target, Rng& rng) {
    auto persons = sample(pool.persons, 3, rng);
    auto places = sample(pool.places, 2, rng);
    const Constant &c = persons[0], &d2 = persons[1], &e = persons[2];
    const Constant &pl = places[0], &pl2 = places[1];
    Variable y{"y", Sort::Person}, p{"p", Sort::Place}, w{"w", Sort::Person};

    Draft d;
    int variant = rng.range(0, 2);
    if (variant == 0) {  // the person that has visited every place
        d.premise.push_back(Formula::iota(c, y, Formula::forall(p, Formula::visit(y, p))));
        d.premise.push_back(Formula::visit(c, d2));
        if (target == Label::Contradiction) {
            d.hypothesis = Formula::not_(Formula::visit(c, pl));
            d.template_id = "t4.every_place.described";
        } else {
            d.hypothesis = Formula::not_(Formula::visit(d2, pl));
            d.template_id = "t4.every_place.other";
        }
    } else if (variant == 1) {  // the person that has visited everyone
        d.premise.push_back(Formula::iota(c, y, Formula::forall(w, Formula::visit(y, w))));
        d.premise.push_back(Formula::visit(c, d2));
        if (target == Label::Contradiction) {
            d.hypothesis = Formula::not_(Formula::visit(c, e));
            d.template_id = "t4.everyone.described";
        } else {
            d.hypothesis = Formula::not_(Formula::visit(d2, e));
            d.template_id = "t4.everyone.other";
        }
    } else {  // the person that has visited pl; uniqueness does the work
        d.premise.push_back(Formula::iota(c, y, Formula::visit(y, pl)));
        d.premise.push_back(Formula::visit(c, d2));
        if (target == Label::Contradiction) {
            d.hypothesis = Formula::visit(d2, pl);
            d.template_id = "t4.unique.rival";
        } else {
            d.hypothesis = Formula::visit(d2, pl2);
            d.template_id = "t4.unique.elsewhere";
        }
    }
    return d;
}

// Task 5: a height chain; the hypothesis follows from transitivity or closes
// a cycle.
Draft gen_comparatives(const TaskConfig& cfg, const ConstantPool& pool, Label target, Rng& rng) {
    int m = rng.range(cfg.order_facts_range.lo, cfg.order_facts_range.hi);
    int q = m + 1;  // chain of m edges
    auto persons = sample(pool.persons, q, rng);

    // strict[i]: whether edge i (persons[i] over persons[i+1]) is strict.
    std::vector<bool> strict(m);
    std::vector<bool> as_taller(m);
    int strict_taller = -1;
    for (int i = 0; i < m; ++i) {
        strict[i] = rng.unit() >= 0.25;
        as_taller[i] = strict[i] && rng.unit() >= 0.15;
        if (as_taller[i]) strict_taller = i;
    }
    if (strict_taller < 0) {
        int i = rng.range(0, m - 1);
        strict[i] = true;
        as_taller[i] = true;
    }

    Draft d;
    for (int i = 0; i < m; ++i) {
        d.premise.push_back(as_taller[i] ? Formula::taller(persons[i], persons[i + 1])
                                         : Formula::astall(persons[i], persons[i + 1]));
    }
    // Only emitted atoms count for entailment: a strict level gap written with
    // the weak relation contributes a weak edge.
    auto strict_between = [&](int i, int j) {
        for (int k = i; k < j; ++k)
            if (as_taller[k]) return true;
        return false;
    };
    std::vector<std::pair<int, int>> strict_pairs, weak_only_pairs;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            (strict_between(i, j) ? strict_pairs : weak_only_pairs).emplace_back(i, j);

    bool weak_form = rng.unit() < 0.35;
    if (target == Label::Contradiction) {
        auto [i, j] = rng.pick(strict_pairs);
        if (weak_form) {
            d.hypothesis = Formula::astall(persons[j], persons[i]);
            d.template_id = "t5.reverse_weak";
        } else {
            d.hypothesis = Formula::taller(persons[j], persons[i]);
            d.template_id = "t5.reverse_strict";
        }
    } else if (weak_form) {
        if (!weak_only_pairs.empty() && rng.coin()) {
            auto [i, j] = rng.pick(weak_only_pairs);
            d.hypothesis = Formula::astall(persons[j], persons[i]);
            d.template_id = "t5.consistent_weak";
        } else {
            auto [i, j] = rng.pick(strict_pairs);
            d.hypothesis = Formula::astall(persons[i], persons[j]);
            d.template_id = "t5.entail_weak";
        }
    } else {
        auto [i, j] = rng.pick(strict_pairs);
        d.hypothesis = Formula::taller(persons[i], persons[j]);
        d.template_id = "t5.entail_strict";
    }
    return d;
}

// Task 6: counting claims about one agent; the hypothesis lists visited
// entities within or beyond the stated count.
Draft gen_counting(const TaskConfig& cfg, const ConstantPool& pool, Label target, Rng& rng) {
    bool dual;
    switch (cfg.task6_premise) {
        case Task6Premise::Dual: dual = true; break;
        case Task6Premise::Single: dual = false; break;
        default: dual = rng.coin(); break;
    }
    int n_places = rng.range(cfg.count_range.lo, cfg.count_range.hi);
    int n_people = rng.range(cfg.count_range.lo, cfg.count_range.hi);
    Constant agent = sample(pool.persons, 1, rng)[0];
    Variable vp{"p", Sort::Place}, vx{"x", Sort::Person};

    Draft d;
    Sort counted;
    int n;
    if (dual) {
        d.premise.push_back(
            Formula::and_({Formula::count(n_places, vp, Formula::visit(agent, vp)),
                           Formula::count(n_people, vx, Formula::visit(agent, vx))}));
        counted = rng.coin() ? Sort::Place : Sort::Person;
        n = counted == Sort::Place ? n_places : n_people;
        d.template_id = "t6.dual.";
    } else {
        counted = rng.coin() ? Sort::Place : Sort::Person;
        n = counted == Sort::Place ? n_places : n_people;
        Variable v = counted == Sort::Place ? vp : vx;
        d.premise.push_back(Formula::count(n, v, Formula::visit(agent, v)));
        d.template_id = "t6.single.";
    }

    // Contradictions list one entity beyond the count. Consistent hypotheses
    // are usually the single-fact form, occasionally a short list still
    // within the count.
    int k;
    if (target == Label::Contradiction)
        k = n + 1;
    else if (n == 1 || rng.unit() < 0.9)
        k = 1;
    else
        k = rng.range(2, std::min(n, 4));
    std::vector<Constant> targets;
    if (counted == Sort::Person) {
        // never the agent itself
        std::vector<Constant> others;
        for (const auto& c : pool.persons)
            if (c.id != agent.id) others.push_back(c);
        auto idx = rng.sample_indices(others.size(), k);
        for (auto i : idx) targets.push_back(others[i]);
    } else {
        targets = sample(pool.places, k, rng);
    }
    std::vector<Formula> facts;
    for (const auto& t : targets) facts.push_back(Formula::visit(agent, t));
    d.hypothesis = Formula::and_(std::move(facts));
    d.template_id += target == Label::Contradiction ? "exceed" : "within";
    return d;
}

Draft gen_task(int task, const TaskConfig& cfg, const ConstantPool& pool, Label target,
               Rng& rng) {
    switch (task) {
        case 1: return gen_simple_negation(cfg, pool, target, rng);
        case 2: return gen_coordination(cfg, pool, target, rng);
        case 3: return gen_quantification(cfg, pool, target, rng);
        case 4: return gen_description(cfg, pool, target, rng);
        case 5: return gen_comparatives(cfg, pool, target, rng);
        case 6: return gen_counting(cfg, pool, target, rng);
        default: throw DataError("gen_task: task must be 1..6");
    }
}

std::vector<Label> shuffled_labels(std::size_t count, std::uint64_t seed) {
    std::vector<Label> labels(count, Label::NonContradiction);
    for (std::size_t i = 0; i < count / 2; ++i) labels[i] = Label::Contradiction;
    Rng rng(derive_seed(seed, "labels"));
    rng.shuffle(labels);
    return labels;
}

SymbolicPair finish_pair(Draft&& draft, int task, Label target) {
    SymbolicPair pair;
    pair.premise = std::move(draft.premise);
    pair.hypothesis = std::move(draft.hypothesis);
    pair.label = target;
    pair.task = task;
    pair.template_id = std::move(draft.template_id);
    if (label_pair(pair.premise, pair.hypothesis) != target)
        throw InternalError("constructed label failed re-verification (template " +
                            pair.template_id + ")");
    return pair;
}

}  // namespace

std::vector<SymbolicPair> generate_pairs(const TaskConfig& cfg, const ConstantPool& pool,
                                         std::size_t count, std::uint64_t stream_seed) {
    cfg.validate();
    check_pool(cfg, pool);
    if (count % 2) throw DataError("pair count must be even for exact balance");
    if (cfg.task == 7) {
        std::vector<TaskConfig> cfgs;
        for (int t = 1; t <= 6; ++t) {
            TaskConfig sub = cfg;
            sub.task = t;
            cfgs.push_back(sub);
        }
        return generate_mixed(cfgs, count, stream_seed);
    }

    std::vector<Label> labels = shuffled_labels(count, stream_seed);
    std::vector<SymbolicPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(stream_seed, "pair", i));
        out.push_back(finish_pair(gen_task(cfg.task, cfg, pool, labels[i], rng), cfg.task,
                                  labels[i]));
    }
    return out;
}

std::vector<SymbolicPair> generate_mixed(const std::vector<TaskConfig>& cfgs, std::size_t total,
                                         std::uint64_t seed) {
    if (cfgs.size() != 6) throw DataError("generate_mixed needs configs for tasks 1..6");
    if (total % 2) throw DataError("pair count must be even for exact balance");
    ConstantPool pool = ConstantPool::standard();
    for (int t = 1; t <= 6; ++t) {
        TaskConfig sub = cfgs[t - 1];
        sub.task = t;
        sub.validate();
        check_pool(sub, pool);
    }
    std::vector<Label> labels = shuffled_labels(total, seed);
    std::vector<SymbolicPair> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        Rng rng(derive_seed(seed, "pair", i));
        int task = 1 + static_cast<int>(rng.below(6));
        TaskConfig sub = cfgs[task - 1];
        sub.task = task;
        SymbolicPair pair = finish_pair(gen_task(task, sub, pool, labels[i], rng), task,
                                        labels[i]);
        pair.task = 7;
        out.push_back(std::move(pair));
    }
    return out;
}

namespace {

std::string example_id(int task, Language lang, SplitRole role, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "t%d-%s-%s-%06zu", task, to_string(lang).c_str(),
                  to_string(role).c_str(), index);
    return buf;
}

// Chi-square over name-token occurrences per class; a strong association
// between surface names and labels would mean the realization leaks.
void check_name_leak(DatasetSplit& split, const Lexicon& lex, double sigma) {
    std::set<std::string> name_tokens;
    for (const auto& p : lex.person_names)
        for (const auto& t : tokenize(p.name)) name_tokens.insert(t);
    for (const auto& p : lex.place_names)
        for (const auto& t : tokenize(p)) name_tokens.insert(t);

    // Presence per example, not occurrences: a pair repeats its protagonist's
    // name, and that clumping would inflate the statistic past the chi-square
    // null without any real association.
    std::map<std::string, std::array<double, 2>> counts;
    std::array<double, 2> class_totals{0, 0};
    for (const auto& ex : split.examples) {
        int cls = ex.label == Label::Contradiction ? 1 : 0;
        std::set<std::string> present;
        for (const auto& t : tokenize(ex.premise_text + " " + ex.hypothesis_text))
            if (name_tokens.count(t)) present.insert(t);
        for (const auto& t : present) {
            counts[t][cls] += 1;
            class_totals[cls] += 1;
        }
    }
    double total = class_totals[0] + class_totals[1];
    if (total == 0 || counts.size() < 2) return;
    double chi2 = 0;
    for (const auto& [name, obs] : counts) {
        double row = obs[0] + obs[1];
        for (int cls = 0; cls < 2; ++cls) {
            double expected = row * class_totals[cls] / total;
            if (expected > 0) {
                double dd = obs[cls] - expected;
                chi2 += dd * dd / expected;
            }
        }
    }
    double dof = static_cast<double>(counts.size() - 1);
    double threshold = dof + sigma * std::sqrt(2 * dof);
    if (chi2 > threshold) {
        split.warnings.push_back("name/label association above threshold: chi2 = " +
                                 std::to_string(chi2) + " > " + std::to_string(threshold));
    }
}

}  // namespace

std::pair<DatasetSplit, DatasetSplit> make_split(const TaskConfig& cfg, const Lexicon& lex_train,
                                                 const Lexicon& lex_test) {
    cfg.validate();
    const Lexicon& test_lex =
        cfg.vocab_mode == VocabMode::FullIntersection ? lex_train : lex_test;
    if (cfg.vocab_mode == VocabMode::Disjoint) {
        std::set<std::string> persons, places;
        for (const auto& p : lex_train.person_names) persons.insert(p.name);
        for (const auto& p : lex_train.place_names) places.insert(p);
        std::vector<std::string> collisions;
        for (const auto& p : lex_test.person_names)
            if (persons.count(p.name)) collisions.push_back(p.name);
        for (const auto& p : lex_test.place_names)
            if (places.count(p)) collisions.push_back(p);
        if (!collisions.empty()) {
            std::string msg = "disjoint mode but lexicons share names:";
            for (std::size_t i = 0; i < std::min<std::size_t>(collisions.size(), 8); ++i)
                msg += " '" + collisions[i] + "'";
            throw LexiconError(msg);
        }
    }

    ConstantPool pool = ConstantPool::standard();
    auto build = [&](SplitRole role, std::size_t size, const Lexicon& lex) {
        std::uint64_t stream = derive_seed(cfg.seed, role == SplitRole::Train ? "train" : "test");
        std::vector<SymbolicPair> pairs = generate_pairs(cfg, pool, size, stream);

        DatasetSplit split;
        split.meta.task = cfg.task;
        split.meta.language = lex.language;
        split.meta.vocab_mode = cfg.vocab_mode;
        split.meta.seed = cfg.seed;
        split.meta.generator_version = kVersion;
        split.meta.split_role = role;

        std::set<std::string> seen;
        split.examples.reserve(size);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            RealizedPair realized;
            bool accepted = false;
            for (int retry = 0; retry < 1000; ++retry) {
                std::uint64_t rseed = derive_seed(mix_seed(stream, i), "realize", retry);
                realized = realize_pair(pairs[i], lex, rseed, cfg.join);
                if (seen.insert(realized.premise_text + "\x1f" + realized.hypothesis_text)
                        .second) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
                throw DataError("duplicate suppression exhausted 1000 rebindings at index " +
                                std::to_string(i));
            realized.id = example_id(cfg.task, lex.language, role, i);
            split.examples.push_back(std::move(realized));
        }
        check_name_leak(split, lex, cfg.leak_sigma);
        return split;
    };

    return {build(SplitRole::Train, cfg.train_size, lex_train),
            build(SplitRole::Test, cfg.test_size, test_lex)};
}

int operator_intro_level(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                return 1;
            } else if constexpr (std::is_same_v<T, TallerAtom> || std::is_same_v<T, AsTallAtom>) {
                return 5;
            } else if constexpr (std::is_same_v<T, EqAtom>) {
                return 4;
            } else if constexpr (std::is_same_v<T, NotNode>) {
                return std::max(1, operator_intro_level(*n.body));
            } else if constexpr (std::is_same_v<T, AndNode>) {
                int level = 2;
                for (const auto& p : n.parts) level = std::max(level, operator_intro_level(p));
                return level;
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                return std::max(3, operator_intro_level(*n.body));
            } else if constexpr (std::is_same_v<T, CountNode>) {
                return std::max(6, operator_intro_level(*n.body));
            } else {
                return std::max(4, operator_intro_level(*n.property));
            }
        },
        f.node());
}

int operator_intro_level(const SymbolicPair& pair) {
    int level = 1;
    for (const auto& f : pair.premise) level = std::max(level, operator_intro_level(f));
    return std::max(level, operator_intro_level(pair.hypothesis));
}

}  // namespace cforge
