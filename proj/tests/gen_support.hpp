#pragma once

// Random well-sorted sentences and finite models for property tests. Kept
// independent of the generation templates on purpose: these exercise the whole
// constructor surface, not just template-producible shapes.

#include <string>
#include <vector>

#include "cforge/logic.hpp"
#include "cforge/rng.hpp"
#include "cforge/semantics.hpp"
#include "cforge/taskgen.hpp"

namespace testgen {

using namespace cforge;

struct FormulaGen {
    explicit FormulaGen(Rng& r) : rng(r) {}

    Rng& rng;
    int next_var = 0;
    std::vector<Variable> scope;
    std::vector<std::string> person_consts{"x1", "x2", "x3", "x4"};
    std::vector<std::string> place_consts{"p1", "p2", "p3"};

    Term term(Sort sort) {
        std::vector<Variable> usable;
        for (const auto& v : scope)
            if (v.sort == sort) usable.push_back(v);
        if (!usable.empty() && rng.coin()) return rng.pick(usable);
        const auto& pool = sort == Sort::Person ? person_consts : place_consts;
        return Constant{rng.pick(pool), sort};
    }

    Variable fresh_var(Sort sort) { return Variable{"v" + std::to_string(next_var++), sort}; }

    Formula atom() {
        switch (rng.range(0, 3)) {
            case 0: {
                Sort target_sort = rng.coin() ? Sort::Place : Sort::Person;
                return Formula::visit(term(Sort::Person), term(target_sort));
            }
            case 1:
                return Formula::taller(term(Sort::Person), term(Sort::Person));
            case 2:
                return Formula::astall(term(Sort::Person), term(Sort::Person));
            default: {
                Sort s = rng.coin() ? Sort::Place : Sort::Person;
                return Formula::eq(term(s), term(s));
            }
        }
    }

    Formula gen(int depth) {
        if (depth <= 0) return atom();
        switch (rng.range(0, 6)) {
            case 0:
                return atom();
            case 1:
                return Formula::not_(gen(depth - 1));
            case 2: {
                int k = rng.range(2, 3);
                std::vector<Formula> parts;
                for (int i = 0; i < k; ++i) parts.push_back(gen(depth - 1));
                return Formula::and_(std::move(parts));
            }
            case 3:
            case 4: {
                Sort s = rng.coin() ? Sort::Place : Sort::Person;
                Variable v = fresh_var(s);
                scope.push_back(v);
                Formula body = gen(depth - 1);
                scope.pop_back();
                return rng.coin() ? Formula::forall(v, std::move(body))
                                  : Formula::exists(v, std::move(body));
            }
            case 5: {
                Sort s = rng.coin() ? Sort::Place : Sort::Person;
                Variable v = fresh_var(s);
                scope.push_back(v);
                Formula body = gen(depth - 1);
                scope.pop_back();
                return Formula::count(rng.range(1, 30), v, std::move(body));
            }
            default: {
                Variable v = fresh_var(Sort::Person);
                Constant subject{rng.pick(person_consts), Sort::Person};
                scope.push_back(v);
                Formula property = gen(depth - 1);
                scope.pop_back();
                return Formula::iota(subject, v, std::move(property));
            }
        }
    }
};

inline Formula random_sentence(Rng& rng, int max_depth = 3) {
    FormulaGen g{rng};
    return g.gen(rng.range(0, max_depth));
}

// Task configuration whose instances mostly fit the enumeration oracle's
// 5-people/5-places universe (mentioned constants plus one slack per sort).
inline TaskConfig small_config(int task, std::uint64_t seed) {
    TaskConfig cfg;
    cfg.task = task;
    cfg.seed = seed;
    cfg.facts_range = {2, 3};
    cfg.order_facts_range = {3, 3};
    cfg.count_range = {1, 2};
    cfg.coordination_range = {2, 3};
    return cfg;
}

// A model over the generator's constant pool, so random sentences always
// evaluate.
inline Model random_model(Rng& rng) {
    Model m;
    m.people = {"x1", "x2", "x3", "x4"};
    m.places = {"p1", "p2", "p3"};
    for (const auto& a : m.people) {
        m.heights[a] = rng.range(1, 4);
        for (const auto& t : m.people)
            if (rng.coin()) m.visits.emplace(a, t);
        for (const auto& t : m.places)
            if (rng.coin()) m.visits.emplace(a, t);
    }
    return m;
}

}  // namespace testgen
