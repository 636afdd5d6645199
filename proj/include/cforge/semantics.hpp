#pragma once

// Finite-model semantics for the template logic: a Tarskian evaluator, an
// exhaustive bounded-universe satisfiability oracle, and the fast decision
// procedure used to label generated pairs.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cforge/logic.hpp"

namespace cforge {

// Finite interpretation. Persons and places are disjoint element sets;
// `visits` holds (agent, target) pairs; `heights` is total on people.
struct Model {
    std::set<std::string> people;
    std::set<std::string> places;
    std::set<std::pair<std::string, std::string>> visits;
    std::map<std::string, int> heights;

    void validate() const;  // throws LogicError on a broken invariant
};

// Fresh entities added beyond the mentioned constants when searching for a
// satisfying model. One per sort by default; without the slack, a universal
// premise plus a fact about an unmentioned entity would be decided over a
// spuriously closed universe.
struct UniverseBounds {
    int extra_people = 1;
    int extra_places = 1;
};

// Truth of sentence f in m. All constants of f must belong to m's domain.
bool eval(const Model& m, const Formula& f);

// True iff some model over the bounded universe (mentioned constants plus
// bounds-many fresh entities, all visit relations, all height assignments
// over levels 1..|people| with ties) satisfies every formula. Exhaustive with
// sound pruning; guard: at most 5 people and 5 places. Throws GuardError.
bool brute_force_consistent(const std::vector<Formula>& fs, UniverseBounds bounds = {});

// True when the guard admits the instance and every counting quantifier in it
// is representable in the bounded universe (index <= domain size). Outside of
// that, the closed-universe oracle measures a different question than the
// open-universe reading of counting, so comparisons are skipped.
bool oracle_admissible(const std::vector<Formula>& fs, UniverseBounds bounds = {});

// Satisfiability over the task-template fragment, decided by constraint
// propagation (visit literals, quantified literals, definite descriptions),
// strict-cycle detection (order atoms), and forced-instance counting
// (counting quantifiers). Throws FragmentError on shapes no template
// produces. Agrees with brute_force_consistent wherever oracle_admissible.
bool consistent(const std::vector<Formula>& fs);

// Contradiction iff premise + hypothesis is unsatisfiable.
Label label_pair(const std::vector<Formula>& premise, const Formula& hypothesis);

}  // namespace cforge
