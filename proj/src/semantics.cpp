#include "cforge/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace cforge {

void Model::validate() const {
    for (const auto& p : people)
        if (places.count(p)) throw LogicError("model: '" + p + "' is both a person and a place");
    for (const auto& [a, t] : visits) {
        if (!people.count(a)) throw LogicError("model: visit agent '" + a + "' is not a person");
        if (!people.count(t) && !places.count(t))
            throw LogicError("model: visit target '" + t + "' is not in the domain");
    }
    for (const auto& p : people)
        if (!heights.count(p)) throw LogicError("model: no height for person '" + p + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Three-valued evaluation over a (possibly partial) visit relation.

using Tri = int;  // 0 = false, 1 = unknown, 2 = true
constexpr Tri kFalse = 0, kUnknown = 1, kTrue = 2;

struct Universe {
    std::vector<std::string> people;
    std::vector<std::string> places;
    std::map<std::string, int> person_index;
    std::map<std::string, int> place_index;

    int targets() const { return static_cast<int>(people.size() + places.size()); }
    int pair_index(int person, int target) const { return person * targets() + target; }

    void index() {
        person_index.clear();
        place_index.clear();
        for (std::size_t i = 0; i < people.size(); ++i) person_index[people[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < places.size(); ++i) place_index[places[i]] = static_cast<int>(i);
    }
};

struct Element {
    Sort sort;
    int idx;  // within its sort

    int target_index(const Universe& u) const {
        return sort == Sort::Person ? idx : static_cast<int>(u.people.size()) + idx;
    }
    friend bool operator==(const Element&, const Element&) = default;
};

using Env = std::vector<std::pair<std::string, Element>>;

struct Evaluator {
    const Universe& u;
    const std::vector<std::int8_t>& visits;  // indexed by pair_index; -1 unknown
    const std::vector<int>& heights;         // indexed by person idx; empty if unused

    Element resolve(const Term& t, const Env& env) const {
        if (const auto* v = std::get_if<Variable>(&t)) {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == v->name) return it->second;
            throw InternalError("unbound variable '" + v->name + "'");
        }
        const auto& c = std::get<Constant>(t);
        if (c.sort == Sort::Person) {
            auto it = u.person_index.find(c.id);
            if (it == u.person_index.end()) throw EvalError("unknown constant '" + c.id + "'");
            return {Sort::Person, it->second};
        }
        auto it = u.place_index.find(c.id);
        if (it == u.place_index.end()) throw EvalError("unknown constant '" + c.id + "'");
        return {Sort::Place, it->second};
    }

    int domain_size(Sort s) const {
        return static_cast<int>(s == Sort::Person ? u.people.size() : u.places.size());
    }

    Tri eval(const Formula& f, Env& env) const {
        return std::visit(
            [&](const auto& n) -> Tri {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VisitAtom>) {
                    Element a = resolve(n.agent, env);
                    Element t = resolve(n.target, env);
                    std::int8_t v = visits[u.pair_index(a.idx, t.target_index(u))];
                    return v < 0 ? kUnknown : (v ? kTrue : kFalse);
                } else if constexpr (std::is_same_v<T, TallerAtom>) {
                    return heights[resolve(n.a, env).idx] > heights[resolve(n.b, env).idx] ? kTrue
                                                                                           : kFalse;
                } else if constexpr (std::is_same_v<T, AsTallAtom>) {
                    return heights[resolve(n.a, env).idx] >= heights[resolve(n.b, env).idx] ? kTrue
                                                                                            : kFalse;
                } else if constexpr (std::is_same_v<T, EqAtom>) {
                    return resolve(n.a, env) == resolve(n.b, env) ? kTrue : kFalse;
                } else if constexpr (std::is_same_v<T, NotNode>) {
                    return 2 - eval(*n.body, env);
                } else if constexpr (std::is_same_v<T, AndNode>) {
                    Tri acc = kTrue;
                    for (const auto& p : n.parts) {
                        acc = std::min(acc, eval(p, env));
                        if (acc == kFalse) break;
                    }
                    return acc;
                } else if constexpr (std::is_same_v<T, ForAllNode>) {
                    Tri acc = kTrue;
                    int d = domain_size(n.var.sort);
                    for (int i = 0; i < d && acc != kFalse; ++i) {
                        env.emplace_back(n.var.name, Element{n.var.sort, i});
                        acc = std::min(acc, eval(*n.body, env));
                        env.pop_back();
                    }
                    return acc;
                } else if constexpr (std::is_same_v<T, ExistsNode>) {
                    Tri acc = kFalse;
                    int d = domain_size(n.var.sort);
                    for (int i = 0; i < d && acc != kTrue; ++i) {
                        env.emplace_back(n.var.name, Element{n.var.sort, i});
                        acc = std::max(acc, eval(*n.body, env));
                        env.pop_back();
                    }
                    return acc;
                } else if constexpr (std::is_same_v<T, CountNode>) {
                    int t = 0, unknown = 0;
                    int d = domain_size(n.var.sort);
                    for (int i = 0; i < d; ++i) {
                        env.emplace_back(n.var.name, Element{n.var.sort, i});
                        Tri r = eval(*n.body, env);
                        env.pop_back();
                        if (r == kTrue) ++t;
                        else if (r == kUnknown) ++unknown;
                    }
                    if (t > n.count || t + unknown < n.count) return kFalse;
                    if (unknown == 0) return t == n.count ? kTrue : kFalse;
                    return kUnknown;
                } else {  // IotaNode
                    auto it = u.person_index.find(n.subject.id);
                    if (it == u.person_index.end())
                        throw EvalError("unknown constant '" + n.subject.id + "'");
                    int subject = it->second;
                    env.emplace_back(n.var.name, Element{Sort::Person, subject});
                    Tri acc = eval(*n.property, env);
                    env.pop_back();
                    int d = domain_size(Sort::Person);
                    for (int i = 0; i < d && acc != kFalse; ++i) {
                        if (i == subject) continue;
                        env.emplace_back(n.var.name, Element{Sort::Person, i});
                        acc = std::min(acc, static_cast<Tri>(2 - eval(*n.property, env)));
                        env.pop_back();
                    }
                    return acc;
                }
            },
            f.node());
    }
};

bool contains_order_atom(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TallerAtom> || std::is_same_v<T, AsTallAtom>) {
                return true;
            } else if constexpr (std::is_same_v<T, NotNode>) {
                return contains_order_atom(*n.body);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& p : n.parts)
                    if (contains_order_atom(p)) return true;
                return false;
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                return contains_order_atom(*n.body);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                return contains_order_atom(*n.body);
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                return contains_order_atom(*n.property);
            } else {
                return false;
            }
        },
        f.node());
}

// Visit pairs any ground instantiation of f can read. Quantified variables
// range over their full sort so the set is exact, which keeps the oracle's
// search from branching on bits no formula looks at.
void touched_pairs(const Formula& f, const Universe& u,
                   std::map<std::string, std::vector<Element>>& ranges, std::set<int>& out) {
    auto term_range = [&](const Term& t) -> std::vector<Element> {
        if (const auto* v = std::get_if<Variable>(&t)) return ranges.at(v->name);
        const auto& c = std::get<Constant>(t);
        if (c.sort == Sort::Person) {
            auto it = u.person_index.find(c.id);
            if (it == u.person_index.end()) throw EvalError("unknown constant '" + c.id + "'");
            return {{Sort::Person, it->second}};
        }
        auto it = u.place_index.find(c.id);
        if (it == u.place_index.end()) throw EvalError("unknown constant '" + c.id + "'");
        return {{Sort::Place, it->second}};
    };
    auto full_range = [&](Sort s) {
        std::vector<Element> r;
        int d = static_cast<int>(s == Sort::Person ? u.people.size() : u.places.size());
        for (int i = 0; i < d; ++i) r.push_back({s, i});
        return r;
    };
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                for (const auto& a : term_range(n.agent))
                    for (const auto& t : term_range(n.target))
                        out.insert(u.pair_index(a.idx, t.target_index(u)));
            } else if constexpr (std::is_same_v<T, NotNode>) {
                touched_pairs(*n.body, u, ranges, out);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& p : n.parts) touched_pairs(p, u, ranges, out);
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                ranges[n.var.name] = full_range(n.var.sort);
                touched_pairs(*n.body, u, ranges, out);
                ranges.erase(n.var.name);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                ranges[n.var.name] = full_range(n.var.sort);
                touched_pairs(*n.body, u, ranges, out);
                ranges.erase(n.var.name);
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                if (u.person_index.find(n.subject.id) == u.person_index.end())
                    throw EvalError("unknown constant '" + n.subject.id + "'");
                ranges[n.var.name] = full_range(Sort::Person);
                touched_pairs(*n.property, u, ranges, out);
                ranges.erase(n.var.name);
            }
        },
        f.node());
}

std::string fresh_name(const char* base, int i, const SortedConstants& used) {
    std::string name = base + std::to_string(i);
    while (used.persons.count(name) || used.places.count(name)) name += "x";
    return name;
}

Universe bounded_universe(const SortedConstants& mentioned, UniverseBounds bounds) {
    Universe u;
    u.people.assign(mentioned.persons.begin(), mentioned.persons.end());
    u.places.assign(mentioned.places.begin(), mentioned.places.end());
    for (int i = 1; i <= bounds.extra_people; ++i)
        u.people.push_back(fresh_name("fresh_person_", i, mentioned));
    for (int i = 1; i <= bounds.extra_places; ++i)
        u.places.push_back(fresh_name("fresh_place_", i, mentioned));
    u.index();
    return u;
}

struct OracleSearch {
    const std::vector<Formula>& fs;
    const Universe& u;
    std::vector<std::int8_t>& visits;
    std::vector<int>& heights;
    const std::vector<int>& order;  // pair indices to branch on

    bool all_satisfied(bool& failed) const {
        Evaluator ev{u, visits, heights};
        Env env;
        bool pending = false;
        for (const auto& f : fs) {
            Tri r = ev.eval(f, env);
            if (r == kFalse) {
                failed = true;
                return false;
            }
            if (r == kUnknown) pending = true;
        }
        failed = false;
        return !pending;
    }

    bool search(std::size_t k) {
        bool failed = false;
        if (all_satisfied(failed)) return true;
        if (failed) return false;
        if (k == order.size())
            throw InternalError("oracle: undetermined formula with all relevant pairs assigned");
        for (std::int8_t v : {std::int8_t(0), std::int8_t(1)}) {
            visits[order[k]] = v;
            if (search(k + 1)) return true;
        }
        visits[order[k]] = -1;
        return false;
    }
};

int count_quantifier_max(const Formula& f, Sort s) {
    return std::visit(
        [&](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NotNode>) {
                return count_quantifier_max(*n.body, s);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                int m = 0;
                for (const auto& p : n.parts) m = std::max(m, count_quantifier_max(p, s));
                return m;
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                return count_quantifier_max(*n.body, s);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                int m = count_quantifier_max(*n.body, s);
                if (n.var.sort == s) m = std::max(m, n.count);
                return m;
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                return count_quantifier_max(*n.property, s);
            } else {
                return 0;
            }
        },
        f.node());
}

}  // namespace

bool eval(const Model& m, const Formula& f) {
    m.validate();
    Universe u;
    u.people.assign(m.people.begin(), m.people.end());
    u.places.assign(m.places.begin(), m.places.end());
    u.index();
    std::vector<std::int8_t> visits(static_cast<std::size_t>(u.people.size()) * u.targets(), 0);
    for (const auto& [a, t] : m.visits) {
        int ai = u.person_index.at(a);
        Element te = u.person_index.count(t) ? Element{Sort::Person, u.person_index.at(t)}
                                             : Element{Sort::Place, u.place_index.at(t)};
        visits[u.pair_index(ai, te.target_index(u))] = 1;
    }
    std::vector<int> heights(u.people.size(), 0);
    for (std::size_t i = 0; i < u.people.size(); ++i) heights[i] = m.heights.at(u.people[i]);
    Evaluator ev{u, visits, heights};
    Env env;
    Tri r = ev.eval(f, env);
    if (r == kUnknown) throw InternalError("eval: unknown truth value on a total model");
    return r == kTrue;
}

bool brute_force_consistent(const std::vector<Formula>& fs, UniverseBounds bounds) {
    SortedConstants mentioned = free_constants(fs);
    std::size_t total_people = mentioned.persons.size() + bounds.extra_people;
    std::size_t total_places = mentioned.places.size() + bounds.extra_places;
    if (total_people > 5 || total_places > 5)
        throw GuardError("enumeration guard: " + std::to_string(total_people) + " people / " +
                         std::to_string(total_places) + " places exceed the 5/5 bound");
    Universe u = bounded_universe(mentioned, bounds);

    std::set<int> touched;
    {
        std::map<std::string, std::vector<Element>> ranges;
        for (const auto& f : fs) touched_pairs(f, u, ranges, touched);
    }
    std::vector<int> order(touched.begin(), touched.end());

    bool has_order = std::any_of(fs.begin(), fs.end(), contains_order_atom);
    std::vector<int> heights(u.people.size(), 1);
    std::vector<std::int8_t> visits(static_cast<std::size_t>(u.people.size()) * u.targets(), -1);

    int p = static_cast<int>(u.people.size());
    auto try_heights = [&]() {
        std::fill(visits.begin(), visits.end(), -1);
        OracleSearch s{fs, u, visits, heights, order};
        return s.search(0);
    };
    if (!has_order || p == 0) return try_heights();
    // Odometer over all height maps with levels 1..p; ties allowed.
    for (;;) {
        if (try_heights()) return true;
        int i = 0;
        while (i < p) {
            if (heights[i] < p) {
                ++heights[i];
                break;
            }
            heights[i] = 1;
            ++i;
        }
        if (i == p) return false;
    }
}

bool oracle_admissible(const std::vector<Formula>& fs, UniverseBounds bounds) {
    SortedConstants mentioned = free_constants(fs);
    std::size_t total_people = mentioned.persons.size() + bounds.extra_people;
    std::size_t total_places = mentioned.places.size() + bounds.extra_places;
    if (total_people > 5 || total_places > 5) return false;
    for (const auto& f : fs) {
        if (count_quantifier_max(f, Sort::Person) > static_cast<int>(total_people)) return false;
        if (count_quantifier_max(f, Sort::Place) > static_cast<int>(total_places)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fast decision procedure over the template fragment.

namespace {

struct NVisitLit {
    std::string agent;
    Constant target;
    bool positive;
};

// Signed visit literal under a (possibly empty) homogeneous quantifier prefix.
// A missing agent/target constant means the slot is universal/existential over
// its sort.
struct NQuantLit {
    bool positive;
    std::optional<std::string> agent_const;
    std::optional<Constant> target_const;
    Sort target_var_sort = Sort::Place;
};

struct NIota {
    std::string subject;
    enum Kind { EveryPlace, EveryPerson, Atom } kind;
    Constant atom_target{};
};

struct NCount {
    std::string agent;
    Sort sort;
    int n;
};

struct NOrder {
    std::string a, b;
    bool strict;
};

struct Units {
    std::vector<NVisitLit> lits;
    std::vector<NQuantLit> foralls;
    std::vector<NQuantLit> exists;
    std::vector<NIota> iotas;
    std::vector<NCount> counts;
    std::vector<NOrder> orders;
};

[[noreturn]] void outside_fragment(const std::string& why) {
    throw FragmentError("outside supported fragment: " + why);
}

// Unwraps a homogeneous quantifier prefix (all-forall or all-exists) around a
// signed visit atom.
NQuantLit quantified_literal(const Formula& f, bool universal, bool flip_sign) {
    std::vector<Variable> prefix;
    const Formula* cur = &f;
    for (;;) {
        if (universal) {
            if (const auto* q = std::get_if<ForAllNode>(&cur->node())) {
                prefix.push_back(q->var);
                cur = q->body.get();
                continue;
            }
        } else {
            if (const auto* q = std::get_if<ExistsNode>(&cur->node())) {
                prefix.push_back(q->var);
                cur = q->body.get();
                continue;
            }
        }
        break;
    }
    if (prefix.empty() || prefix.size() > 2) outside_fragment("quantifier prefix shape");
    bool sign = !flip_sign;
    if (const auto* neg = std::get_if<NotNode>(&cur->node())) {
        sign = !sign;
        cur = neg->body.get();
    }
    const auto* atom = std::get_if<VisitAtom>(&cur->node());
    if (!atom) outside_fragment("quantified body is not a visit literal");

    NQuantLit out;
    out.positive = sign;
    std::set<std::string> used;
    if (const auto* v = std::get_if<Variable>(&atom->agent)) {
        used.insert(v->name);
    } else {
        out.agent_const = std::get<Constant>(atom->agent).id;
    }
    if (const auto* v = std::get_if<Variable>(&atom->target)) {
        used.insert(v->name);
        out.target_var_sort = v->sort;
    } else {
        out.target_const = std::get<Constant>(atom->target);
    }
    for (const auto& v : prefix)
        if (!used.count(v.name)) outside_fragment("quantified variable unused in body");
    if (used.size() != prefix.size()) outside_fragment("quantifier prefix shape");
    return out;
}

void normalize(const Formula& f, Units& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                const auto* agent = std::get_if<Constant>(&n.agent);
                const auto* target = std::get_if<Constant>(&n.target);
                if (!agent || !target) outside_fragment("open visit literal");
                out.lits.push_back({agent->id, *target, true});
            } else if constexpr (std::is_same_v<T, TallerAtom> || std::is_same_v<T, AsTallAtom>) {
                const auto* a = std::get_if<Constant>(&n.a);
                const auto* b = std::get_if<Constant>(&n.b);
                if (!a || !b) outside_fragment("open order atom");
                out.orders.push_back({a->id, b->id, std::is_same_v<T, TallerAtom>});
            } else if constexpr (std::is_same_v<T, EqAtom>) {
                outside_fragment("equality atom");
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& p : n.parts) normalize(p, out);
            } else if constexpr (std::is_same_v<T, NotNode>) {
                const Formula& inner = *n.body;
                if (const auto* atom = std::get_if<VisitAtom>(&inner.node())) {
                    const auto* agent = std::get_if<Constant>(&atom->agent);
                    const auto* target = std::get_if<Constant>(&atom->target);
                    if (!agent || !target) outside_fragment("open visit literal");
                    out.lits.push_back({agent->id, *target, false});
                } else if (std::get_if<NotNode>(&inner.node())) {
                    normalize(*std::get<NotNode>(inner.node()).body, out);
                } else if (std::get_if<ExistsNode>(&inner.node())) {
                    out.foralls.push_back(quantified_literal(inner, /*universal=*/false, true));
                } else if (std::get_if<ForAllNode>(&inner.node())) {
                    out.exists.push_back(quantified_literal(inner, /*universal=*/true, true));
                } else if (std::get_if<TallerAtom>(&inner.node()) ||
                           std::get_if<AsTallAtom>(&inner.node())) {
                    outside_fragment("negated order atom");
                } else {
                    outside_fragment("negated compound formula");
                }
            } else if constexpr (std::is_same_v<T, ForAllNode>) {
                out.foralls.push_back(quantified_literal(f, /*universal=*/true, false));
            } else if constexpr (std::is_same_v<T, ExistsNode>) {
                out.exists.push_back(quantified_literal(f, /*universal=*/false, false));
            } else if constexpr (std::is_same_v<T, CountNode>) {
                const auto* atom = std::get_if<VisitAtom>(&n.body->node());
                if (!atom) outside_fragment("counting body is not a visit atom");
                const auto* agent = std::get_if<Constant>(&atom->agent);
                const auto* target = std::get_if<Variable>(&atom->target);
                if (!agent || !target || target->name != n.var.name)
                    outside_fragment("counting body shape");
                out.counts.push_back({agent->id, n.var.sort, n.count});
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                NIota unit;
                unit.subject = n.subject.id;
                const Formula& prop = *n.property;
                if (const auto* atom = std::get_if<VisitAtom>(&prop.node())) {
                    const auto* agent = std::get_if<Variable>(&atom->agent);
                    const auto* target = std::get_if<Constant>(&atom->target);
                    if (!agent || agent->name != n.var.name || !target)
                        outside_fragment("description property shape");
                    unit.kind = NIota::Atom;
                    unit.atom_target = *target;
                } else if (const auto* q = std::get_if<ForAllNode>(&prop.node())) {
                    const auto* atom2 = std::get_if<VisitAtom>(&q->body->node());
                    if (!atom2) outside_fragment("description property shape");
                    const auto* agent = std::get_if<Variable>(&atom2->agent);
                    const auto* target = std::get_if<Variable>(&atom2->target);
                    if (!agent || agent->name != n.var.name || !target ||
                        target->name != q->var.name)
                        outside_fragment("description property shape");
                    unit.kind = q->var.sort == Sort::Place ? NIota::EveryPlace : NIota::EveryPerson;
                } else {
                    outside_fragment("description property shape");
                }
                out.iotas.push_back(unit);
            }
        },
        f.node());
}

// Satisfiability of the order-atom constraint graph: unsatisfiable exactly
// when some cycle contains a strict edge.
bool orders_consistent(const std::vector<NOrder>& orders) {
    std::map<std::string, int> idx;
    for (const auto& o : orders) {
        idx.emplace(o.a, static_cast<int>(idx.size()));
        idx.emplace(o.b, static_cast<int>(idx.size()));
    }
    int n = static_cast<int>(idx.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& o : orders) reach[idx[o.a]][idx[o.b]] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    for (const auto& o : orders)
        if (o.strict && reach[idx[o.b]][idx[o.a]]) return false;
    return true;
}

struct ForcedMap {
    // (person index, target index) -> value
    std::map<std::pair<int, int>, bool> forced;

    bool set(int person, int target, bool value) {
        auto [it, inserted] = forced.emplace(std::make_pair(person, target), value);
        return inserted || it->second == value;
    }
    const bool* get(int person, int target) const {
        auto it = forced.find({person, target});
        return it == forced.end() ? nullptr : &it->second;
    }
};

}  // namespace

bool consistent(const std::vector<Formula>& fs) {
    Units units;
    for (const auto& f : fs) normalize(f, units);

    bool has_visit = !units.lits.empty() || !units.foralls.empty() || !units.exists.empty() ||
                     !units.iotas.empty() || !units.counts.empty();
    if (!units.orders.empty() && has_visit)
        outside_fragment("order atoms mixed with visit formulas");
    int quantified_groups = (!units.foralls.empty() || !units.exists.empty() ? 1 : 0) +
                            (!units.iotas.empty() ? 1 : 0) + (!units.counts.empty() ? 1 : 0);
    if (quantified_groups > 1) outside_fragment("mixed quantified constructs in one problem");
    if (units.exists.size() > 1) outside_fragment("multiple existential facts");

    if (!units.orders.empty()) return orders_consistent(units.orders);
    if (!has_visit) return true;

    // Bounded universe mirroring the oracle's default slack: every mentioned
    // constant plus one fresh entity per sort.
    SortedConstants mentioned = free_constants(fs);
    Universe u = bounded_universe(mentioned, UniverseBounds{1, 1});
    int npeople = static_cast<int>(u.people.size());
    int nplaces = static_cast<int>(u.places.size());

    auto target_of = [&](const Constant& c) {
        return c.sort == Sort::Person ? u.person_index.at(c.id) : npeople + u.place_index.at(c.id);
    };

    ForcedMap forced;
    for (const auto& lit : units.lits)
        if (!forced.set(u.person_index.at(lit.agent), target_of(lit.target), lit.positive))
            return false;

    for (const auto& q : units.foralls) {
        std::vector<int> agents;
        if (q.agent_const) agents.push_back(u.person_index.at(*q.agent_const));
        else
            for (int i = 0; i < npeople; ++i) agents.push_back(i);
        std::vector<int> targets;
        if (q.target_const) {
            targets.push_back(target_of(*q.target_const));
        } else if (q.target_var_sort == Sort::Person) {
            for (int i = 0; i < npeople; ++i) targets.push_back(i);
        } else {
            for (int i = 0; i < nplaces; ++i) targets.push_back(npeople + i);
        }
        for (int a : agents)
            for (int t : targets)
                if (!forced.set(a, t, q.positive)) return false;
    }

    auto iota_targets = [&](const NIota& iota) {
        std::vector<int> targets;
        switch (iota.kind) {
            case NIota::Atom:
                targets.push_back(target_of(iota.atom_target));
                break;
            case NIota::EveryPlace:
                for (int i = 0; i < nplaces; ++i) targets.push_back(npeople + i);
                break;
            case NIota::EveryPerson:
                for (int i = 0; i < npeople; ++i) targets.push_back(i);
                break;
        }
        return targets;
    };
    for (const auto& iota : units.iotas) {
        int subject = u.person_index.at(iota.subject);
        for (int t : iota_targets(iota))
            if (!forced.set(subject, t, true)) return false;
    }
    // Uniqueness: every other person must be able to fail the property.
    for (const auto& iota : units.iotas) {
        int subject = u.person_index.at(iota.subject);
        std::vector<int> targets = iota_targets(iota);
        for (int o = 0; o < npeople; ++o) {
            if (o == subject) continue;
            bool escapable = false;
            for (int t : targets) {
                const bool* v = forced.get(o, t);
                if (!v || !*v) {
                    escapable = true;
                    break;
                }
            }
            if (!escapable) return false;
        }
    }

    for (const auto& e : units.exists) {
        std::vector<int> agents;
        if (e.agent_const) agents.push_back(u.person_index.at(*e.agent_const));
        else
            for (int i = 0; i < npeople; ++i) agents.push_back(i);
        std::vector<int> targets;
        if (e.target_const) {
            targets.push_back(target_of(*e.target_const));
        } else if (e.target_var_sort == Sort::Person) {
            for (int i = 0; i < npeople; ++i) targets.push_back(i);
        } else {
            for (int i = 0; i < nplaces; ++i) targets.push_back(npeople + i);
        }
        bool witness = false;
        for (int a : agents) {
            for (int t : targets) {
                const bool* v = forced.get(a, t);
                if (!v || *v == e.positive) {
                    witness = true;
                    break;
                }
            }
            if (witness) break;
        }
        if (!witness) return false;
    }

    // Counting: contradiction exactly when the distinct forced-true instances
    // exceed the index; extension up to the index always succeeds because
    // counting never co-occurs with universals in the fragment, so fresh
    // entities stay unconstrained.
    std::map<std::pair<std::string, Sort>, int> count_index;
    for (const auto& c : units.counts) {
        auto key = std::make_pair(c.agent, c.sort);
        auto [it, inserted] = count_index.emplace(key, c.n);
        if (!inserted && it->second != c.n) return false;
    }
    for (const auto& [key, n] : count_index) {
        int agent = u.person_index.at(key.first);
        int forced_true = 0;
        if (key.second == Sort::Person) {
            for (int i = 0; i < npeople; ++i) {
                const bool* v = forced.get(agent, i);
                if (v && *v) ++forced_true;
            }
        } else {
            for (int i = 0; i < nplaces; ++i) {
                const bool* v = forced.get(agent, npeople + i);
                if (v && *v) ++forced_true;
            }
        }
        if (forced_true > n) return false;
    }

    return true;
}

Label label_pair(const std::vector<Formula>& premise, const Formula& hypothesis) {
    std::vector<Formula> fs = premise;
    fs.push_back(hypothesis);
    return consistent(fs) ? Label::NonContradiction : Label::Contradiction;
}

}  // namespace cforge
