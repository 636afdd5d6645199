#pragma once

// Template-logic AST over a two-sorted universe (people and places), its
// canonical s-expression serialization, and structural utilities.
//
// Formulas are immutable values sharing subterms through shared_ptr; they are
// safe to copy and to share across threads.

#include <cstdint>
#include <memory>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cforge/common.hpp"

namespace cforge {

enum class Sort : std::uint8_t { Person, Place };

std::string to_string(Sort s);

struct Constant {
    std::string id;   // lowercase symbol, unique per universe
    Sort sort;

    friend bool operator==(const Constant&, const Constant&) = default;
    friend auto operator<=>(const Constant&, const Constant&) = default;
};

struct Variable {
    std::string name;
    Sort sort;

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;
};

using Term = std::variant<Constant, Variable>;

Sort sort_of(const Term& t);

enum class Label : std::uint8_t { NonContradiction = 0, Contradiction = 1 };

// "contradiction" / "non-contradiction"
std::string to_string(Label l);
Label label_from_string(std::string_view s);

class Formula;

// x has visited y (agent is a person; target may be a person or a place).
struct VisitAtom {
    Term agent;
    Term target;
};
// a is taller than b (strict).
struct TallerAtom {
    Term a;
    Term b;
};
// a is as tall as b (weak: at least as tall).
struct AsTallAtom {
    Term a;
    Term b;
};
struct EqAtom {
    Term a;
    Term b;
};
struct NotNode {
    std::shared_ptr<const Formula> body;
};
struct AndNode {
    std::vector<Formula> parts;  // nonempty, never nested (flattened)
};
struct ForAllNode {
    Variable var;
    std::shared_ptr<const Formula> body;
};
struct ExistsNode {
    Variable var;
    std::shared_ptr<const Formula> body;
};
// Exactly `count` elements of the variable's sort satisfy the body.
struct CountNode {
    int count;  // in [1, 30]
    Variable var;
    std::shared_ptr<const Formula> body;
};
// subject is the unique person with the property: property(subject) holds and
// property(o) fails for every other person o.
struct IotaNode {
    Constant subject;  // person
    Variable var;      // person
    std::shared_ptr<const Formula> property;
};

class Formula {
public:
    using Node = std::variant<VisitAtom, TallerAtom, AsTallAtom, EqAtom, NotNode, AndNode,
                              ForAllNode, ExistsNode, CountNode, IotaNode>;

    // Empty handle; any structural use throws. Assign a real formula first.
    Formula() = default;

    // Checked constructors; each throws SortError/LogicError on misuse.
    static Formula visit(Term agent, Term target);
    static Formula taller(Term a, Term b);
    static Formula astall(Term a, Term b);
    static Formula eq(Term a, Term b);
    static Formula not_(Formula f);
    static Formula and_(std::vector<Formula> parts);  // flattens; single part collapses
    static Formula forall(Variable v, Formula body);
    static Formula exists(Variable v, Formula body);
    static Formula count(int n, Variable v, Formula body);
    static Formula iota(Constant subject, Variable v, Formula property);

    const Node& node() const {
        if (!node_) throw LogicError("use of an empty formula");
        return *node_;
    }

    bool empty() const { return !node_; }

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
    std::shared_ptr<const Node> node_;
};

struct SortedConstants {
    std::set<std::string> persons;
    std::set<std::string> places;
};

// Canonical serialization. One sentence per line in files; see the grammar in
// the README. A person constant in a position whose sort is not forced by the
// constructor is annotated "id:person"; everything else prints bare.
std::string print_formula(const Formula& f);
Formula parse_formula(std::string_view text);

// Constants occurring in f, partitioned by sort.
SortedConstants free_constants(const Formula& f);
SortedConstants free_constants(const std::vector<Formula>& fs);

// Logical negation with double-negation elimination: negate(Not(g)) = g.
Formula negate(const Formula& f);

// Replaces constants per `map` (injective, sort-preserving; rejected otherwise).
Formula rename_constants(const Formula& f, const std::map<Constant, Constant>& map);

// Premise/hypothesis pair before realization.
struct SymbolicPair {
    std::vector<Formula> premise;
    Formula hypothesis;
    Label label;
    int task = 0;  // 1..7
    std::string template_id;
};

}  // namespace cforge
