#include "cforge/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cforge {

std::string to_string(Sort s) { return s == Sort::Person ? "person" : "place"; }

Sort sort_of(const Term& t) {
    if (const auto* c = std::get_if<Constant>(&t)) return c->sort;
    return std::get<Variable>(t).sort;
}

std::string to_string(Label l) {
    return l == Label::Contradiction ? "contradiction" : "non-contradiction";
}

Label label_from_string(std::string_view s) {
    if (s == "contradiction" || s == "1") return Label::Contradiction;
    if (s == "non-contradiction" || s == "0") return Label::NonContradiction;
    throw DataError("unknown label: '" + std::string(s) + "'");
}

namespace {

bool valid_symbol(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::islower(c) || std::isdigit(c) || c == '_';
    });
}

void check_term(const Term& t, const char* ctor) {
    const std::string& name =
        std::holds_alternative<Constant>(t) ? std::get<Constant>(t).id : std::get<Variable>(t).name;
    if (!valid_symbol(name))
        throw LogicError(std::string(ctor) + ": invalid symbol '" + name + "'");
}

void collect_bound(const Formula& f, std::vector<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NotNode>) {
                collect_bound(*n.body, out);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& p : n.parts) collect_bound(p, out);
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                out.push_back(n.var.name);
                collect_bound(*n.body, out);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                out.push_back(n.var.name);
                collect_bound(*n.body, out);
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                out.push_back(n.var.name);
                collect_bound(*n.property, out);
            }
        },
        f.node());
}

void check_binder(const Variable& v, const Formula& body, const char* ctor) {
    if (!valid_symbol(v.name)) throw LogicError(std::string(ctor) + ": invalid symbol '" + v.name + "'");
    std::vector<std::string> bound;
    collect_bound(body, bound);
    if (std::find(bound.begin(), bound.end(), v.name) != bound.end())
        throw LogicError(std::string(ctor) + ": variable '" + v.name + "' shadowed in body");
}

}  // namespace

Formula Formula::visit(Term agent, Term target) {
    check_term(agent, "visit");
    check_term(target, "visit");
    if (sort_of(agent) != Sort::Person) throw SortError("visit: agent must be a person");
    return Formula(Node(VisitAtom{std::move(agent), std::move(target)}));
}

Formula Formula::taller(Term a, Term b) {
    check_term(a, "taller");
    check_term(b, "taller");
    if (sort_of(a) != Sort::Person || sort_of(b) != Sort::Person)
        throw SortError("taller: both terms must be persons");
    return Formula(Node(TallerAtom{std::move(a), std::move(b)}));
}

Formula Formula::astall(Term a, Term b) {
    check_term(a, "astall");
    check_term(b, "astall");
    if (sort_of(a) != Sort::Person || sort_of(b) != Sort::Person)
        throw SortError("astall: both terms must be persons");
    return Formula(Node(AsTallAtom{std::move(a), std::move(b)}));
}

Formula Formula::eq(Term a, Term b) {
    check_term(a, "eq");
    check_term(b, "eq");
    if (sort_of(a) != sort_of(b)) throw SortError("eq: terms must have the same sort");
    return Formula(Node(EqAtom{std::move(a), std::move(b)}));
}

Formula Formula::not_(Formula f) {
    return Formula(Node(NotNode{std::make_shared<const Formula>(std::move(f))}));
}

Formula Formula::and_(std::vector<Formula> parts) {
    if (parts.empty()) throw LogicError("and: empty conjunction");
    std::vector<Formula> flat;
    for (auto& p : parts) {
        if (const auto* a = std::get_if<AndNode>(&p.node())) {
            flat.insert(flat.end(), a->parts.begin(), a->parts.end());
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.size() == 1) return flat.front();
    std::vector<std::string> bound;
    for (const auto& p : flat) collect_bound(p, bound);
    std::sort(bound.begin(), bound.end());
    if (std::adjacent_find(bound.begin(), bound.end()) != bound.end())
        throw LogicError("and: duplicate bound variable across conjuncts");
    return Formula(Node(AndNode{std::move(flat)}));
}

Formula Formula::forall(Variable v, Formula body) {
    check_binder(v, body, "forall");
    return Formula(Node(ForAllNode{std::move(v), std::make_shared<const Formula>(std::move(body))}));
}

Formula Formula::exists(Variable v, Formula body) {
    check_binder(v, body, "exists");
    return Formula(Node(ExistsNode{std::move(v), std::make_shared<const Formula>(std::move(body))}));
}

Formula Formula::count(int n, Variable v, Formula body) {
    if (n < 1 || n > 30) throw LogicError("count: index must be in [1, 30]");
    check_binder(v, body, "count");
    return Formula(Node(CountNode{n, std::move(v), std::make_shared<const Formula>(std::move(body))}));
}

Formula Formula::iota(Constant subject, Variable v, Formula property) {
    if (!valid_symbol(subject.id)) throw LogicError("iota: invalid symbol '" + subject.id + "'");
    if (subject.sort != Sort::Person) throw SortError("iota: subject must be a person");
    if (v.sort != Sort::Person) throw SortError("iota: description variable must be a person");
    check_binder(v, property, "iota");
    return Formula(
        Node(IotaNode{std::move(subject), std::move(v), std::make_shared<const Formula>(std::move(property))}));
}

namespace {

bool node_equal(const Formula& a, const Formula& b);

bool term_equal(const Term& a, const Term& b) { return a == b; }

struct EqVisitor {
    const Formula::Node& rhs;

    bool operator()(const VisitAtom& a) const {
        const auto& b = std::get<VisitAtom>(rhs);
        return term_equal(a.agent, b.agent) && term_equal(a.target, b.target);
    }
    bool operator()(const TallerAtom& a) const {
        const auto& b = std::get<TallerAtom>(rhs);
        return term_equal(a.a, b.a) && term_equal(a.b, b.b);
    }
    bool operator()(const AsTallAtom& a) const {
        const auto& b = std::get<AsTallAtom>(rhs);
        return term_equal(a.a, b.a) && term_equal(a.b, b.b);
    }
    bool operator()(const EqAtom& a) const {
        const auto& b = std::get<EqAtom>(rhs);
        return term_equal(a.a, b.a) && term_equal(a.b, b.b);
    }
    bool operator()(const NotNode& a) const {
        return node_equal(*a.body, *std::get<NotNode>(rhs).body);
    }
    bool operator()(const AndNode& a) const {
        const auto& b = std::get<AndNode>(rhs);
        if (a.parts.size() != b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (!node_equal(a.parts[i], b.parts[i])) return false;
        return true;
    }
    bool operator()(const ForAllNode& a) const {
        const auto& b = std::get<ForAllNode>(rhs);
        return a.var == b.var && node_equal(*a.body, *b.body);
    }
    bool operator()(const ExistsNode& a) const {
        const auto& b = std::get<ExistsNode>(rhs);
        return a.var == b.var && node_equal(*a.body, *b.body);
    }
    bool operator()(const CountNode& a) const {
        const auto& b = std::get<CountNode>(rhs);
        return a.count == b.count && a.var == b.var && node_equal(*a.body, *b.body);
    }
    bool operator()(const IotaNode& a) const {
        const auto& b = std::get<IotaNode>(rhs);
        return a.subject == b.subject && a.var == b.var && node_equal(*a.property, *b.property);
    }
};

bool node_equal(const Formula& a, const Formula& b) {
    if (&a.node() == &b.node()) return true;
    if (a.node().index() != b.node().index()) return false;
    return std::visit(EqVisitor{b.node()}, a.node());
}

}  // namespace

bool Formula::operator==(const Formula& other) const { return node_equal(*this, other); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// How an unannotated constant in a given argument position is read.
enum class SlotRule { ForcedPerson, DefaultPlace, DefaultPerson };

void print_term(std::ostringstream& os, const Term& t, SlotRule rule) {
    if (const auto* v = std::get_if<Variable>(&t)) {
        os << v->name;
        return;
    }
    const auto& c = std::get<Constant>(t);
    os << c.id;
    switch (rule) {
        case SlotRule::ForcedPerson:
            break;
        case SlotRule::DefaultPlace:
            if (c.sort == Sort::Person) os << ":person";
            break;
        case SlotRule::DefaultPerson:
            if (c.sort == Sort::Place) os << ":place";
            break;
    }
}

void print_rec(std::ostringstream& os, const Formula& f) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                os << "(visit ";
                print_term(os, n.agent, SlotRule::ForcedPerson);
                os << ' ';
                print_term(os, n.target, SlotRule::DefaultPlace);
                os << ')';
            } else if constexpr (std::is_same_v<T, TallerAtom>) {
                os << "(taller ";
                print_term(os, n.a, SlotRule::ForcedPerson);
                os << ' ';
                print_term(os, n.b, SlotRule::ForcedPerson);
                os << ')';
            } else if constexpr (std::is_same_v<T, AsTallAtom>) {
                os << "(astall ";
                print_term(os, n.a, SlotRule::ForcedPerson);
                os << ' ';
                print_term(os, n.b, SlotRule::ForcedPerson);
                os << ')';
            } else if constexpr (std::is_same_v<T, EqAtom>) {
                os << "(eq ";
                print_term(os, n.a, SlotRule::DefaultPerson);
                os << ' ';
                print_term(os, n.b, SlotRule::DefaultPerson);
                os << ')';
            } else if constexpr (std::is_same_v<T, NotNode>) {
                os << "(not ";
                print_rec(os, *n.body);
                os << ')';
            } else if constexpr (std::is_same_v<T, AndNode>) {
                os << "(and";
                for (const auto& p : n.parts) {
                    os << ' ';
                    print_rec(os, p);
                }
                os << ')';
            } else if constexpr (std::is_same_v<T, ForAllNode>) {
                os << "(forall (" << n.var.name << ' ' << to_string(n.var.sort) << ") ";
                print_rec(os, *n.body);
                os << ')';
            } else if constexpr (std::is_same_v<T, ExistsNode>) {
                os << "(exists (" << n.var.name << ' ' << to_string(n.var.sort) << ") ";
                print_rec(os, *n.body);
                os << ')';
            } else if constexpr (std::is_same_v<T, CountNode>) {
                os << "(count " << n.count << " (" << n.var.name << ' ' << to_string(n.var.sort)
                   << ") ";
                print_rec(os, *n.body);
                os << ')';
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                os << "(iota " << n.subject.id << " (" << n.var.name << ") ";
                print_rec(os, *n.property);
                os << ')';
            }
        },
        f.node());
}

}  // namespace

std::string print_formula(const Formula& f) {
    std::ostringstream os;
    print_rec(os, f);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    std::vector<Variable> scope;
    std::map<std::string, Sort> seen_constants;

    std::size_t eof_offset() const { return text.empty() ? 0 : text.size() - 1; }

    [[noreturn]] void fail(std::size_t off, const std::string& msg) { throw ParseError(off, msg); }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos >= text.size()) fail(eof_offset(), std::string("unexpected end of input, expected ") + what);
        if (text[pos] != c) fail(pos, std::string("expected ") + what);
        ++pos;
    }

    static bool symbol_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == ':';
    }

    std::string_view symbol(const char* what) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && symbol_char(text[pos])) ++pos;
        if (pos == start) {
            if (pos >= text.size())
                fail(eof_offset(), std::string("unexpected end of input, expected ") + what);
            fail(pos, std::string("expected ") + what);
        }
        return text.substr(start, pos - start);
    }

    const Variable* lookup(std::string_view name) const {
        for (const auto& v : scope)
            if (v.name == name) return &v;
        return nullptr;
    }

    Sort parse_sort(std::string_view s, std::size_t off) {
        if (s == "person") return Sort::Person;
        if (s == "place") return Sort::Place;
        fail(off, "expected sort 'person' or 'place'");
    }

    Constant make_constant(std::string_view name, Sort sort, std::size_t off) {
        std::string id(name);
        auto [it, inserted] = seen_constants.emplace(id, sort);
        if (!inserted && it->second != sort)
            fail(off, "constant '" + id + "' used with two sorts");
        return Constant{std::move(id), sort};
    }

    Term term(SlotRule rule) {
        skip_ws();
        std::size_t off = pos;
        std::string_view sym = symbol("term");
        std::string_view name = sym;
        std::string_view annot;
        if (auto colon = sym.find(':'); colon != std::string_view::npos) {
            name = sym.substr(0, colon);
            annot = sym.substr(colon + 1);
            if (name.empty() || annot.empty() || annot.find(':') != std::string_view::npos)
                fail(off, "malformed sort annotation");
        }
        if (const Variable* v = lookup(name)) {
            if (!annot.empty()) fail(off, "sort annotation on bound variable '" + std::string(name) + "'");
            return *v;
        }
        Sort sort;
        auto seen = seen_constants.find(std::string(name));
        if (!annot.empty()) {
            sort = parse_sort(annot, off + name.size() + 1);
        } else if (seen != seen_constants.end()) {
            // A constant's sort is a property of its id; later bare uses keep it.
            sort = seen->second;
        } else {
            sort = rule == SlotRule::DefaultPlace ? Sort::Place : Sort::Person;
        }
        return make_constant(name, sort, off);
    }

    Variable binder(bool with_sort, Sort implied) {
        expect('(', "'('");
        skip_ws();
        std::size_t off = pos;
        std::string_view name = symbol("variable");
        if (name.find(':') != std::string_view::npos) fail(off, "malformed variable name");
        Sort sort = implied;
        if (with_sort) {
            skip_ws();
            std::size_t soff = pos;
            sort = parse_sort(symbol("sort"), soff);
        }
        if (lookup(name)) fail(off, "variable '" + std::string(name) + "' shadows an enclosing binder");
        if (seen_constants.count(std::string(name)))
            fail(off, "variable '" + std::string(name) + "' collides with a constant");
        expect(')', "')'");
        return Variable{std::string(name), sort};
    }

    int integer() {
        skip_ws();
        std::size_t off = pos;
        std::string_view s = symbol("integer");
        int value = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail(off, "expected integer");
            value = value * 10 + (c - '0');
            if (value > 1000) fail(off, "integer out of range");
        }
        return value;
    }

    Formula sentence() {
        expect('(', "'('");
        skip_ws();
        std::size_t head_off = pos;
        std::string_view head = symbol("operator");
        if (head == "visit") {
            Term a = term(SlotRule::ForcedPerson);
            Term t = term(SlotRule::DefaultPlace);
            expect(')', "')'");
            return Formula::visit(std::move(a), std::move(t));
        }
        if (head == "taller" || head == "astall") {
            Term a = term(SlotRule::ForcedPerson);
            Term b = term(SlotRule::ForcedPerson);
            expect(')', "')'");
            return head == "taller" ? Formula::taller(std::move(a), std::move(b))
                                    : Formula::astall(std::move(a), std::move(b));
        }
        if (head == "eq") {
            Term a = term(SlotRule::DefaultPerson);
            Term b = term(SlotRule::DefaultPerson);
            expect(')', "')'");
            return Formula::eq(std::move(a), std::move(b));
        }
        if (head == "not") {
            Formula f = sentence();
            expect(')', "')'");
            return Formula::not_(std::move(f));
        }
        if (head == "and") {
            std::vector<Formula> parts;
            for (;;) {
                skip_ws();
                if (pos < text.size() && text[pos] == ')') {
                    ++pos;
                    break;
                }
                if (pos >= text.size()) fail(eof_offset(), "unexpected end of input in conjunction");
                parts.push_back(sentence());
            }
            if (parts.empty()) fail(head_off, "empty conjunction");
            return Formula::and_(std::move(parts));
        }
        if (head == "forall" || head == "exists") {
            Variable v = binder(/*with_sort=*/true, Sort::Person);
            scope.push_back(v);
            Formula body = sentence();
            scope.pop_back();
            expect(')', "')'");
            return head == "forall" ? Formula::forall(std::move(v), std::move(body))
                                    : Formula::exists(std::move(v), std::move(body));
        }
        if (head == "count") {
            int n = integer();
            Variable v = binder(/*with_sort=*/true, Sort::Person);
            scope.push_back(v);
            Formula body = sentence();
            scope.pop_back();
            expect(')', "')'");
            return Formula::count(n, std::move(v), std::move(body));
        }
        if (head == "iota") {
            skip_ws();
            std::size_t off = pos;
            std::string_view subj = symbol("constant");
            if (subj.find(':') != std::string_view::npos) fail(off, "iota subject takes no annotation");
            Constant subject = make_constant(subj, Sort::Person, off);
            Variable v = binder(/*with_sort=*/false, Sort::Person);
            scope.push_back(v);
            Formula property = sentence();
            scope.pop_back();
            expect(')', "')'");
            return Formula::iota(std::move(subject), std::move(v), std::move(property));
        }
        fail(head_off, "unknown form '" + std::string(head) + "'");
    }
};

}  // namespace

Formula parse_formula(std::string_view text) {
    Parser p{text, 0, {}, {}};
    Formula f = p.sentence();
    p.skip_ws();
    if (p.pos != text.size()) p.fail(p.pos, "trailing characters after sentence");
    return f;
}

// ---------------------------------------------------------------------------
// Structural utilities

namespace {

void collect_constants(const Formula& f, SortedConstants& out) {
    auto add = [&](const Term& t) {
        if (const auto* c = std::get_if<Constant>(&t)) {
            (c->sort == Sort::Person ? out.persons : out.places).insert(c->id);
        }
    };
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                add(n.agent);
                add(n.target);
            } else if constexpr (std::is_same_v<T, TallerAtom> || std::is_same_v<T, AsTallAtom>) {
                add(n.a);
                add(n.b);
            } else if constexpr (std::is_same_v<T, EqAtom>) {
                add(n.a);
                add(n.b);
            } else if constexpr (std::is_same_v<T, NotNode>) {
                collect_constants(*n.body, out);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& p : n.parts) collect_constants(p, out);
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                collect_constants(*n.body, out);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                collect_constants(*n.body, out);
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                out.persons.insert(n.subject.id);
                collect_constants(*n.property, out);
            }
        },
        f.node());
}

}  // namespace

SortedConstants free_constants(const Formula& f) {
    SortedConstants out;
    collect_constants(f, out);
    return out;
}

SortedConstants free_constants(const std::vector<Formula>& fs) {
    SortedConstants out;
    for (const auto& f : fs) collect_constants(f, out);
    return out;
}

Formula negate(const Formula& f) {
    if (const auto* n = std::get_if<NotNode>(&f.node())) return *n->body;
    return Formula::not_(f);
}

namespace {

Term rename_term(const Term& t, const std::map<Constant, Constant>& map) {
    if (const auto* c = std::get_if<Constant>(&t)) {
        auto it = map.find(*c);
        if (it != map.end()) return it->second;
    }
    return t;
}

Formula rename_rec(const Formula& f, const std::map<Constant, Constant>& map) {
    return std::visit(
        [&](const auto& n) -> Formula {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VisitAtom>) {
                return Formula::visit(rename_term(n.agent, map), rename_term(n.target, map));
            } else if constexpr (std::is_same_v<T, TallerAtom>) {
                return Formula::taller(rename_term(n.a, map), rename_term(n.b, map));
            } else if constexpr (std::is_same_v<T, AsTallAtom>) {
                return Formula::astall(rename_term(n.a, map), rename_term(n.b, map));
            } else if constexpr (std::is_same_v<T, EqAtom>) {
                return Formula::eq(rename_term(n.a, map), rename_term(n.b, map));
            } else if constexpr (std::is_same_v<T, NotNode>) {
                return Formula::not_(rename_rec(*n.body, map));
            } else if constexpr (std::is_same_v<T, AndNode>) {
                std::vector<Formula> parts;
                parts.reserve(n.parts.size());
                for (const auto& p : n.parts) parts.push_back(rename_rec(p, map));
                return Formula::and_(std::move(parts));
            } else if constexpr (std::is_same_v<T, ForAllNode>) {
                return Formula::forall(n.var, rename_rec(*n.body, map));
            } else if constexpr (std::is_same_v<T, ExistsNode>) {
                return Formula::exists(n.var, rename_rec(*n.body, map));
            } else if constexpr (std::is_same_v<T, CountNode>) {
                return Formula::count(n.count, n.var, rename_rec(*n.body, map));
            } else {
                auto subj = map.find(n.subject);
                return Formula::iota(subj != map.end() ? subj->second : n.subject, n.var,
                                     rename_rec(*n.property, map));
            }
        },
        f.node());
}

}  // namespace

Formula rename_constants(const Formula& f, const std::map<Constant, Constant>& map) {
    std::set<std::string> values;
    for (const auto& [from, to] : map) {
        if (from.sort != to.sort)
            throw SortError("rename_constants: '" + from.id + "' -> '" + to.id + "' changes sort");
        if (!values.insert(to.id).second)
            throw LogicError("rename_constants: map is not injective ('" + to.id + "' repeated)");
    }
    // A value colliding with an untouched constant would merge two individuals.
    SortedConstants present = free_constants(f);
    for (const auto& [from, to] : map) {
        bool occurs = present.persons.count(to.id) || present.places.count(to.id);
        if (occurs && !map.count(Constant{to.id, Sort::Person}) &&
            !map.count(Constant{to.id, Sort::Place}))
            throw LogicError("rename_constants: '" + to.id + "' collides with an unmapped constant");
    }
    return rename_rec(f, map);
}

}  // namespace cforge
