#include "cforge/realization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cforge/rng.hpp"
#include "json.hpp"

namespace cforge {

std::string to_string(Language l) { return l == Language::English ? "en" : "pt"; }

Language language_from_string(std::string_view s) {
    if (s == "en" || s == "english") return Language::English;
    if (s == "pt" || s == "portuguese") return Language::Portuguese;
    throw DataError("unknown language: '" + std::string(s) + "'");
}

PhraseTable english_phrases() {
    PhraseTable t;
    t.visit_pos = "{a} has visited {t}";
    t.visit_neg = "{a} didn't visit {t}";
    t.visit_pos_plural = "{as} have visited {t}";
    t.visit_targets = "{a} has visited {ts}";
    t.everyone_every_place = "Everyone has visited every place";
    t.everyone_everyone = "Everyone has visited everyone";
    t.visits_every_place = "{a} has visited every place";
    t.visits_everyone = "{a} has visited everyone";
    t.everyone_visits = "Everyone has visited {t}";
    t.someone_visits = "Someone has visited {t}";
    t.no_one_visits = "No one has visited {t}";
    t.iota_every_place = "{a} is the person that has visited every place";
    t.iota_everyone = "{a} is the person that has visited everyone";
    t.iota_atom = "{a} is the person that has visited {t}";
    t.taller = "{a} is taller than {b}";
    t.astall = "{a} is as tall as {b}";
    t.count_visits = "{a} has visited {counts}";
    t.count_join = " and ";
    t.count_places_one = "only one place";
    t.count_places_many = "only {n} places";
    t.count_people_one = "only one person";
    t.count_people_many = "only {n} people";
    t.list_sep = ", ";
    t.list_two = "{x} and {y}";
    t.list_final = ", and ";
    t.numbers = {"one",       "two",       "three",    "four",     "five",       "six",
                 "seven",     "eight",     "nine",     "ten",      "eleven",     "twelve",
                 "thirteen",  "fourteen",  "fifteen",  "sixteen",  "seventeen",  "eighteen",
                 "nineteen",  "twenty",    "twenty-one", "twenty-two", "twenty-three",
                 "twenty-four", "twenty-five", "twenty-six", "twenty-seven", "twenty-eight",
                 "twenty-nine", "thirty"};
    t.numbers_fem = t.numbers;
    return t;
}

PhraseTable portuguese_phrases() {
    PhraseTable t;
    t.visit_pos = "{a} visitou {t}";
    t.visit_neg = "{a} não visitou {t}";
    t.visit_pos_plural = "{as} visitaram {t}";
    t.visit_targets = "{a} visitou {ts}";
    t.everyone_every_place = "Todo mundo visitou todo lugar";
    t.everyone_everyone = "Todo mundo visitou todo mundo";
    t.visits_every_place = "{a} visitou todo lugar";
    t.visits_everyone = "{a} visitou todo mundo";
    t.everyone_visits = "Todo mundo visitou {t}";
    t.someone_visits = "Alguém visitou {t}";
    t.no_one_visits = "Ninguém visitou {t}";
    t.iota_every_place = "{a} é a pessoa que visitou todo lugar";
    t.iota_everyone = "{a} é a pessoa que visitou todo mundo";
    t.iota_atom = "{a} é a pessoa que visitou {t}";
    t.taller = "{a} é mais alto que {b}";
    t.astall = "{a} é tão alto quanto {b}";
    t.count_visits = "{a} visitou {counts}";
    t.count_join = " e ";
    t.count_places_one = "apenas um lugar";
    t.count_places_many = "apenas {n} lugares";
    t.count_people_one = "apenas uma pessoa";
    t.count_people_many = "apenas {n} pessoas";
    t.list_sep = ", ";
    t.list_two = "{x} e {y}";
    t.list_final = " e ";
    t.numbers = {"um",        "dois",      "três",      "quatro",    "cinco",      "seis",
                 "sete",      "oito",      "nove",      "dez",       "onze",       "doze",
                 "treze",     "catorze",   "quinze",    "dezesseis", "dezessete",  "dezoito",
                 "dezenove",  "vinte",     "vinte e um", "vinte e dois", "vinte e três",
                 "vinte e quatro", "vinte e cinco", "vinte e seis", "vinte e sete",
                 "vinte e oito", "vinte e nove", "trinta"};
    t.numbers_fem = t.numbers;
    t.numbers_fem[0] = "uma";
    t.numbers_fem[1] = "duas";
    t.numbers_fem[20] = "vinte e uma";
    t.numbers_fem[21] = "vinte e duas";
    return t;
}

namespace {

std::string subst(std::string templ, std::string_view slot, std::string_view value) {
    std::string key = "{" + std::string(slot) + "}";
    auto pos = templ.find(key);
    if (pos == std::string::npos)
        throw LexiconError("template is missing slot " + key + ": '" + templ + "'");
    templ.replace(pos, key.size(), value);
    return templ;
}

bool has_forbidden_ws(std::string_view name) {
    return name.find('\t') != std::string_view::npos || name.find('\n') != std::string_view::npos ||
           name.find('\r') != std::string_view::npos;
}

}  // namespace

void Lexicon::validate() const {
    if (person_names.empty()) throw LexiconError("lexicon has no person names");
    if (place_names.empty()) throw LexiconError("lexicon has no place names");
    std::set<std::string> persons, places;
    for (const auto& p : person_names) {
        if (p.name.empty() || has_forbidden_ws(p.name))
            throw LexiconError("bad person name: '" + p.name + "'");
        if (!persons.insert(p.name).second)
            throw LexiconError("duplicate person name: '" + p.name + "'");
    }
    for (const auto& p : place_names) {
        if (p.empty() || has_forbidden_ws(p)) throw LexiconError("bad place name: '" + p + "'");
        if (!places.insert(p).second) throw LexiconError("duplicate place name: '" + p + "'");
    }
    for (const auto& p : persons)
        if (places.count(p))
            throw LexiconError("name '" + p + "' appears as both a person and a place");
    if (phrases.numbers.size() != 30 || phrases.numbers_fem.size() != 30)
        throw LexiconError("number word tables must cover 1..30");
}

namespace {

const std::map<std::string, std::string PhraseTable::*>& phrase_registry() {
    static const std::map<std::string, std::string PhraseTable::*> reg{
        {"visit_pos", &PhraseTable::visit_pos},
        {"visit_neg", &PhraseTable::visit_neg},
        {"visit_pos_plural", &PhraseTable::visit_pos_plural},
        {"visit_targets", &PhraseTable::visit_targets},
        {"everyone_every_place", &PhraseTable::everyone_every_place},
        {"everyone_everyone", &PhraseTable::everyone_everyone},
        {"visits_every_place", &PhraseTable::visits_every_place},
        {"visits_everyone", &PhraseTable::visits_everyone},
        {"everyone_visits", &PhraseTable::everyone_visits},
        {"someone_visits", &PhraseTable::someone_visits},
        {"no_one_visits", &PhraseTable::no_one_visits},
        {"iota_every_place", &PhraseTable::iota_every_place},
        {"iota_everyone", &PhraseTable::iota_everyone},
        {"iota_atom", &PhraseTable::iota_atom},
        {"taller", &PhraseTable::taller},
        {"astall", &PhraseTable::astall},
        {"count_visits", &PhraseTable::count_visits},
        {"count_join", &PhraseTable::count_join},
        {"count_places_one", &PhraseTable::count_places_one},
        {"count_places_many", &PhraseTable::count_places_many},
        {"count_people_one", &PhraseTable::count_people_one},
        {"count_people_many", &PhraseTable::count_people_many},
        {"list_sep", &PhraseTable::list_sep},
        {"list_two", &PhraseTable::list_two},
        {"list_final", &PhraseTable::list_final},
    };
    return reg;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n'));
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError("cannot open lexicon file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LexiconError(path + ":" + std::to_string(line_of_offset(text, e.byte)) +
                           ": " + e.what());
    }

    Lexicon lex;
    try {
        lex.language = language_from_string(j.at("language").get<std::string>());
        for (const auto& entry : j.at("person_names")) {
            std::string name = entry.at(0).get<std::string>();
            std::string g = entry.at(1).get<std::string>();
            if (g != "m" && g != "f")
                throw LexiconError("gender tag must be 'm' or 'f' for '" + name + "'");
            lex.person_names.push_back({std::move(name), g == "m" ? Gender::Masc : Gender::Fem});
        }
        for (const auto& entry : j.at("place_names"))
            lex.place_names.push_back(entry.get<std::string>());
        lex.phrases =
            lex.language == Language::English ? english_phrases() : portuguese_phrases();
        if (j.contains("templates")) {
            for (const auto& [key, value] : j.at("templates").items()) {
                if (key == "numbers" || key == "numbers_fem") {
                    auto& table =
                        key == "numbers" ? lex.phrases.numbers : lex.phrases.numbers_fem;
                    table = value.get<std::vector<std::string>>();
                    continue;
                }
                auto it = phrase_registry().find(key);
                if (it == phrase_registry().end())
                    throw LexiconError("unknown template key '" + key + "' in " + path);
                lex.phrases.*(it->second) = value.get<std::string>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw LexiconError(path + ": " + e.what());
    }
    lex.validate();
    return lex;
}

std::set<std::string> template_tokens(const Lexicon& lex) {
    const PhraseTable& t = lex.phrases;
    std::vector<const std::string*> all{
        &t.visit_pos,       &t.visit_neg,        &t.visit_pos_plural,  &t.visit_targets,
        &t.everyone_every_place, &t.everyone_everyone, &t.visits_every_place, &t.visits_everyone,
        &t.everyone_visits, &t.someone_visits,   &t.no_one_visits,     &t.iota_every_place,
        &t.iota_everyone,   &t.iota_atom,        &t.taller,            &t.astall,
        &t.count_visits,    &t.count_join,       &t.count_places_one,  &t.count_places_many,
        &t.count_people_one, &t.count_people_many, &t.list_sep,        &t.list_two,
        &t.list_final};
    std::set<std::string> out;
    auto add_tokens = [&](const std::string& s) {
        std::string cleaned = s;
        for (std::string_view slot : {"{a}", "{t}", "{b}", "{as}", "{ts}", "{counts}", "{n}",
                                      "{x}", "{y}"}) {
            for (auto pos = cleaned.find(slot); pos != std::string::npos;
                 pos = cleaned.find(slot))
                cleaned.replace(pos, slot.size(), " ");
        }
        for (auto& tok : tokenize(cleaned)) out.insert(std::move(tok));
    };
    for (const auto* s : all) add_tokens(*s);
    for (const auto& w : t.numbers) add_tokens(w);
    for (const auto& w : t.numbers_fem) add_tokens(w);
    return out;
}

// ---------------------------------------------------------------------------
// Formula realization

namespace {

struct Realizer {
    const Lexicon& lex;
    const std::map<std::string, std::string>& binding;

    const std::string& name_of(const Term& t) const {
        const auto* c = std::get_if<Constant>(&t);
        if (!c) throw RealizeError("open formula cannot be realized");
        auto it = binding.find(c->id);
        if (it == binding.end()) throw RealizeError("unbound constant '" + c->id + "'");
        return it->second;
    }

    std::string join_names(const std::vector<std::string>& names) const {
        const PhraseTable& p = lex.phrases;
        if (names.size() == 1) return names[0];
        if (names.size() == 2) return subst(subst(p.list_two, "x", names[0]), "y", names[1]);
        std::string out;
        for (std::size_t i = 0; i + 1 < names.size(); ++i) {
            if (i) out += p.list_sep;
            out += names[i];
        }
        out += p.list_final;
        out += names.back();
        return out;
    }

    std::string count_phrase(int n, Sort sort) const {
        const PhraseTable& p = lex.phrases;
        if (n == 1) return sort == Sort::Place ? p.count_places_one : p.count_people_one;
        const auto& words = sort == Sort::Place ? p.numbers : p.numbers_fem;
        const std::string& word = words.at(static_cast<std::size_t>(n - 1));
        return subst(sort == Sort::Place ? p.count_places_many : p.count_people_many, "n", word);
    }

    // (count n (v sort) (visit agent v)) -> "only n places/people"
    std::string count_node_phrase(const CountNode& n) const {
        const auto* atom = std::get_if<VisitAtom>(&n.body->node());
        if (!atom) throw RealizeError("unsupported counting shape");
        const auto* var = std::get_if<Variable>(&atom->target);
        if (!var || var->name != n.var.name) throw RealizeError("unsupported counting shape");
        return count_phrase(n.count, n.var.sort);
    }

    std::string realize(const Formula& f) const {
        const PhraseTable& p = lex.phrases;
        return std::visit(
            [&](const auto& n) -> std::string {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VisitAtom>) {
                    return subst(subst(p.visit_pos, "a", name_of(n.agent)), "t",
                                 name_of(n.target));
                } else if constexpr (std::is_same_v<T, TallerAtom>) {
                    return subst(subst(p.taller, "a", name_of(n.a)), "b", name_of(n.b));
                } else if constexpr (std::is_same_v<T, AsTallAtom>) {
                    return subst(subst(p.astall, "a", name_of(n.a)), "b", name_of(n.b));
                } else if constexpr (std::is_same_v<T, NotNode>) {
                    return realize_negation(*n.body);
                } else if constexpr (std::is_same_v<T, AndNode>) {
                    return realize_conjunction(n);
                } else if constexpr (std::is_same_v<T, ForAllNode>) {
                    return realize_universal(n);
                } else if constexpr (std::is_same_v<T, ExistsNode>) {
                    const auto* atom = std::get_if<VisitAtom>(&n.body->node());
                    if (atom && n.var.sort == Sort::Person &&
                        std::holds_alternative<Variable>(atom->agent) &&
                        std::holds_alternative<Constant>(atom->target))
                        return subst(p.someone_visits, "t", name_of(atom->target));
                    throw RealizeError("unsupported existential shape");
                } else if constexpr (std::is_same_v<T, CountNode>) {
                    const auto* atom = std::get_if<VisitAtom>(&n.body->node());
                    if (!atom) throw RealizeError("unsupported counting shape");
                    return subst(subst(p.count_visits, "a", name_of(atom->agent)), "counts",
                                 count_node_phrase(n));
                } else if constexpr (std::is_same_v<T, IotaNode>) {
                    return realize_iota(n);
                } else {
                    throw RealizeError("unsupported formula shape for realization");
                }
            },
            f.node());
    }

    std::string realize_negation(const Formula& inner) const {
        const PhraseTable& p = lex.phrases;
        if (const auto* atom = std::get_if<VisitAtom>(&inner.node()))
            return subst(subst(p.visit_neg, "a", name_of(atom->agent)), "t",
                         name_of(atom->target));
        if (const auto* ex = std::get_if<ExistsNode>(&inner.node())) {
            const auto* atom = std::get_if<VisitAtom>(&ex->body->node());
            if (atom && ex->var.sort == Sort::Person &&
                std::holds_alternative<Variable>(atom->agent) &&
                std::holds_alternative<Constant>(atom->target))
                return subst(p.no_one_visits, "t", name_of(atom->target));
        }
        throw RealizeError("unsupported negation shape");
    }

    std::string realize_universal(const ForAllNode& n) const {
        const PhraseTable& p = lex.phrases;
        if (const auto* inner = std::get_if<ForAllNode>(&n.body->node())) {
            const auto* atom = std::get_if<VisitAtom>(&inner->body->node());
            if (atom && n.var.sort == Sort::Person &&
                std::holds_alternative<Variable>(atom->agent) &&
                std::holds_alternative<Variable>(atom->target))
                return inner->var.sort == Sort::Place ? p.everyone_every_place
                                                      : p.everyone_everyone;
            throw RealizeError("unsupported universal shape");
        }
        const auto* atom = std::get_if<VisitAtom>(&n.body->node());
        if (!atom) throw RealizeError("unsupported universal shape");
        bool agent_is_var = std::holds_alternative<Variable>(atom->agent);
        bool target_is_var = std::holds_alternative<Variable>(atom->target);
        if (agent_is_var && !target_is_var)
            return subst(p.everyone_visits, "t", name_of(atom->target));
        if (!agent_is_var && target_is_var) {
            const auto& var = std::get<Variable>(atom->target);
            const std::string& templ =
                var.sort == Sort::Place ? p.visits_every_place : p.visits_everyone;
            return subst(templ, "a", name_of(atom->agent));
        }
        throw RealizeError("unsupported universal shape");
    }

    std::string realize_iota(const IotaNode& n) const {
        const PhraseTable& p = lex.phrases;
        auto subject = binding.find(n.subject.id);
        if (subject == binding.end())
            throw RealizeError("unbound constant '" + n.subject.id + "'");
        const Formula& prop = *n.property;
        if (const auto* atom = std::get_if<VisitAtom>(&prop.node())) {
            if (std::holds_alternative<Variable>(atom->agent) &&
                std::holds_alternative<Constant>(atom->target))
                return subst(subst(p.iota_atom, "a", subject->second), "t",
                             name_of(atom->target));
        } else if (const auto* q = std::get_if<ForAllNode>(&prop.node())) {
            const auto* atom2 = std::get_if<VisitAtom>(&q->body->node());
            if (atom2 && std::holds_alternative<Variable>(atom2->agent) &&
                std::holds_alternative<Variable>(atom2->target)) {
                const std::string& templ = std::get<Variable>(atom2->target).sort == Sort::Place
                                               ? p.iota_every_place
                                               : p.iota_everyone;
                return subst(templ, "a", subject->second);
            }
        }
        throw RealizeError("unsupported description shape");
    }

    std::string realize_conjunction(const AndNode& n) const {
        const PhraseTable& p = lex.phrases;
        bool all_visits = true, all_counts = true;
        for (const auto& part : n.parts) {
            all_visits = all_visits && std::holds_alternative<VisitAtom>(part.node());
            all_counts = all_counts && std::holds_alternative<CountNode>(part.node());
        }
        if (all_visits) {
            std::vector<const VisitAtom*> atoms;
            for (const auto& part : n.parts)
                atoms.push_back(&std::get<VisitAtom>(part.node()));
            auto same_term = [](const Term& a, const Term& b) { return a == b; };
            bool same_agent = true, same_target = true;
            for (const auto* a : atoms) {
                same_agent = same_agent && same_term(a->agent, atoms.front()->agent);
                same_target = same_target && same_term(a->target, atoms.front()->target);
            }
            if (same_agent && !same_target) {
                std::vector<std::string> names;
                for (const auto* a : atoms) names.push_back(name_of(a->target));
                return subst(subst(p.visit_targets, "a", name_of(atoms.front()->agent)), "ts",
                             join_names(names));
            }
            if (same_target && !same_agent) {
                std::vector<std::string> names;
                for (const auto* a : atoms) names.push_back(name_of(a->agent));
                return subst(subst(p.visit_pos_plural, "as", join_names(names)), "t",
                             name_of(atoms.front()->target));
            }
            throw RealizeError("unsupported conjunction shape");
        }
        if (all_counts) {
            const auto& first = std::get<CountNode>(n.parts.front().node());
            const auto* first_atom = std::get_if<VisitAtom>(&first.body->node());
            if (!first_atom) throw RealizeError("unsupported counting shape");
            std::string agent = name_of(first_atom->agent);
            std::string counts;
            for (std::size_t i = 0; i < n.parts.size(); ++i) {
                const auto& c = std::get<CountNode>(n.parts[i].node());
                const auto* atom = std::get_if<VisitAtom>(&c.body->node());
                if (!atom || name_of(atom->agent) != agent)
                    throw RealizeError("unsupported conjunction shape");
                if (i) counts += p.count_join;
                counts += count_node_phrase(c);
            }
            return subst(subst(p.count_visits, "a", agent), "counts", counts);
        }
        throw RealizeError("unsupported conjunction shape");
    }
};

void collect_in_order(const Formula& f, std::vector<Constant>& out, std::set<std::string>& seen) {
    auto add = [&](const Term& t) {
        if (const auto* c = std::get_if<Constant>(&t))
            if (seen.insert(c->id).second) out.push_back(*c);
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
                collect_in_order(*n.body, out, seen);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                for (const auto& part : n.parts) collect_in_order(part, out, seen);
            } else if constexpr (std::is_same_v<T, ForAllNode> || std::is_same_v<T, ExistsNode>) {
                collect_in_order(*n.body, out, seen);
            } else if constexpr (std::is_same_v<T, CountNode>) {
                collect_in_order(*n.body, out, seen);
            } else if constexpr (std::is_same_v<T, IotaNode>) {
                if (seen.insert(n.subject.id).second) out.push_back(n.subject);
                collect_in_order(*n.property, out, seen);
            }
        },
        f.node());
}

}  // namespace

std::string realize_formula(const Formula& f, const Lexicon& lex,
                            const std::map<std::string, std::string>& binding) {
    return Realizer{lex, binding}.realize(f);
}

RealizedPair realize_pair(const SymbolicPair& pair, const Lexicon& lex, std::uint64_t seed,
                          JoinStyle join) {
    std::vector<Constant> order;
    std::set<std::string> seen;
    for (const auto& f : pair.premise) collect_in_order(f, order, seen);
    collect_in_order(pair.hypothesis, order, seen);

    std::size_t n_persons = 0, n_places = 0;
    for (const auto& c : order) (c.sort == Sort::Person ? n_persons : n_places)++;
    if (n_persons > lex.person_names.size())
        throw LexiconError("lexicon exhausted: need " + std::to_string(n_persons) +
                           " person names, have " + std::to_string(lex.person_names.size()));
    if (n_places > lex.place_names.size())
        throw LexiconError("lexicon exhausted: need " + std::to_string(n_places) +
                           " place names, have " + std::to_string(lex.place_names.size()));

    Rng rng(derive_seed(seed, "binding"));
    auto person_idx = rng.sample_indices(lex.person_names.size(), n_persons);
    auto place_idx = rng.sample_indices(lex.place_names.size(), n_places);

    std::map<std::string, std::string> binding;
    std::size_t pi = 0, li = 0;
    for (const auto& c : order) {
        if (c.sort == Sort::Person)
            binding[c.id] = lex.person_names[person_idx[pi++]].name;
        else
            binding[c.id] = lex.place_names[place_idx[li++]];
    }

    RealizedPair out;
    out.label = pair.label;
    out.task = pair.task;
    out.language = lex.language;
    out.symbolic = pair;
    out.seed = seed;

    std::vector<std::string> sentences;
    sentences.reserve(pair.premise.size());
    for (const auto& f : pair.premise)
        sentences.push_back(realize_formula(f, lex, binding));
    std::string joined;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (join == JoinStyle::Comma) {
            if (i) joined += ", ";
            joined += sentences[i];
        } else {
            if (i) joined += " ";
            joined += sentences[i] + ".";
        }
    }
    out.premise_text = std::move(joined);
    out.hypothesis_text = realize_formula(pair.hypothesis, lex, binding);
    if (join == JoinStyle::Period) out.hypothesis_text += ".";
    return out;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

// ASCII lowering plus the Latin-1 uppercase range in UTF-8 (covers the
// accented characters Portuguese uses).
void append_lowered(std::string& out, std::string_view text, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
        out.push_back(static_cast<char>(std::tolower(c)));
        ++i;
        return;
    }
    if (c == 0xC3 && i + 1 < text.size()) {
        unsigned char d = static_cast<unsigned char>(text[i + 1]);
        if (d >= 0x80 && d <= 0x9E && d != 0x97) d = static_cast<unsigned char>(d + 0x20);
        out.push_back(static_cast<char>(c));
        out.push_back(static_cast<char>(d));
        i += 2;
        return;
    }
    out.push_back(static_cast<char>(c));
    ++i;
}

bool word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (word_byte(c)) {
            append_lowered(current, text, i);
        } else if (c == '\'') {
            // "didn't" tokenizes as [didn, 't]
            if (!current.empty()) tokens.push_back(std::move(current));
            current = "'";
            ++i;
            while (i < text.size() && word_byte(static_cast<unsigned char>(text[i])))
                append_lowered(current, text, i);
            tokens.push_back(std::move(current));
            current.clear();
        } else {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            ++i;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace cforge
