#pragma once

// Realization: maps symbolic constants to surface names and formulas to
// natural-language sentences (English and Portuguese), plus the tokenizer the
// vocabulary statistics and the bag-of-words baseline share.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/logic.hpp"

namespace cforge {

enum class Language : std::uint8_t { English, Portuguese };

std::string to_string(Language l);  // "en" / "pt"
Language language_from_string(std::string_view s);

enum class Gender : std::uint8_t { Masc, Fem };

struct PersonName {
    std::string name;
    Gender gender;
};

// Per-language sentence templates with {slot} placeholders. All entries can be
// overridden from the lexicon file's "templates" object.
struct PhraseTable {
    std::string visit_pos;            // {a} has visited {t}
    std::string visit_neg;            // {a} didn't visit {t}
    std::string visit_pos_plural;     // {as} have visited {t}
    std::string visit_targets;        // {a} has visited {ts}
    std::string everyone_every_place;
    std::string everyone_everyone;
    std::string visits_every_place;   // {a} has visited every place
    std::string visits_everyone;      // {a} has visited everyone
    std::string everyone_visits;      // Everyone has visited {t}
    std::string someone_visits;       // Someone has visited {t}
    std::string no_one_visits;        // No one has visited {t}
    std::string iota_every_place;     // {a} is the person that has visited every place
    std::string iota_everyone;
    std::string iota_atom;            // {a} is the person that has visited {t}
    std::string taller;               // {a} is taller than {b}
    std::string astall;               // {a} is as tall as {b}
    std::string count_visits;         // {a} has visited {counts}
    std::string count_join;           // " and " between count phrases
    std::string count_places_one;     // only one place
    std::string count_places_many;    // only {n} places
    std::string count_people_one;
    std::string count_people_many;
    std::string list_sep;             // ", "
    std::string list_two;             // {x} and {y}
    std::string list_final;           // ", and " before the last of three or more
    std::vector<std::string> numbers;      // 1..30, spelled out
    std::vector<std::string> numbers_fem;  // Portuguese gender agreement; same as numbers in English
};

PhraseTable english_phrases();
PhraseTable portuguese_phrases();

struct Lexicon {
    Language language = Language::English;
    std::vector<PersonName> person_names;
    std::vector<std::string> place_names;
    PhraseTable phrases;

    void validate() const;  // throws LexiconError
};

// Loads and validates a lexicon file (JSON; schema in the README).
Lexicon load_lexicon(const std::string& path);

// Every token that can come from the fixed sentence templates (slot markers
// removed). Used to separate template vocabulary from name vocabulary.
std::set<std::string> template_tokens(const Lexicon& lex);

enum class JoinStyle : std::uint8_t { Comma, Period };

struct RealizedPair {
    std::string id;
    std::string premise_text;
    std::string hypothesis_text;
    Label label = Label::NonContradiction;
    int task = 0;
    Language language = Language::English;
    SymbolicPair symbolic;
    std::uint64_t seed = 0;  // per-example realization seed
};

// Renders one formula with an explicit constant-to-surface binding. The shape
// must be template-producible; anything else raises RealizeError.
std::string realize_formula(const Formula& f, const Lexicon& lex,
                            const std::map<std::string, std::string>& binding);

// Draws an injective name binding from the seed and renders the whole pair.
RealizedPair realize_pair(const SymbolicPair& pair, const Lexicon& lex, std::uint64_t seed,
                          JoinStyle join = JoinStyle::Comma);

// Lowercased, punctuation-separated word tokens; an apostrophe starts a new
// token that keeps it ("didn't" -> didn, 't).
std::vector<std::string> tokenize(std::string_view text);

}  // namespace cforge
