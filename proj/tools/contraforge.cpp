// contraforge: generate, verify, analyze, ablate and baseline the structural
// contradiction-detection tasks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cforge/baseline.hpp"
#include "cforge/manifest.hpp"
#include "cforge/semantics.hpp"
#include "cforge/taskgen.hpp"

using namespace cforge;

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::string lexicon_dir() {
    if (const char* env = std::getenv("CONTRA_FORGE_LEXDIR")) return env;
    return CFORGE_BUNDLED_LEXDIR;
}

std::string default_lexicon(const std::string& lang, SplitRole role) {
    return lexicon_dir() + "/" + lang + "_" + to_string(role) + ".json";
}

int exit_code = 0;

// ---------------------------------------------------------------------------

struct GenerateOptions {
    int task = 1;
    std::string lang = "en";
    std::size_t train = 10000;
    std::size_t test = 1000;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string vocab_mode = "disjoint";
    std::string lexicon_train, lexicon_test;
    int facts_min = 2, facts_max = 12;
    int order_min = 4, order_max = 10;
    int count_min = 1, count_max = 30;
    int coord_min = 2, coord_max = 4;
    std::string task6_premise = "mixed";
    std::string join = "comma";
};

TaskConfig to_config(const GenerateOptions& o) {
    TaskConfig cfg;
    cfg.task = o.task;
    cfg.train_size = o.train;
    cfg.test_size = o.test;
    cfg.seed = o.seed;
    cfg.facts_range = {o.facts_min, o.facts_max};
    cfg.order_facts_range = {o.order_min, o.order_max};
    cfg.count_range = {o.count_min, o.count_max};
    cfg.coordination_range = {o.coord_min, o.coord_max};
    cfg.vocab_mode = vocab_mode_from_string(o.vocab_mode);
    if (o.task6_premise == "dual") cfg.task6_premise = Task6Premise::Dual;
    else if (o.task6_premise == "single") cfg.task6_premise = Task6Premise::Single;
    else cfg.task6_premise = Task6Premise::Mixed;
    cfg.join = o.join == "period" ? JoinStyle::Period : JoinStyle::Comma;
    return cfg;
}

nlohmann::ordered_json config_json(const GenerateOptions& o, const std::string& lex_train,
                                   const std::string& lex_test) {
    nlohmann::ordered_json j;
    j["task"] = o.task;
    j["language"] = o.lang;
    j["train_size"] = o.train;
    j["test_size"] = o.test;
    j["seed"] = o.seed;
    j["vocab_mode"] = o.vocab_mode;
    j["lexicon_train"] = lex_train;
    j["lexicon_test"] = lex_test;
    j["facts_range"] = {o.facts_min, o.facts_max};
    j["order_facts_range"] = {o.order_min, o.order_max};
    j["count_range"] = {o.count_min, o.count_max};
    j["coordination_range"] = {o.coord_min, o.coord_max};
    j["task6_premise"] = o.task6_premise;
    j["join"] = o.join;
    return j;
}

void cmd_generate(const GenerateOptions& o) {
    auto start = Clock::now();
    std::string lex_train_path =
        o.lexicon_train.empty() ? default_lexicon(o.lang, SplitRole::Train) : o.lexicon_train;
    std::string lex_test_path =
        o.lexicon_test.empty() ? default_lexicon(o.lang, SplitRole::Test) : o.lexicon_test;
    Lexicon lex_train = load_lexicon(lex_train_path);
    Lexicon lex_test = load_lexicon(lex_test_path);
    if (to_string(lex_train.language) != o.lang || to_string(lex_test.language) != o.lang)
        throw LexiconError("lexicon language does not match --lang " + o.lang);

    TaskConfig cfg = to_config(o);
    auto [train, test] = make_split(cfg, lex_train, lex_test);
    for (const auto& w : train.warnings) std::cerr << "warning (train): " << w << "\n";
    for (const auto& w : test.warnings) std::cerr << "warning (test): " << w << "\n";

    std::string base = o.out_dir + "/task" + std::to_string(o.task) + "_" + o.lang + "_" +
                       o.vocab_mode + "_";
    RunManifest manifest;
    manifest.command = "generate";
    manifest.config = config_json(o, lex_train_path, lex_test_path);
    manifest.inputs = {lex_train_path, lex_test_path};
    for (const auto& [split, role] :
         {std::make_pair(&train, "train"), std::make_pair(&test, "test")}) {
        for (const auto& [fmt, ext] :
             {std::make_pair(FileFormat::Jsonl, ".jsonl"), std::make_pair(FileFormat::Tsv, ".tsv")}) {
            std::string path = base + role + ext;
            write_split(*split, path, fmt);
            manifest.outputs.push_back(digest_file(path));
        }
    }
    manifest.wall_clock_ms = ms_since(start);
    write_manifest(base + "manifest.json", manifest);
    std::cout << "generated " << train.examples.size() << " train / " << test.examples.size()
              << " test examples for task " << o.task << " (" << o.lang << ", " << o.vocab_mode
              << ") in " << manifest.wall_clock_ms << " ms\n";
    for (const auto& out : manifest.outputs) std::cout << "  " << out.path << "\n";
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string input;
    bool oracle = false;
};

void cmd_verify(const VerifyOptions& o) {
    DatasetSplit split = read_split(o.input);
    for (const auto& w : split.warnings) std::cerr << "warning: " << w << "\n";

    std::size_t mismatches = 0, oracle_checked = 0, oracle_skipped = 0, oracle_disagreed = 0;
    for (const auto& ex : split.examples) {
        if (ex.symbolic.hypothesis.empty() || ex.symbolic.premise.empty())
            throw DataError(o.input + ": example " + ex.id +
                            " has no logical forms; verify needs the jsonl format");
        Label computed = label_pair(ex.symbolic.premise, ex.symbolic.hypothesis);
        if (computed != ex.label) {
            ++mismatches;
            std::cout << "mismatch " << ex.id << ": stored " << to_string(ex.label)
                      << ", computed " << to_string(computed) << "\n";
        }
        if (o.oracle) {
            std::vector<Formula> fs = ex.symbolic.premise;
            fs.push_back(ex.symbolic.hypothesis);
            if (!oracle_admissible(fs)) {
                ++oracle_skipped;
                continue;
            }
            ++oracle_checked;
            bool sat = brute_force_consistent(fs);
            if ((computed == Label::Contradiction) == sat) {
                ++oracle_disagreed;
                std::cout << "oracle disagreement " << ex.id << ": labeler says "
                          << to_string(computed) << ", enumeration says "
                          << (sat ? "satisfiable" : "unsatisfiable") << "\n";
            }
        }
    }
    std::cout << split.examples.size() << " examples, " << mismatches << " label mismatches";
    if (o.oracle)
        std::cout << "; oracle: " << oracle_checked << " checked, " << oracle_skipped
                  << " outside bounds, " << oracle_disagreed << " disagreements";
    std::cout << "\n";
    if (mismatches || oracle_disagreed) exit_code = 1;
}

// ---------------------------------------------------------------------------

struct StatsOptions {
    std::string train, test;
    std::string out;
    std::string lexicon_train, lexicon_test;
};

void cmd_stats(const StatsOptions& o) {
    auto start = Clock::now();
    DatasetSplit train = read_split(o.train);
    DatasetSplit test = read_split(o.test);
    TaskStats stats = compute_stats(train, test);

    std::string lang = to_string(train.meta.language);
    std::string lex_train_path =
        o.lexicon_train.empty() ? default_lexicon(lang, SplitRole::Train) : o.lexicon_train;
    std::string lex_test_path =
        o.lexicon_test.empty() ? default_lexicon(lang, SplitRole::Test) : o.lexicon_test;

    std::set<std::string> name_tokens;
    for (const auto& path : {lex_train_path, lex_test_path}) {
        Lexicon lex = load_lexicon(path);
        for (const auto& p : lex.person_names)
            for (const auto& t : tokenize(p.name)) name_tokens.insert(t);
        for (const auto& p : lex.place_names)
            for (const auto& t : tokenize(p)) name_tokens.insert(t);
    }
    std::vector<std::string> shared_names;
    for (const auto& t : stats.intersection_tokens)
        if (name_tokens.count(t)) shared_names.push_back(t);

    std::printf("task %d (%s)\n", train.meta.task, lang.c_str());
    std::printf("  %-22s %zu\n", "vocab size", stats.vocab_size);
    std::printf("  %-22s %zu\n", "vocab intersection", stats.vocab_intersection);
    std::printf("  %-22s %.1f\n", "mean input words", stats.mean_input_words);
    std::printf("  %-22s %zu\n", "max input words", stats.max_input_words);
    std::printf("  %-22s %.1f\n", "mean input chars", stats.mean_input_chars);
    std::printf("  %-22s %zu\n", "max input chars", stats.max_input_chars);
    std::printf("  %-22s %zu\n", "name tokens shared", shared_names.size());
    if (!shared_names.empty()) {
        std::cout << "  shared name tokens:";
        for (const auto& t : shared_names) std::cout << " " << t;
        std::cout << "\n";
        exit_code = 1;
    }

    if (!o.out.empty()) {
        nlohmann::ordered_json j;
        j["task"] = train.meta.task;
        j["language"] = lang;
        j["vocab_size"] = stats.vocab_size;
        j["vocab_intersection"] = stats.vocab_intersection;
        j["mean_input_words"] = stats.mean_input_words;
        j["max_input_words"] = stats.max_input_words;
        j["mean_input_chars"] = stats.mean_input_chars;
        j["max_input_chars"] = stats.max_input_chars;
        j["intersection_tokens"] = stats.intersection_tokens;
        j["shared_name_tokens"] = shared_names;
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw DataError("cannot write: " + o.out);
        out << j.dump(2) << '\n';

        RunManifest manifest;
        manifest.command = "stats";
        manifest.config = {{"train", o.train}, {"test", o.test}};
        manifest.inputs = {o.train, o.test};
        manifest.outputs = {digest_file(o.out)};
        manifest.wall_clock_ms = ms_since(start);
        write_manifest(o.out + ".manifest.json", manifest);
    }
}

// ---------------------------------------------------------------------------

struct AblateOptions {
    std::string input, out;
    std::string mode;
    std::uint64_t seed = 0;
};

void cmd_ablate(const AblateOptions& o) {
    auto start = Clock::now();
    DatasetSplit split = read_split(o.input);
    DatasetSplit transformed = ablate(split, ablation_from_string(o.mode), o.seed);
    bool tsv = o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".tsv";
    write_split(transformed, o.out, tsv ? FileFormat::Tsv : FileFormat::Jsonl);

    RunManifest manifest;
    manifest.command = "ablate";
    manifest.config = {{"input", o.input}, {"mode", o.mode}, {"seed", o.seed}};
    manifest.inputs = {o.input};
    manifest.outputs = {digest_file(o.out)};
    manifest.wall_clock_ms = ms_since(start);
    write_manifest(o.out + ".manifest.json", manifest);
    std::cout << "wrote " << transformed.examples.size() << " " << o.mode << " examples to "
              << o.out << "\n";
}

// ---------------------------------------------------------------------------

struct BaselineOptions {
    std::string train, test;
    std::string out, model_out;
    std::string sweep;
    int trees = 100;
    int max_depth = 0;
    int min_leaf = 1;
    int mtry = 0;
    bool no_bootstrap = false;
    std::uint64_t seed = 0;
    int jobs = 0;
};

std::vector<double> parse_proportions(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw DataError("bad proportion: '" + item + "'");
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw DataError("--sweep needs a comma-separated list of proportions");
    return out;
}

void cmd_baseline(const BaselineOptions& o) {
    auto start = Clock::now();
    DatasetSplit train = read_split(o.train);
    DatasetSplit test = read_split(o.test);

    ForestParams params;
    params.n_trees = o.trees;
    params.max_depth = o.max_depth;
    params.min_leaf = o.min_leaf;
    params.features_per_split = o.mtry;
    params.bootstrap = !o.no_bootstrap;
    params.seed = o.seed;
    params.jobs = o.jobs > 0 ? o.jobs
                             : std::max(1u, std::thread::hardware_concurrency());

    nlohmann::ordered_json report;
    report["train"] = o.train;
    report["test"] = o.test;
    report["params"] = {{"n_trees", params.n_trees},      {"max_depth", params.max_depth},
                        {"min_leaf", params.min_leaf},    {"features_per_split", params.features_per_split},
                        {"bootstrap", params.bootstrap},  {"seed", params.seed}};

    if (!o.sweep.empty()) {
        auto points = proportion_sweep(train, test, parse_proportions(o.sweep), params);
        std::printf("%-12s %-10s %-10s %s\n", "proportion", "examples", "accuracy", "oob");
        nlohmann::ordered_json series = nlohmann::ordered_json::array();
        for (const auto& p : points) {
            std::printf("%-12.3f %-10zu %-10.4f %.4f\n", p.proportion, p.train_examples,
                        p.accuracy, p.oob_accuracy);
            series.push_back({{"proportion", p.proportion},
                              {"train_examples", p.train_examples},
                              {"accuracy", p.accuracy},
                              {"oob_accuracy", p.oob_accuracy}});
        }
        report["sweep"] = std::move(series);
    } else {
        BowSpace space = build_bow_space(train);
        ForestModel model = train_forest(featurize(train, space), params);
        EvalResult result = evaluate(model, test, space);
        std::printf("accuracy %.4f on %zu test examples\n", result.accuracy,
                    test.examples.size());
        std::printf("confusion [actual x predicted]: [[%llu, %llu], [%llu, %llu]]\n",
                    (unsigned long long)result.confusion[0][0],
                    (unsigned long long)result.confusion[0][1],
                    (unsigned long long)result.confusion[1][0],
                    (unsigned long long)result.confusion[1][1]);
        if (model.oob_accuracy >= 0) std::printf("oob accuracy %.4f\n", model.oob_accuracy);
        report["accuracy"] = result.accuracy;
        report["oob_accuracy"] = model.oob_accuracy;
        report["confusion"] = {{result.confusion[0][0], result.confusion[0][1]},
                               {result.confusion[1][0], result.confusion[1][1]}};
        if (!o.model_out.empty()) {
            save_forest(o.model_out, model, space);
            std::cout << "model written to " << o.model_out << "\n";
        }
    }

    if (!o.out.empty()) {
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw DataError("cannot write: " + o.out);
        out << report.dump(2) << '\n';
        RunManifest manifest;
        manifest.command = "baseline";
        manifest.config = report["params"];
        manifest.config["sweep"] = o.sweep;
        manifest.inputs = {o.train, o.test};
        manifest.outputs = {digest_file(o.out)};
        if (!o.model_out.empty()) manifest.outputs.push_back(digest_file(o.model_out));
        manifest.wall_clock_ms = ms_since(start);
        write_manifest(o.out + ".manifest.json", manifest);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic contradiction-detection tasks: generation, verification, statistics,"
                 " ablations, and a bag-of-words random-forest baseline"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* g = app.add_subcommand("generate", "generate a labeled train/test split");
    g->add_option("--task", gen.task, "task id (1..7)")->required()->check(CLI::Range(1, 7));
    g->add_option("--lang", gen.lang, "language (en|pt)")
        ->check(CLI::IsMember({"en", "pt"}));
    g->add_option("--train", gen.train, "training examples (even)");
    g->add_option("--test", gen.test, "test examples (even)");
    g->add_option("--seed", gen.seed, "master seed");
    g->add_option("--out", gen.out_dir, "output directory")->required();
    g->add_option("--vocab-mode", gen.vocab_mode, "disjoint|intersect")
        ->check(CLI::IsMember({"disjoint", "intersect"}));
    g->add_option("--lexicon-train", gen.lexicon_train, "training lexicon (default bundled)");
    g->add_option("--lexicon-test", gen.lexicon_test, "test lexicon (default bundled)");
    g->add_option("--facts-min", gen.facts_min);
    g->add_option("--facts-max", gen.facts_max);
    g->add_option("--order-facts-min", gen.order_min);
    g->add_option("--order-facts-max", gen.order_max);
    g->add_option("--count-min", gen.count_min);
    g->add_option("--count-max", gen.count_max);
    g->add_option("--coord-min", gen.coord_min);
    g->add_option("--coord-max", gen.coord_max);
    g->add_option("--task6-premise", gen.task6_premise, "dual|single|mixed")
        ->check(CLI::IsMember({"dual", "single", "mixed"}));
    g->add_option("--join", gen.join, "comma|period premise joining")
        ->check(CLI::IsMember({"comma", "period"}));
    g->callback([&] { cmd_generate(gen); });

    VerifyOptions ver;
    auto* v = app.add_subcommand("verify", "re-label a split from its logical forms");
    v->add_option("--input", ver.input, "jsonl split")->required();
    v->add_flag("--oracle", ver.oracle, "also cross-check against model enumeration");
    v->callback([&] { cmd_verify(ver); });

    StatsOptions st;
    auto* s = app.add_subcommand("stats", "vocabulary and length statistics");
    s->add_option("--train", st.train, "train split")->required();
    s->add_option("--test", st.test, "test split")->required();
    s->add_option("--out", st.out, "structured report path");
    s->add_option("--lexicon-train", st.lexicon_train);
    s->add_option("--lexicon-test", st.lexicon_test);
    s->callback([&] { cmd_stats(st); });

    AblateOptions ab;
    auto* a = app.add_subcommand("ablate", "label or field ablations");
    a->add_option("--input", ab.input, "jsonl split")->required();
    a->add_option("--mode", ab.mode, "noise-label|premise-only|hypothesis-only")
        ->required()
        ->check(CLI::IsMember({"noise-label", "premise-only", "hypothesis-only"}));
    a->add_option("--seed", ab.seed, "resampling seed");
    a->add_option("--out", ab.out, "output path (.jsonl or .tsv)")->required();
    a->callback([&] { cmd_ablate(ab); });

    BaselineOptions bl;
    auto* b = app.add_subcommand("baseline", "bag-of-words random forest");
    b->add_option("--train", bl.train, "train split")->required();
    b->add_option("--test", bl.test, "test split")->required();
    b->add_option("--trees", bl.trees)->check(CLI::PositiveNumber);
    b->add_option("--max-depth", bl.max_depth, "0 = unlimited");
    b->add_option("--min-leaf", bl.min_leaf)->check(CLI::PositiveNumber);
    b->add_option("--mtry", bl.mtry, "features per split; 0 = sqrt");
    b->add_flag("--no-bootstrap", bl.no_bootstrap);
    b->add_option("--seed", bl.seed);
    b->add_option("--jobs", bl.jobs, "worker threads; 0 = all cores");
    b->add_option("--sweep", bl.sweep, "comma-separated training proportions");
    b->add_option("--out", bl.out, "metrics report path");
    b->add_option("--model-out", bl.model_out, "persist the trained forest");
    b->callback([&] { cmd_baseline(bl); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
