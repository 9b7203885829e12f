#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "polyagg/approx.hpp"
#include "polyagg/equiv.hpp"
#include "polyagg/errors.hpp"
#include "polyagg/json_io.hpp"
#include "polyagg/parallel.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/rng.hpp"
#include "polyagg/spectral.hpp"

namespace polyagg::cli {

namespace {

struct Config {
    std::string predicate;
    int m = 0;
    int n = 0;
    int p = 1;
    std::string family;
    std::string distribution;
    std::string table_f;
    std::string table_g;
    std::string output;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
    std::uint64_t samples = 1'000'000;
    std::string method = "exact";
    bool classify = false;
    double epsilon = 0;
    std::optional<double> tolerance;
    std::uint64_t random_pairs = 0;
    double rate = 0;
    int k = 1;
    std::vector<int> pi;
    std::vector<int> voters;
    int p_from = 1;
    int p_to = 1;
};

std::string read_source(const std::string& spec) {
    if (spec == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw FormatError("cannot read file \"" + spec + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_document(const std::string& spec, const char* what) {
    if (spec.empty()) throw PreconditionError(std::string("missing --") + what);
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (spec[first] == '{' || spec[first] == '[')) return parse_json(spec);
    return parse_json(read_source(spec));
}

Predicate load_predicate(const Config& c) {
    if (c.predicate.empty()) throw PreconditionError("missing --predicate");
    if (const auto kind = parse_predicate_kind(c.predicate)) {
        if (c.m < 1) throw PreconditionError("built-in predicates need --m");
        if (*kind == PredicateKind::Perm) return make_builtin(*kind, c.m, c.n > 0 ? c.n : c.m);
        if (*kind == PredicateKind::Equiv || *kind == PredicateKind::Lin) return make_builtin(*kind, c.m);
        if (c.n < 1) throw PreconditionError("built-in predicates need --n");
        return make_builtin(*kind, c.m, c.n);
    }
    return predicate_from_json(load_document(c.predicate, "predicate"));
}

FunctionFamily load_family(const Config& c) { return family_from_json(load_document(c.family, "family")); }

ProfileDistribution load_distribution(const Config& c) {
    if (!c.distribution.empty()) return distribution_from_json(load_document(c.distribution, "distribution"));
    return ProfileDistribution::uniform(load_predicate(c));
}

BooleanTable load_boolean(const std::string& spec, const char* what) {
    return boolean_from_json(load_document(spec, what));
}

Json error_json(const char* kind, const std::string& message) {
    Json j;
    j["error"] = Json{{"kind", kind}, {"message", message}};
    return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

ExecOptions exec(const Config& c, std::uint64_t default_budget) {
    return ExecOptions{c.budget.value_or(default_budget), c.threads};
}

// predicate analyze
void predicate_analyze(const Config& c, std::ostream& out) {
    const auto P = load_predicate(c);
    Json j;
    j["predicate"] = Json{{"name", P.name()}, {"m", P.arity()}, {"n", P.alphabet()}, {"size", P.size()}};
    j["profile"] = to_json(analyze_predicate(P));
    j["minimal_certificates"] = Json::array();
    for (const auto& rho : minimal_certificates(P)) j["minimal_certificates"].push_back(to_json(rho));
    emit(out, j);
}

void poly_check(const Config& c, std::ostream& out) {
    const auto P = load_predicate(c);
    const auto F = load_family(c);
    emit(out, to_json(is_polymorphism(F, P, exec(c, 1'000'000'000))));
}

void poly_enumerate(const Config& c, std::ostream& out) {
    const auto P = load_predicate(c);
    std::map<std::string, std::uint64_t> verdicts;
    std::uint64_t index = 0;
    const auto stats = enumerate_polymorphisms(
        P, c.p,
        [&](const FunctionFamily& F) {
            Json line;
            line["index"] = index++;
            line["family"] = to_json(F);
            if (c.classify) {
                const auto v = classify_trivial(F, P);
                ++verdicts[std::string(verdict_tag(v))];
                line["verdict"] = to_json(v);
            }
            emit(out, line);
            return true;
        },
        exec(c, kDefaultNodeBudget));
    Json summary;
    summary["families"] = stats.families;
    summary["nodes"] = stats.nodes;
    if (c.classify) {
        Json counts = Json::object();
        for (const char* tag : {"dictatorial", "certificate", "nontrivial"}) counts[tag] = verdicts[tag];
        summary["verdicts"] = counts;
    }
    emit(out, Json{{"summary", summary}});
}

void poly_classify(const Config& c, std::ostream& out) {
    const auto P = load_predicate(c);
    const auto F = load_family(c);
    emit(out, to_json(classify_trivial(F, P, exec(c, 1'000'000'000))));
}

void poly_hall(const Config& c, std::ostream& out) {
    const auto F = load_family(c);
    const auto w = hall_witness(F);
    auto j = to_json(w);
    const auto problem = check_hall_witness(F, w);
    j["invariants_hold"] = !problem.has_value();
    if (problem) j["violation"] = *problem;
    emit(out, j);
}

void poly_equiv(const Config& c, std::ostream& out) {
    const auto F = load_family(c);
    int objects = 2;
    while (objects * (objects - 1) / 2 < F.m()) ++objects;
    if (objects * (objects - 1) / 2 != F.m()) throw DimensionError("family size is not C(m,2) for any m");
    emit(out, to_json(equiv_structure(F, objects, exec(c, 1'000'000'000))));
}

void spectral_decompose(const Config& c, std::ostream& out) {
    const auto j = load_document(c.table_f, "table");
    std::optional<RealTable> t;
    if (j.is_object() && j.contains("values") && j["values"].is_array() &&
        std::all_of(j["values"].begin(), j["values"].end(), [](const Json& v) { return v.is_number_integer(); }) &&
        !j.contains("n_out"))
        t = RealTable::from_boolean(boolean_from_json(j));
    else
        t = real_from_json(j);
    emit(out, to_json(decompose(*t)));
}

BooleanTable random_boolean(Rng& rng, int p, int n) {
    std::vector<std::uint8_t> bits(TruthTable::checked_cells(p, n));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    return BooleanTable(p, n, std::move(bits));
}

void spectral_adfs(const Config& c, std::ostream& out) {
    const std::uint64_t budget = c.budget.value_or(kDefaultPairBudget);
    if (c.random_pairs == 0) {
        const auto f = load_boolean(c.table_f, "f");
        const auto g = load_boolean(c.table_g, "g");
        const double direct = pair_expectation_direct(f, g, budget);
        const double spectral = pair_expectation_spectral(decompose(RealTable::from_boolean(f)),
                                                          decompose(RealTable::from_boolean(g)));
        Json j;
        j["direct"] = direct;
        j["spectral"] = spectral;
        j["abs_diff"] = std::abs(direct - spectral);
        j["hoffman"] = to_json(hoffman_check(f, g, budget));
        emit(out, j);
        return;
    }
    if (!c.seed) throw PreconditionError("--random-pairs needs --seed");
    struct Row {
        int n, p;
        double direct, spectral;
    };
    std::vector<Row> rows(c.random_pairs);
    parallel_for(rows.size(), c.threads, [&](std::size_t k) {
        Rng rng(*c.seed, k);
        const int n = 3 + static_cast<int>(rng.below(3));
        const int p = 1 + static_cast<int>(rng.below(3));
        const auto f = random_boolean(rng, p, n);
        const auto g = random_boolean(rng, p, n);
        rows[k] = Row{n, p, pair_expectation_direct(f, g, budget),
                      pair_expectation_spectral(decompose(RealTable::from_boolean(f)),
                                                decompose(RealTable::from_boolean(g)))};
    });
    Json j;
    j["seed"] = *c.seed;
    j["pairs"] = Json::array();
    double worst = 0;
    for (const auto& r : rows) {
        const double diff = std::abs(r.direct - r.spectral);
        worst = std::max(worst, diff);
        j["pairs"].push_back(Json{{"n", r.n}, {"p", r.p}, {"direct", r.direct}, {"spectral", r.spectral}, {"abs_diff", diff}});
    }
    j["max_abs_diff"] = worst;
    j["within_1e-9"] = worst <= 1e-9;
    emit(out, j);
}

void spectral_mu(const Config& c, std::ostream& out) {
    const auto F = load_family(c);
    Json j;
    j["mu_matrix"] = to_json(mu_matrix(F));
    j["profile"] = to_json(mu_profile(F, c.epsilon, c.tolerance));
    emit(out, j);
}

void spectral_recover(const Config& c, std::ostream& out) {
    emit(out, to_json(recover_dictator_indicator(load_boolean(c.table_f, "table"))));
}

DeficiencyOptions deficiency_options(const Config& c) {
    DeficiencyOptions o;
    if (c.method == "exact") {
        o.method = DeficiencyMethod::Exact;
    } else if (c.method == "monte_carlo" || c.method == "mc") {
        o.method = DeficiencyMethod::MonteCarlo;
        if (!c.seed) throw PreconditionError("Monte Carlo deficiency needs --seed");
    } else {
        throw PreconditionError("unknown --method \"" + c.method + "\"");
    }
    if (c.budget) o.budget = *c.budget;
    o.seed = c.seed;
    o.samples = c.samples;
    o.threads = c.threads;
    return o;
}

void approx_deficiency(const Config& c, std::ostream& out) {
    const auto D = load_distribution(c);
    const auto F = load_family(c);
    emit(out, to_json(deficiency(F, D, deficiency_options(c))));
}

void approx_nearest(const Config& c, std::ostream& out) {
    const auto F = load_family(c);
    if (!c.distribution.empty()) {
        const auto D = load_distribution(c);
        emit(out, to_json(nearest_trivial(F, D.predicate(), &D)));
    } else {
        emit(out, to_json(nearest_trivial(F, load_predicate(c))));
    }
}

void approx_report(const Config& c, std::ostream& out) {
    const auto D = load_distribution(c);
    const auto F = load_family(c);
    emit(out, to_json(quantitative_report(F, D, deficiency_options(c))));
}

void approx_sweep(const Config& c, std::ostream& out) {
    if (c.m < 1 || c.n < 1) throw PreconditionError("sweep needs --m and --n");
    if (c.p_from < 1 || c.p_to < c.p_from) throw PreconditionError("sweep needs 1 <= --p-from <= --p-to");
    const auto P = make_builtin(PredicateKind::Surj, c.m, c.n);
    const auto D = ProfileDistribution::uniform(P);
    const auto options = deficiency_options(c);
    std::vector<SweepRow> rows;
    for (int p = c.p_from; p <= c.p_to; ++p) {
        const auto F = outline_counterexample(c.m, c.n, p);
        const auto d = deficiency(F, D, options);
        const auto near = nearest_trivial(F, P);
        rows.push_back(SweepRow{p, d.delta, d.half_width, near.dictator ? near.dictator->max_distance : 1.0,
                                near.certificate ? near.certificate->max_distance : 1.0});
    }
    write_sweep_csv(out, rows);
}

void fixtures_counterexample(const Config& c, std::ostream& out) {
    emit(out, to_json(outline_counterexample(c.m, c.n, c.p)));
}

void fixtures_perturb(const Config& c, std::ostream& out) {
    if (!c.seed) throw PreconditionError("perturb needs --seed");
    emit(out, to_json(perturb_family(load_family(c), c.rate, *c.seed)));
}

void fixtures_dictator(const Config& c, std::ostream& out) {
    if (c.m < 1 || c.n < 1) throw PreconditionError("dictator fixture needs --m and --n");
    std::vector<Letter> pi = c.pi;
    if (pi.empty())
        for (int a = 1; a <= c.n; ++a) pi.push_back(a);
    emit(out, to_json(FunctionFamily::uniform(c.m, TruthTable::dictator(c.p, c.n, c.k, pi))));
}

void fixtures_oligarchy(const Config& c, std::ostream& out) {
    if (c.m < 2) throw PreconditionError("oligarchy fixture needs --m objects >= 2");
    ObjectClass all;
    for (int i = 1; i <= c.m; ++i) all.push_back(i);
    auto S = c.voters;
    std::sort(S.begin(), S.end());
    if (c.m == 2) {
        emit(out, to_json(build_equiv_family(c.m, c.p, {all}, {}, {{{1, 2}, conjunction_table(c.p, S)}})));
        return;
    }
    emit(out, to_json(build_equiv_family(c.m, c.p, {all}, {{all, S}}, {})));
}

using Handler = void (*)(const Config&, std::ostream&);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Polymorphism and aggregation analysis", "polyagg"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::vector<std::pair<CLI::App*, Handler>> leaves;
    auto leaf = [&](CLI::App* parent, const char* name, const char* about, Handler h) {
        auto* sub = parent->add_subcommand(name, about);
        sub->add_option("--output,-o", c.output, "Write the result to a file");
        sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
        leaves.emplace_back(sub, h);
        return sub;
    };
    auto with_predicate = [&](CLI::App* sub) {
        sub->add_option("--predicate", c.predicate, "Built-in name (surj, inj, perm, equiv, lin), JSON, or file");
        sub->add_option("--m", c.m, "Arity or number of objects");
        sub->add_option("--n", c.n, "Alphabet size");
    };
    auto with_family = [&](CLI::App* sub) { sub->add_option("--family", c.family, "Family JSON, file, or - for stdin"); };
    auto with_budget = [&](CLI::App* sub) { sub->add_option("--budget", c.budget, "Work budget (tuples or nodes)"); };
    auto with_seed = [&](CLI::App* sub) { sub->add_option("--seed", c.seed, "Random seed"); };

    auto* predicate = app.add_subcommand("predicate", "Predicate analyses");
    predicate->require_subcommand(1);
    with_predicate(leaf(predicate, "analyze", "Structural flags and minimal certificates", predicate_analyze));

    auto* poly = app.add_subcommand("poly", "Exact polymorphism tools");
    poly->require_subcommand(1);
    {
        auto* s = leaf(poly, "check", "Check that a family is a polymorphism", poly_check);
        with_predicate(s), with_family(s), with_budget(s);
        s = leaf(poly, "enumerate", "Stream every polymorphism as NDJSON", poly_enumerate);
        with_predicate(s), with_budget(s);
        s->add_option("--p", c.p, "Number of voters")->required();
        s->add_flag("--classify", c.classify, "Attach a triviality verdict to each family");
        s = leaf(poly, "classify", "Dictatorial / certificate / nontrivial verdict", poly_classify);
        with_predicate(s), with_family(s), with_budget(s);
        s = leaf(poly, "hall", "Hall witness for a p = 1 polymorphism of Surj", poly_hall);
        with_family(s);
        s = leaf(poly, "equiv", "Structure of a polymorphism of Equiv", poly_equiv);
        with_family(s), with_budget(s);
    }

    auto* spectral = app.add_subcommand("spectral", "Degree decomposition and cross-independence");
    spectral->require_subcommand(1);
    {
        auto* s = leaf(spectral, "decompose", "Degree decomposition of a table", spectral_decompose);
        s->add_option("--table", c.table_f, "Boolean or real table JSON or file")->required();
        s = leaf(spectral, "adfs", "Distinct-pair expectation, direct and spectral", spectral_adfs);
        s->add_option("--f", c.table_f, "Boolean table");
        s->add_option("--g", c.table_g, "Boolean table");
        s->add_option("--random-pairs", c.random_pairs, "Check this many seeded random pairs instead");
        with_seed(s), with_budget(s);
        s = leaf(spectral, "mu", "Mu matrix and per-letter profile (m = n)", spectral_mu);
        with_family(s);
        s->add_option("--epsilon", c.epsilon, "Approximation parameter")->check(CLI::NonNegativeNumber);
        s->add_option("--tolerance", c.tolerance, "Override the eps^(1/4) tolerance");
        s = leaf(spectral, "recover", "Nearest single-coordinate indicator", spectral_recover);
        s->add_option("--table", c.table_f, "Boolean table")->required();
    }

    auto* approx = app.add_subcommand("approx", "Approximate polymorphism measurements");
    approx->require_subcommand(1);
    {
        auto with_method = [&](CLI::App* s) {
            s->add_option("--distribution", c.distribution, "Distribution JSON or file (default: uniform)");
            s->add_option("--method", c.method, "exact or monte_carlo");
            s->add_option("--samples", c.samples, "Monte Carlo draws");
            with_seed(s), with_budget(s);
        };
        auto* s = leaf(approx, "deficiency", "1 - Pr[output in P]", approx_deficiency);
        with_predicate(s), with_family(s), with_method(s);
        s = leaf(approx, "nearest", "Nearest dictator / certificate / oligarchy", approx_nearest);
        with_predicate(s), with_family(s);
        s->add_option("--distribution", c.distribution, "Distribution JSON or file");
        s = leaf(approx, "report", "Deficiency, margins, nearest trivial family", approx_report);
        with_predicate(s), with_family(s), with_method(s);
        s = leaf(approx, "sweep", "CSV of deficiency and distances over p for the outline family", approx_sweep);
        s->add_option("--m", c.m, "Arity")->required();
        s->add_option("--n", c.n, "Alphabet size")->required();
        s->add_option("--p-from", c.p_from, "First p");
        s->add_option("--p-to", c.p_to, "Last p");
        s->add_option("--method", c.method, "exact or monte_carlo");
        s->add_option("--samples", c.samples, "Monte Carlo draws");
        with_seed(s), with_budget(s);
    }

    auto* fixtures = app.add_subcommand("fixtures", "Generate families");
    fixtures->require_subcommand(1);
    {
        auto* s = leaf(fixtures, "counterexample", "f_i = j on unanimous input, else min(i, n)", fixtures_counterexample);
        s->add_option("--m", c.m)->required();
        s->add_option("--n", c.n)->required();
        s->add_option("--p", c.p)->required();
        s = leaf(fixtures, "perturb", "Rerandomize cells at a rate", fixtures_perturb);
        with_family(s), with_seed(s);
        s->add_option("--rate", c.rate)->required()->check(CLI::Range(0.0, 1.0));
        s = leaf(fixtures, "dictator", "All tables pi(x_k)", fixtures_dictator);
        s->add_option("--m", c.m)->required();
        s->add_option("--n", c.n)->required();
        s->add_option("--p", c.p)->required();
        s->add_option("--k", c.k, "Dictator coordinate");
        s->add_option("--pi", c.pi, "Permutation images, comma separated")->delimiter(',');
        s = leaf(fixtures, "oligarchy", "Conjunction over S on every pair of Equiv_m", fixtures_oligarchy);
        s->add_option("--m", c.m, "Objects")->required();
        s->add_option("--p", c.p)->required();
        s->add_option("--S", c.voters, "Voters, comma separated")->delimiter(',');
    }

    std::vector<std::string> storage{"polyagg"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    Handler handler = nullptr;
    for (auto& [sub, h] : leaves)
        if (sub->parsed()) handler = h;
    if (!handler) {
        err << app.help();
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.output.empty()) {
        file.open(c.output, std::ios::binary);
        if (!file) {
            out << error_json("io", "cannot open output file \"" + c.output + "\"").dump() << '\n';
            return kExitDomain;
        }
        sink = &file;
    }
    try {
        handler(c, *sink);
        return kExitOk;
    } catch (const BudgetExceeded& e) {
        emit(*sink, error_json(e.kind(), e.what()));
        return kExitBudget;
    } catch (const Error& e) {
        emit(*sink, error_json(e.kind(), e.what()));
        return kExitDomain;
    } catch (const nlohmann::json::exception& e) {
        emit(*sink, error_json("format", e.what()));
        return kExitDomain;
    } catch (const std::bad_alloc&) {
        emit(*sink, error_json("resource", "out of memory"));
        return kExitDomain;
    } catch (const std::exception& e) {
        emit(*sink, error_json("internal", e.what()));
        return kExitDomain;
    }
}

}  // namespace polyagg::cli
