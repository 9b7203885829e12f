#include "polyagg/json_io.hpp"

#include <string>

#include "polyagg/errors.hpp"

namespace polyagg {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    return *it;
}

long long integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
    return j.get<long long>();
}

int small_int(const Json& j, const char* what, long long lo, long long hi) {
    const auto v = integer(j, what);
    if (v < lo || v > hi)
        throw FormatError(std::string(what) + " must be in " + std::to_string(lo) + ".." + std::to_string(hi));
    return static_cast<int>(v);
}

double real(const Json& j, const char* what) {
    if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
    return j.get<double>();
}

void check_schema(const Json& j) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    const auto it = j.find("schema");
    if (it != j.end() && (!it->is_number_integer() || it->get<long long>() != kSchemaVersion))
        throw FormatError("unsupported schema version");
}

const Json& array(const Json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    return j;
}

std::vector<std::uint8_t> letter_values(const Json& j, const char* what, int hi) {
    std::vector<std::uint8_t> out;
    for (const auto& v : array(j, what)) out.push_back(static_cast<std::uint8_t>(small_int(v, what, 1, hi)));
    return out;
}

Word word(const Json& j, const char* what) {
    Word out;
    for (const auto& v : array(j, what)) out.push_back(small_int(v, what, 0, kMaxAlphabet));
    return out;
}

}  // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const Predicate& P) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["name"] = P.name();
    j["m"] = P.arity();
    j["n"] = P.alphabet();
    if (const auto& tag = P.builtin())
        j["builtin"] = Json{{"kind", std::string(to_string(tag->kind))}, {"m", tag->m}, {"n", tag->n}};
    j["members"] = Json::array();
    for (const auto& x : P.members()) j["members"].push_back(x);
    return j;
}

Predicate predicate_from_json(const Json& j) {
    check_schema(j);
    try {
        if (const auto it = j.find("builtin"); it != j.end()) {
            std::string kind_text;
            int m, n;
            if (it->is_string()) {
                kind_text = it->get<std::string>();
                m = small_int(field(j, "m"), "m", 1, 64);
                n = j.contains("n") ? small_int(j["n"], "n", 1, kMaxAlphabet) : 2;
            } else {
                kind_text = field(*it, "kind").is_string() ? field(*it, "kind").get<std::string>() : "";
                m = small_int(field(*it, "m"), "builtin.m", 1, 64);
                n = small_int(field(*it, "n"), "builtin.n", 1, kMaxAlphabet);
            }
            const auto kind = parse_predicate_kind(kind_text);
            if (!kind) throw FormatError("unknown built-in predicate \"" + kind_text + "\"");
            auto P = make_builtin(*kind, m, n);
            if (j.contains("members")) {
                const auto listed = predicate_from_json(Json{{"m", field(j, "m")}, {"n", field(j, "n")},
                                                             {"members", j["members"]}});
                if (!(listed == P)) throw FormatError("members do not match the built-in predicate");
            }
            return P;
        }
        const int m = small_int(field(j, "m"), "m", 1, 64);
        const int n = small_int(field(j, "n"), "n", 1, kMaxAlphabet);
        std::vector<Word> members;
        for (const auto& x : array(field(j, "members"), "members")) members.push_back(word(x, "member"));
        std::string name;
        if (const auto it = j.find("name"); it != j.end()) {
            if (!it->is_string()) throw FormatError("name must be a string");
            name = it->get<std::string>();
        }
        return Predicate(m, n, std::move(members), std::move(name));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid predicate: ") + e.what());
    }
}

Json to_json(const TruthTable& t) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["p"] = t.arity();
    j["n"] = t.n_in();
    j["n_out"] = t.n_out();
    j["values"] = Json::array();
    for (auto v : t.values()) j["values"].push_back(static_cast<int>(v));
    return j;
}

TruthTable table_from_json(const Json& j) {
    check_schema(j);
    const int p = small_int(field(j, "p"), "p", 0, 64);
    const int n = small_int(field(j, "n"), "n", 1, kMaxAlphabet);
    const int n_out = j.contains("n_out") ? small_int(j["n_out"], "n_out", 1, kMaxAlphabet) : n;
    try {
        return TruthTable(p, n, n_out, letter_values(field(j, "values"), "table value", n_out));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid table: ") + e.what());
    }
}

Json to_json(const FunctionFamily& F) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["m"] = F.m();
    j["p"] = F.p();
    j["n"] = F.n();
    j["index_order"] = "mixed_radix_first_argument_least_significant";
    j["tables"] = Json::array();
    for (const auto& t : F.tables()) {
        Json values = Json::array();
        for (auto v : t.values()) values.push_back(static_cast<int>(v));
        j["tables"].push_back(std::move(values));
    }
    return j;
}

FunctionFamily family_from_json(const Json& j) {
    check_schema(j);
    const int m = small_int(field(j, "m"), "m", 1, 1 << 16);
    const int p = small_int(field(j, "p"), "p", 0, 64);
    const int n = small_int(field(j, "n"), "n", 1, kMaxAlphabet);
    if (const auto it = j.find("index_order");
        it != j.end() && *it != "mixed_radix_first_argument_least_significant")
        throw FormatError("unsupported index_order");
    const auto& tables = array(field(j, "tables"), "tables");
    if (static_cast<int>(tables.size()) != m) throw FormatError("tables length differs from m");
    try {
        std::vector<TruthTable> out;
        for (const auto& t : tables) out.emplace_back(p, n, n, letter_values(t, "table value", n));
        return FunctionFamily(std::move(out));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid family: ") + e.what());
    }
}

Json to_json(const BooleanTable& f) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["p"] = f.arity();
    j["n"] = f.n();
    j["values"] = Json::array();
    for (auto b : f.bits()) j["values"].push_back(static_cast<int>(b));
    return j;
}

BooleanTable boolean_from_json(const Json& j) {
    check_schema(j);
    const int p = small_int(field(j, "p"), "p", 0, 64);
    const int n = small_int(field(j, "n"), "n", 1, kMaxAlphabet);
    std::vector<std::uint8_t> bits;
    for (const auto& v : array(field(j, "values"), "values"))
        bits.push_back(static_cast<std::uint8_t>(small_int(v, "boolean value", 0, 1)));
    try {
        return BooleanTable(p, n, std::move(bits));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid boolean table: ") + e.what());
    }
}

Json to_json(const RealTable& t) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["p"] = t.arity();
    j["n"] = t.n();
    j["values"] = Json::array();
    for (double v : t.values()) j["values"].push_back(v);
    return j;
}

RealTable real_from_json(const Json& j) {
    check_schema(j);
    const int p = small_int(field(j, "p"), "p", 0, 64);
    const int n = small_int(field(j, "n"), "n", 1, kMaxAlphabet);
    std::vector<double> values;
    for (const auto& v : array(field(j, "values"), "values")) values.push_back(real(v, "value"));
    try {
        return RealTable(p, n, std::move(values));
    } catch (const DimensionError& e) {
        throw FormatError(std::string("invalid real table: ") + e.what());
    }
}

Json to_json(const ProfileDistribution& D) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["predicate"] = to_json(D.predicate());
    if (D.is_uniform()) {
        j["weights"] = "uniform";
    } else {
        j["weights"] = Json::array();
        for (double w : D.weights()) j["weights"].push_back(w);
    }
    return j;
}

ProfileDistribution distribution_from_json(const Json& j) {
    check_schema(j);
    auto P = predicate_from_json(field(j, "predicate"));
    const auto it = j.find("weights");
    if (it == j.end() || (it->is_string() && *it == "uniform")) return ProfileDistribution::uniform(std::move(P));
    std::vector<double> weights;
    for (const auto& w : array(*it, "weights")) weights.push_back(real(w, "weight"));
    try {
        return ProfileDistribution::weighted(std::move(P), std::move(weights));
    } catch (const Error& e) {
        throw FormatError(std::string("invalid distribution: ") + e.what());
    }
}

Json to_json(const PartialAssignment& rho) {
    Json j = Json::object();
    j["domain"] = rho.domain();
    Json values = Json::array();
    for (int i : rho.domain()) values.push_back(rho.at(i));
    j["values"] = std::move(values);
    j["pattern"] = std::vector<Letter>(rho.values().begin(), rho.values().end());
    return j;
}

Json to_json(const Dictator& d) { return Json{{"k", d.coordinate}, {"pi", d.perm}}; }

Json to_json(const PredicateProfile& profile) {
    Json j;
    j["flexible"] = profile.flexible;
    j["full_projections"] = profile.full_projections;
    j["depends_on_all"] = profile.depends_on_all;
    j["non_degenerate"] = profile.non_degenerate();
    if (profile.vulnerable)
        j["vulnerable"] = Json{{"coordinate", profile.vulnerable->coordinate}, {"letter", profile.vulnerable->letter}};
    else
        j["vulnerable"] = nullptr;
    j["sticky"] = Json::array();
    for (const auto& s : profile.sticky) j["sticky"].push_back(Json{{"coordinate", s.coordinate}, {"letter", s.letter}});
    return j;
}

Json to_json(const PolyCheck& check) {
    Json j;
    j["polymorphism"] = check.holds;
    j["tuples_checked"] = check.tuples_checked;
    j["counterexample"] = check.counterexample ? Json(*check.counterexample) : Json(nullptr);
    return j;
}

Json to_json(const TrivialityVerdict& v) {
    Json j;
    j["verdict"] = std::string(verdict_tag(v));
    if (const auto* d = std::get_if<Dictatorial>(&v)) {
        j["k"] = d->coordinate;
        j["pi"] = d->perm;
    } else if (const auto* c = std::get_if<CertificateVerdict>(&v)) {
        j["rho"] = to_json(c->rho);
    } else {
        j["note"] = std::get<Nontrivial>(v).note;
    }
    return j;
}

Json to_json(const HallWitness& w) {
    Json j;
    j["constant_coordinates"] = w.constant_coordinates;
    j["C"] = w.constant_letters;
    j["c"] = w.c;
    j["letters"] = Json::array();
    for (const auto& l : w.letters) j["letters"].push_back(Json{{"r", l.r}, {"X", l.X}, {"I", l.I}});
    j["delta"] = w.delta;
    j["lower_bound"] = w.lower_bound;
    j["upper_bound"] = w.upper_bound;
    return j;
}

Json to_json(const EquivStructure& s) {
    Json j;
    j["objects"] = s.objects;
    j["p"] = s.p;
    j["classes"] = s.classes;
    j["oligarchs"] = Json::array();
    for (const auto& [cls, S] : s.oligarchs) j["oligarchs"].push_back(Json{{"class", cls}, {"S", S}});
    j["free_pairs"] = Json::array();
    for (auto [a, b] : s.free_pairs) j["free_pairs"].push_back(Json::array({a, b}));
    return j;
}

Json to_json(const DegreeDecomposition& d) {
    Json j;
    j["p"] = d.p;
    j["n"] = d.n;
    j["mean"] = d.mean;
    j["squared_norm"] = d.squared_norm;
    j["parts"] = Json::array();
    for (int k = 0; k <= d.p; ++k) {
        Json part;
        part["d"] = k;
        part["squared_norm"] = d.part_norm2(k);
        part["values"] = std::vector<double>(d.parts[k].values().begin(), d.parts[k].values().end());
        j["parts"].push_back(std::move(part));
    }
    return j;
}

Json to_json(const HoffmanReport& r) {
    Json j;
    j["n"] = r.n;
    j["mu_f"] = r.mu_f;
    j["mu_g"] = r.mu_g;
    j["epsilon"] = r.epsilon;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["sqrt_epsilon"] = r.sqrt_epsilon;
    j["slack"] = r.slack;
    j["exact_lhs"] = r.exact_lhs;
    j["exact_rhs"] = r.exact_rhs;
    j["exact_slack"] = r.exact_slack;
    j["cross_independent"] = r.cross_independent;
    j["exact_holds"] = r.exact_holds;
    j["tight"] = r.tight;
    j["degenerate"] = r.degenerate;
    j["equality"] = r.equality;
    return j;
}

namespace {

Json candidate_json(const IndicatorCandidate& c) {
    return Json{{"k", c.k}, {"s", c.s}, {"complement", c.complement}, {"distance", c.distance}};
}

}  // namespace

Json to_json(const IndicatorRecovery& r) {
    Json j;
    j["best"] = candidate_json(r.best);
    j["best_plain"] = candidate_json(r.best_plain);
    j["constant_value"] = r.constant_value;
    j["constant_distance"] = r.constant_distance;
    j["constant_better"] = r.constant_better;
    return j;
}

Json to_json(const MuMatrix& M) {
    Json j;
    j["n"] = M.n;
    j["entries"] = M.entries;
    j["row_sums"] = M.row_sums;
    j["column_sums"] = M.column_sums;
    j["row_deviation"] = M.row_deviation;
    j["column_deviation"] = M.column_deviation;
    return j;
}

Json to_json(const MuProfile& profile) {
    Json j;
    j["epsilon"] = profile.epsilon;
    j["tolerance"] = profile.tolerance;
    j["letters"] = Json::array();
    for (const auto& l : profile.letters) {
        Json e;
        e["r"] = l.r;
        e["case"] = std::string(to_string(l.tag));
        if (l.tag == MuCase::Concentrated) e["coordinate"] = l.concentrated_on;
        if (l.tag == MuCase::Spread) {
            e["fits"] = Json::array();
            for (const auto& f : l.fits) e["fits"].push_back(candidate_json(f));
        }
        j["letters"].push_back(std::move(e));
    }
    j["certificate_like"] = profile.certificate_like;
    j["dictator_consistent"] = profile.dictator_consistent;
    j["dictator"] = profile.dictator ? to_json(*profile.dictator) : Json(nullptr);
    j["note"] = profile.note;
    return j;
}

Json to_json(const DeficiencyReport& r) {
    Json j;
    j["delta"] = r.delta;
    if (r.method == DeficiencyMethod::Exact) {
        j["method"] = "exact";
        j["tuples"] = r.samples;
    } else {
        j["method"] = "monte_carlo";
        j["seed"] = r.seed;
        j["samples"] = r.samples;
    }
    j["half_width"] = r.half_width;
    j["failures"] = r.failures;
    j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    return j;
}

Json to_json(const NearestReport& r) {
    Json j;
    if (r.dictator)
        j["dictator"] = Json{{"k", r.dictator->dictator.coordinate},
                             {"pi", r.dictator->dictator.perm},
                             {"distances", r.dictator->distances},
                             {"max_distance", r.dictator->max_distance}};
    else
        j["dictator"] = nullptr;
    if (r.certificate)
        j["certificate"] = Json{{"rho", to_json(r.certificate->rho)},
                                {"completion", r.certificate->completion},
                                {"distances", r.certificate->distances},
                                {"max_distance", r.certificate->max_distance}};
    else
        j["certificate"] = nullptr;
    if (r.oligarchy)
        j["oligarchy"] = Json{{"S", r.oligarchy->S},
                              {"distances", r.oligarchy->distances},
                              {"max_distance", r.oligarchy->max_distance}};
    j["verdict"] = r.verdict;
    j["verdict_distance"] = r.verdict_distance;
    return j;
}

Json to_json(const QuantReport& r) {
    Json j;
    j["deficiency"] = to_json(r.deficiency);
    j["margins"] = r.margins;
    if (!r.zero_mass.empty()) j["zero_mass"] = r.zero_mass;
    j["nearest"] = to_json(r.nearest);
    const auto& h = r.hypotheses;
    j["hypotheses"] = Json{{"full_support", h.full_support},         {"letter_symmetric", h.letter_symmetric},
                           {"object_symmetric", h.object_symmetric}, {"flexible", h.flexible},
                           {"surj_main", h.surj_main},               {"flexible_reduction", h.flexible_reduction},
                           {"perm_spectral", h.perm_spectral},       {"equiv_main", h.equiv_main}};
    return j;
}

Json to_json(const FunctionShape& s) {
    Json j;
    j["constant"] = s.constant ? Json(*s.constant) : Json(nullptr);
    j["dictator"] = s.dictator ? to_json(*s.dictator) : Json(nullptr);
    j["other_unary"] =
        s.other_unary ? Json{{"k", s.other_unary->coordinate}, {"map", s.other_unary->map}} : Json(nullptr);
    j["nearest_constant"] = s.nearest_constant;
    j["dist_to_nearest_constant"] = s.dist_to_nearest_constant;
    j["nearest_dictator"] = to_json(s.nearest_dictator);
    j["dist_to_nearest_dictator"] = s.dist_to_nearest_dictator;
    return j;
}

}  // namespace polyagg
