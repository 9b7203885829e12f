#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "polyagg/approx.hpp"
#include "polyagg/json_io.hpp"

using namespace polyagg;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
}

std::string family_text(const FunctionFamily& F) { return to_json(F).dump(); }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("poly check on a dictator fixture") {
        const auto fx = run({"fixtures", "dictator", "--m", "3", "--n", "2", "--p", "2", "--k", "2"});
        REQUIRE(fx.code == 0);
        const auto r = run({"poly", "check", "--predicate", "surj", "--m", "3", "--n", "2", "--family", fx.out});
        CHECK(r.code == 0);
        const auto j = parse_json(r.out);
        CHECK(j["polymorphism"] == true);
    }

    TEST_CASE("enumerate streams one family per line") {
        const auto r = run({"poly", "enumerate", "--predicate", "surj", "--m", "2", "--n", "2", "--p", "1"});
        CHECK(r.code == 0);
        const auto ls = lines(r.out);
        REQUIRE(ls.size() == 5);
        for (int i = 0; i < 4; ++i) CHECK(parse_json(ls[i]).contains("family"));
        CHECK(parse_json(ls[4])["summary"]["families"] == 4);
    }

    TEST_CASE("enumerate over budget") {
        const auto r = run({"poly", "enumerate", "--predicate", "surj", "--m", "4", "--n", "3", "--p", "1",
                            "--budget", "50"});
        CHECK(r.code == 2);
        const auto ls = lines(r.out);
        REQUIRE(!ls.empty());
        CHECK(parse_json(ls.back())["error"]["kind"] == "budget_exceeded");
    }

    TEST_CASE("deficiency matches the library") {
        const auto F = outline_counterexample(4, 3, 2);
        const auto r = run({"approx", "deficiency", "--predicate", "surj", "--m", "4", "--n", "3", "--family",
                            family_text(F)});
        CHECK(r.code == 0);
        const auto j = parse_json(r.out);
        const auto lib = deficiency(F, ProfileDistribution::uniform(make_builtin(PredicateKind::Surj, 4, 3)));
        CHECK(j["delta"].get<double>() == lib.delta);
        CHECK(j["delta"].get<double>() > 0);
    }

    TEST_CASE("sampling paths require a seed") {
        const auto F = family_text(outline_counterexample(4, 3, 2));
        const auto r = run({"approx", "deficiency", "--predicate", "surj", "--m", "4", "--n", "3", "--family", F,
                            "--method", "monte_carlo"});
        CHECK(r.code == 1);
        CHECK(parse_json(r.out)["error"]["kind"] == "precondition");
        CHECK(run({"spectral", "adfs", "--random-pairs", "3"}).code == 1);
        CHECK(run({"fixtures", "perturb", "--family", F, "--rate", "0.1"}).code == 1);
    }

    TEST_CASE("byte determinism") {
        const auto F = family_text(outline_counterexample(4, 3, 2));
        const std::vector<std::vector<std::string>> commands{
            {"approx", "deficiency", "--predicate", "surj", "--m", "4", "--n", "3", "--family", F, "--method",
             "monte_carlo", "--seed", "9", "--samples", "50000"},
            {"approx", "report", "--predicate", "surj", "--m", "4", "--n", "3", "--family", F},
            {"spectral", "adfs", "--random-pairs", "20", "--seed", "3"},
            {"poly", "enumerate", "--predicate", "surj", "--m", "3", "--n", "2", "--p", "2", "--classify"},
            {"fixtures", "perturb", "--family", F, "--rate", "0.2", "--seed", "4"}};
        for (const auto& c : commands) {
            const auto a = run(c);
            const auto b = run(c);
            CHECK(a.code == 0);
            CHECK(a.out == b.out);
            auto threaded = c;
            threaded.insert(threaded.end(), {"--threads", "4"});
            CHECK(run(threaded).out == a.out);
        }
    }

    TEST_CASE("usage errors") {
        const auto r = run({"poly", "check", "--no-such-flag"});
        CHECK(r.code == 64);
        CHECK(r.out.empty());
        CHECK(r.err.find("Usage") != std::string::npos);
        CHECK(run({}).code == 64);
        CHECK(run({"frobnicate"}).code == 64);
        CHECK(run({"poly", "enumerate", "--predicate", "surj"}).code == 64);  // --p is required
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("subcommand coverage") {
        CHECK(run({"predicate", "analyze", "--predicate", "equiv", "--m", "3"}).code == 0);
        const auto dict = run({"fixtures", "dictator", "--m", "4", "--n", "3", "--p", "1", "--pi", "2,3,1"}).out;
        CHECK(run({"poly", "classify", "--predicate", "surj", "--m", "4", "--n", "3", "--family", dict}).code == 0);
        const auto hall = run({"poly", "hall", "--family", dict});
        CHECK(hall.code == 0);
        CHECK(parse_json(hall.out)["invariants_hold"] == true);
        const auto olig = run({"fixtures", "oligarchy", "--m", "3", "--p", "2", "--S", "1,2"}).out;
        const auto eq = run({"poly", "equiv", "--family", olig});
        CHECK(eq.code == 0);
        const auto perm = run({"fixtures", "dictator", "--m", "3", "--n", "3", "--p", "2"}).out;
        CHECK(run({"spectral", "mu", "--family", perm, "--epsilon", "0.01"}).code == 0);
        const std::string table = R"({"schema":1,"p":1,"n":3,"values":[1,0,0]})";
        CHECK(run({"spectral", "decompose", "--table", table}).code == 0);
        CHECK(run({"spectral", "adfs", "--f", table, "--g", table}).code == 0);
        CHECK(run({"spectral", "recover", "--table", table}).code == 0);
        CHECK(run({"approx", "nearest", "--predicate", "perm", "--m", "3", "--family", perm}).code == 0);
        const auto sweep = run({"approx", "sweep", "--m", "4", "--n", "3", "--p-from", "1", "--p-to", "2"});
        CHECK(sweep.code == 0);
        CHECK(lines(sweep.out).size() == 3);
        CHECK(run({"fixtures", "counterexample", "--m", "4", "--n", "3", "--p", "2"}).code == 0);
    }

    TEST_CASE("malformed inputs give structured errors") {
        const auto good = family_text(outline_counterexample(4, 3, 2));
        std::vector<std::string> corpus;
        // truncations
        for (std::size_t k = 0; k < 40; ++k) corpus.push_back(good.substr(0, 1 + k * (good.size() - 2) / 40));
        // field damage
        const std::vector<std::pair<std::string, std::string>> edits{
            {"\"schema\":1", "\"schema\":7"},   {"\"schema\":1", "\"schema\":\"1\""}, {"\"m\":4", "\"m\":5"},
            {"\"m\":4", "\"m\":-1"},            {"\"p\":2", "\"p\":3"},               {"\"p\":2", "\"p\":0.5"},
            {"\"n\":3", "\"n\":2"},             {"\"n\":3", "\"n\":300"},             {"\"n\":3", "\"n\":null"},
            {"\"tables\"", "\"tablez\""},       {"[[", "[{"},                         {"1,", "0,"},
            {"1,", "4,"},                       {"1,", "-1,"},                        {"1,", "1.5,"},
            {"1,", "\"1\","},                   {"1,", "true,"},                      {"]]", "],[1]]"},
            {"\"index_order\":", "\"index_order\":[],\"x\":"},   {"least_significant", "most"},        {"{", "["},
            {"\"m\":4,", ""},                   {"\"tables\":[", "\"tables\":[[],"}, {"\"n\":3", "\"n\":0"}};
        for (const auto& [from, to] : edits) {
            auto s = good;
            const auto at = s.find(from);
            REQUIRE(at != std::string::npos);
            s.replace(at, from.size(), to);
            corpus.push_back(s);
        }
        // assorted junk
        for (const char* s : {"{}", "[]", "null", "{\"schema\":1}", "{\"schema\":1,\"m\":1,\"p\":1,\"n\":1,\"tables\":[]}",
                              "{\"schema\":1,\"m\":1,\"p\":30,\"n\":9,\"tables\":[[1]]}", "{\"a\":", "{\"schema\":1,\"m\":1e400}",
                              "\x01\x02", "{\"schema\":1,\"m\":1,\"p\":1,\"n\":2,\"tables\":[[1,2]]}",
                              "/nonexistent/file.json", "{\"schema\":1,\"m\":4,\"p\":1,\"n\":3,\"tables\":[[1,2,3],[1,2,3],[1,2,3],[1,2]]}"})
            corpus.push_back(s);
        while (corpus.size() < 100) corpus.push_back(good.substr(corpus.size() % 7) + "}");
        CHECK(corpus.size() == 100);

        int structured = 0;
        for (const auto& text : corpus) {
            CAPTURE(text);
            const auto r = run({"poly", "check", "--predicate", "surj", "--m", "4", "--n", "3", "--family", text});
            CHECK(r.code == 1);
            Json j;
            REQUIRE_NOTHROW(j = parse_json(r.out));
            REQUIRE(j.contains("error"));
            const auto kind = j["error"]["kind"].get<std::string>();
            CHECK((kind == "format" || kind == "dimension" || kind == "precondition"));
            structured += 1;
        }
        CHECK(structured == 100);

        // predicate documents as well
        for (const char* text : {"{\"schema\":1,\"m\":2,\"n\":2,\"members\":[[1,3]]}", "{\"schema\":1,\"builtin\":\"surj\"}",
                                 "{\"schema\":1,\"builtin\":\"surj\",\"m\":2,\"n\":2,\"members\":[[1,1]]}"}) {
            const auto r = run({"predicate", "analyze", "--predicate", text});
            CHECK(r.code == 1);
            CHECK(parse_json(r.out).contains("error"));
        }
    }
}
