// One PASS/FAIL line per acceptance criterion. Usage: acceptance <path-to-polyagg-cli>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "polyagg/approx.hpp"
#include "polyagg/equiv.hpp"
#include "polyagg/errors.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/spectral.hpp"

using namespace polyagg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

bool is_point_indicator(const BooleanTable& f, int& k, Letter& s) {
    const int p = f.arity(), n = f.n();
    for (k = 1; k <= p; ++k)
        for (s = 1; s <= n; ++s) {
            bool same = true;
            for (std::uint64_t c = 0; c < f.size() && same; ++c)
                same = f.at(c) == (oracle::digits(c, p, n)[k - 1] == s);
            if (same) return true;
        }
    return false;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    const std::array<std::array<int, 3>, 5> cases{{{3, 2, 1}, {3, 2, 2}, {4, 2, 1}, {3, 3, 1}, {4, 3, 1}}};
    Outcome o;
    std::ostringstream detail;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto [m, n, p] = cases[c];
        const auto P = make_builtin(PredicateKind::Surj, m, n);
        std::set<std::vector<int>> found;
        int dict = 0, cert = 0, other = 0;
        enumerate_polymorphisms(P, p, [&](const FunctionFamily& F) {
            found.insert(oracle::flatten(F));
            const auto tag = verdict_tag(classify_trivial(F, P));
            (tag == "dictatorial" ? dict : tag == "certificate" ? cert : other)++;
            return true;
        });
        if (other != 0) o.pass = false;
        if (c < 3 && found != oracle::all_families_filter(P, p)) {
            o.pass = false;
            detail << " oracle mismatch at (" << m << "," << n << "," << p << ")";
        }
        detail << " (" << m << "," << n << "," << p << "):" << dict << "D/" << cert << "C/" << other << "N";
    }
    const double secs = seconds_since(t0);
    if (secs > 60) o.pass = false;
    o.detail = detail.str() + " in " + fmt(secs) + "s";
    return o;
}

Outcome criterion2() {
    const auto P = make_builtin(PredicateKind::Surj, 2, 2);
    Outcome o;
    int nontrivial = 0;
    std::ostringstream detail;
    for (int p : {1, 2}) {
        const auto all = all_polymorphisms(P, p);
        int here = 0;
        for (const auto& F : all) here += verdict_tag(classify_trivial(F, P)) == "nontrivial";
        nontrivial += here;
        std::set<std::vector<int>> found;
        for (const auto& F : all) found.insert(oracle::flatten(F));
        const bool match = found == oracle::all_families_filter(P, p);
        if (!match) o.pass = false;
        if (p == 1 && all.size() != 4) o.pass = false;
        detail << " p=" << p << ":" << all.size() << " families, " << here << " nontrivial" << (match ? "" : " (oracle mismatch)");
    }
    if (nontrivial == 0) o.pass = false;
    o.detail = detail.str();
    return o;
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    Outcome o;
    const auto P = make_builtin(PredicateKind::Equiv, 3);
    std::size_t brute = 0;
    for (int p : {1, 2}) {
        const std::size_t cells = oracle::ipow(2, p);
        for (const auto& flat : oracle::all_families_filter(P, p)) {
            ++brute;
            std::vector<TruthTable> tables;
            for (std::size_t i = 0; i < 3; ++i)
                tables.emplace_back(p, 2, 2,
                                    std::vector<std::uint8_t>(flat.begin() + i * cells, flat.begin() + (i + 1) * cells));
            const FunctionFamily F(tables);
            try {
                const auto s = equiv_structure(F, 3);
                std::map<std::pair<int, int>, TruthTable> free;
                for (const auto& [i, j] : s.free_pairs) free.emplace(std::make_pair(i, j), F.table(pair_coordinate(i, j, 3)));
                if (oracle::flatten(build_equiv_family(3, p, s.classes, s.oligarchs, free)) != flat) o.pass = false;
            } catch (const Error&) {
                o.pass = false;
            }
        }
    }
    Rng rng(31337);
    int built = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int objects = 3 + static_cast<int>(rng.below(3));
        const int p = 1 + static_cast<int>(rng.below(3));
        const auto c = oracle::random_equiv_config(rng, objects, p);
        const auto F = build_equiv_family(c.objects, c.p, c.classes, c.oligarchs, c.free_tables);
        if (is_polymorphism(F, make_builtin(PredicateKind::Equiv, objects)).holds) ++built;
    }
    if (built != 50) o.pass = false;
    const double secs = seconds_since(t0);
    if (secs > 60) o.pass = false;
    o.detail = " " + std::to_string(brute) + " brute-force polymorphisms structured, " + std::to_string(built) +
               "/50 built families are polymorphisms, " + fmt(secs) + "s";
    return o;
}

Outcome criterion4() {
    Outcome o;
    Rng rng(4004);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(3));
        const int p = 1 + static_cast<int>(rng.below(3));
        const auto f = oracle::to_boolean(oracle::random_bits(rng, oracle::ipow(n, p)), p, n);
        const auto g = oracle::to_boolean(oracle::random_bits(rng, oracle::ipow(n, p)), p, n);
        const double direct = pair_expectation_direct(f, g);
        const double spectral = pair_expectation_spectral(decompose(RealTable::from_boolean(f)),
                                                          decompose(RealTable::from_boolean(g)));
        worst = std::max(worst, std::abs(direct - spectral));
    }
    if (worst > 1e-9) o.pass = false;
    const BooleanTable ind(1, 3, std::vector<std::uint8_t>{1, 0, 0});
    const double closed = pair_expectation_direct(ind, ind);
    if (closed != 0.0) o.pass = false;
    const double closed_spectral = pair_expectation_spectral(decompose(RealTable::from_boolean(ind)),
                                                             decompose(RealTable::from_boolean(ind)));
    if (std::abs(closed_spectral) > 1e-9) o.pass = false;
    o.detail = " max |direct - spectral| = " + fmt(worst) + "; closed form direct " + fmt(closed) + ", spectral " +
               fmt(closed_spectral);
    return o;
}

Outcome criterion5() {
    Outcome o;
    Rng rng(5005);
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const int p = 1 + static_cast<int>(rng.below(4));
        std::vector<double> v(oracle::ipow(n, p));
        for (auto& x : v) x = 2 * rng.uniform() - 1;
        const RealTable f(p, n, v);
        const auto d = decompose(f);
        double parseval = 0;
        std::vector<double> sum(v.size(), 0.0);
        for (int k = 0; k <= p; ++k) {
            parseval += d.part_norm2(k);
            for (std::size_t x = 0; x < v.size(); ++x) sum[x] += d.parts[k].at(x);
            for (int l = k + 1; l <= p; ++l) worst = std::max(worst, std::abs(inner(d.parts[k], d.parts[l])));
        }
        worst = std::max(worst, std::abs(parseval - norm2(f)));
        for (std::size_t x = 0; x < v.size(); ++x) {
            worst = std::max(worst, std::abs(sum[x] - v[x]));
            worst = std::max(worst, std::abs(d.parts[0].at(x) - f.mean()));
        }
    }
    if (worst > 1e-9) o.pass = false;
    o.detail = " 500 tables, max identity error " + fmt(worst);
    return o;
}

Outcome criterion6() {
    Outcome o;
    int witnesses = 0;
    for (int m : {4, 5}) {
        const auto P = make_builtin(PredicateKind::Surj, m, 3);
        for (const auto& F : all_polymorphisms(P, 1)) {
            if (verdict_tag(classify_trivial(F, P)) == "certificate") continue;
            ++witnesses;
            const auto w = hall_witness(F);
            if (check_hall_witness(F, w)) o.pass = false;
            if (w.c != 0 || w.delta < w.lower_bound || w.delta > w.upper_bound) o.pass = false;
            if (w.lower_bound != 3LL * m || w.upper_bound != 3LL * m) o.pass = false;
            for (const auto& lw : w.letters) {
                if (lw.X.size() != 1) o.pass = false;
                std::vector<int> all(m);
                for (int i = 0; i < m; ++i) all[i] = i + 1;
                if (lw.I != all) o.pass = false;
            }
        }
    }
    int inequalities = 0;
    for (long long m = 3; m <= 8; ++m)
        for (long long n = 3; n <= m; ++n)
            for (long long c = 1; c <= n - 2; ++c) {
                const auto r = constant_rule_out(m, n, c);
                const bool first = (n - c) * (c + 1) * (m - c) > (m - c) * n;
                const bool second = (n - c) * (n - 1) * (m - n + 2) > (m - c) * n;
                if (!(r.first && r.second && first && second)) o.pass = false;
                ++inequalities;
            }
    if (witnesses == 0) o.pass = false;
    o.detail = " " + std::to_string(witnesses) + " witnesses checked, " + std::to_string(inequalities) +
               " (m,n,c) inequality cases";
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto P = make_builtin(PredicateKind::Perm, 3, 3);
    int families = 0, pairs = 0, equalities = 0;
    double deviation = 0;
    for (int p : {1, 2}) {
        for (const auto& F : all_polymorphisms(P, p)) {
            ++families;
            const auto M = mu_matrix(F);
            deviation = std::max({deviation, M.row_deviation, M.column_deviation});
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    if (i == j) continue;
                    for (Letter r = 1; r <= 3; ++r) {
                        const auto f = indicator(F, i, r), g = indicator(F, j, r);
                        ++pairs;
                        if (cross_independence(f, g) != 0.0) o.pass = false;
                        int kf, kg;
                        Letter sf, sg;
                        const bool common = is_point_indicator(f, kf, sf) && is_point_indicator(g, kg, sg) &&
                                            kf == kg && sf == sg;
                        const auto h = hoffman_check(f, g);
                        equalities += h.equality;
                        if (h.equality != common) o.pass = false;
                    }
                }
        }
    }
    if (deviation > 1e-12) o.pass = false;
    o.detail = " " + std::to_string(families) + " families, " + std::to_string(pairs) + " indicator pairs, " +
               std::to_string(equalities) + " equality flags, max bistochastic deviation " + fmt(deviation);
    return o;
}

Outcome criterion8() {
    Outcome o;
    const auto P = make_builtin(PredicateKind::Surj, 4, 3);
    const auto U = ProfileDistribution::uniform(P);
    std::ostringstream detail, violations;
    double previous = 2, previous_cert = 2;
    for (int p = 1; p <= 6; ++p) {
        const auto F = outline_counterexample(4, 3, p);
        const double delta = deficiency(F, U).delta;
        if (delta > previous) {
            o.pass = false;
            violations << " [delta rises from p=" << p - 1 << " to p=" << p << "]";
        }
        if (p == 2 && !(delta > 0)) {
            o.pass = false;
            violations << " [delta not positive at p=2]";
        }
        if (p == 6 && !(delta < 0.05)) {
            o.pass = false;
            violations << " [delta >= 0.05 at p=6]";
        }
        previous = delta;
        detail << " p=" << p << " delta=" << fmt(delta);
        if (p < 2) continue;
        double dict = 1;
        for (const auto& t : F.tables()) dict = std::min(dict, classify_function(t).dist_to_nearest_dictator);
        const auto near = nearest_trivial(F, P);
        const double cert = near.certificate ? near.certificate->max_distance : 1.0;
        if (dict < 0.4) {
            o.pass = false;
            violations << " [dictator distance < 0.4 at p=" << p << "]";
        }
        if (!(cert < previous_cert)) {
            o.pass = false;
            violations << " [certificate distance not decreasing at p=" << p << "]";
        }
        if (p == 6 && cert > 0.01) {
            o.pass = false;
            violations << " [certificate distance > 0.01 at p=6]";
        }
        previous_cert = cert;
        detail << " dict>=" << fmt(dict) << " cert=" << fmt(cert);
    }
    // p=1 reduces to f_i(x) = x, an exact polymorphism, so delta(1) = 0 < delta(2)
    o.detail = detail.str() + violations.str();
    return o;
}

Outcome criterion9() {
    Outcome o;
    const auto Q = make_builtin(PredicateKind::Perm, 3, 3);
    const auto perms = all_permutations(3);
    std::ostringstream detail;
    for (double rate : {0.01, 0.03}) {
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Dictator truth{1 + static_cast<int>(seed % 3), perms[seed % 6]};
            const auto F = FunctionFamily::uniform(3, TruthTable::dictator(3, 3, truth.coordinate, truth.perm));
            const auto near = nearest_trivial(perturb_family(F, rate, seed), Q);
            hits += near.dictator && near.dictator->dictator == truth;
        }
        if (hits < 18) o.pass = false;
        detail << " dictator@" << rate << ":" << hits << "/20";
    }
    const auto E = make_builtin(PredicateKind::Equiv, 3);
    const std::vector<std::vector<int>> voter_sets{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto& S = voter_sets[seed % voter_sets.size()];
        const auto F = build_equiv_family(3, 3, {{1, 2, 3}}, {{{1, 2, 3}, S}}, {});
        const auto near = nearest_trivial(perturb_family(F, 0.02, seed), E);
        hits += near.oligarchy && near.oligarchy->S == S;
    }
    if (hits < 18) o.pass = false;
    detail << " oligarchy@0.02:" << hits << "/20";
    o.detail = detail.str();
    return o;
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 65536> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    status = pclose(pipe);
    return out;
}

Outcome criterion10(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.pass = false;
        o.detail = " no CLI path given";
        return o;
    }
    std::vector<std::string> workloads;
    for (const auto& [m, n, p] : std::vector<std::array<int, 3>>{{3, 2, 1}, {3, 2, 2}, {4, 2, 1}, {3, 3, 1}, {4, 3, 1}})
        workloads.push_back("poly enumerate --classify --predicate surj --m " + std::to_string(m) + " --n " +
                            std::to_string(n) + " --p " + std::to_string(p));
    workloads.push_back("spectral adfs --random-pairs 200 --seed 4004");
    std::size_t bytes = 0;
    for (const auto& w : workloads) {
        int s1, s2, s3;
        const auto a = capture("'" + cli + "' " + w + " --threads 1", s1);
        const auto b = capture("'" + cli + "' " + w + " --threads 1", s2);
        const auto c = capture("'" + cli + "' " + w + " --threads 8", s3);
        if (s1 != 0 || s2 != 0 || s3 != 0 || a.empty() || a != b || a != c) {
            o.pass = false;
            o.detail += " differs: " + w;
        }
        bytes += a.size();
    }
    o.detail += " " + std::to_string(workloads.size()) + " workloads, " + std::to_string(bytes) +
                " bytes identical across runs and thread counts";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::function<Outcome()>> criteria{
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, [&] { return criterion10(cli); }};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string(" exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << ":" << o.detail << " ["
                  << fmt(seconds_since(t0)) << "s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
