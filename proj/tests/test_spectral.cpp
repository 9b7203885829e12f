#include <doctest.h>

#include "oracles.hpp"
#include "polyagg/approx.hpp"
#include "polyagg/errors.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/spectral.hpp"

using namespace polyagg;
using doctest::Approx;

namespace {

BooleanTable point_indicator(int p, int n, int k, Letter s) {
    std::vector<std::uint8_t> bits(oracle::ipow(n, p));
    for (std::uint64_t c = 0; c < bits.size(); ++c) bits[c] = oracle::digits(c, p, n)[k - 1] == s;
    return BooleanTable(p, n, bits);
}

RealTable random_real(Rng& rng, int p, int n) {
    std::vector<double> v(oracle::ipow(n, p));
    for (auto& x : v) x = 2 * rng.uniform() - 1;
    return RealTable(p, n, v);
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("decomposition examples") {
        const auto c = decompose(RealTable(2, 3, std::vector<double>(9, 0.7)));
        CHECK(c.mean == Approx(0.7));
        for (double v : c.parts[0].values()) CHECK(v == Approx(0.7));
        CHECK(c.part_norm2(1) == Approx(0.0));
        CHECK(c.part_norm2(2) == Approx(0.0));

        const auto d = decompose(RealTable::from_boolean(point_indicator(1, 3, 1, 1)));
        CHECK(d.parts[0].at(0) == Approx(1.0 / 3));
        CHECK(d.part_norm2(1) == Approx(2.0 / 9));

        std::vector<std::uint8_t> both(9, 0);
        both[0] = 1;  // x = (1,1)
        const auto e = decompose(RealTable::from_boolean(BooleanTable(2, 3, both)));
        CHECK(e.part_norm2(2) == Approx(4.0 / 81));
    }

    TEST_CASE("decomposition matches the Mobius formula") {
        Rng rng(5);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const int p = 1 + static_cast<int>(rng.below(3));
            const auto f = random_real(rng, p, n);
            const auto ref = oracle::mobius_parts(std::vector<double>(f.values().begin(), f.values().end()), p, n);
            const auto d = decompose(f);
            for (int k = 0; k <= p; ++k)
                for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(d.parts[k].at(x) == Approx(ref[k][x]).epsilon(1e-12));
        }
    }

    TEST_CASE("decomposition identities on 500 seeded tables") {
        Rng rng(500);
        for (int trial = 0; trial < 500; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(4));
            const int p = 1 + static_cast<int>(rng.below(4));
            const auto f = random_real(rng, p, n);
            const auto d = decompose(f);
            double parts = 0;
            std::vector<double> sum(f.size(), 0.0);
            for (int k = 0; k <= p; ++k) {
                parts += d.part_norm2(k);
                for (std::uint64_t x = 0; x < f.size(); ++x) sum[x] += d.parts[k].at(x);
                for (int l = k + 1; l <= p; ++l) CHECK(std::abs(inner(d.parts[k], d.parts[l])) <= 1e-9);
            }
            CHECK(std::abs(parts - norm2(f)) <= 1e-9);
            for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(std::abs(sum[x] - f.at(x)) <= 1e-9);
            CHECK(std::abs(d.parts[0].at(0) - f.mean()) <= 1e-9);
        }
    }

    TEST_CASE("distinct-pair expectation examples") {
        const auto a = point_indicator(1, 3, 1, 1);
        const auto b = point_indicator(1, 3, 1, 2);
        CHECK(pair_expectation_direct(a, a) == 0.0);
        CHECK(pair_expectation_direct(a, b) == Approx(1.0 / 6));
        const BooleanTable ones(2, 3, std::vector<std::uint8_t>(9, 1));
        CHECK(pair_expectation_direct(ones, ones) == Approx(1.0));
        const auto da = decompose(RealTable::from_boolean(a));
        CHECK(std::abs(pair_expectation_spectral(da, da)) <= 1e-15);
        const auto d1 = decompose(RealTable::from_boolean(ones));
        CHECK(pair_expectation_spectral(d1, d1) == Approx(1.0));
    }

    TEST_CASE("direct and spectral forms agree with the enumeration oracle") {
        Rng rng(200);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + static_cast<int>(rng.below(3));
            const int p = 1 + static_cast<int>(rng.below(3));
            const auto fb = oracle::random_bits(rng, oracle::ipow(n, p));
            const auto gb = oracle::random_bits(rng, oracle::ipow(n, p));
            const auto f = oracle::to_boolean(fb, p, n), g = oracle::to_boolean(gb, p, n);
            const double truth = oracle::pair_expectation(fb, gb, p, n);
            CHECK(std::abs(pair_expectation_direct(f, g) - truth) <= 1e-12);
            // force the (J - I) path
            CHECK(std::abs(pair_expectation_direct(f, g, 1) - truth) <= 1e-12);
            CHECK(std::abs(pair_expectation_spectral(decompose(RealTable::from_boolean(f)),
                                                     decompose(RealTable::from_boolean(g))) -
                           truth) <= 1e-9);
        }
    }

    TEST_CASE("cross-independence") {
        const auto f = point_indicator(2, 3, 2, 3);
        CHECK(cross_independence(f, f) == 0.0);
        std::vector<std::uint8_t> either(9);
        for (std::uint64_t c = 0; c < 9; ++c) {
            auto x = oracle::digits(c, 2, 3);
            either[c] = x[0] == 1 || x[1] == 1;
        }
        const BooleanTable e(2, 3, either);
        CHECK(cross_independence(e, e) > 0);
        CHECK(cross_independence(e, e) ==
              Approx(oracle::pair_expectation(std::vector<int>(either.begin(), either.end()),
                                              std::vector<int>(either.begin(), either.end()), 2, 3)));
        const BooleanTable zero(2, 3, std::vector<std::uint8_t>(9, 0));
        CHECK(cross_independence(zero, e) == 0.0);
    }

    TEST_CASE("Hoffman report") {
        const auto f = point_indicator(1, 3, 1, 2);
        const auto h = hoffman_check(f, f);
        CHECK(h.cross_independent);
        CHECK(h.tight);
        CHECK(h.equality);
        CHECK(h.exact_lhs == Approx(4.0 / 9));
        CHECK(h.exact_rhs == Approx(4.0 / 9));

        const BooleanTable zero(1, 3, std::vector<std::uint8_t>(3, 0));
        const auto z = hoffman_check(zero, zero);
        CHECK(z.exact_lhs == 0.0);
        CHECK(z.exact_rhs == 1.0);
        CHECK_FALSE(z.equality);
        CHECK_FALSE(z.degenerate);

        // mu = 0 against mu = 1: tight but degenerate
        const BooleanTable one(1, 3, std::vector<std::uint8_t>(3, 1));
        const auto d = hoffman_check(zero, one);
        CHECK(d.tight);
        CHECK(d.degenerate);
        CHECK_FALSE(d.equality);
    }

    TEST_CASE("Perm_4 polymorphism indicators are cross-independent and obey the bound") {
        const auto P = make_builtin(PredicateKind::Perm, 4, 4);
        int pairs = 0;
        for (const auto& F : all_polymorphisms(P, 1)) {
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) {
                    if (i == j) continue;
                    for (Letter r = 1; r <= 4; ++r) {
                        const auto h = hoffman_check(indicator(F, i, r), indicator(F, j, r));
                        CHECK(h.cross_independent);
                        CHECK(h.exact_holds);
                        CHECK(h.exact_slack >= -1e-12);
                        ++pairs;
                    }
                }
        }
        CHECK(pairs > 0);
    }

    TEST_CASE("indicator recovery") {
        const auto f = point_indicator(2, 3, 2, 3);
        const auto r = recover_dictator_indicator(f);
        CHECK(r.best.k == 2);
        CHECK(r.best.s == 3);
        CHECK_FALSE(r.best.complement);
        CHECK(r.best.distance == 0.0);

        auto bits = std::vector<std::uint8_t>(f.bits().begin(), f.bits().end());
        bits[4] ^= 1;
        const auto flipped = recover_dictator_indicator(BooleanTable(2, 3, bits));
        CHECK(flipped.best.k == 2);
        CHECK(flipped.best.s == 3);
        CHECK(flipped.best.distance == Approx(1.0 / 9));

        // at least two of three coordinates equal to 1, on [3]^3
        std::vector<std::uint8_t> maj(27);
        for (std::uint64_t c = 0; c < 27; ++c) {
            const auto x = oracle::digits(c, 3, 3);
            maj[c] = (x[0] == 1) + (x[1] == 1) + (x[2] == 1) >= 2;
        }
        const auto m = recover_dictator_indicator(BooleanTable(3, 3, maj));
        // ind{x_1 = 1} errs on 4 + 2 cells; the constant 0 errs on the 7 ones
        CHECK(m.best.k == 1);
        CHECK(m.best.s == 1);
        CHECK(m.best.distance == Approx(6.0 / 27));
        CHECK(m.constant_distance == Approx(7.0 / 27));
        CHECK_FALSE(m.constant_better);
    }

    TEST_CASE("indicator recovery agrees with an exhaustive candidate scan") {
        Rng rng(77);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 2 + static_cast<int>(rng.below(3));
            const int p = 1 + static_cast<int>(rng.below(3));
            auto bits = oracle::random_bits(rng, oracle::ipow(n, p));
            const auto f = oracle::to_boolean(bits, p, n);
            double best = 2;
            for (int k = 1; k <= p; ++k)
                for (int s = 1; s <= n; ++s)
                    for (int comp = 0; comp < 2; ++comp) {
                        int wrong = 0;
                        for (std::uint64_t c = 0; c < bits.size(); ++c) {
                            const int v = (oracle::digits(c, p, n)[k - 1] == s) ^ comp;
                            wrong += v != bits[c];
                        }
                        best = std::min(best, static_cast<double>(wrong) / bits.size());
                    }
            const auto r = recover_dictator_indicator(f);
            CHECK(r.best.distance == Approx(best).epsilon(1e-12));
            double constant = 2;
            for (int v = 0; v < 2; ++v) {
                int wrong = 0;
                for (int b : bits) wrong += b != v;
                constant = std::min(constant, static_cast<double>(wrong) / bits.size());
            }
            CHECK(r.constant_distance == Approx(constant).epsilon(1e-12));
            CHECK(r.constant_better == (constant < best));
        }
    }

    TEST_CASE("mu matrix") {
        const std::vector<Letter> pi{2, 3, 1};
        const auto D = FunctionFamily::uniform(3, TruthTable::dictator(2, 3, 1, pi));
        const auto M = mu_matrix(D);
        for (const auto& row : M.entries)
            for (double v : row) CHECK(v == Approx(1.0 / 3));
        CHECK(M.row_deviation <= 1e-12);
        CHECK(M.column_deviation <= 1e-12);

        const FunctionFamily C({TruthTable::constant(1, 3, 2), TruthTable::constant(1, 3, 3),
                                TruthTable::constant(1, 3, 1)});
        const auto N = mu_matrix(C);
        for (int i = 0; i < 3; ++i)
            for (int r = 0; r < 3; ++r) CHECK(N.entries[i][r] == (r + 1 == C.table(i).at(0) ? 1.0 : 0.0));

        const auto noisy = perturb_family(FunctionFamily::uniform(3, TruthTable::dictator(3, 3, 1, pi)), 0.05, 9);
        double flip = 0;
        for (int i = 0; i < 3; ++i) {
            std::uint64_t changed = 0;
            const auto& a = noisy.table(i);
            const auto b = TruthTable::dictator(3, 3, 1, pi);
            for (std::uint64_t c = 0; c < a.size(); ++c) changed += a.at(c) != b.at(c);
            flip = std::max(flip, static_cast<double>(changed) / a.size());
        }
        CHECK(mu_matrix(noisy).column_deviation <= 3 * flip + 1e-12);
    }

    TEST_CASE("mu profile") {
        const std::vector<Letter> pi{3, 1, 2};
        const auto D = FunctionFamily::uniform(3, TruthTable::dictator(3, 3, 2, pi));
        const auto prof = mu_profile(D, 0.0);
        CHECK(prof.dictator_consistent);
        REQUIRE(prof.dictator.has_value());
        CHECK(prof.dictator->coordinate == 2);
        CHECK(prof.dictator->perm == pi);
        for (const auto& l : prof.letters) CHECK(l.tag == MuCase::Spread);

        const FunctionFamily C({TruthTable::constant(2, 3, 2), TruthTable::constant(2, 3, 3),
                                TruthTable::constant(2, 3, 1)});
        const auto cp = mu_profile(C, 0.0);
        CHECK(cp.certificate_like);
        for (const auto& l : cp.letters) {
            CHECK(l.tag == MuCase::Concentrated);
            CHECK(C.table(l.concentrated_on - 1).at(0) == l.r);
        }

        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto noisy = perturb_family(D, 0.01, seed);
            const auto np = mu_profile(noisy, 0.01);
            REQUIRE(np.dictator.has_value());
            CHECK(*np.dictator == Dictator{2, pi});
        }
        CHECK_THROWS_AS(mu_profile(FunctionFamily::uniform(2, TruthTable::constant(1, 2, 1)), 0.0), PreconditionError);
    }
}
