#include "polyagg/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include "polyagg/errors.hpp"
#include "polyagg/parallel.hpp"
#include "polyagg/rng.hpp"

namespace polyagg {

ProfileDistribution::ProfileDistribution(Predicate P, std::vector<double> weights, bool uniform)
    : P_(std::move(P)), weights_(std::move(weights)), uniform_(uniform) {}

ProfileDistribution ProfileDistribution::uniform(Predicate P) {
    const auto size = P.size();
    std::vector<double> w(size, 1.0 / static_cast<double>(size));
    return ProfileDistribution(std::move(P), std::move(w), true);
}

ProfileDistribution ProfileDistribution::weighted(Predicate P, std::vector<double> weights) {
    if (weights.size() != P.size())
        throw DimensionError("distribution has " + std::to_string(weights.size()) + " weights for "
                             + std::to_string(P.size()) + " members");
    double sum = 0;
    for (double w : weights) {
        if (!std::isfinite(w) || !(w > 0)) throw PreconditionError("distribution weights must be positive (full support)");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw PreconditionError("distribution weights must sum to 1");
    const bool uniform = std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights[0]; });
    return ProfileDistribution(std::move(P), std::move(weights), uniform);
}

namespace {

std::vector<std::size_t> code_to_index(const Predicate& P) {
    std::vector<std::size_t> map(P.space_size(), P.size());
    const auto codes = P.codes();
    for (std::size_t k = 0; k < codes.size(); ++k) map[codes[k]] = k;
    return map;
}

}  // namespace

bool ProfileDistribution::letter_symmetric() const {
    const int n = P_.alphabet(), m = P_.arity();
    if (n > 6) throw DimensionError("letter symmetry check is limited to n <= 6");
    const auto index = code_to_index(P_);
    Word x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
    for (const auto& perm : all_permutations(n)) {
        for (std::size_t k = 0; k < P_.size(); ++k) {
            decode_into(P_.codes()[k], n, x);
            for (int i = 0; i < m; ++i) y[i] = perm[x[i] - 1];
            const auto j = index[encode(y, n)];
            if (j == P_.size() || std::abs(weights_[j] - weights_[k]) > 1e-12) return false;
        }
    }
    return true;
}

bool ProfileDistribution::object_symmetric() const {
    const auto& tag = P_.builtin();
    if (!tag || (tag->kind != PredicateKind::Equiv && tag->kind != PredicateKind::Lin)) return false;
    const int objects = tag->m;
    if (objects > 6) throw DimensionError("object symmetry check is limited to m <= 6");
    const int m = P_.arity();
    const auto pairs = pair_list(objects);
    const auto index = code_to_index(P_);
    Word x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
    for (const auto& sigma : all_permutations(objects)) {
        for (std::size_t k = 0; k < P_.size(); ++k) {
            decode_into(P_.codes()[k], 2, x);
            for (int c = 0; c < m; ++c) {
                const int a = sigma[pairs[c].first - 1], b = sigma[pairs[c].second - 1];
                Letter v = x[c];
                // Lin coordinates are oriented: swapping the order flips the bit.
                if (tag->kind == PredicateKind::Lin && a > b) v = 3 - v;
                y[pair_coordinate(a, b, objects)] = v;
            }
            const auto j = index[encode(y, 2)];
            if (j == P_.size() || std::abs(weights_[j] - weights_[k]) > 1e-12) return false;
        }
    }
    return true;
}

std::vector<double> ProfileDistribution::marginal(int coordinate) const {
    if (coordinate < 1 || coordinate > P_.arity()) throw DimensionError("coordinate out of range");
    std::vector<double> out(static_cast<std::size_t>(P_.alphabet()), 0.0);
    for (std::size_t k = 0; k < P_.size(); ++k) {
        const Word x = P_.member(k);
        out[x[coordinate - 1] - 1] += weights_[k];
    }
    // Renormalize so the marginal passes product-measure validation exactly.
    const double sum = std::accumulate(out.begin(), out.end(), 0.0);
    for (double& w : out) w /= sum;
    return out;
}

namespace {

struct RowData {
    int m, n;
    std::size_t rows;
    std::vector<std::uint8_t> digits;  // rows x m, 0-based letters
};

RowData row_data(const Predicate& P) {
    RowData d{P.arity(), P.alphabet(), P.size(), {}};
    d.digits.reserve(d.rows * static_cast<std::size_t>(d.m));
    Word x(static_cast<std::size_t>(d.m));
    for (auto code : P.codes()) {
        decode_into(code, d.n, x);
        for (Letter a : x) d.digits.push_back(static_cast<std::uint8_t>(a - 1));
    }
    return d;
}

std::vector<std::uint64_t> powers_of(std::uint64_t n, int count) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(count) + 1, 1);
    for (int s = 1; s <= count; ++s) out[s] = out[s - 1] * n;
    return out;
}

constexpr std::uint64_t kMemoCap = std::uint64_t{1} << 20;

struct ChunkResult {
    double mass = 0;
    std::uint64_t failures = 0;
    std::optional<std::vector<std::size_t>> first;
};

DeficiencyReport exact_deficiency(const FunctionFamily& F, const ProfileDistribution& D,
                                  const DeficiencyOptions& options) {
    const auto& P = D.predicate();
    const int p = F.p(), m = F.m(), n = F.n();
    const std::size_t S = P.size();
    const auto total = saturating_pow(S, p, options.budget);
    if (total > options.budget)
        throw BudgetExceeded("exact deficiency over |support|^p tuples (|support|=" + std::to_string(S)
                                 + ", p=" + std::to_string(p) + "); use the Monte Carlo method",
                             saturating_pow(S, p), options.budget);
    const auto rd = row_data(P);
    const auto coord_pow = powers_of(n, m);
    const bool uniform = D.is_uniform();
    auto w = [&](std::size_t k) { return uniform ? 1.0 : D.weight(k); };

    DeficiencyReport report;
    report.method = DeficiencyMethod::Exact;
    report.samples = total;

    if (p == 0) {
        std::uint64_t code = 0;
        for (int i = 0; i < m; ++i) code += static_cast<std::uint64_t>(F.table(i).at(0) - 1) * coord_pow[i];
        if (!P.contains_code(code)) {
            report.delta = 1;
            report.failures = 1;
            report.counterexample = std::vector<Word>{};
        }
        return report;
    }

    const auto row_pow = powers_of(n, p);
    const std::uint64_t last_stride = row_pow[p - 1];
    const int outer = p - 1;  // rows before the last
    const std::size_t chunks = outer >= 1 ? S : 1;
    const std::uint64_t per_chunk = outer >= 2 ? saturating_pow(S, outer - 1) : 1;
    const std::uint64_t key_space = saturating_pow(n, static_cast<std::uint64_t>(m) * n, kMemoCap);
    const bool use_memo = key_space <= kMemoCap && per_chunk >= 4096;
    const auto key_pow = use_memo ? powers_of(n, m * n) : std::vector<std::uint64_t>{};

    std::vector<ChunkResult> results(chunks);
    parallel_for(chunks, options.threads, [&](std::size_t chunk) {
        ChunkResult& res = results[chunk];
        std::vector<double> memo_mass;
        std::vector<std::uint32_t> memo_fail;
        std::vector<std::int32_t> memo_first;
        if (use_memo) {
            memo_mass.assign(key_space, -1.0);
            memo_fail.assign(key_space, 0);
            memo_first.assign(key_space, -1);
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(outer), 0);
        if (outer >= 1) idx[0] = chunk;
        std::vector<std::uint64_t> base(static_cast<std::size_t>(m));
        std::vector<std::uint8_t> o(static_cast<std::size_t>(m) * n);

        auto evaluate_last = [&](double& mass, std::uint32_t& fails, std::int32_t& first) {
            mass = 0;
            fails = 0;
            first = -1;
            for (std::size_t y = 0; y < S; ++y) {
                const std::uint8_t* d = &rd.digits[y * m];
                std::uint64_t code = 0;
                for (int i = 0; i < m; ++i) code += o[i * n + d[i]] * coord_pow[i];
                if (!P.contains_code(code)) {
                    mass += w(y);
                    ++fails;
                    if (first < 0) first = static_cast<std::int32_t>(y);
                }
            }
        };

        for (;;) {
            double outer_w = 1;
            std::fill(base.begin(), base.end(), 0);
            for (int s = 0; s < outer; ++s) {
                const std::uint8_t* d = &rd.digits[idx[s] * m];
                for (int i = 0; i < m; ++i) base[i] += d[i] * row_pow[s];
                outer_w *= w(idx[s]);
            }
            std::uint64_t key = 0;
            for (int i = 0; i < m; ++i)
                for (int a = 0; a < n; ++a) {
                    o[i * n + a] = static_cast<std::uint8_t>(F.table(i).at(base[i] + a * last_stride) - 1);
                    if (use_memo) key += o[i * n + a] * key_pow[i * n + a];
                }
            double mass;
            std::uint32_t fails;
            std::int32_t first;
            if (use_memo) {
                if (memo_mass[key] < 0) evaluate_last(memo_mass[key], memo_fail[key], memo_first[key]);
                mass = memo_mass[key];
                fails = memo_fail[key];
                first = memo_first[key];
            } else {
                evaluate_last(mass, fails, first);
            }
            if (fails > 0) {
                res.mass += outer_w * mass;
                res.failures += fails;
                if (!res.first) {
                    auto t = idx;
                    t.push_back(static_cast<std::size_t>(first));
                    res.first = std::move(t);
                }
            }
            int s = outer - 1;
            while (s >= 1 && ++idx[s] == S) {
                idx[s] = 0;
                --s;
            }
            if (s < 1) break;
        }
    });

    double mass = 0;
    for (const auto& r : results) {
        mass += r.mass;
        report.failures += r.failures;
        if (!report.counterexample && r.first) {
            std::vector<Word> rows;
            for (auto k : *r.first) rows.push_back(P.member(k));
            report.counterexample = std::move(rows);
        }
    }
    report.delta = uniform ? mass / std::pow(static_cast<double>(S), p) : mass;
    report.delta = std::clamp(report.delta, 0.0, 1.0);
    return report;
}

constexpr std::size_t kMonteCarloChunks = 64;

DeficiencyReport monte_carlo_deficiency(const FunctionFamily& F, const ProfileDistribution& D,
                                        const DeficiencyOptions& options) {
    if (!options.seed) throw PreconditionError("Monte Carlo deficiency needs an explicit seed");
    if (options.samples == 0) throw PreconditionError("Monte Carlo deficiency needs at least one sample");
    const auto& P = D.predicate();
    const int p = F.p(), m = F.m(), n = F.n();
    const std::size_t S = P.size();
    const auto rd = row_data(P);
    const auto coord_pow = powers_of(n, m);
    const auto row_pow = powers_of(n, p);
    std::vector<double> cumulative(S);
    std::partial_sum(D.weights().begin(), D.weights().end(), cumulative.begin());
    const bool uniform = D.is_uniform();

    struct Chunk {
        std::uint64_t failures = 0;
        std::optional<std::vector<std::size_t>> first;
    };
    std::vector<Chunk> chunks(kMonteCarloChunks);
    parallel_for(kMonteCarloChunks, options.threads, [&](std::size_t c) {
        const std::uint64_t draws =
            options.samples / kMonteCarloChunks + (c < options.samples % kMonteCarloChunks ? 1 : 0);
        Rng rng(*options.seed, c);
        std::vector<std::size_t> rows(static_cast<std::size_t>(p));
        std::vector<std::uint64_t> cell(static_cast<std::size_t>(m));
        for (std::uint64_t t = 0; t < draws; ++t) {
            std::fill(cell.begin(), cell.end(), 0);
            for (int s = 0; s < p; ++s) {
                std::size_t k;
                if (uniform) {
                    k = static_cast<std::size_t>(rng.below(S));
                } else {
                    const double u = rng.uniform() * cumulative.back();
                    k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u)
                                                 - cumulative.begin());
                    k = std::min(k, S - 1);
                }
                rows[s] = k;
                const std::uint8_t* d = &rd.digits[k * m];
                for (int i = 0; i < m; ++i) cell[i] += d[i] * row_pow[s];
            }
            std::uint64_t code = 0;
            for (int i = 0; i < m; ++i) code += static_cast<std::uint64_t>(F.table(i).at(cell[i]) - 1) * coord_pow[i];
            if (!P.contains_code(code)) {
                ++chunks[c].failures;
                if (!chunks[c].first) chunks[c].first = rows;
            }
        }
    });

    DeficiencyReport report;
    report.method = DeficiencyMethod::MonteCarlo;
    report.seed = *options.seed;
    report.samples = options.samples;
    for (const auto& c : chunks) {
        report.failures += c.failures;
        if (!report.counterexample && c.first) {
            std::vector<Word> rows;
            for (auto k : *c.first) rows.push_back(P.member(k));
            report.counterexample = std::move(rows);
        }
    }
    const double N = static_cast<double>(options.samples);
    report.delta = static_cast<double>(report.failures) / N;
    report.half_width = kZ99 * std::sqrt(report.delta * (1 - report.delta) / N);
    return report;
}

}  // namespace

DeficiencyReport deficiency(const FunctionFamily& F, const ProfileDistribution& D, const DeficiencyOptions& options) {
    const auto& P = D.predicate();
    if (F.m() != P.arity()) throw DimensionError("family size differs from predicate arity");
    if (F.n() != P.alphabet()) throw DimensionError("family alphabet differs from predicate alphabet");
    return options.method == DeficiencyMethod::Exact ? exact_deficiency(F, D, options)
                                                     : monte_carlo_deficiency(F, D, options);
}

namespace {

std::vector<CellMeasure> coordinate_measures(const FunctionFamily& F, const ProfileDistribution* D) {
    std::vector<CellMeasure> out;
    for (int i = 1; i <= F.m(); ++i) {
        if (D) {
            const auto marginal = D->marginal(i);
            out.push_back(CellMeasure::product(F.p(), marginal));
        } else {
            out.push_back(CellMeasure::uniform(F.p(), F.n()));
        }
    }
    return out;
}

// mass[c] / total of the cells where f takes value c+1.
std::vector<double> value_masses(const TruthTable& f, const CellMeasure& measure) {
    std::vector<double> mass(static_cast<std::size_t>(f.n_out()), 0.0);
    for (std::uint64_t c = 0; c < f.size(); ++c) mass[f.at(c) - 1] += measure.weight(c);
    for (double& v : mass) v /= measure.total();
    return mass;
}

std::optional<DictatorFit> scan_dictators(const FunctionFamily& F, const std::vector<CellMeasure>& measures) {
    const int p = F.p(), n = F.n(), m = F.m();
    if (p < 1 || n > kMaxDictatorAlphabet) return std::nullopt;
    std::vector<std::vector<std::vector<std::vector<double>>>> profiles;
    for (int i = 0; i < m; ++i) {
        auto prof = coordinate_profile(F.table(i), measures[i]);
        for (auto& per_k : prof)
            for (auto& row : per_k)
                for (double& v : row) v /= measures[i].total();
        profiles.push_back(std::move(prof));
    }
    const auto perms = all_permutations(n);
    DictatorFit best;
    bool found = false;
    std::vector<double> dist(static_cast<std::size_t>(m));
    for (int k = 0; k < p; ++k)
        for (const auto& perm : perms) {
            double worst = 0;
            for (int i = 0; i < m; ++i) {
                double agree = 0;
                for (int a = 0; a < n; ++a) agree += profiles[i][k][a][perm[a] - 1];
                dist[i] = std::max(0.0, 1 - agree);
                worst = std::max(worst, dist[i]);
            }
            if (!found || worst < best.max_distance - 1e-15) {
                found = true;
                best = DictatorFit{Dictator{k + 1, perm}, dist, worst};
            }
        }
    return best;
}

std::optional<CertificateFit> scan_certificates(const FunctionFamily& F, const Predicate& P,
                                                const std::vector<CellMeasure>& measures) {
    std::vector<PartialAssignment> certs;
    try {
        certs = minimal_certificates(P);
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
    if (certs.empty()) return std::nullopt;
    const int m = F.m();
    std::vector<std::vector<double>> dist_const(static_cast<std::size_t>(m));
    std::vector<Letter> nearest(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto mass = value_masses(F.table(i), measures[i]);
        for (double v : mass) dist_const[i].push_back(std::max(0.0, 1 - v));
        nearest[i] = static_cast<Letter>(std::min_element(dist_const[i].begin(), dist_const[i].end())
                                         - dist_const[i].begin()) + 1;
    }
    CertificateFit best;
    bool found = false;
    for (const auto& rho : certs) {
        std::vector<double> dist(static_cast<std::size_t>(m), 0.0);
        double worst = 0;
        for (int i = 1; i <= m; ++i)
            if (rho.assigned(i)) {
                dist[i - 1] = dist_const[i - 1][rho.at(i) - 1];
                worst = std::max(worst, dist[i - 1]);
            }
        if (!found || worst < best.max_distance - 1e-15) {
            found = true;
            std::vector<Letter> completion(static_cast<std::size_t>(m));
            for (int i = 1; i <= m; ++i) completion[i - 1] = rho.assigned(i) ? rho.at(i) : nearest[i - 1];
            best = CertificateFit{rho, std::move(completion), std::move(dist), worst};
        }
    }
    return best;
}

std::optional<OligarchyFit> scan_oligarchies(const FunctionFamily& F, const Predicate& P,
                                             const ProfileDistribution* D) {
    const auto& tag = P.builtin();
    if (!tag || tag->kind != PredicateKind::Equiv || F.n() != 2) return std::nullopt;
    const int p = F.p(), m = F.m();
    if (p > 20) return std::nullopt;
    const std::uint64_t subsets = std::uint64_t{1} << p;

    // Subsets in (|S|, lexicographic S) order.
    std::vector<std::uint64_t> order(subsets);
    std::iota(order.begin(), order.end(), 0);
    auto as_list = [&](std::uint64_t mask) {
        std::vector<int> S;
        for (int s = 0; s < p; ++s)
            if ((mask >> s) & 1u) S.push_back(s + 1);
        return S;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        const int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb) return ca < cb;
        return as_list(a) < as_list(b);
    });

    // Binary cells are subsets: bit s set iff x_{s+1} = 1.
    std::vector<std::vector<double>> dist(subsets, std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        const double q = D ? D->marginal(i + 1)[1] : 0.5;
        const auto measure = D ? CellMeasure::product(p, std::vector<double>{1 - q, q}) : CellMeasure::uniform(p, 2);
        const auto& f = F.table(i);
        std::vector<double> up(subsets, 0.0);
        double ones = 0;
        for (std::uint64_t c = 0; c < subsets; ++c)
            if (f.at(c) == 2) {
                up[c] = measure.weight(c) / measure.total();
                ones += up[c];
            }
        for (int s = 0; s < p; ++s)
            for (std::uint64_t c = 0; c < subsets; ++c)
                if (!((c >> s) & 1u)) up[c] += up[c | (std::uint64_t{1} << s)];
        for (std::uint64_t S = 0; S < subsets; ++S) {
            const double conj = std::pow(q, std::popcount(S));
            dist[S][i] = std::max(0.0, ones + conj - 2 * up[S]);
        }
    }
    OligarchyFit best;
    bool found = false;
    for (auto S : order) {
        const double worst = *std::max_element(dist[S].begin(), dist[S].end());
        if (!found || worst < best.max_distance - 1e-15) {
            found = true;
            best = OligarchyFit{as_list(S), dist[S], worst};
        }
    }
    return best;
}

}  // namespace

NearestReport nearest_trivial(const FunctionFamily& F, const Predicate& P, const ProfileDistribution* D) {
    if (F.m() != P.arity() || F.n() != P.alphabet()) throw DimensionError("family does not match predicate");
    if (D && !(D->predicate() == P)) throw DimensionError("distribution is over a different predicate");
    const auto measures = coordinate_measures(F, D);
    NearestReport out;
    out.dictator = scan_dictators(F, measures);
    out.certificate = scan_certificates(F, P, measures);
    out.oligarchy = scan_oligarchies(F, P, D);
    out.verdict = "none";
    auto consider = [&](const char* name, double d) {
        if (out.verdict == "none" || d < out.verdict_distance - 1e-15) {
            out.verdict = name;
            out.verdict_distance = d;
        }
    };
    if (out.dictator) consider("dictatorial", out.dictator->max_distance);
    if (out.certificate) consider("certificate", out.certificate->max_distance);
    if (out.oligarchy) consider("oligarchy", out.oligarchy->max_distance);
    return out;
}

QuantReport quantitative_report(const FunctionFamily& F, const ProfileDistribution& D,
                                const DeficiencyOptions& options) {
    const auto& P = D.predicate();
    QuantReport q;
    q.deficiency = deficiency(F, D, options);
    for (int i = 0; i < F.m(); ++i) {
        const auto mass = value_masses(F.table(i), CellMeasure::uniform(F.p(), F.n()));
        q.margins.push_back(std::max(0.0, 1 - *std::max_element(mass.begin(), mass.end())));
    }
    const auto& tag = P.builtin();
    if (tag && tag->kind == PredicateKind::Equiv) {
        for (int i = 0; i < F.m(); ++i) {
            const auto measure = CellMeasure::product(F.p(), D.marginal(i + 1));
            q.zero_mass.push_back(value_masses(F.table(i), measure)[0]);
        }
    }
    q.nearest = nearest_trivial(F, P, &D);

    auto& h = q.hypotheses;
    h.full_support = true;
    h.letter_symmetric = P.alphabet() <= 6 && D.letter_symmetric();
    h.object_symmetric = D.object_symmetric();
    h.flexible = analyze_predicate(P).flexible;
    const bool surj = tag && (tag->kind == PredicateKind::Surj || tag->kind == PredicateKind::Perm);
    h.surj_main = surj && h.letter_symmetric;
    h.flexible_reduction = h.flexible || P.alphabet() == 2;
    h.perm_spectral = surj && P.arity() == P.alphabet() && P.alphabet() >= 3 && D.is_uniform();
    h.equiv_main = tag && tag->kind == PredicateKind::Equiv && tag->m >= 3 && h.object_symmetric;
    return q;
}

FunctionFamily outline_counterexample(int m, int n, int p) {
    if (!(m >= n && n >= 2)) throw DimensionError("outline family needs m >= n >= 2");
    if (p < 1) throw DimensionError("outline family needs p >= 1");
    std::vector<TruthTable> tables;
    for (int i = 1; i <= m; ++i) {
        const Letter fallback = std::min(i, n);
        tables.push_back(TruthTable::tabulate(p, n, n, [&](std::span<const Letter> x) {
            return std::all_of(x.begin(), x.end(), [&](Letter a) { return a == x[0]; }) ? x[0] : fallback;
        }));
    }
    return FunctionFamily(std::move(tables));
}

FunctionFamily perturb_family(const FunctionFamily& F, double rate, std::uint64_t seed) {
    if (!(rate >= 0 && rate <= 1)) throw DimensionError("perturbation rate must be in [0, 1]");
    Rng rng(seed);
    std::vector<TruthTable> tables;
    for (const auto& t : F.tables()) {
        std::vector<std::uint8_t> values(t.values().begin(), t.values().end());
        for (auto& v : values) {
            const double u = rng.uniform();
            const auto letter = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(t.n_out())) + 1);
            if (u < rate) v = letter;
        }
        tables.emplace_back(t.arity(), t.n_in(), t.n_out(), std::move(values));
    }
    return FunctionFamily(std::move(tables));
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "p,delta,half_width,dictator_distance,certificate_distance\n";
    for (const auto& r : rows)
        out << r.p << ',' << fmt(r.delta) << ',' << fmt(r.half_width) << ',' << fmt(r.dictator_distance) << ','
            << fmt(r.certificate_distance) << '\n';
}

}  // namespace polyagg
