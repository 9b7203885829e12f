#include "polyagg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "polyagg/errors.hpp"

namespace polyagg {

RealTable::RealTable(int p, int n, std::vector<double> values) : p_(p), n_(n), values_(std::move(values)) {
    if (values_.size() != TruthTable::checked_cells(p, n)) throw DimensionError("real table size mismatch");
    for (double v : values_)
        if (!std::isfinite(v)) throw DimensionError("real table entries must be finite");
}

RealTable RealTable::zeros(int p, int n) {
    return RealTable(p, n, std::vector<double>(TruthTable::checked_cells(p, n), 0.0));
}

RealTable RealTable::from_boolean(const BooleanTable& f) {
    std::vector<double> values(f.bits().begin(), f.bits().end());
    return RealTable(f.arity(), f.n(), std::move(values));
}

double RealTable::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double inner(const RealTable& g, const RealTable& h) {
    if (g.arity() != h.arity() || g.n() != h.n()) throw DimensionError("real tables are not compatible");
    double s = 0;
    for (std::size_t c = 0; c < g.size(); ++c) s += g.at(c) * h.at(c);
    return s / static_cast<double>(g.size());
}

RealTable average_out(const RealTable& g, int t) {
    if (t < 0 || t >= g.arity()) throw DimensionError("coordinate out of range");
    const std::uint64_t n = static_cast<std::uint64_t>(g.n());
    const std::uint64_t stride = saturating_pow(n, static_cast<std::uint64_t>(t));
    const std::uint64_t block = stride * n;
    auto out = g;
    for (std::uint64_t base = 0; base < g.size(); base += block)
        for (std::uint64_t low = 0; low < stride; ++low) {
            double s = 0;
            for (std::uint64_t b = 0; b < n; ++b) s += g.at(base + low + b * stride);
            s /= static_cast<double>(n);
            for (std::uint64_t b = 0; b < n; ++b) out.at(base + low + b * stride) = s;
        }
    return out;
}

DegreeDecomposition decompose(const RealTable& f) {
    if (f.n() < 2) throw DimensionError("degree decomposition needs n >= 2");
    const int p = f.arity();
    std::vector<RealTable> parts;
    parts.push_back(f);
    for (int t = 0; t < p; ++t) {
        std::vector<RealTable> next(parts.size() + 1, RealTable::zeros(p, f.n()));
        for (std::size_t d = 0; d < parts.size(); ++d) {
            const auto avg = average_out(parts[d], t);
            for (std::size_t c = 0; c < f.size(); ++c) {
                next[d].at(c) += avg.at(c);
                next[d + 1].at(c) += parts[d].at(c) - avg.at(c);
            }
        }
        parts = std::move(next);
    }
    DegreeDecomposition out;
    out.p = p;
    out.n = f.n();
    out.mean = f.mean();
    out.squared_norm = norm2(f);
    out.parts = std::move(parts);
    return out;
}

namespace {

void check_pair(const BooleanTable& f, const BooleanTable& g) {
    if (f.arity() != g.arity() || f.n() != g.n()) throw DimensionError("boolean tables are not compatible");
    if (f.n() < 2) throw DimensionError("distinct-pair expectation needs n >= 2");
}

}  // namespace

double pair_expectation_direct(const BooleanTable& f, const BooleanTable& g, std::uint64_t budget) {
    check_pair(f, g);
    const int p = f.arity();
    const std::uint64_t n = static_cast<std::uint64_t>(f.n());
    const std::uint64_t per = n * (n - 1);
    const double denom = std::pow(static_cast<double>(per), p);
    const auto pairs = saturating_pow(per, static_cast<std::uint64_t>(p), budget);

    if (pairs <= budget) {
        std::vector<std::uint64_t> pow_n(static_cast<std::size_t>(p) + 1, 1);
        for (int t = 1; t <= p; ++t) pow_n[t] = pow_n[t - 1] * n;
        std::uint64_t hits = 0;
        std::vector<std::uint64_t> digit(static_cast<std::size_t>(p), 0);
        for (std::uint64_t k = 0; k < pairs; ++k) {
            std::uint64_t cx = 0, cy = 0;
            for (int t = 0; t < p; ++t) {
                const std::uint64_t a = digit[t] / (n - 1);
                std::uint64_t b = digit[t] % (n - 1);
                if (b >= a) ++b;
                cx += a * pow_n[t];
                cy += b * pow_n[t];
            }
            hits += static_cast<std::uint64_t>(f.at(cx) & g.at(cy));
            for (int t = 0; t < p && ++digit[t] == per; ++t) digit[t] = 0;
        }
        return static_cast<double>(hits) / denom;
    }

    // (J - I) on each coordinate: h(x) = sum over y with y_t != x_t for all t of g(y).
    auto h = RealTable::from_boolean(g);
    for (int t = 0; t < p; ++t) {
        const auto avg = average_out(h, t);
        for (std::size_t c = 0; c < h.size(); ++c) h.at(c) = static_cast<double>(n) * avg.at(c) - h.at(c);
    }
    double s = 0;
    for (std::size_t c = 0; c < h.size(); ++c)
        if (f.at(c)) s += h.at(c);
    return s / denom;
}

double pair_expectation_spectral(const DegreeDecomposition& df, const DegreeDecomposition& dg) {
    if (df.p != dg.p || df.n != dg.n) throw DimensionError("decompositions are not compatible");
    const double ratio = -1.0 / static_cast<double>(df.n - 1);
    double s = 0, weight = 1;
    for (int d = 0; d <= df.p; ++d) {
        s += weight * inner(df.parts[d], dg.parts[d]);
        weight *= ratio;
    }
    return s;
}

double cross_independence(const BooleanTable& f, const BooleanTable& g, std::uint64_t budget) {
    return pair_expectation_direct(f, g, budget);
}

HoffmanReport hoffman_check(const BooleanTable& f, const BooleanTable& g, std::uint64_t budget) {
    check_pair(f, g);
    const double n = f.n();
    HoffmanReport r;
    r.n = f.n();
    r.mu_f = f.mean();
    r.mu_g = g.mean();
    r.epsilon = cross_independence(f, g, budget);
    r.sqrt_epsilon = std::sqrt(r.epsilon);
    r.lhs = n * (n - 2) * r.mu_f * r.mu_g;
    r.rhs = 1 - r.mu_f - r.mu_g;
    r.slack = r.rhs - r.lhs;
    r.exact_lhs = (n - 1) * (n - 1) * r.mu_f * r.mu_g;
    r.exact_rhs = (1 - r.mu_f) * (1 - r.mu_g);
    r.exact_slack = r.exact_rhs - r.exact_lhs;
    r.cross_independent = r.epsilon <= 1e-12;
    r.exact_holds = r.exact_slack >= -1e-12;
    r.tight = std::abs(r.exact_slack) <= 1e-12;
    auto interior = [](double mu) { return mu > 1e-12 && mu < 1 - 1e-12; };
    r.degenerate = r.tight && !(interior(r.mu_f) && interior(r.mu_g));
    r.equality = r.cross_independent && r.tight && interior(r.mu_f) && interior(r.mu_g);
    return r;
}

IndicatorRecovery recover_dictator_indicator(const BooleanTable& f) {
    const int p = f.arity(), n = f.n();
    if (p < 1) throw DimensionError("indicator recovery needs p >= 1");
    const std::uint64_t N = f.size();
    const std::uint64_t block = N / static_cast<std::uint64_t>(n);
    const std::uint64_t ones = f.count();
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(p) * n, 0);
    Word x(static_cast<std::size_t>(p));
    for (std::uint64_t c = 0; c < N; ++c) {
        if (!f.at(c)) continue;
        decode_into(c, n, x);
        for (int k = 0; k < p; ++k) ++hits[k * n + (x[k] - 1)];
    }
    IndicatorRecovery out;
    std::uint64_t best = UINT64_MAX, best_plain = UINT64_MAX;
    for (int k = 0; k < p; ++k)
        for (int s = 0; s < n; ++s) {
            const std::uint64_t a = hits[k * n + s];
            const std::uint64_t plain = (block - a) + (ones - a);
            const std::uint64_t comp = N - plain;
            if (plain < best_plain) {
                best_plain = plain;
                out.best_plain = {k + 1, s + 1, false, 0.0};
            }
            if (plain < best) {
                best = plain;
                out.best = {k + 1, s + 1, false, 0.0};
            }
            if (comp < best) {
                best = comp;
                out.best = {k + 1, s + 1, true, 0.0};
            }
        }
    const double total = static_cast<double>(N);
    out.best.distance = static_cast<double>(best) / total;
    out.best_plain.distance = static_cast<double>(best_plain) / total;
    const std::uint64_t const_dis = std::min(ones, N - ones);
    out.constant_value = ones <= N - ones ? 0 : 1;
    out.constant_distance = static_cast<double>(const_dis) / total;
    out.constant_better = const_dis < best;
    return out;
}

MuMatrix mu_matrix(const FunctionFamily& F) {
    const int n = F.n();
    if (F.m() != n) throw DimensionError("mu matrix needs m = n");
    MuMatrix M;
    M.n = n;
    M.entries.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    M.row_sums.assign(static_cast<std::size_t>(n), 0.0);
    M.column_sums.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const auto& t = F.table(i);
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
        for (auto v : t.values()) ++counts[v - 1];
        for (int r = 0; r < n; ++r) M.entries[i][r] = static_cast<double>(counts[r]) / static_cast<double>(t.size());
    }
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) {
            M.row_sums[i] += M.entries[i][r];
            M.column_sums[r] += M.entries[i][r];
        }
    for (int k = 0; k < n; ++k) {
        M.row_deviation = std::max(M.row_deviation, std::abs(M.row_sums[k] - 1));
        M.column_deviation = std::max(M.column_deviation, std::abs(M.column_sums[k] - 1));
    }
    return M;
}

std::string_view to_string(MuCase c) noexcept {
    switch (c) {
        case MuCase::Concentrated: return "concentrated";
        case MuCase::Spread: return "spread";
        default: return "unclassified";
    }
}

MuProfile mu_profile(const FunctionFamily& F, double epsilon, std::optional<double> tolerance) {
    const int n = F.n();
    if (F.m() != n) throw DimensionError("mu profile needs m = n");
    if (n < 3) throw PreconditionError("mu profile needs n >= 3");
    if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw DimensionError("epsilon must be finite and non-negative");
    MuProfile out;
    out.epsilon = epsilon;
    out.tolerance = tolerance ? *tolerance : std::pow(epsilon, 0.25);
    const double tol = out.tolerance + 1e-12;
    const auto M = mu_matrix(F);

    for (Letter r = 1; r <= n; ++r) {
        LetterProfile lp;
        lp.r = r;
        int top = 0;
        for (int i = 1; i < n; ++i)
            if (M.entries[i][r - 1] > M.entries[top][r - 1]) top = i;
        const bool spread = std::all_of(M.entries.begin(), M.entries.end(), [&](const auto& row) {
            return std::abs(row[r - 1] - 1.0 / n) <= tol;
        });
        if (M.entries[top][r - 1] >= 1 - tol) {
            lp.tag = MuCase::Concentrated;
            lp.concentrated_on = top + 1;
        } else if (spread) {
            lp.tag = MuCase::Spread;
            for (int i = 1; i <= n; ++i) lp.fits.push_back(recover_dictator_indicator(indicator(F, i, r)).best_plain);
        }
        out.letters.push_back(std::move(lp));
    }

    auto all = [&](MuCase c) {
        return std::all_of(out.letters.begin(), out.letters.end(), [&](const LetterProfile& l) { return l.tag == c; });
    };
    if (all(MuCase::Concentrated)) {
        std::set<int> owners;
        for (const auto& l : out.letters) owners.insert(l.concentrated_on);
        out.certificate_like = static_cast<int>(owners.size()) == n;
        out.note = out.certificate_like ? "every letter concentrated on its own coordinate"
                                        : "two letters concentrated on one coordinate";
    } else if (all(MuCase::Spread)) {
        const int k = out.letters.front().fits.front().k;
        bool ok = true;
        std::vector<Letter> perm(static_cast<std::size_t>(n), 0);
        for (const auto& l : out.letters) {
            const Letter s = l.fits.front().s;
            for (const auto& fit : l.fits)
                if (fit.k != k || fit.s != s) ok = false;
            if (ok && perm[s - 1] != 0) ok = false;
            if (ok) perm[s - 1] = l.r;
        }
        out.dictator_consistent = ok;
        if (ok) {
            out.dictator = Dictator{k, perm};
            out.note = "every letter spread with one coordinate and one preimage per letter";
        } else {
            out.note = "spread letters disagree on coordinate or preimage";
        }
    } else {
        out.note = "letters fall into different cases or are unclassified";
    }
    return out;
}

}  // namespace polyagg
