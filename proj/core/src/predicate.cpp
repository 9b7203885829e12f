#include "polyagg/predicate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polyagg/errors.hpp"

namespace polyagg {

namespace {

std::string builtin_name(PredicateKind kind, int m, int n) {
    switch (kind) {
        case PredicateKind::Surj: return "Surj_{" + std::to_string(m) + "," + std::to_string(n) + "}";
        case PredicateKind::Inj: return "Inj_{" + std::to_string(m) + "," + std::to_string(n) + "}";
        case PredicateKind::Perm: return "Perm_" + std::to_string(m);
        case PredicateKind::Equiv: return "Equiv_" + std::to_string(m);
        case PredicateKind::Lin: return "Lin_" + std::to_string(m);
    }
    return {};
}

// Enumerates [n]^m and keeps words accepted by `keep`.
template <class Keep>
std::vector<Word> filter_space(int m, int n, Keep&& keep) {
    const std::uint64_t space = saturating_pow(n, m, kExplicitCap);
    if (space > kExplicitCap)
        throw DimensionError("predicate space n^m exceeds 2^24 (n=" + std::to_string(n)
                             + ", m=" + std::to_string(m) + ")");
    std::vector<Word> out;
    Word x(static_cast<std::size_t>(m));
    for (std::uint64_t code = 0; code < space; ++code) {
        decode_into(code, n, x);
        if (keep(x)) out.push_back(x);
    }
    return out;
}

std::vector<Word> pair_words(int objects, bool linear) {
    const auto pairs = pair_list(objects);
    const int width = static_cast<int>(pairs.size());
    if (width > 24) throw DimensionError("too many objects for explicit pair predicate");
    if (linear) {
        std::vector<int> order(static_cast<std::size_t>(objects));
        std::iota(order.begin(), order.end(), 1);
        std::vector<Word> out;
        do {
            // rank[a] = position of object a; pair {i<j} gets letter 2 when i precedes j.
            std::vector<int> rank(static_cast<std::size_t>(objects) + 1);
            for (int pos = 0; pos < objects; ++pos) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
            Word w(static_cast<std::size_t>(width));
            for (int c = 0; c < width; ++c) {
                auto [i, j] = pairs[static_cast<std::size_t>(c)];
                w[static_cast<std::size_t>(c)] = rank[static_cast<std::size_t>(i)] < rank[static_cast<std::size_t>(j)] ? 2 : 1;
            }
            out.push_back(std::move(w));
        } while (std::next_permutation(order.begin(), order.end()));
        return out;
    }
    return filter_space(width, 2, [&](const Word& x) {
        auto rel = [&](int a, int b) { return x[static_cast<std::size_t>(pair_coordinate(a, b, objects))] == 2; };
        for (int i = 1; i <= objects; ++i)
            for (int j = 1; j <= objects; ++j)
                for (int k = 1; k <= objects; ++k)
                    if (i != j && j != k && i != k && rel(i, j) && rel(j, k) && !rel(i, k)) return false;
        return true;
    });
}

}  // namespace

std::string_view to_string(PredicateKind kind) noexcept {
    switch (kind) {
        case PredicateKind::Surj: return "surj";
        case PredicateKind::Inj: return "inj";
        case PredicateKind::Perm: return "perm";
        case PredicateKind::Equiv: return "equiv";
        case PredicateKind::Lin: return "lin";
    }
    return "unknown";
}

std::optional<PredicateKind> parse_predicate_kind(std::string_view name) noexcept {
    for (auto kind : {PredicateKind::Surj, PredicateKind::Inj, PredicateKind::Perm,
                      PredicateKind::Equiv, PredicateKind::Lin})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

Predicate::Predicate(int m, int n, std::vector<Word> members, std::string name,
                     std::optional<BuiltinTag> builtin)
    : m_(m), n_(n), name_(std::move(name)), builtin_(builtin) {
    if (m < 1) throw DimensionError("predicate arity must be at least 1");
    if (n < 1 || n > kMaxAlphabet) throw DimensionError("alphabet size must be in 1..255");
    space_ = saturating_pow(n, m, kExplicitCap);
    if (space_ > kExplicitCap) throw DimensionError("predicate space n^m exceeds 2^24");
    if (members.empty()) throw DimensionError("predicate must have at least one member");
    for (const auto& x : members) check_word(x, m, n, "predicate member");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw FormatError("predicate members must be distinct");
    codes_.reserve(members.size());
    bits_.assign((space_ + 63) / 64, 0);
    for (const auto& x : members) {
        const auto code = encode(x, n);
        codes_.push_back(static_cast<std::uint32_t>(code));
        bits_[code >> 6] |= std::uint64_t{1} << (code & 63);
    }
}

std::vector<Word> Predicate::members() const {
    std::vector<Word> out;
    out.reserve(codes_.size());
    for (auto code : codes_) out.push_back(decode(code, m_, n_));
    return out;
}

bool Predicate::contains(std::span<const Letter> x) const {
    check_word(x, m_, n_, "contains");
    return contains_code(encode(x, n_));
}

Predicate make_builtin(PredicateKind kind, int m, int n) {
    switch (kind) {
        case PredicateKind::Surj:
        case PredicateKind::Perm: {
            if (kind == PredicateKind::Perm && m != n)
                throw DimensionError("Perm requires m = n");
            if (n < 1 || m < n) throw DimensionError("Surj requires m >= n >= 1");
            auto members = filter_space(m, n, [n](const Word& x) {
                std::vector<bool> seen(static_cast<std::size_t>(n) + 1);
                for (Letter a : x) seen[static_cast<std::size_t>(a)] = true;
                return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
            });
            return Predicate(m, n, std::move(members), builtin_name(kind, m, n), BuiltinTag{kind, m, n});
        }
        case PredicateKind::Inj: {
            if (m < 1 || m > n) throw DimensionError("Inj requires 1 <= m <= n");
            auto members = filter_space(m, n, [n](const Word& x) {
                std::vector<bool> seen(static_cast<std::size_t>(n) + 1);
                for (Letter a : x) {
                    if (seen[static_cast<std::size_t>(a)]) return false;
                    seen[static_cast<std::size_t>(a)] = true;
                }
                return true;
            });
            return Predicate(m, n, std::move(members), builtin_name(kind, m, n), BuiltinTag{kind, m, n});
        }
        case PredicateKind::Equiv:
        case PredicateKind::Lin: {
            if (m < 2) throw DimensionError(std::string(to_string(kind)) + " requires m >= 2 objects");
            const int width = m * (m - 1) / 2;
            return Predicate(width, 2, pair_words(m, kind == PredicateKind::Lin),
                             builtin_name(kind, m, 2), BuiltinTag{kind, m, 2});
        }
    }
    throw DimensionError("unknown predicate kind");
}

Predicate line_predicate(std::span<const Word> perms, int n) {
    if (perms.empty()) throw DimensionError("line predicate needs at least one coordinate");
    for (const auto& pi : perms) {
        check_word(pi, n, n, "permutation");
        Word sorted = pi;
        std::sort(sorted.begin(), sorted.end());
        for (int a = 1; a <= n; ++a)
            if (sorted[static_cast<std::size_t>(a - 1)] != a) throw DimensionError("not a permutation");
    }
    std::vector<Word> members;
    for (int b = 1; b <= n; ++b) {
        Word x;
        for (const auto& pi : perms) x.push_back(pi[static_cast<std::size_t>(b - 1)]);
        members.push_back(std::move(x));
    }
    return Predicate(static_cast<int>(perms.size()), n, std::move(members), "line");
}

int pair_coordinate(int i, int j, int objects) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > objects || i == j) throw DimensionError("invalid object pair");
    // pairs {1,2..m}, then {2,3..m}, ...
    return (i - 1) * objects - (i - 1) * i / 2 + (j - i - 1);
}

std::vector<std::pair<int, int>> pair_list(int objects) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= objects; ++i)
        for (int j = i + 1; j <= objects; ++j) out.emplace_back(i, j);
    return out;
}

std::vector<int> PartialAssignment::domain() const {
    std::vector<int> out;
    for (std::size_t t = 0; t < values_.size(); ++t)
        if (values_[t] != 0) out.push_back(static_cast<int>(t) + 1);
    return out;
}

int PartialAssignment::domain_size() const noexcept {
    return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](Letter v) { return v != 0; }));
}

bool is_certificate(const Predicate& P, const PartialAssignment& rho) {
    const int m = P.arity(), n = P.alphabet();
    if (rho.arity() != m) throw DimensionError("partial assignment arity mismatch");
    std::vector<int> free;
    Word x(static_cast<std::size_t>(m));
    for (int t = 1; t <= m; ++t) {
        const Letter v = rho.at(t);
        if (v < 0 || v > n) throw DimensionError("partial assignment letter out of range");
        if (v == 0) free.push_back(t - 1);
        x[static_cast<std::size_t>(t - 1)] = v == 0 ? 1 : v;
    }
    const std::uint64_t completions = saturating_pow(n, free.size());
    Word fill(free.size());
    for (std::uint64_t c = 0; c < completions; ++c) {
        decode_into(c, n, fill);
        for (std::size_t k = 0; k < free.size(); ++k) x[static_cast<std::size_t>(free[k])] = fill[k];
        if (!P.contains_code(encode(x, n))) return false;
    }
    return true;
}

std::vector<PartialAssignment> minimal_certificates(const Predicate& P, std::uint64_t pattern_budget) {
    const int m = P.arity(), n = P.alphabet();
    const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
    const std::uint64_t patterns = saturating_pow(base, m, pattern_budget);
    if (patterns > pattern_budget)
        throw BudgetExceeded("minimal_certificates over (n+1)^m partial patterns",
                             saturating_pow(base, m), pattern_budget);

    std::vector<std::uint64_t> place(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) place[static_cast<std::size_t>(t)] = saturating_pow(base, t);

    // Digit 0 = unassigned. Assigning a free digit increases the pattern
    // index, so a descending sweep sees every extension first.
    std::vector<std::uint8_t> cert(patterns, 0);
    Word digits(static_cast<std::size_t>(m));
    for (std::uint64_t code = patterns; code-- > 0;) {
        std::uint64_t rest = code;
        int first_free = -1;
        for (int t = 0; t < m; ++t) {
            digits[static_cast<std::size_t>(t)] = static_cast<Letter>(rest % base);
            rest /= base;
            if (digits[static_cast<std::size_t>(t)] == 0 && first_free < 0) first_free = t;
        }
        if (first_free < 0) {
            cert[code] = P.contains_code(encode(digits, n)) ? 1 : 0;
        } else {
            bool all = true;
            for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(n) && all; ++s)
                all = cert[code + s * place[static_cast<std::size_t>(first_free)]] != 0;
            cert[code] = all ? 1 : 0;
        }
    }

    std::vector<PartialAssignment> out;
    for (std::uint64_t code = 0; code < patterns; ++code) {
        if (!cert[code]) continue;
        std::uint64_t rest = code;
        bool minimal = true;
        for (int t = 0; t < m; ++t) {
            const std::uint64_t d = rest % base;
            rest /= base;
            digits[static_cast<std::size_t>(t)] = static_cast<Letter>(d);
            if (d != 0 && cert[code - d * place[static_cast<std::size_t>(t)]]) minimal = false;
        }
        if (minimal) out.emplace_back(digits);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PredicateProfile analyze_predicate(const Predicate& P) {
    const int m = P.arity(), n = P.alphabet();
    const auto codes = P.codes();
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) stride[static_cast<std::size_t>(t)] = saturating_pow(n, t);
    auto digit = [&](std::uint64_t code, int t) {
        return static_cast<Letter>((code / stride[static_cast<std::size_t>(t)]) % static_cast<std::uint64_t>(n)) + 1;
    };
    auto replace = [&](std::uint64_t code, int t, Letter a) {
        return code - static_cast<std::uint64_t>(digit(code, t) - 1) * stride[static_cast<std::size_t>(t)]
               + static_cast<std::uint64_t>(a - 1) * stride[static_cast<std::size_t>(t)];
    };

    PredicateProfile profile;

    profile.flexible = true;
    profile.depends_on_all = true;
    profile.full_projections = true;
    for (int t = 0; t < m && (profile.flexible || profile.depends_on_all || profile.full_projections); ++t) {
        bool some_free = false, some_sensitive = false;
        std::vector<bool> projected(static_cast<std::size_t>(n) + 1, false);
        for (auto code : codes) {
            projected[static_cast<std::size_t>(digit(code, t))] = true;
            bool all_in = true;
            for (Letter a = 1; a <= n; ++a)
                if (!P.contains_code(replace(code, t, a))) all_in = false;
            if (all_in) some_free = true;
            else some_sensitive = true;
        }
        if (!some_free) profile.flexible = false;
        if (!some_sensitive) profile.depends_on_all = false;
        for (Letter a = 1; a <= n; ++a)
            if (!projected[static_cast<std::size_t>(a)]) profile.full_projections = false;
    }

    // (t, a) is vulnerable unless some non-member has x_t = a.
    std::vector<bool> forcing(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), true);
    for (std::uint64_t code = 0; code < P.space_size(); ++code) {
        if (P.contains_code(code)) continue;
        for (int t = 0; t < m; ++t)
            forcing[static_cast<std::size_t>(t) * static_cast<std::size_t>(n) + static_cast<std::size_t>(digit(code, t) - 1)] = false;
    }
    for (int t = 0; t < m && !profile.vulnerable; ++t)
        for (Letter a = 1; a <= n; ++a)
            if (forcing[static_cast<std::size_t>(t) * static_cast<std::size_t>(n) + static_cast<std::size_t>(a - 1)]) {
                profile.vulnerable = CoordinateLetter{t + 1, a};
                break;
            }

    for (int t = 0; t < m; ++t)
        for (Letter a = 1; a <= n; ++a) {
            const bool sticky = std::all_of(codes.begin(), codes.end(), [&](std::uint32_t code) {
                return P.contains_code(replace(code, t, a));
            });
            if (sticky) profile.sticky.push_back({t + 1, a});
        }
    return profile;
}

}  // namespace polyagg
