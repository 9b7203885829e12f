#include "polyagg/poly_engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>

#include "polyagg/errors.hpp"
#include "polyagg/matching.hpp"
#include "polyagg/parallel.hpp"

namespace polyagg {

namespace {

void check_family_fits(const FunctionFamily& F, const Predicate& P) {
    if (F.m() != P.arity())
        throw DimensionError("family has " + std::to_string(F.m()) + " tables, predicate arity is "
                             + std::to_string(P.arity()));
    if (F.n() != P.alphabet())
        throw DimensionError("family alphabet " + std::to_string(F.n()) + " differs from predicate alphabet "
                             + std::to_string(P.alphabet()));
}

// Member letters as 0-based digits, row-major |P| x m.
std::vector<std::uint8_t> member_digits(const Predicate& P) {
    const int m = P.arity();
    std::vector<std::uint8_t> out;
    out.reserve(P.size() * static_cast<std::size_t>(m));
    Word x(static_cast<std::size_t>(m));
    for (auto code : P.codes()) {
        decode_into(code, P.alphabet(), x);
        for (Letter a : x) out.push_back(static_cast<std::uint8_t>(a - 1));
    }
    return out;
}

std::vector<std::uint64_t> powers(int n, int count) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(count) + 1, 1);
    for (int s = 1; s <= count; ++s) out[s] = out[s - 1] * static_cast<std::uint64_t>(n);
    return out;
}

// Scans the row tuples whose first row is `first` in lexicographic order.
// Returns the offset of the first violation within the chunk, if any.
struct TupleScanner {
    const FunctionFamily& F;
    const Predicate& P;
    int m, n, p;
    std::size_t rows;
    std::vector<std::uint8_t> digits;
    std::vector<std::uint64_t> row_stride;  // n^s
    std::vector<std::uint64_t> coord_stride;  // n^i

    TupleScanner(const FunctionFamily& f, const Predicate& pred)
        : F(f), P(pred), m(pred.arity()), n(pred.alphabet()), p(f.p()), rows(pred.size()),
          digits(member_digits(pred)), row_stride(powers(n, p)), coord_stride(powers(n, m)) {}

    std::optional<std::vector<std::size_t>> first_violation(std::size_t first) const {
        std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
        if (p > 0) idx[0] = first;
        std::vector<std::uint64_t> cells(static_cast<std::size_t>(p + 1) * static_cast<std::size_t>(m), 0);
        // cells[(s+1)*m + i] = partial cell of column i using rows 0..s.
        auto fill = [&](int s) {
            const std::uint8_t* d = &digits[idx[s] * static_cast<std::size_t>(m)];
            for (int i = 0; i < m; ++i)
                cells[(s + 1) * m + i] = cells[s * m + i] + d[i] * row_stride[s];
        };
        for (int s = 0; s < p; ++s) fill(s);
        for (;;) {
            std::uint64_t out = 0;
            for (int i = 0; i < m; ++i)
                out += static_cast<std::uint64_t>(F.table(i).at(cells[p * m + i]) - 1) * coord_stride[i];
            if (!P.contains_code(out)) return idx;
            // Odometer over rows 1..p-1, last row fastest.
            int s = p - 1;
            while (s >= 1 && ++idx[s] == rows) {
                idx[s] = 0;
                --s;
            }
            if (s < 1) return std::nullopt;
            for (int t = s; t < p; ++t) fill(t);
        }
    }
};

}  // namespace

PolyCheck is_polymorphism(const FunctionFamily& F, const Predicate& P, const ExecOptions& options) {
    check_family_fits(F, P);
    const int p = F.p();
    const auto total = saturating_pow(P.size(), p, options.budget);
    if (total > options.budget)
        throw BudgetExceeded("is_polymorphism over |P|^p tuples (|P|=" + std::to_string(P.size())
                                 + ", p=" + std::to_string(p) + ")",
                             saturating_pow(P.size(), p), options.budget);

    const TupleScanner scanner(F, P);
    const std::size_t chunks = p == 0 ? 1 : P.size();
    const std::uint64_t per_chunk = p == 0 ? 1 : saturating_pow(P.size(), p - 1);
    std::vector<std::optional<std::vector<std::size_t>>> found(chunks);
    std::atomic<std::size_t> first_bad{chunks};
    parallel_for(chunks, options.threads, [&](std::size_t chunk) {
        if (chunk > first_bad.load()) return;
        found[chunk] = scanner.first_violation(chunk);
        if (found[chunk]) {
            std::size_t cur = first_bad.load();
            while (chunk < cur && !first_bad.compare_exchange_weak(cur, chunk)) {
            }
        }
    });

    PolyCheck result;
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        if (!found[chunk]) continue;
        const auto& idx = *found[chunk];
        std::uint64_t offset = 0;
        for (int s = 1; s < p; ++s) offset = offset * P.size() + idx[s];
        result.holds = false;
        result.tuples_checked = chunk * per_chunk + offset + 1;
        std::vector<Word> rows;
        for (auto k : idx) rows.push_back(P.member(k));
        result.counterexample = std::move(rows);
        return result;
    }
    result.tuples_checked = total;
    return result;
}

namespace {

// Backtracking search over table cells with generalized arc consistency.
class PolySearch {
public:
    PolySearch(const Predicate& P, int p)
        : m_(P.arity()), n_(P.alphabet()), cells_(TruthTable::checked_cells(p, P.alphabet())),
          digits_(member_digits(P)), members_(P.size()) {
        if (n_ > 31) throw DimensionError("enumeration supports alphabets up to 31 letters");
        const auto tuples = saturating_pow(P.size(), p, kExplicitCap);
        if (tuples > kExplicitCap)
            throw BudgetExceeded("enumerate_polymorphisms constraint set |P|^p", saturating_pow(P.size(), p),
                                 kExplicitCap);
        vars_ = static_cast<std::size_t>(m_) * cells_;
        build_constraints(P, p);
        dom_.assign(vars_, (1u << n_) - 1);
        watch_.assign(vars_, {});
        for (std::size_t k = 0; k < constraint_count_; ++k)
            for (int i = 0; i < m_; ++i) watch_[var(i, k)].push_back(static_cast<std::uint32_t>(k));
        queued_.assign(constraint_count_, 0);
    }

    bool root_propagate() {
        for (std::size_t k = 0; k < constraint_count_; ++k) enqueue(k);
        return propagate();
    }

    std::uint32_t domain(std::size_t v) const { return dom_[v]; }

    struct BranchResult {
        std::vector<FunctionFamily> families;
        std::uint64_t nodes = 0;
        bool overflow = false;
    };

    // Runs the subtree with variable 0 fixed to `value`.
    BranchResult run_branch(int value, int p, std::uint64_t cap) {
        BranchResult out;
        cap_ = cap;
        nodes_ = 0;
        overflow_ = false;
        p_ = p;
        results_ = &out.families;
        ++nodes_;
        const auto mark = trail_.size();
        if (assign(0, value) && propagate()) dfs(1);
        undo(mark);
        out.nodes = nodes_;
        out.overflow = overflow_;
        return out;
    }

private:
    std::size_t var(int table, std::size_t constraint) const {
        return static_cast<std::size_t>(table) * cells_ + cells_of_[constraint * m_ + table];
    }

    void build_constraints(const Predicate& P, int p) {
        const auto row_stride = powers(n_, p);
        std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
        std::vector<std::uint32_t> flat;
        const std::size_t rows = P.size();
        for (;;) {
            for (int i = 0; i < m_; ++i) {
                std::uint64_t cell = 0;
                for (int s = 0; s < p; ++s) cell += digits_[idx[s] * m_ + i] * row_stride[s];
                flat.push_back(static_cast<std::uint32_t>(cell));
            }
            int s = p - 1;
            while (s >= 0 && ++idx[s] == rows) {
                idx[s] = 0;
                --s;
            }
            if (s < 0) break;
        }
        // Deduplicate cell vectors.
        const std::size_t count = flat.size() / m_;
        std::vector<std::size_t> order(count);
        for (std::size_t k = 0; k < count; ++k) order[k] = k;
        auto less = [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(flat.begin() + a * m_, flat.begin() + (a + 1) * m_,
                                                flat.begin() + b * m_, flat.begin() + (b + 1) * m_);
        };
        auto equal = [&](std::size_t a, std::size_t b) {
            return std::equal(flat.begin() + a * m_, flat.begin() + (a + 1) * m_, flat.begin() + b * m_);
        };
        std::sort(order.begin(), order.end(), less);
        for (std::size_t k = 0; k < count; ++k) {
            if (k > 0 && equal(order[k], order[k - 1])) continue;
            cells_of_.insert(cells_of_.end(), flat.begin() + order[k] * m_, flat.begin() + (order[k] + 1) * m_);
        }
        constraint_count_ = cells_of_.size() / m_;
    }

    void enqueue(std::size_t k) {
        if (!queued_[k]) {
            queued_[k] = 1;
            queue_.push_back(static_cast<std::uint32_t>(k));
        }
    }

    bool narrow(std::size_t v, std::uint32_t mask, std::size_t from) {
        const std::uint32_t nd = dom_[v] & mask;
        if (nd == dom_[v]) return true;
        if (nd == 0) return false;
        trail_.emplace_back(v, dom_[v]);
        dom_[v] = nd;
        for (auto k : watch_[v])
            if (k != from) enqueue(k);
        return true;
    }

    bool revise(std::size_t k) {
        std::uint32_t support[32] = {};
        for (std::size_t y = 0; y < members_; ++y) {
            const std::uint8_t* d = &digits_[y * m_];
            bool ok = true;
            for (int i = 0; i < m_ && ok; ++i) ok = (dom_[var(i, k)] >> d[i]) & 1u;
            if (!ok) continue;
            for (int i = 0; i < m_; ++i) support[i] |= 1u << d[i];
        }
        for (int i = 0; i < m_; ++i)
            if (!narrow(var(i, k), support[i], k)) return false;
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            const auto k = queue_.back();
            queue_.pop_back();
            queued_[k] = 0;
            if (!revise(k)) {
                for (auto q : queue_) queued_[q] = 0;
                queue_.clear();
                return false;
            }
        }
        return true;
    }

    bool assign(std::size_t v, int value) {
        if (!((dom_[v] >> value) & 1u)) return false;
        if (dom_[v] == (1u << value)) return true;
        trail_.emplace_back(v, dom_[v]);
        dom_[v] = 1u << value;
        for (auto k : watch_[v]) enqueue(k);
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            dom_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
    }

    void emit() {
        std::vector<TruthTable> tables;
        tables.reserve(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            std::vector<std::uint8_t> values(cells_);
            for (std::size_t c = 0; c < cells_; ++c)
                values[c] = static_cast<std::uint8_t>(std::countr_zero(dom_[i * cells_ + c]) + 1);
            tables.emplace_back(p_, n_, n_, std::move(values));
        }
        results_->emplace_back(std::move(tables));
    }

    void dfs(std::size_t v) {
        while (v < vars_ && std::has_single_bit(dom_[v])) ++v;
        if (v == vars_) {
            emit();
            return;
        }
        for (int value = 0; value < n_; ++value) {
            if (!((dom_[v] >> value) & 1u)) continue;
            if (++nodes_ > cap_) {
                overflow_ = true;
                return;
            }
            const auto mark = trail_.size();
            if (assign(v, value) && propagate()) dfs(v + 1);
            undo(mark);
            if (overflow_) return;
        }
    }

    int m_;
    int n_;
    int p_ = 0;
    std::size_t cells_;
    std::size_t vars_ = 0;
    std::vector<std::uint8_t> digits_;
    std::size_t members_;
    std::vector<std::uint32_t> cells_of_;
    std::size_t constraint_count_ = 0;
    std::vector<std::uint32_t> dom_;
    std::vector<std::vector<std::uint32_t>> watch_;
    std::vector<std::pair<std::size_t, std::uint32_t>> trail_;
    std::vector<std::uint32_t> queue_;
    std::vector<char> queued_;
    std::uint64_t nodes_ = 0;
    std::uint64_t cap_ = 0;
    bool overflow_ = false;
    std::vector<FunctionFamily>* results_ = nullptr;
};

}  // namespace

EnumerationStats enumerate_polymorphisms(const Predicate& P, int p, const FamilySink& sink, ExecOptions options) {
    if (p < 1) throw DimensionError("enumeration needs p >= 1");
    PolySearch root(P, p);
    EnumerationStats stats;
    if (!root.root_propagate()) return stats;

    std::vector<int> values;
    for (int a = 0; a < P.alphabet(); ++a)
        if ((root.domain(0) >> a) & 1u) values.push_back(a);

    auto refuse = [&] {
        throw BudgetExceeded("enumerate_polymorphisms search nodes", options.budget + 1, options.budget);
    };
    auto deliver = [&](PolySearch::BranchResult& branch) {
        stats.nodes += branch.nodes;
        if (branch.overflow || stats.nodes > options.budget) refuse();
        for (const auto& family : branch.families) {
            ++stats.families;
            if (!sink(family)) return false;
        }
        return true;
    };

    if (options.threads <= 1 || values.size() <= 1) {
        for (int value : values) {
            auto branch = root.run_branch(value, p, options.budget - stats.nodes);
            if (!deliver(branch)) break;
        }
        return stats;
    }

    std::vector<PolySearch::BranchResult> branches(values.size());
    parallel_for(values.size(), options.threads, [&](std::size_t b) {
        PolySearch local = root;
        branches[b] = local.run_branch(values[b], p, options.budget);
    });
    for (auto& branch : branches)
        if (!deliver(branch)) break;
    return stats;
}

std::vector<FunctionFamily> all_polymorphisms(const Predicate& P, int p, ExecOptions options) {
    std::vector<FunctionFamily> out;
    enumerate_polymorphisms(P, p, [&](const FunctionFamily& F) {
        out.push_back(F);
        return true;
    }, options);
    return out;
}

std::string_view verdict_tag(const TrivialityVerdict& v) noexcept {
    switch (v.index()) {
        case 0: return "dictatorial";
        case 1: return "certificate";
        default: return "nontrivial";
    }
}

TrivialityVerdict classify_trivial(const FunctionFamily& F, const Predicate& P, const ExecOptions& options) {
    if (!is_polymorphism(F, P, options).holds)
        throw PreconditionError("classification refused: family is not a polymorphism of the predicate");

    const auto& first = F.table(0);
    if (std::all_of(F.tables().begin(), F.tables().end(), [&](const TruthTable& t) { return t == first; })) {
        const auto shape = classify_function(first);
        if (shape.dictator) return Dictatorial{shape.dictator->coordinate, shape.dictator->perm};
    }

    std::vector<Letter> rho(static_cast<std::size_t>(F.m()), 0);
    for (int i = 0; i < F.m(); ++i) {
        const auto values = F.table(i).values();
        if (std::all_of(values.begin(), values.end(), [&](auto v) { return v == values[0]; })) rho[i] = values[0];
    }
    PartialAssignment assignment(std::move(rho));
    if (is_certificate(P, assignment)) return CertificateVerdict{std::move(assignment)};
    return Nontrivial{"polymorphism is neither dictatorial nor conforming to a certificate"};
}

HallWitness hall_witness(const FunctionFamily& F) {
    const int m = F.m(), n = F.n();
    if (F.p() != 1) throw PreconditionError("hall_witness needs p = 1");
    if (!(m > n && n >= 3)) throw PreconditionError("hall_witness needs m > n >= 3");
    const auto surj = make_builtin(PredicateKind::Surj, m, n);
    if (!is_polymorphism(F, surj).holds) throw PreconditionError("hall_witness needs a polymorphism of Surj_{m,n}");

    HallWitness w;
    std::vector<bool> in_c(static_cast<std::size_t>(n) + 1, false);
    for (int i = 0; i < m; ++i) {
        const auto values = F.table(i).values();
        if (std::all_of(values.begin(), values.end(), [&](auto v) { return v == values[0]; })) {
            w.constant_coordinates.push_back(i + 1);
            in_c[values[0]] = true;
        }
    }
    for (Letter r = 1; r <= n; ++r)
        if (in_c[r]) w.constant_letters.push_back(r);
    w.c = static_cast<int>(w.constant_letters.size());
    if (w.c == n) throw PreconditionError("hall_witness needs a family that is not of certificate type");

    for (Letter r = 1; r <= n; ++r) {
        if (in_c[r]) continue;
        BipartiteGraph g(n, m);
        for (int s = 0; s < n; ++s)
            for (int i = 0; i < m; ++i)
                if (F.table(i).at(s) != r) g.add_edge(s, i);
        const auto matching = maximum_matching(g);
        const auto violator = hall_violator(g, matching);
        if (!violator)
            throw InternalContradiction("letter " + std::to_string(r)
                                        + " admits a left-saturating matching; input is not a polymorphism");
        LetterWitness lw;
        lw.r = r;
        for (int s : violator->left_set) lw.X.push_back(s + 1);
        std::vector<bool> in_n(static_cast<std::size_t>(m), false);
        for (int i : violator->neighbourhood) in_n[i] = true;
        for (int i = 0; i < m; ++i)
            if (!in_n[i]) lw.I.push_back(i + 1);
        w.delta += static_cast<long long>(lw.I.size()) * static_cast<long long>(lw.X.size());
        w.letters.push_back(std::move(lw));
    }
    w.lower_bound = static_cast<long long>(n - w.c) * m;
    w.upper_bound = static_cast<long long>(m - w.c) * n;
    return w;
}

std::optional<std::string> check_hall_witness(const FunctionFamily& F, const HallWitness& w) {
    const int m = F.m(), n = F.n();
    std::vector<bool> constant(static_cast<std::size_t>(m) + 1, false);
    for (int i : w.constant_coordinates) constant[i] = true;
    long long delta = 0;
    for (const auto& lw : w.letters) {
        const auto x = static_cast<int>(lw.X.size());
        const auto tag = "letter " + std::to_string(lw.r) + ": ";
        if (x < w.c + 1 || x > n - 1) return tag + "|X_r| outside [c+1, n-1]";
        if (static_cast<int>(lw.I.size()) < m - x + 1) return tag + "|I_r| < m - |X_r| + 1";
        for (int i : lw.I)
            if (constant[i]) return tag + "I_r meets the constant coordinates";
        for (int i = 1; i <= m; ++i) {
            const bool all_r = std::all_of(lw.X.begin(), lw.X.end(), [&](Letter s) { return F.table(i - 1).at(s - 1) == lw.r; });
            const bool listed = std::find(lw.I.begin(), lw.I.end(), i) != lw.I.end();
            if (all_r != listed) return tag + "I_r differs from {i : f_i(X_r) = r}";
        }
        delta += static_cast<long long>(lw.I.size()) * x;
    }
    if (delta != w.delta) return std::string("delta mismatch");
    if (w.delta < w.lower_bound) return std::string("delta below (n-c)m");
    if (w.delta > w.upper_bound) return std::string("delta above (m-c)n");
    if (w.delta == static_cast<long long>(n) * m) {
        if (w.c != 0) return std::string("delta = nm with c > 0");
        for (const auto& lw : w.letters)
            if (lw.X.size() != 1 || static_cast<int>(lw.I.size()) != m) return std::string("delta = nm without singleton X_r and full I_r");
    }
    return std::nullopt;
}

ConstantRuleOut constant_rule_out(long long m, long long n, long long c) {
    return {(n - c) * (c + 1) * (m - c) > (m - c) * n, (n - c) * (n - 1) * (m - n + 2) > (m - c) * n};
}

FunctionFamily construct_andor_family(std::span<const bool> negated) {
    if (negated.empty()) throw DimensionError("andor family needs at least one coordinate");
    // Cell index (a-1) + 2(b-1) for arguments (a, b).
    const TruthTable conj(2, 2, 2, {1, 1, 1, 2});
    const TruthTable disj(2, 2, 2, {1, 2, 2, 2});
    std::vector<TruthTable> tables;
    for (bool neg : negated) tables.push_back(neg ? disj : conj);
    return FunctionFamily(std::move(tables));
}

Predicate andor_line_predicate(std::span<const bool> negated) {
    std::vector<Word> perms;
    for (bool neg : negated) perms.push_back(neg ? Word{2, 1} : Word{1, 2});
    return line_predicate(perms, 2);
}

FunctionFamily construct_collapse_family(std::span<const Word> perms, Letter sigma, Letter tau) {
    if (perms.empty()) throw DimensionError("collapse family needs at least one coordinate");
    const int n = static_cast<int>(perms.front().size());
    if (n < 3) throw PreconditionError("collapse construction needs n >= 3");
    if (sigma == tau) throw PreconditionError("collapse construction needs sigma != tau");
    if (sigma < 1 || sigma > n || tau < 1 || tau > n) throw DimensionError("letters out of range");
    // Validates the permutations.
    (void)line_predicate(perms, n);
    std::vector<TruthTable> tables;
    for (const auto& pi : perms) {
        const Letter keep = pi[sigma - 1], other = pi[tau - 1];
        tables.push_back(TruthTable::tabulate(1, n, n, [&](std::span<const Letter> x) { return x[0] == keep ? keep : other; }));
    }
    return FunctionFamily(std::move(tables));
}

}  // namespace polyagg
