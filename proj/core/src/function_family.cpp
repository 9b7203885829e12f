#include "polyagg/function_family.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polyagg/errors.hpp"

namespace polyagg {

std::uint64_t TruthTable::checked_cells(int p, int n) {
    if (p < 0) throw DimensionError("arity must be non-negative");
    if (n < 1 || n > kMaxAlphabet) throw DimensionError("alphabet size must be in 1..255");
    const auto cells = saturating_pow(n, p, kExplicitCap);
    if (cells > kExplicitCap)
        throw DimensionError("table size n^p exceeds 2^24 (n=" + std::to_string(n) + ", p="
                             + std::to_string(p) + ")");
    return cells;
}

TruthTable::TruthTable(int p, int n_in, int n_out, std::vector<std::uint8_t> values)
    : p_(p), n_in_(n_in), n_out_(n_out), values_(std::move(values)) {
    const auto cells = checked_cells(p, n_in);
    if (n_out < 1 || n_out > kMaxAlphabet) throw DimensionError("codomain size must be in 1..255");
    if (values_.size() != cells)
        throw DimensionError("table has " + std::to_string(values_.size()) + " cells, expected "
                             + std::to_string(cells));
    for (auto v : values_)
        if (v < 1 || v > n_out)
            throw DimensionError("table value " + std::to_string(v) + " outside 1.." + std::to_string(n_out));
}

TruthTable TruthTable::constant(int p, int n, Letter c) {
    if (c < 1 || c > n) throw DimensionError("constant letter out of range");
    return TruthTable(p, n, n, std::vector<std::uint8_t>(checked_cells(p, n), static_cast<std::uint8_t>(c)));
}

TruthTable TruthTable::dictator(int p, int n, int k, std::span<const Letter> perm) {
    if (k < 1 || k > p) throw DimensionError("dictator coordinate out of range");
    check_word(perm, n, n, "dictator permutation");
    return tabulate(p, n, n, [&](std::span<const Letter> x) { return perm[x[k - 1] - 1]; });
}

Letter TruthTable::operator()(std::span<const Letter> x) const {
    check_word(x, p_, n_in_, "table argument");
    return values_[encode(x, n_in_)];
}

TruthTable TruthTable::with_cell(std::uint64_t cell, Letter value) const {
    auto values = values_;
    values.at(cell) = static_cast<std::uint8_t>(value);
    return TruthTable(p_, n_in_, n_out_, std::move(values));
}

BooleanTable::BooleanTable(int p, int n, std::vector<std::uint8_t> bits)
    : p_(p), n_(n), bits_(std::move(bits)) {
    if (bits_.size() != TruthTable::checked_cells(p, n))
        throw DimensionError("boolean table size mismatch");
    for (auto b : bits_)
        if (b > 1) throw DimensionError("boolean table entries must be 0 or 1");
}

BooleanTable BooleanTable::from_letters(const TruthTable& t) {
    if (t.n_out() != 2) throw DimensionError("boolean reading needs a 2-letter codomain");
    std::vector<std::uint8_t> bits(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) bits[c] = static_cast<std::uint8_t>(t.at(c) - 1);
    return BooleanTable(t.arity(), t.n_in(), std::move(bits));
}

std::uint64_t BooleanTable::count() const noexcept {
    return static_cast<std::uint64_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

FunctionFamily::FunctionFamily(std::vector<TruthTable> tables) : tables_(std::move(tables)) {
    if (tables_.empty()) throw DimensionError("family needs at least one table");
    const auto& t0 = tables_.front();
    if (t0.n_in() != t0.n_out()) throw DimensionError("family tables must map [n]^p to [n]");
    for (const auto& t : tables_)
        if (t.arity() != t0.arity() || t.n_in() != t0.n_in() || t.n_out() != t0.n_out())
            throw DimensionError("family tables must share (p, n)");
}

Word eval_family(const FunctionFamily& F, std::span<const Word> rows) {
    if (static_cast<int>(rows.size()) != F.p())
        throw DimensionError("expected " + std::to_string(F.p()) + " input rows");
    for (const auto& row : rows) check_word(row, F.m(), F.n(), "input row");
    Word out(static_cast<std::size_t>(F.m()));
    Word column(rows.size());
    for (int i = 0; i < F.m(); ++i) {
        for (std::size_t s = 0; s < rows.size(); ++s) column[s] = rows[s][i];
        out[i] = F.table(i).at(encode(column, F.n()));
    }
    return out;
}

BooleanTable indicator(const FunctionFamily& F, int coordinate, Letter r) {
    if (coordinate < 1 || coordinate > F.m()) throw DimensionError("coordinate out of range");
    if (r < 1 || r > F.n()) throw DimensionError("letter out of range");
    const auto& t = F.table(coordinate - 1);
    std::vector<std::uint8_t> bits(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) bits[c] = t.at(c) == r ? 1 : 0;
    return BooleanTable(t.arity(), t.n_in(), std::move(bits));
}

CellMeasure CellMeasure::uniform(int p, int n) {
    CellMeasure m;
    m.p_ = p;
    m.n_ = n;
    m.total_ = static_cast<double>(TruthTable::checked_cells(p, n));
    return m;
}

CellMeasure CellMeasure::product(int p, std::span<const double> marginal) {
    const int n = static_cast<int>(marginal.size());
    const auto cells = TruthTable::checked_cells(p, n);
    double sum = 0;
    for (double w : marginal) {
        if (!(w >= 0) || !std::isfinite(w)) throw DimensionError("marginal weights must be finite and non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DimensionError("marginal must sum to 1");
    CellMeasure m;
    m.p_ = p;
    m.n_ = n;
    m.weights_.assign(cells, 1.0);
    Word x(static_cast<std::size_t>(p));
    for (std::uint64_t c = 0; c < cells; ++c) {
        decode_into(c, n, x);
        double w = 1.0;
        for (Letter a : x) w *= marginal[a - 1];
        m.weights_[c] = w;
    }
    m.total_ = 1.0;
    return m;
}

namespace {

void check_compatible(const TruthTable& f, const TruthTable& g, const CellMeasure& measure) {
    if (f.arity() != g.arity() || f.n_in() != g.n_in() || f.n_out() != g.n_out())
        throw DimensionError("tables are not dimension-compatible");
    if (measure.arity() != f.arity() || measure.n() != f.n_in())
        throw DimensionError("measure does not match table shape");
}

}  // namespace

double agreement(const TruthTable& f, const TruthTable& g, const CellMeasure& measure) {
    check_compatible(f, g, measure);
    double mass = 0;
    for (std::size_t c = 0; c < f.size(); ++c)
        if (f.at(c) == g.at(c)) mass += measure.weight(c);
    return mass / measure.total();
}

double agreement(const TruthTable& f, const TruthTable& g, std::span<const double> marginal) {
    if (static_cast<int>(marginal.size()) != f.n_in()) throw DimensionError("marginal length must equal n");
    return agreement(f, g, CellMeasure::product(f.arity(), marginal));
}

std::vector<std::vector<Letter>> all_permutations(int n) {
    if (n < 1 || n > 8) throw PreconditionError("permutation scans support 1 <= n <= 8");
    std::vector<Letter> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<Letter>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::vector<std::vector<double>>> coordinate_profile(const TruthTable& f,
                                                                  const CellMeasure& measure) {
    const int p = f.arity(), n = f.n_in();
    std::vector counts(static_cast<std::size_t>(p),
                       std::vector(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(f.n_out()), 0.0)));
    Word x(static_cast<std::size_t>(p));
    for (std::uint64_t c = 0; c < f.size(); ++c) {
        decode_into(c, n, x);
        const double w = measure.weight(c);
        for (int k = 0; k < p; ++k) counts[k][x[k] - 1][f.at(c) - 1] += w;
    }
    return counts;
}

FunctionShape classify_function(const TruthTable& f) {
    return classify_function(f, CellMeasure::uniform(f.arity(), f.n_in()));
}

FunctionShape classify_function(const TruthTable& f, const CellMeasure& measure) {
    if (f.n_in() != f.n_out()) throw DimensionError("classify_function needs n_in = n_out");
    if (measure.arity() != f.arity() || measure.n() != f.n_in())
        throw DimensionError("measure does not match table shape");
    const int p = f.arity(), n = f.n_in();
    FunctionShape shape;

    std::vector<double> value_mass(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t c = 0; c < f.size(); ++c) value_mass[f.at(c) - 1] += measure.weight(c);
    const auto best_value = std::max_element(value_mass.begin(), value_mass.end()) - value_mass.begin();
    shape.nearest_constant = static_cast<Letter>(best_value) + 1;
    shape.dist_to_nearest_constant = 1.0 - value_mass[best_value] / measure.total();
    if (std::all_of(f.values().begin(), f.values().end(), [&](auto v) { return v == f.at(0); }))
        shape.constant = f.at(0);

    // Exact single-coordinate dependence, read off the table directly.
    for (int k = 1; k <= p && !shape.dictator && !shape.other_unary && !shape.constant; ++k) {
        std::vector<Letter> map(static_cast<std::size_t>(n), 0);
        bool unary = true;
        Word x(static_cast<std::size_t>(p));
        for (std::uint64_t c = 0; c < f.size() && unary; ++c) {
            decode_into(c, n, x);
            Letter& slot = map[x[k - 1] - 1];
            if (slot == 0) slot = f.at(c);
            else if (slot != f.at(c)) unary = false;
        }
        if (!unary) continue;
        auto sorted = map;
        std::sort(sorted.begin(), sorted.end());
        bool bijective = true;
        for (int a = 0; a < n; ++a)
            if (sorted[a] != a + 1) bijective = false;
        if (bijective) shape.dictator = Dictator{k, map};
        else shape.other_unary = UnaryOther{k, map};
    }

    if (p == 0) {
        shape.nearest_dictator = Dictator{0, {}};
        shape.dist_to_nearest_dictator = 1.0;
        return shape;
    }
    if (n > kMaxDictatorAlphabet)
        throw DimensionError("dictator scan limited to n <= " + std::to_string(kMaxDictatorAlphabet));

    const auto counts = coordinate_profile(f, measure);
    const auto perms = all_permutations(n);
    double best = -1;
    for (int k = 0; k < p; ++k)
        for (const auto& perm : perms) {
            double agree = 0;
            for (int a = 0; a < n; ++a) agree += counts[k][a][perm[a] - 1];
            if (agree > best) {
                best = agree;
                shape.nearest_dictator = Dictator{k + 1, perm};
            }
        }
    shape.dist_to_nearest_dictator = 1.0 - best / measure.total();
    if (shape.dictator) {
        shape.nearest_dictator = *shape.dictator;
        shape.dist_to_nearest_dictator = 0.0;
    }
    return shape;
}

}  // namespace polyagg
