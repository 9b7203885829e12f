#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polyagg/radix.hpp"

namespace polyagg {

/// Truth table of f: [n_in]^p -> [n_out]. Cell index is the mixed-radix
/// encoding of the argument with the first argument least significant.
class TruthTable {
public:
    TruthTable(int p, int n_in, int n_out, std::vector<std::uint8_t> values);

    static TruthTable constant(int p, int n, Letter c);
    /// f(x) = perm(x_k); perm is the image list (perm(1), ..., perm(n)).
    static TruthTable dictator(int p, int n, int k, std::span<const Letter> perm);

    template <class F>
    static TruthTable tabulate(int p, int n_in, int n_out, F&& f) {
        const std::uint64_t cells = checked_cells(p, n_in);
        std::vector<std::uint8_t> values(cells);
        Word x(static_cast<std::size_t>(p));
        for (std::uint64_t c = 0; c < cells; ++c) {
            decode_into(c, n_in, x);
            values[c] = static_cast<std::uint8_t>(f(std::span<const Letter>(x)));
        }
        return TruthTable(p, n_in, n_out, std::move(values));
    }

    int arity() const noexcept { return p_; }
    int n_in() const noexcept { return n_in_; }
    int n_out() const noexcept { return n_out_; }
    std::size_t size() const noexcept { return values_.size(); }

    Letter at(std::uint64_t cell) const noexcept { return values_[cell]; }
    Letter operator()(std::span<const Letter> x) const;
    std::span<const std::uint8_t> values() const noexcept { return values_; }

    /// Copy with one cell replaced.
    TruthTable with_cell(std::uint64_t cell, Letter value) const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

    /// n^p, throwing DimensionError above the explicit-table cap.
    static std::uint64_t checked_cells(int p, int n);

private:
    int p_;
    int n_in_;
    int n_out_;
    std::vector<std::uint8_t> values_;
};

/// {0,1}-valued table on [n]^p.
class BooleanTable {
public:
    BooleanTable(int p, int n, std::vector<std::uint8_t> bits);

    /// Reads a table with n_out = 2 under 1 -> 0, 2 -> 1.
    static BooleanTable from_letters(const TruthTable& t);

    int arity() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return bits_.size(); }
    int at(std::uint64_t cell) const noexcept { return bits_[cell]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::uint64_t count() const noexcept;
    /// Mean under the uniform distribution.
    double mean() const noexcept { return static_cast<double>(count()) / static_cast<double>(size()); }

    friend bool operator==(const BooleanTable&, const BooleanTable&) = default;

private:
    int p_;
    int n_;
    std::vector<std::uint8_t> bits_;
};

/// The mechanism f_1..f_m: m tables sharing (p, n) with n_in = n_out = n.
/// `table(i)` is 0-based; operations taking a `coordinate` are 1-based.
class FunctionFamily {
public:
    explicit FunctionFamily(std::vector<TruthTable> tables);

    int m() const noexcept { return static_cast<int>(tables_.size()); }
    int p() const noexcept { return tables_.front().arity(); }
    int n() const noexcept { return tables_.front().n_in(); }
    const TruthTable& table(std::size_t i) const { return tables_.at(i); }
    const std::vector<TruthTable>& tables() const noexcept { return tables_; }

    static FunctionFamily uniform(int m, const TruthTable& t) {
        return FunctionFamily(std::vector<TruthTable>(static_cast<std::size_t>(m), t));
    }

    friend bool operator==(const FunctionFamily&, const FunctionFamily&) = default;

private:
    std::vector<TruthTable> tables_;
};

/// Applies the family column-wise to p input rows, each of length m.
Word eval_family(const FunctionFamily& F, std::span<const Word> rows);

/// Pointwise 1{f_i(x) = r}; coordinate and letter are 1-based.
BooleanTable indicator(const FunctionFamily& F, int coordinate, Letter r);

/// Probability measure on the cells of [n]^p. The uniform measure keeps
/// integer weights so counts stay exact; product measures carry the
/// per-cell probabilities.
class CellMeasure {
public:
    static CellMeasure uniform(int p, int n);
    /// Product of a per-letter marginal; must sum to 1 within 1e-12.
    static CellMeasure product(int p, std::span<const double> marginal);

    int arity() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    bool is_uniform() const noexcept { return weights_.empty(); }
    double weight(std::uint64_t cell) const noexcept { return weights_.empty() ? 1.0 : weights_[cell]; }
    double total() const noexcept { return total_; }

private:
    int p_ = 0;
    int n_ = 0;
    std::vector<double> weights_;
    double total_ = 1.0;
};

/// Pr_{x ~ marginal^p}[f(x) = g(x)].
double agreement(const TruthTable& f, const TruthTable& g, std::span<const double> marginal);
double agreement(const TruthTable& f, const TruthTable& g, const CellMeasure& measure);

struct Dictator {
    int coordinate;           ///< 1-based k
    std::vector<Letter> perm; ///< (pi(1), ..., pi(n))
    friend bool operator==(const Dictator&, const Dictator&) = default;
};

/// Dependence on a single coordinate through a non-bijective, non-constant map.
struct UnaryOther {
    int coordinate;
    std::vector<Letter> map;
};

struct FunctionShape {
    std::optional<Letter> constant;
    std::optional<Dictator> dictator;
    std::optional<UnaryOther> other_unary;
    Letter nearest_constant = 1;
    double dist_to_nearest_constant = 1.0;
    Dictator nearest_dictator;
    double dist_to_nearest_dictator = 1.0;
};

/// Largest n for which the p * n! dictator candidates are scanned.
inline constexpr int kMaxDictatorAlphabet = 8;

/// Exact shape detection and nearest constant / dictator under `measure`
/// (uniform by default). Ties resolve to the smallest letter, coordinate,
/// and lexicographically first permutation.
FunctionShape classify_function(const TruthTable& f);
FunctionShape classify_function(const TruthTable& f, const CellMeasure& measure);

/// counts[k][a][b] = measure of cells with x_k = a and f(x) = b (0-based k, a, b).
std::vector<std::vector<std::vector<double>>> coordinate_profile(const TruthTable& f,
                                                                  const CellMeasure& measure);

/// All permutations of 1..n in lexicographic order.
std::vector<std::vector<Letter>> all_permutations(int n);

}  // namespace polyagg
