#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyagg/function_family.hpp"

namespace polyagg {

/// Real-valued table on [n]^p, same cell order as TruthTable.
class RealTable {
public:
    RealTable(int p, int n, std::vector<double> values);
    static RealTable zeros(int p, int n);
    static RealTable from_boolean(const BooleanTable& f);

    int arity() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    double at(std::uint64_t cell) const noexcept { return values_[cell]; }
    double& at(std::uint64_t cell) noexcept { return values_[cell]; }
    std::span<const double> values() const noexcept { return values_; }

    double mean() const noexcept;

private:
    int p_;
    int n_;
    std::vector<double> values_;
};

/// E[g h] under the uniform measure.
double inner(const RealTable& g, const RealTable& h);
inline double norm2(const RealTable& g) { return inner(g, g); }

/// Average over coordinate t (0-based): (E_t g)(x) = mean_b g(x with x_t = b).
RealTable average_out(const RealTable& g, int t);

struct DegreeDecomposition {
    int p = 0;
    int n = 0;
    std::vector<RealTable> parts;  ///< f^{=0}, ..., f^{=p}
    double mean = 0;
    double squared_norm = 0;

    double part_norm2(int d) const { return norm2(parts.at(d)); }
};

/// Pure-degree parts f^{=d} = sum_{|S|=d} prod_{t in S}(I - E_t) prod_{t not in S} E_t f.
/// Needs n >= 2.
DegreeDecomposition decompose(const RealTable& f);

inline constexpr std::uint64_t kDefaultPairBudget = 10'000'000;

/// E[f(x) g(y)] with (x_t, y_t) uniform over ordered pairs of distinct
/// letters, independently per coordinate. Enumerates the (n(n-1))^p pairs
/// when that fits `budget`, otherwise applies (J - I) per coordinate to g.
double pair_expectation_direct(const BooleanTable& f, const BooleanTable& g,
                               std::uint64_t budget = kDefaultPairBudget);

/// sum_d (-1/(n-1))^d <f^{=d}, g^{=d}>.
double pair_expectation_spectral(const DegreeDecomposition& df, const DegreeDecomposition& dg);

/// Probability that both fire on a coordinatewise-distinct pair.
double cross_independence(const BooleanTable& f, const BooleanTable& g,
                          std::uint64_t budget = kDefaultPairBudget);

struct HoffmanReport {
    int n = 0;
    double mu_f = 0;
    double mu_g = 0;
    double epsilon = 0;            ///< cross_independence(f, g)
    double lhs = 0;                ///< n(n-2) mu_f mu_g
    double rhs = 0;                ///< 1 - mu_f - mu_g (the sqrt(eps) term is reported separately)
    double sqrt_epsilon = 0;
    double slack = 0;              ///< rhs - lhs
    double exact_lhs = 0;          ///< (n-1)^2 mu_f mu_g
    double exact_rhs = 0;          ///< (1 - mu_f)(1 - mu_g)
    double exact_slack = 0;
    bool cross_independent = false;  ///< epsilon == 0 within 1e-12
    bool exact_holds = false;        ///< exact_lhs <= exact_rhs + 1e-12 (meaningful when cross_independent)
    bool tight = false;              ///< |exact_slack| <= 1e-12
    /// tight with one mean 0 and the other 1.
    bool degenerate = false;
    /// cross_independent, tight, and both means strictly inside (0, 1).
    bool equality = false;
};

HoffmanReport hoffman_check(const BooleanTable& f, const BooleanTable& g,
                            std::uint64_t budget = kDefaultPairBudget);

struct IndicatorCandidate {
    int k = 0;             ///< 1-based coordinate
    Letter s = 0;
    bool complement = false;
    double distance = 1.0;
};

struct IndicatorRecovery {
    IndicatorCandidate best;        ///< over ind{x_k = s} and complements
    IndicatorCandidate best_plain;  ///< over ind{x_k = s} only
    int constant_value = 0;         ///< 0 or 1
    double constant_distance = 1.0;
    bool constant_better = false;   ///< a constant strictly beats every (k, s) form
};

/// Exact scan of the 2pn + 2 single-coordinate candidates. Ties go to the
/// smallest k, then s, then the plain form. Needs p >= 1.
IndicatorRecovery recover_dictator_indicator(const BooleanTable& f);

struct MuMatrix {
    int n = 0;
    std::vector<std::vector<double>> entries;  ///< [i][r], 0-based
    std::vector<double> row_sums;
    std::vector<double> column_sums;
    double row_deviation = 0;     ///< max_i |sum_r mu_{i,r} - 1|
    double column_deviation = 0;  ///< max_r |sum_i mu_{i,r} - 1|
};

/// Exact indicator means; needs m = n.
MuMatrix mu_matrix(const FunctionFamily& F);

enum class MuCase { Concentrated, Spread, Unclassified };
std::string_view to_string(MuCase c) noexcept;

struct LetterProfile {
    Letter r = 0;
    MuCase tag = MuCase::Unclassified;
    int concentrated_on = 0;                  ///< i_r for the concentrated case
    std::vector<IndicatorCandidate> fits;     ///< per coordinate i, spread case
};

struct MuProfile {
    double epsilon = 0;
    double tolerance = 0;
    std::vector<LetterProfile> letters;
    /// Every letter concentrated on distinct coordinates.
    bool certificate_like = false;
    /// Every letter spread, one common k, s_{i,r} common over i and distinct over r.
    bool dictator_consistent = false;
    std::optional<Dictator> dictator;         ///< pi(s_r) = r
    std::string note;
};

/// Per-letter case split of the mu matrix. Tolerance defaults to eps^{1/4}.
MuProfile mu_profile(const FunctionFamily& F, double epsilon, std::optional<double> tolerance = std::nullopt);

}  // namespace polyagg
