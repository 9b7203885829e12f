#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyagg/function_family.hpp"
#include "polyagg/poly_engine.hpp"
#include "polyagg/predicate.hpp"

namespace polyagg {

/// Full-support distribution on the members of a predicate, sampled i.i.d.
/// for each of the p rows.
class ProfileDistribution {
public:
    static ProfileDistribution uniform(Predicate P);
    /// Weights in member order; must be positive and sum to 1 within 1e-12.
    static ProfileDistribution weighted(Predicate P, std::vector<double> weights);

    const Predicate& predicate() const noexcept { return P_; }
    bool is_uniform() const noexcept { return uniform_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double weight(std::size_t k) const { return weights_.at(k); }

    /// Invariance under every letter permutation applied to all coordinates.
    /// Exhaustive over n! permutations; n <= 6.
    bool letter_symmetric() const;
    /// Invariance under relabelling objects of Equiv/Lin predicates.
    /// Exhaustive over m! permutations; m <= 6. False for other predicates.
    bool object_symmetric() const;

    /// Distribution of coordinate i (1-based) over letters 1..n.
    std::vector<double> marginal(int coordinate) const;

private:
    ProfileDistribution(Predicate P, std::vector<double> weights, bool uniform);

    Predicate P_;
    std::vector<double> weights_;
    bool uniform_;
};

enum class DeficiencyMethod { Exact, MonteCarlo };

struct DeficiencyOptions {
    DeficiencyMethod method = DeficiencyMethod::Exact;
    std::uint64_t budget = 10'000'000'000ULL;  ///< tuples for the exact sum
    std::optional<std::uint64_t> seed;         ///< required for Monte Carlo
    std::uint64_t samples = 1'000'000;
    unsigned threads = 1;
};

struct DeficiencyReport {
    double delta = 0;
    DeficiencyMethod method = DeficiencyMethod::Exact;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;       ///< Monte Carlo draws, or |support|^p for exact
    double half_width = 0;           ///< 99% normal approximation; 0 for exact
    std::uint64_t failures = 0;      ///< failing draws (Monte Carlo) or failing tuples (exact, uniform)
    std::optional<std::vector<Word>> counterexample;  ///< first failing tuple seen
};

/// z_{0.995}.
inline constexpr double kZ99 = 2.5758293035489004;

/// 1 - Pr_{D^p}[F(x) in P]. Exact sums in lexicographic tuple order with a
/// memo on the last row; Monte Carlo splits the draws into fixed chunks
/// with per-chunk substreams so the result does not depend on threads.
DeficiencyReport deficiency(const FunctionFamily& F, const ProfileDistribution& D,
                            const DeficiencyOptions& options = {});

struct DictatorFit {
    Dictator dictator;
    std::vector<double> distances;  ///< per coordinate
    double max_distance = 1.0;
};

struct CertificateFit {
    PartialAssignment rho;                ///< minimal certificate
    std::vector<Letter> completion;       ///< rho plus each free coordinate's nearest constant
    std::vector<double> distances;        ///< per coordinate, 0 off dom rho
    double max_distance = 1.0;
};

struct OligarchyFit {
    std::vector<int> S;                   ///< 1-based voters, ascending
    std::vector<double> distances;        ///< per pair coordinate
    double max_distance = 1.0;
};

struct NearestReport {
    std::optional<DictatorFit> dictator;     ///< absent when n exceeds the scan limit
    std::optional<CertificateFit> certificate;  ///< absent when P has no certificate scan
    std::optional<OligarchyFit> oligarchy;   ///< Equiv predicates only
    std::string verdict;                     ///< "dictatorial", "certificate", "oligarchy" or "none"
    double verdict_distance = 1.0;
};

/// Distances are measured per coordinate under the p-th power of that
/// coordinate's marginal (uniform when D is absent). The certificate scan
/// covers every minimal certificate; coordinates outside dom rho cost 0.
/// Ties: dictators by (k, pi) order, certificates by certificate order,
/// oligarchies by (|S|, S); across classes dictator, certificate, oligarchy.
NearestReport nearest_trivial(const FunctionFamily& F, const Predicate& P,
                              const ProfileDistribution* D = nullptr);

struct Hypotheses {
    bool full_support = true;
    bool letter_symmetric = false;
    bool object_symmetric = false;
    bool flexible = false;
    bool surj_main = false;           ///< Surj_{m,n}, letter-symmetric mu
    bool flexible_reduction = false;  ///< flexible P (or binary), any full-support mu
    bool perm_spectral = false;       ///< Perm_n, n >= 3, uniform mu
    bool equiv_main = false;          ///< Equiv_m, m >= 3, object-symmetric mu
};

struct QuantReport {
    DeficiencyReport deficiency;
    /// 1 - max_c Pr_uniform[f_i = c].
    std::vector<double> margins;
    /// Equiv only: Pr[f_i = 0] under the coordinate's marginal to the p.
    std::vector<double> zero_mass;
    NearestReport nearest;
    Hypotheses hypotheses;
};

QuantReport quantitative_report(const FunctionFamily& F, const ProfileDistribution& D,
                                const DeficiencyOptions& options = {});

/// f_i(x) = j if x_1 = ... = x_p = j, else min(i, n).
FunctionFamily outline_counterexample(int m, int n, int p);

/// Every cell is replaced by a uniform letter with probability `rate`. The
/// draws per cell do not depend on rate, so perturbations are nested.
FunctionFamily perturb_family(const FunctionFamily& F, double rate, std::uint64_t seed);

struct SweepRow {
    int p = 0;
    double delta = 0;
    double half_width = 0;
    double dictator_distance = 1.0;
    double certificate_distance = 1.0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace polyagg
