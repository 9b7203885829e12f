#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polyagg/function_family.hpp"
#include "polyagg/predicate.hpp"

namespace polyagg {

/// Work limits. Budgets count evaluated tuples or search nodes, never time.
struct ExecOptions {
    std::uint64_t budget = 1'000'000'000;
    unsigned threads = 1;
};

struct PolyCheck {
    bool holds = true;
    /// Lexicographically first violating (x^(1), ..., x^(p)), rows of P.
    std::optional<std::vector<Word>> counterexample;
    std::uint64_t tuples_checked = 0;
};

/// Exact check over all |P|^p row tuples. Throws BudgetExceeded when
/// |P|^p exceeds options.budget.
PolyCheck is_polymorphism(const FunctionFamily& F, const Predicate& P, const ExecOptions& options = {});

struct EnumerationStats {
    std::uint64_t nodes = 0;
    std::uint64_t families = 0;
};

/// Sink for enumerated families; return false to stop early.
using FamilySink = std::function<bool(const FunctionFamily&)>;

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

/// Every polymorphism of P of arity p, exactly once, in lexicographic order
/// of the concatenated tables (table 1 cell 0 first). Backtracking over
/// cells with generalized arc consistency on the |P|^p column constraints.
/// options.budget counts search nodes; on overflow the families of the
/// completed top-level branches have been emitted and BudgetExceeded is thrown.
EnumerationStats enumerate_polymorphisms(const Predicate& P, int p, const FamilySink& sink,
                                         ExecOptions options = {kDefaultNodeBudget, 1});

std::vector<FunctionFamily> all_polymorphisms(const Predicate& P, int p,
                                              ExecOptions options = {kDefaultNodeBudget, 1});

struct Dictatorial {
    int coordinate;
    std::vector<Letter> perm;
};
struct CertificateVerdict {
    PartialAssignment rho;
};
struct Nontrivial {
    std::string note;
};
using TrivialityVerdict = std::variant<Dictatorial, CertificateVerdict, Nontrivial>;

std::string_view verdict_tag(const TrivialityVerdict& v) noexcept;

/// Dictatorial if every table is the same pi(x_k); otherwise Certificate if
/// the constant tables induce a certificate of P; otherwise Nontrivial.
/// Throws PreconditionError when F is not a polymorphism of P.
TrivialityVerdict classify_trivial(const FunctionFamily& F, const Predicate& P, const ExecOptions& options = {});

/// Hall violator for one letter r outside C.
struct LetterWitness {
    Letter r;
    std::vector<Letter> X;  ///< X_r, ascending
    std::vector<int> I;     ///< I_r = [m] \ N(X_r), ascending, 1-based
};

struct HallWitness {
    std::vector<int> constant_coordinates;  ///< I
    std::vector<Letter> constant_letters;   ///< C
    int c = 0;
    std::vector<LetterWitness> letters;     ///< one per r not in C, ascending r
    long long delta = 0;                    ///< sum_r |I_r| |X_r|
    long long lower_bound = 0;              ///< (n - c) m
    long long upper_bound = 0;              ///< (m - c) n
};

/// For a p = 1 polymorphism of Surj_{m,n} with m > n >= 3 that is not of
/// certificate type: per r not in C, builds the graph (s, i) ~ f_i(s) != r,
/// takes a maximum matching and reads off the König violator. Throws
/// PreconditionError on bad input and InternalContradiction if a
/// left-saturating matching exists.
HallWitness hall_witness(const FunctionFamily& F);

/// Checks every structural invariant of a witness against F; returns the
/// first violation as text, or nullopt.
std::optional<std::string> check_hall_witness(const FunctionFamily& F, const HallWitness& w);

/// Integer inequalities ruling out 1 <= c <= n-2:
/// first:  (n-c)(c+1)(m-c) > (m-c)n
/// second: (n-c)(n-1)(m-n+2) > (m-c)n
struct ConstantRuleOut {
    bool first;
    bool second;
};
ConstantRuleOut constant_rule_out(long long m, long long n, long long c);

/// For flags (false = id, true = negation) returns f_i = AND when id and OR
/// when negated; p = 2 over {0,1} encoded as letters {1,2}.
FunctionFamily construct_andor_family(std::span<const bool> negated);

/// Line predicate {(pi_1(s), ..., pi_m(s)) : s in {0,1}} for the same flags.
Predicate andor_line_predicate(std::span<const bool> negated);

/// f_i(a) = pi_i(sigma) if a = pi_i(sigma), else pi_i(tau); p = 1, n >= 3.
FunctionFamily construct_collapse_family(std::span<const Word> perms, Letter sigma, Letter tau);

}  // namespace polyagg
