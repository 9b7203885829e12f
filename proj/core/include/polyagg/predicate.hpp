#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyagg/radix.hpp"

namespace polyagg {

enum class PredicateKind { Surj, Inj, Perm, Equiv, Lin };

std::string_view to_string(PredicateKind kind) noexcept;
std::optional<PredicateKind> parse_predicate_kind(std::string_view name) noexcept;

/// Provenance of a built-in predicate, kept so analyses can recognize the
/// families they have special structure for.
struct BuiltinTag {
    PredicateKind kind;
    int m;  ///< number of objects (Equiv/Lin) or arity
    int n;  ///< alphabet size requested (2 for Equiv/Lin)
    friend bool operator==(const BuiltinTag&, const BuiltinTag&) = default;
};

/// A non-empty subset of [n]^m, stored as a lexicographically sorted member
/// list plus a membership bitset over all n^m mixed-radix indices.
/// Immutable after construction.
class Predicate {
public:
    Predicate(int m, int n, std::vector<Word> members, std::string name = {},
              std::optional<BuiltinTag> builtin = std::nullopt);

    int arity() const noexcept { return m_; }
    int alphabet() const noexcept { return n_; }
    std::size_t size() const noexcept { return codes_.size(); }
    const std::string& name() const noexcept { return name_; }
    const std::optional<BuiltinTag>& builtin() const noexcept { return builtin_; }

    /// n^m.
    std::uint64_t space_size() const noexcept { return space_; }

    /// Mixed-radix indices of the members, in lexicographic order of words.
    std::span<const std::uint32_t> codes() const noexcept { return codes_; }
    Word member(std::size_t k) const { return decode(codes_.at(k), m_, n_); }
    std::vector<Word> members() const;

    /// Validates the word, then tests membership.
    bool contains(std::span<const Letter> x) const;
    bool contains_code(std::uint64_t code) const noexcept {
        return (bits_[code >> 6] >> (code & 63)) & 1u;
    }

    friend bool operator==(const Predicate& a, const Predicate& b) noexcept {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.codes_ == b.codes_;
    }

private:
    int m_;
    int n_;
    std::uint64_t space_;
    std::vector<std::uint32_t> codes_;
    std::vector<std::uint64_t> bits_;
    std::string name_;
    std::optional<BuiltinTag> builtin_;
};

/// Builds Surj_{m,n}, Inj_{m,n}, Perm_m (n must equal m), Equiv_m or Lin_m.
/// For Equiv and Lin, `m` counts objects; the predicate has C(m,2) binary
/// coordinates ordered {1,2},{1,3},...,{m-1,m}, with letter 1 meaning 0 and
/// letter 2 meaning 1. `n` is ignored for those two kinds.
Predicate make_builtin(PredicateKind kind, int m, int n = 2);

/// The predicate {(pi_1(b), ..., pi_m(b)) : b in [n]} for permutations pi_i,
/// each given as the image list (pi(1), ..., pi(n)).
Predicate line_predicate(std::span<const Word> perms, int n);

/// 0-based coordinate of the unordered pair {i, j} (1-based objects, i != j).
int pair_coordinate(int i, int j, int objects);
/// Pairs in coordinate order.
std::vector<std::pair<int, int>> pair_list(int objects);

/// A partial map from coordinates to letters; value 0 marks an unassigned
/// coordinate. Ordered by (domain size, values).
class PartialAssignment {
public:
    PartialAssignment() = default;
    explicit PartialAssignment(std::vector<Letter> values) : values_(std::move(values)) {}

    int arity() const noexcept { return static_cast<int>(values_.size()); }
    /// 1-based coordinate; 0 when unassigned.
    Letter at(int coordinate) const { return values_.at(coordinate - 1); }
    bool assigned(int coordinate) const { return at(coordinate) != 0; }
    std::vector<int> domain() const;
    int domain_size() const noexcept;
    std::span<const Letter> values() const noexcept { return values_; }

    friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
    friend bool operator<(const PartialAssignment& a, const PartialAssignment& b) {
        const int da = a.domain_size(), db = b.domain_size();
        if (da != db) return da < db;
        return a.values_ < b.values_;
    }

private:
    std::vector<Letter> values_;
};

/// Every completion of rho lies in P.
bool is_certificate(const Predicate& P, const PartialAssignment& rho);

/// All domain-minimal certificates in PartialAssignment order. Works over the
/// (n+1)^m partial patterns; throws BudgetExceeded above `pattern_budget`.
std::vector<PartialAssignment> minimal_certificates(const Predicate& P,
                                                    std::uint64_t pattern_budget = kExplicitCap);

struct CoordinateLetter {
    int coordinate;  ///< 1-based
    Letter letter;
    friend bool operator==(const CoordinateLetter&, const CoordinateLetter&) = default;
};

struct PredicateProfile {
    bool flexible = false;
    bool full_projections = false;
    bool depends_on_all = false;
    /// First (coordinate, letter) forcing membership, if any.
    std::optional<CoordinateLetter> vulnerable;
    /// All (i, sigma) with x in P  =>  x|_{i -> sigma} in P.
    std::vector<CoordinateLetter> sticky;

    bool non_degenerate() const noexcept { return full_projections && depends_on_all; }
};

PredicateProfile analyze_predicate(const Predicate& P);

}  // namespace polyagg
