#pragma once

#include <map>
#include <utility>
#include <vector>

#include "polyagg/function_family.hpp"
#include "polyagg/poly_engine.hpp"

namespace polyagg {

/// Object classes are ascending lists of 1-based objects; classes are
/// ordered by their smallest element.
using ObjectClass = std::vector<int>;

struct EquivStructure {
    int objects = 0;
    int p = 0;
    std::vector<ObjectClass> classes;
    /// Voter set S (1-based, ascending) for each class of size >= 3.
    std::map<ObjectClass, std::vector<int>> oligarchs;
    /// Classes of size exactly 2, as (i, j) with i < j.
    std::vector<std::pair<int, int>> free_pairs;
};

/// ind-conjunction over S on {0,1}^p, as letters (1 = 0, 2 = 1). Empty S
/// gives the constant 1.
TruthTable conjunction_table(int p, std::span<const int> S);

/// If `t` is a conjunction over some S, returns S.
std::optional<std::vector<int>> as_conjunction(const TruthTable& t);

/// Structure of a polymorphism of Equiv_objects over pair coordinates.
/// Throws PreconditionError if F is not a polymorphism, InternalContradiction
/// if the relation is not transitive or a large class is not one oligarchy.
EquivStructure equiv_structure(const FunctionFamily& F, int objects, const ExecOptions& options = {});

/// Family whose cross-class pairs are constant 0, large classes use the
/// conjunction over their S, and size-2 classes use the supplied table.
FunctionFamily build_equiv_family(int objects, int p, const std::vector<ObjectClass>& classes,
                                  const std::map<ObjectClass, std::vector<int>>& oligarchs,
                                  const std::map<std::pair<int, int>, TruthTable>& free_tables);

}  // namespace polyagg
