#include "polyagg/equiv.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polyagg/errors.hpp"

namespace polyagg {

TruthTable conjunction_table(int p, std::span<const int> S) {
    for (int s : S)
        if (s < 1 || s > p) throw DimensionError("voter index outside 1..p");
    return TruthTable::tabulate(p, 2, 2, [&](std::span<const Letter> x) {
        for (int s : S)
            if (x[s - 1] != 2) return 1;
        return 2;
    });
}

std::optional<std::vector<int>> as_conjunction(const TruthTable& t) {
    if (t.n_in() != 2 || t.n_out() != 2) return std::nullopt;
    const int p = t.arity();
    const std::uint64_t all_ones = t.size() - 1;
    if (t.at(all_ones) != 2) return std::nullopt;
    std::vector<int> S;
    for (int s = 0; s < p; ++s)
        if (t.at(all_ones - (std::uint64_t{1} << s)) == 1) S.push_back(s + 1);
    if (conjunction_table(p, S) != t) return std::nullopt;
    return S;
}

namespace {

bool is_zero(const TruthTable& t) {
    return std::all_of(t.values().begin(), t.values().end(), [](auto v) { return v == 1; });
}

std::vector<int> class_index(int objects, const std::vector<ObjectClass>& classes) {
    std::vector<int> owner(static_cast<std::size_t>(objects) + 1, -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].empty()) throw DimensionError("empty class in partition");
        for (int i : classes[c]) {
            if (i < 1 || i > objects) throw DimensionError("object outside 1..m in partition");
            if (owner[i] != -1) throw DimensionError("object " + std::to_string(i) + " appears in two classes");
            owner[i] = static_cast<int>(c);
        }
    }
    for (int i = 1; i <= objects; ++i)
        if (owner[i] == -1) throw DimensionError("object " + std::to_string(i) + " missing from partition");
    return owner;
}

}  // namespace

EquivStructure equiv_structure(const FunctionFamily& F, int objects, const ExecOptions& options) {
    if (objects < 3) throw PreconditionError("equiv_structure needs m >= 3 objects");
    const auto pred = make_builtin(PredicateKind::Equiv, objects);
    if (F.m() != pred.arity() || F.n() != 2)
        throw DimensionError("family must have C(m,2) binary tables");
    if (!is_polymorphism(F, pred, options).holds)
        throw PreconditionError("family is not a polymorphism of Equiv_" + std::to_string(objects));

    EquivStructure out;
    out.objects = objects;
    out.p = F.p();
    auto related = [&](int i, int j) { return !is_zero(F.table(pair_coordinate(i, j, objects))); };

    // Union of the relation's components; transitivity is checked after.
    std::vector<int> parent(static_cast<std::size_t>(objects) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [i, j] : pair_list(objects))
        if (related(i, j)) parent[find(j)] = find(i);
    std::map<int, ObjectClass> by_root;
    for (int i = 1; i <= objects; ++i) by_root[find(i)].push_back(i);
    for (auto& [root, cls] : by_root) out.classes.push_back(cls);
    std::sort(out.classes.begin(), out.classes.end());

    for (const auto& cls : out.classes) {
        for (std::size_t a = 0; a < cls.size(); ++a)
            for (std::size_t b = a + 1; b < cls.size(); ++b)
                if (!related(cls[a], cls[b]))
                    throw InternalContradiction("relation is not transitive at pair {" + std::to_string(cls[a]) + ","
                                                + std::to_string(cls[b]) + "}");
        if (cls.size() == 2) {
            out.free_pairs.emplace_back(cls[0], cls[1]);
        } else if (cls.size() >= 3) {
            const auto& t = F.table(pair_coordinate(cls[0], cls[1], objects));
            const auto S = as_conjunction(t);
            if (!S) throw InternalContradiction("class pair function is not a conjunction");
            for (std::size_t a = 0; a < cls.size(); ++a)
                for (std::size_t b = a + 1; b < cls.size(); ++b)
                    if (F.table(pair_coordinate(cls[a], cls[b], objects)) != t)
                        throw InternalContradiction("pair functions differ inside a class");
            out.oligarchs[cls] = *S;
        }
    }
    return out;
}

FunctionFamily build_equiv_family(int objects, int p, const std::vector<ObjectClass>& classes,
                                  const std::map<ObjectClass, std::vector<int>>& oligarchs,
                                  const std::map<std::pair<int, int>, TruthTable>& free_tables) {
    if (objects < 2) throw DimensionError("need at least 2 objects");
    const auto owner = class_index(objects, classes);
    std::size_t large = 0, pairs = 0;
    for (const auto& cls : classes) {
        if (cls.size() >= 3) {
            ++large;
            if (!oligarchs.count(cls)) throw PreconditionError("missing voter set for a class of size >= 3");
        } else if (cls.size() == 2) {
            ++pairs;
            if (!free_tables.count({std::min(cls[0], cls[1]), std::max(cls[0], cls[1])}))
                throw PreconditionError("missing free table for a class of size 2");
        }
    }
    if (oligarchs.size() != large) throw PreconditionError("voter set given for a class that is not of size >= 3");
    if (free_tables.size() != pairs) throw PreconditionError("free table given for a pair that is not a class");

    const auto zero = TruthTable::constant(p, 2, 1);
    std::vector<TruthTable> tables;
    for (auto [i, j] : pair_list(objects)) {
        if (owner[i] != owner[j]) {
            tables.push_back(zero);
            continue;
        }
        const auto& cls = classes[owner[i]];
        if (cls.size() == 2) {
            const auto& t = free_tables.at({i, j});
            if (t.arity() != p || t.n_in() != 2 || t.n_out() != 2)
                throw DimensionError("free table must be {0,1}^p -> {0,1}");
            tables.push_back(t);
        } else {
            tables.push_back(conjunction_table(p, oligarchs.at(cls)));
        }
    }
    return FunctionFamily(std::move(tables));
}

}  // namespace polyagg
