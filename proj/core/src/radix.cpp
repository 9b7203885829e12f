#include "polyagg/radix.hpp"

#include <string>

#include "polyagg/errors.hpp"

namespace polyagg {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > cap / base) return cap + 1;
        result *= base;
        if (result > cap) return cap + 1;
    }
    return result;
}

std::uint64_t encode(std::span<const Letter> word, int n) {
    std::uint64_t index = 0;
    std::uint64_t scale = 1;
    for (Letter x : word) {
        if (x < 1 || x > n)
            throw DimensionError("letter " + std::to_string(x) + " outside 1.." + std::to_string(n));
        index += static_cast<std::uint64_t>(x - 1) * scale;
        scale *= static_cast<std::uint64_t>(n);
    }
    return index;
}

void decode_into(std::uint64_t index, int n, std::span<Letter> out) {
    for (auto& x : out) {
        x = static_cast<Letter>(index % static_cast<std::uint64_t>(n)) + 1;
        index /= static_cast<std::uint64_t>(n);
    }
}

Word decode(std::uint64_t index, int length, int n) {
    Word word(static_cast<std::size_t>(length));
    decode_into(index, n, word);
    return word;
}

void check_word(std::span<const Letter> word, int length, int n, const char* what) {
    if (static_cast<int>(word.size()) != length)
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(length)
                             + ", got " + std::to_string(word.size()));
    for (Letter x : word)
        if (x < 1 || x > n)
            throw DimensionError(std::string(what) + ": letter " + std::to_string(x)
                                 + " outside 1.." + std::to_string(n));
}

}  // namespace polyagg
