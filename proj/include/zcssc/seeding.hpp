#pragma once

#include <cstdint>
#include <initializer_list>

namespace zcssc {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream seed for a (master, index...) tuple. Depends only on the values,
// never on which worker evaluates it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(master);
    for (auto v : path) h = mix64(h ^ mix64(v + 0x632BE59BD9B4E019ull));
    return h;
}

}  // namespace zcssc
