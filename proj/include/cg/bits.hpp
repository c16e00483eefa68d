#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cg {

// A set of events, one bit per event index.
using Mask = std::uint64_t;

inline constexpr int max_events = 64;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return (m >> i) & 1u; }
inline constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline int count(Mask m) { return std::popcount(m); }

inline Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }

inline std::vector<int> members(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

template <class F>
inline void for_each_bit(Mask m, F&& f) {
    while (m) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

}  // namespace cg
