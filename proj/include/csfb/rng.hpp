#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace csfb::rng {

/// One step of the splitmix64 generator; advances `state` and returns the
/// next output word. Used as a seed mixer: it has full 64-bit avalanche, so
/// structured inputs (small integers, enum codes) land in unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stable 64-bit FNV-1a hash of a string; platform-independent, unlike
/// std::hash. Used to fold scheme names into stream seeds.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derives a sub-stream seed from a master seed and a list of context words
/// by folding each word through splitmix64.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> words) {
    std::uint64_t state = master;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t w : words) {
        state ^= w;
        out = splitmix64(state);
    }
    return out;
}

/// Per-trial generator: trial seed = mix(master_seed, scheme, N, trial_index).
/// Identical arguments always produce an identical stream.
inline std::mt19937_64 make_trial_rng(std::uint64_t master, std::string_view scheme,
                                      std::uint64_t n_users, std::uint64_t trial_index) {
    return std::mt19937_64(derive_seed(master, {fnv1a(scheme), n_users, trial_index}));
}

}  // namespace csfb::rng
