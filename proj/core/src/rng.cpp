#include "mixsch/rng.hpp"

namespace mixsch {

namespace {

// FNV-1a, fixed so stream seeds do not depend on std::hash.
std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
    : engine_(splitmix(splitmix(seed) ^ fnv1a(stream) ^ splitmix(index + 0x632be59bd9b4e019ull))) {}

double StreamRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace mixsch
