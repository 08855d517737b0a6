#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace twlab {

/// splitmix64 finaliser; also the per-case seed mixing function.
constexpr auto mix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mix64(seed ^ mix64(index)): distinct, well-spread seeds per case.
constexpr auto case_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t
{
    return mix64(seed ^ mix64(index));
}

/// Small deterministic generator (splitmix64 stream). The standard
/// distributions are implementation-defined, so sampling helpers live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) :
        state_(seed)
    {
    }

    auto next() -> std::uint64_t
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        auto z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, bound); bound must be positive.
    auto below(std::uint64_t bound) -> std::uint64_t
    {
        // rejection keeps it unbiased
        auto limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t r;
        do
            r = next();
        while (r >= limit);
        return r % bound;
    }

    /// Uniform on [lo, hi].
    auto between(std::int64_t lo, std::int64_t hi) -> std::int64_t
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    auto unit() -> double
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    auto bernoulli(double p) -> bool
    {
        if (p <= 0.0)
            return false;
        if (p >= 1.0)
            return true;
        return unit() < p;
    }

    template <typename T>
    void shuffle(std::vector<T> &items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::uint64_t state_;
};

} // namespace twlab
