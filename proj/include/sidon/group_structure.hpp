#pragma once

#include "sidon/error.hpp"
#include "sidon/field.hpp"
#include "sidon/sidon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sidon {

/// d_1 | d_2 | ... | d_r with G = Z/d_1 x ... x Z/d_r. Empty for the trivial group.
struct InvariantFactors {
    std::vector<std::uint64_t> factors;

    bool is_cyclic() const noexcept { return factors.size() <= 1; }
    std::uint64_t order() const noexcept
    {
        std::uint64_t n = 1;
        for (auto d : factors)
            n *= d;
        return n;
    }
    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i)
            s += (i ? "x" : "") + std::to_string(factors[i]);
        return s.empty() ? "1" : s;
    }
};

/// Invariant factors of the group formed by `elements` (the whole group).
///
/// For each prime l | |G| with l^e || |G|, counts c_k = #{x : l^k x = 0} for
/// k = 1..e. Writing the l-part as prod Z/l^{a_i}, log_l(c_k / c_{k-1}) is the
/// number of a_i >= k, which pins down the partition. Inconsistent counts
/// (not a power of l, non-monotone ranks, wrong total) raise NotAGroup.
template <class E>
InvariantFactors group_structure(const std::vector<E>& elements, const GroupAdapter<E>& group)
{
    const std::uint64_t n = elements.size();
    if (n == 0)
        throw Error(ErrorCode::NotAGroup, "empty element list");
    const std::string zero = group.encode(group.identity);

    // exponents[l] = partition of the l-primary part, largest first
    std::map<std::uint64_t, std::vector<unsigned>> exponents;
    for (std::uint64_t l : prime_factors(n)) {
        unsigned e = 0;
        for (std::uint64_t m = n; m % l == 0; m /= l)
            ++e;
        // killed_at[x] = least k with l^k x = 0, or e+1 if none within e steps
        std::vector<unsigned> count_at(e + 2, 0);
        for (const auto& x : elements) {
            E y = x;
            unsigned k = 0;
            while (k <= e && group.encode(y) != zero) {
                y = group.times(l, y);
                ++k;
            }
            ++count_at[k];
        }
        // c_k = number of elements killed by l^k
        std::vector<std::uint64_t> c(e + 1, 0);
        std::uint64_t running = 0;
        for (unsigned k = 0; k <= e; ++k) {
            running += count_at[k];
            c[k] = running;
        }
        auto log_l = [&](std::uint64_t v) -> unsigned {
            unsigned r = 0;
            for (; v > 1; v /= l, ++r)
                if (v % l != 0)
                    throw Error(ErrorCode::NotAGroup, "torsion count " + std::to_string(v) + " is not a power of " +
                                                          std::to_string(l));
            return r;
        };
        if (c[0] != 1)
            throw Error(ErrorCode::NotAGroup, "identity count is not 1");
        std::vector<unsigned> rank(e + 1, 0); // rank[k] = #{i : a_i >= k}
        unsigned total = 0;
        for (unsigned k = 1; k <= e; ++k) {
            unsigned lk = log_l(c[k]);
            unsigned lprev = log_l(c[k - 1]);
            if (lk < lprev)
                throw Error(ErrorCode::NotAGroup, "torsion counts decrease");
            rank[k] = lk - lprev;
            if (k > 1 && rank[k] > rank[k - 1])
                throw Error(ErrorCode::NotAGroup, "torsion ranks increase");
            total = lk;
        }
        if (total != e)
            throw Error(ErrorCode::NotAGroup, "l-primary part has the wrong order");
        std::vector<unsigned> parts;
        for (unsigned i = 0; i < rank[1]; ++i) {
            unsigned a = 0;
            while (a + 1 <= e && rank[a + 1] > i)
                ++a;
            parts.push_back(a);
        }
        exponents[l] = parts; // already descending
    }

    std::size_t r = 0;
    for (const auto& [l, parts] : exponents)
        r = std::max(r, parts.size());
    InvariantFactors out;
    out.factors.assign(r, 1);
    for (const auto& [l, parts] : exponents)
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (unsigned k = 0; k < parts[i]; ++k)
                out.factors[r - 1 - i] *= l;
    if (out.order() != n)
        throw Error(ErrorCode::NotAGroup, "invariant factors do not multiply to the group order");
    return out;
}

} // namespace sidon
