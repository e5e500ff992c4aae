#pragma once

// Sidon and symmetric-Sidon verification over an abstract finite abelian group.

#include "sidon/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sidon {

/// A finite abelian group given by its operations. `encode` must be injective
/// (canonical bytes); all collision detection keys on it. `format` is the
/// human-readable serialization used in set files and reports.
template <class E>
struct GroupAdapter {
    std::string name;
    std::function<E(const E&, const E&)> add;
    std::function<E(const E&)> neg;
    E identity;
    std::function<std::string(const E&)> encode;
    std::function<std::string(const E&)> format;

    E sub(const E& a, const E& b) const { return add(a, neg(b)); }
    bool equal(const E& a, const E& b) const { return encode(a) == encode(b); }

    E times(std::uint64_t k, const E& x) const
    {
        E result = identity;
        E base = x;
        while (k > 0) {
            if (k & 1)
                result = add(result, base);
            k >>= 1;
            if (k > 0)
                base = add(base, base);
        }
        return result;
    }
};

inline constexpr std::size_t max_reported_violations = 100;

template <class E>
struct SidonReport {
    std::size_t set_size = 0;
    bool is_sidon = true;
    /// Only meaningful when a center was checked; false otherwise.
    bool is_symmetric_sidon = false;
    std::optional<E> symmetric_center;
    /// (x1, x2, x3, x4) with x1 + x2 = x3 + x4 and {x1, x2} != {x3, x4}.
    std::vector<std::array<E, 4>> violations;
    /// Number of unordered pairs of distinct unordered pairs with equal sums.
    std::uint64_t collision_count = 0;
};

template <class E>
nlohmann::json report_to_json(const SidonReport<E>& r, const std::function<std::string(const E&)>& format)
{
    nlohmann::json j;
    j["set_size"] = r.set_size;
    j["is_sidon"] = r.is_sidon;
    j["is_symmetric_sidon"] = r.is_symmetric_sidon;
    j["symmetric_center"] = r.symmetric_center ? nlohmann::json(format(*r.symmetric_center)) : nlohmann::json();
    auto v = nlohmann::json::array();
    for (const auto& q : r.violations)
        v.push_back({format(q[0]), format(q[1]), format(q[2]), format(q[3])});
    j["violations"] = std::move(v);
    j["collision_count"] = r.collision_count;
    return j;
}

namespace detail {

template <class E>
void require_distinct(const std::vector<E>& set, const GroupAdapter<E>& group)
{
    std::unordered_set<std::string> seen;
    seen.reserve(set.size() * 2);
    for (const auto& x : set)
        if (!seen.insert(group.encode(x)).second)
            throw Error(ErrorCode::DuplicateElement, "element " + group.format(x) + " repeated");
}

/// Scans all unordered pairs i <= j once. Calls on_collision(key) for every
/// colliding pair-pair so callers can inspect where the collisions sit.
template <class E, class OnCollision>
SidonReport<E> scan_pair_sums(const std::vector<E>& set, const GroupAdapter<E>& group, OnCollision&& on_collision)
{
    require_distinct(set, group);
    struct Slot {
        std::size_t i, j;
        std::uint64_t count;
    };
    SidonReport<E> report;
    report.set_size = set.size();
    std::unordered_map<std::string, Slot> sums;
    sums.reserve(set.size() * (set.size() + 1));
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i; j < set.size(); ++j) {
            std::string key = group.encode(group.add(set[i], set[j]));
            auto [it, inserted] = sums.try_emplace(key, Slot{i, j, 1});
            if (inserted)
                continue;
            Slot& first = it->second;
            report.collision_count += first.count;
            on_collision(key, first.count);
            ++first.count;
            if (report.violations.size() < max_reported_violations)
                report.violations.push_back({set[i], set[j], set[first.i], set[first.j]});
        }
    }
    report.is_sidon = report.collision_count == 0;
    return report;
}

} // namespace detail

/// Pair-sum hashing, O(|S|^2). Throws DuplicateElement.
template <class E>
SidonReport<E> verify_sidon(const std::vector<E>& set, const GroupAdapter<E>& group)
{
    return detail::scan_pair_sums(set, group, [](const std::string&, std::uint64_t) {});
}

/// S = a - S, and every collision between distinct pairs has sum a.
template <class E>
SidonReport<E> verify_symmetric_sidon(const std::vector<E>& set, const GroupAdapter<E>& group, const E& center)
{
    const std::string center_key = group.encode(center);
    bool collisions_at_center_only = true;
    SidonReport<E> report = detail::scan_pair_sums(set, group, [&](const std::string& key, std::uint64_t) {
        if (key != center_key)
            collisions_at_center_only = false;
    });

    std::unordered_set<std::string> members;
    for (const auto& s : set)
        members.insert(group.encode(s));
    bool reflected = true;
    for (const auto& s : set)
        reflected = reflected && members.count(group.encode(group.sub(center, s))) > 0;

    report.is_symmetric_sidon = reflected && collisions_at_center_only;
    report.symmetric_center = center;
    return report;
}

/// Finds a center a with S = a - S and the symmetric-Sidon property, if any.
/// Any valid center satisfies a - s0 in S, so only s0 + S needs to be tried.
template <class E>
std::optional<E> search_symmetric_center(const std::vector<E>& set, const GroupAdapter<E>& group)
{
    if (set.empty())
        return group.identity;
    for (const auto& s : set) {
        E candidate = group.add(set.front(), s);
        if (verify_symmetric_sidon(set, group, candidate).is_symmetric_sidon)
            return candidate;
    }
    return std::nullopt;
}

inline constexpr std::size_t brute_force_limit = 64;

/// Literal check of x1 + x2 = x3 + x4 => x1 in {x3, x4} over all of S^4.
/// Throws SetTooLarge above 64 elements.
template <class E>
SidonReport<E> brute_force_sidon(const std::vector<E>& set, const GroupAdapter<E>& group)
{
    const std::size_t n = set.size();
    if (n > brute_force_limit)
        throw Error(ErrorCode::SetTooLarge, std::to_string(n) + " elements exceeds the brute-force limit");
    detail::require_distinct(set, group);

    // intern sums so the quadruple loop compares integers
    std::unordered_map<std::string, std::size_t> ids;
    std::vector<std::size_t> sum(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto key = group.encode(group.add(set[a], set[b]));
            sum[a * n + b] = ids.try_emplace(std::move(key), ids.size()).first->second;
        }

    SidonReport<E> report;
    report.set_size = n;
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t x3 = 0; x3 < n; ++x3)
                for (std::size_t x4 = 0; x4 < n; ++x4) {
                    if (sum[x1 * n + x2] != sum[x3 * n + x4] || x1 == x3 || x1 == x4)
                        continue;
                    report.is_sidon = false;
                    if (report.violations.size() < max_reported_violations)
                        report.violations.push_back({set[x1], set[x2], set[x3], set[x4]});
                }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = i; k < n; ++k)
                for (std::size_t l = (k == i ? j + 1 : k); l < n; ++l)
                    if (sum[i * n + j] == sum[k * n + l])
                        ++report.collision_count;
    return report;
}

/// Decides whether {x1, x2} and {x3, x4} have the same class sum.
template <class T>
using PairClassOracle = std::function<bool(const T&, const T&, const T&, const T&)>;

/// Sidon check for groups available only through a pair-sum equivalence test.
/// Makes one oracle call per pair of distinct unordered pairs (repetition allowed).
/// Oracle failures are rethrown with the offending indices attached. `comparisons`
/// receives the number of pair-pair calls, excluding the spot checks.
template <class T>
SidonReport<T> verify_sidon_by_oracle(const std::vector<T>& points, const PairClassOracle<T>& equivalent,
                                      std::uint64_t* comparisons = nullptr)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i; j < points.size(); ++j)
            pairs.emplace_back(i, j);

    auto call = [&](std::size_t a, std::size_t b) {
        const auto [i, j] = pairs[a];
        const auto [k, l] = pairs[b];
        try {
            return equivalent(points[i], points[j], points[k], points[l]);
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " [pairs {" + std::to_string(i) + "," + std::to_string(j) +
                                      "} vs {" + std::to_string(k) + "," + std::to_string(l) + "}]");
        }
    };

    // spot checks on the oracle's equivalence-relation preconditions
    for (std::size_t a = 0; a < std::min<std::size_t>(pairs.size(), 8); ++a)
        if (!call(a, a))
            throw Error(ErrorCode::OracleFailure, "oracle is not reflexive on pair " + std::to_string(a));
    for (std::size_t a = 0; a + 1 < std::min<std::size_t>(pairs.size(), 8); ++a)
        if (call(a, a + 1) != call(a + 1, a))
            throw Error(ErrorCode::OracleFailure, "oracle is not symmetric on pairs " + std::to_string(a));

    SidonReport<T> report;
    report.set_size = points.size();
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            if (comparisons)
                ++*comparisons;
            if (!call(a, b))
                continue;
            ++report.collision_count;
            if (report.violations.size() < max_reported_violations) {
                const auto [i, j] = pairs[a];
                const auto [k, l] = pairs[b];
                report.violations.push_back({points[i], points[j], points[k], points[l]});
            }
        }
    report.is_sidon = report.collision_count == 0;
    return report;
}

/// Z/nZ with residues in [0, n).
inline GroupAdapter<std::uint64_t> cyclic_group(std::uint64_t n)
{
    GroupAdapter<std::uint64_t> g;
    g.name = "Z_" + std::to_string(n);
    g.add = [n](std::uint64_t a, std::uint64_t b) { return (a + b) % n; };
    g.neg = [n](std::uint64_t a) { return (n - a % n) % n; };
    g.identity = 0;
    g.encode = [](std::uint64_t a) {
        std::string s(8, '\0');
        for (int i = 7; i >= 0; --i, a >>= 8)
            s[i] = static_cast<char>(a & 0xff);
        return s;
    };
    g.format = [](std::uint64_t a) { return std::to_string(a); };
    return g;
}

} // namespace sidon
