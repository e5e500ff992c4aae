#include "oracles.hpp"
#include "test_util.hpp"

#include "sidon/group_structure.hpp"
#include "sidon/sidon.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace sidon;

namespace {

std::vector<std::uint64_t> random_subset(std::mt19937_64& rng, std::uint64_t n, std::size_t max_size)
{
    std::vector<std::uint64_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(rng() % (max_size + 1));
    return all;
}

/// Z/a x Z/b, elements encoded as "i,j".
GroupAdapter<std::pair<std::uint64_t, std::uint64_t>> product_group(std::uint64_t a, std::uint64_t b)
{
    using E = std::pair<std::uint64_t, std::uint64_t>;
    GroupAdapter<E> g;
    g.name = "Z_" + std::to_string(a) + "xZ_" + std::to_string(b);
    g.add = [=](const E& x, const E& y) { return E{(x.first + y.first) % a, (x.second + y.second) % b}; };
    g.neg = [=](const E& x) { return E{(a - x.first) % a, (b - x.second) % b}; };
    g.identity = {0, 0};
    g.encode = [=](const E& x) { return std::to_string(x.first) + "," + std::to_string(x.second); };
    g.format = g.encode;
    return g;
}

} // namespace

TEST_CASE("verify_sidon examples")
{
    const auto Z8 = cyclic_group(8);
    CHECK(verify_sidon<std::uint64_t>({}, Z8).is_sidon);
    CHECK(verify_sidon<std::uint64_t>({5}, Z8).is_sidon);
    CHECK(verify_sidon<std::uint64_t>({1, 6}, Z8).is_sidon);

    auto ap = verify_sidon<std::uint64_t>({0, 1, 2}, Z8);
    CHECK_FALSE(ap.is_sidon);
    REQUIRE(ap.violations.size() == 1);
    auto w = ap.violations[0];
    CHECK((w[0] + w[1]) % 8 == (w[2] + w[3]) % 8);
    CHECK(w[0] != w[2]);
    CHECK(w[0] != w[3]);
    CHECK(ap.collision_count == 1);

    auto ruzsa = verify_sidon<std::uint64_t>({3, 14, 16, 17}, cyclic_group(20));
    CHECK(ruzsa.is_sidon);
    CHECK(ruzsa.violations.empty());
    CHECK(ruzsa.collision_count == 0);

    CHECK(code_of([&] { verify_sidon<std::uint64_t>({1, 2, 1}, Z8); }) == ErrorCode::DuplicateElement);
}

TEST_CASE("symmetric Sidon examples")
{
    auto r = verify_symmetric_sidon<std::uint64_t>({1, 4}, cyclic_group(5), 0);
    CHECK(r.is_symmetric_sidon);
    REQUIRE(r.symmetric_center.has_value());
    CHECK(*r.symmetric_center == 0);

    // 3 - S = S, but 0 + 2 = 1 + 1 = 2 is a collision away from the center
    CHECK_FALSE(verify_symmetric_sidon<std::uint64_t>({0, 1, 2, 3}, cyclic_group(4), 3).is_symmetric_sidon);

    // reflection fails
    CHECK_FALSE(verify_symmetric_sidon<std::uint64_t>({1, 3}, cyclic_group(7), 0).is_symmetric_sidon);

    // S = -S in Z_6, but 1 + 1 = 4 + 4 away from the center
    CHECK_FALSE(verify_symmetric_sidon<std::uint64_t>({1, 2, 4, 5}, cyclic_group(6), 0).is_symmetric_sidon);

    // S = -S in Z_7; expected verdict from the literal definition
    const std::vector<std::uint64_t> S{1, 2, 5, 6};
    const auto Z7 = cyclic_group(7);
    bool expected = true;
    for (auto a : S)
        for (auto b : S)
            for (auto c : S)
                for (auto d : S)
                    if ((a + b) % 7 == (c + d) % 7 && a != c && a != d && (a + b) % 7 != 0)
                        expected = false;
    CHECK(verify_symmetric_sidon(S, Z7, std::uint64_t{0}).is_symmetric_sidon == expected);

    // the center search recovers a center whenever one exists
    auto found = search_symmetric_center<std::uint64_t>({1, 4}, cyclic_group(5));
    REQUIRE(found.has_value());
    CHECK(verify_symmetric_sidon<std::uint64_t>({1, 4}, cyclic_group(5), *found).is_symmetric_sidon);
    CHECK_FALSE(search_symmetric_center<std::uint64_t>({0, 1, 3}, cyclic_group(13)).has_value());
}

TEST_CASE("brute force examples")
{
    CHECK(brute_force_sidon<std::uint64_t>({0}, cyclic_group(9)).is_sidon);
    // 0 + 0 = 5 + 5 in Z_10
    auto r = brute_force_sidon<std::uint64_t>({0, 5}, cyclic_group(10));
    CHECK_FALSE(r.is_sidon);
    CHECK(r.collision_count == 1);
    CHECK_FALSE(verify_sidon<std::uint64_t>({0, 5}, cyclic_group(10)).is_sidon);

    std::vector<std::uint64_t> big(65);
    std::iota(big.begin(), big.end(), 0);
    CHECK(code_of([&] { brute_force_sidon(big, cyclic_group(100)); }) == ErrorCode::SetTooLarge);
}

TEST_CASE("hashing and brute force agree, exhaustively for |S| <= 6 and n <= 14")
{
    for (std::uint64_t n = 1; n <= 14; ++n) {
        const auto G = cyclic_group(n);
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            if (__builtin_popcountll(mask) > 6)
                continue;
            std::vector<std::uint64_t> S;
            for (std::uint64_t i = 0; i < n; ++i)
                if (mask >> i & 1)
                    S.push_back(i);
            auto fast = verify_sidon(S, G);
            auto brute = brute_force_sidon(S, G);
            REQUIRE(fast.is_sidon == brute.is_sidon);
            REQUIRE(fast.collision_count == brute.collision_count);
            REQUIRE(fast.is_sidon == oracle::sidon_in_zn(S, n));
            REQUIRE(fast.is_sidon == fast.violations.empty());
        }
    }
}

TEST_CASE("structural properties on random sets")
{
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 300; ++t) {
        const std::uint64_t n = 20 + rng() % 80;
        const auto G = cyclic_group(n);
        auto S = random_subset(rng, n, 9);
        const auto base = verify_sidon(S, G);
        CHECK(base.is_sidon == oracle::sidon_in_zn(S, n));

        // translation and negation invariance
        const std::uint64_t shift = rng() % n;
        std::vector<std::uint64_t> T, N;
        for (auto s : S) {
            T.push_back((s + shift) % n);
            N.push_back((n - s) % n);
        }
        CHECK(verify_sidon(T, G).is_sidon == base.is_sidon);
        CHECK(verify_sidon(N, G).collision_count == base.collision_count);

        // monotonicity: subsets of Sidon sets are Sidon
        if (base.is_sidon && !S.empty()) {
            auto sub = S;
            sub.erase(sub.begin() + rng() % sub.size());
            CHECK(verify_sidon(sub, G).is_sidon);
        }

        // every reported violation is a genuine one
        for (const auto& v : base.violations) {
            CHECK((v[0] + v[1]) % n == (v[2] + v[3]) % n);
            CHECK(v[0] != v[2]);
            CHECK(v[0] != v[3]);
        }
    }
}

TEST_CASE("violation list is capped")
{
    std::vector<std::uint64_t> S(40);
    std::iota(S.begin(), S.end(), 0);
    auto r = verify_sidon(S, cyclic_group(1000));
    CHECK(r.violations.size() == max_reported_violations);
    CHECK(r.collision_count > max_reported_violations);
    CHECK(r.collision_count == brute_force_sidon(S, cyclic_group(1000)).collision_count);
}

TEST_CASE("oracle-driven verification")
{
    std::vector<int> pts{10, 20, 30};
    PairClassOracle<int> literal = [](int a, int b, int c, int d) {
        return (a == c && b == d) || (a == d && b == c);
    };
    std::uint64_t comparisons = 0;
    auto r = verify_sidon_by_oracle(pts, literal, &comparisons);
    CHECK(r.is_sidon);
    CHECK(comparisons == 15); // 6 pairs, C(6, 2) comparisons

    PairClassOracle<int> everything = [](int, int, int, int) { return true; };
    auto bad = verify_sidon_by_oracle(pts, everything);
    CHECK_FALSE(bad.is_sidon);
    REQUIRE(!bad.violations.empty());
    CHECK(bad.violations[0] == std::array<int, 4>{10, 10, 10, 20});

    PairClassOracle<int> irreflexive = [](int, int, int, int) { return false; };
    CHECK(code_of([&] { verify_sidon_by_oracle(pts, irreflexive); }) == ErrorCode::OracleFailure);

    PairClassOracle<int> lopsided = [](int a, int b, int c, int d) { return a == c && b == d ? true : a < c; };
    CHECK(code_of([&] { verify_sidon_by_oracle(pts, lopsided); }) == ErrorCode::OracleFailure);

    PairClassOracle<int> throwing = [](int a, int, int c, int) -> bool {
        if (a != c)
            throw Error(ErrorCode::PointNotOnCurve, "boom");
        return true;
    };
    try {
        verify_sidon_by_oracle(pts, throwing);
        FAIL("expected the oracle error to propagate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PointNotOnCurve);
        CHECK(std::string(e.what()).find("pairs {") != std::string::npos);
    }

    // oracle built on cyclic addition agrees with hashing
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        auto S = random_subset(rng, 50, 8);
        PairClassOracle<std::uint64_t> sums = [](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
            return (a + b) % 50 == (c + d) % 50;
        };
        auto via_oracle = verify_sidon_by_oracle(S, sums);
        auto via_hash = verify_sidon(S, cyclic_group(50));
        CHECK(via_oracle.is_sidon == via_hash.is_sidon);
        CHECK(via_oracle.collision_count == via_hash.collision_count);
    }
}

TEST_CASE("report serialization")
{
    auto r = verify_symmetric_sidon<std::uint64_t>({0, 1, 2}, cyclic_group(8), 2);
    auto j = report_to_json<std::uint64_t>(r, cyclic_group(8).format);
    CHECK(j["set_size"] == 3);
    CHECK(j["is_sidon"] == false);
    CHECK(j["symmetric_center"] == "2");
    CHECK(j["collision_count"] == 1);
    CHECK(j["violations"].size() == 1);
}

TEST_CASE("group structure of abstract groups")
{
    using E = std::pair<std::uint64_t, std::uint64_t>;
    auto elements = [](std::uint64_t a, std::uint64_t b) {
        std::vector<E> out;
        for (std::uint64_t i = 0; i < a; ++i)
            for (std::uint64_t j = 0; j < b; ++j)
                out.push_back({i, j});
        return out;
    };
    CHECK(group_structure(elements(12, 1), product_group(12, 1)).factors == std::vector<std::uint64_t>{12});
    CHECK(group_structure(elements(2, 2), product_group(2, 2)).factors == std::vector<std::uint64_t>{2, 2});
    CHECK(group_structure(elements(4, 6), product_group(4, 6)).factors == std::vector<std::uint64_t>{2, 12});
    CHECK(group_structure(elements(9, 3), product_group(9, 3)).factors == std::vector<std::uint64_t>{3, 9});
    CHECK(group_structure(elements(5, 7), product_group(5, 7)).is_cyclic());
    CHECK(group_structure(elements(1, 1), product_group(1, 1)).to_string() == "1");
    CHECK(group_structure(elements(8, 8), product_group(8, 8)).to_string() == "8x8");

    // an incomplete element list is not a group
    auto partial = elements(2, 4);
    partial.pop_back();
    CHECK(code_of([&] { group_structure(partial, product_group(2, 4)); }) == ErrorCode::NotAGroup);
}
