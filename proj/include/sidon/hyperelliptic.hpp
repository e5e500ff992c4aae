#pragma once

// Imaginary hyperelliptic curves y^2 = f(x), deg f = 2g + 1, over F_p with p odd.
// The point at infinity is the base point, so the embedding sends a point P to
// the class of (P) - (inf) and the jacobian group law is Cantor's algorithm on
// reduced Mumford pairs (u, v).

#include "sidon/field.hpp"
#include "sidon/group_structure.hpp"
#include "sidon/poly.hpp"
#include "sidon/sidon.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sidon::hyper {

/// Infinity sorts first, then affine points by (x, y).
struct CurvePoint {
    bool is_affine = false;
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    static CurvePoint infinity() { return {}; }
    static CurvePoint affine(std::uint32_t x, std::uint32_t y) { return {true, x, y}; }

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
    friend auto operator<=>(const CurvePoint&, const CurvePoint&) = default;
};

/// Reduced divisor class: u monic, deg v < deg u <= g, u | v^2 - f.
/// The identity is (1, 0). Reduced pairs are unique per class.
struct MumfordDivisor {
    Poly u{1};
    Poly v{};

    friend bool operator==(const MumfordDivisor&, const MumfordDivisor&) = default;
};

class HyperCurve {
public:
    /// Throws ExtensionFieldUnsupported, EvenCharacteristic, BadDegree, NotSquarefree.
    static HyperCurve create(const FieldCtx& ctx, Poly f);
    /// Convenience: coefficients c0..c_{2g+1}, reduced mod p.
    static HyperCurve create(std::uint64_t p, const std::vector<std::int64_t>& coeffs);

    const FieldCtx& field() const noexcept { return ctx_; }
    const PolyRing& ring() const noexcept { return ctx_.prime_ring(); }
    std::uint32_t characteristic() const noexcept { return ctx_.characteristic(); }
    const Poly& f() const noexcept { return f_; }
    unsigned genus() const noexcept { return genus_; }
    std::string describe() const;

    bool on_curve(const CurvePoint& P) const noexcept;
    /// C(F_p) in canonical order (infinity first).
    std::vector<CurvePoint> points() const;
    /// #C(F_{p^d}) = 1 + sum_x (1 + chi(f(x))). Throws FieldTooLarge past 2^20.
    std::uint64_t count_points(unsigned d) const;
    CurvePoint involution(const CurvePoint& P) const noexcept;
    /// inf -> (1, 0); (x0, y0) -> (X - x0, y0). Throws PointNotOnCurve.
    MumfordDivisor embed(const CurvePoint& P) const;

    MumfordDivisor identity() const { return {}; }
    MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
    MumfordDivisor neg(const MumfordDivisor& a) const;
    bool is_reduced(const MumfordDivisor& d) const;

    std::string encode(const MumfordDivisor& d) const;
    /// "(u0,u1,...,1;v0,...,v_{deg u - 1})"
    std::string format(const MumfordDivisor& d) const;
    MumfordDivisor parse_divisor(std::string_view text) const;
    GroupAdapter<MumfordDivisor> group() const;

    /// All reduced divisors, sorted by encoding. Needs g <= 3 and p^g <= 10^5.
    std::vector<MumfordDivisor> enumerate_jacobian() const;
    /// Literal (u, v) candidate loop with the divisibility filter; same contract
    /// as enumerate_jacobian but O(p^{2g}). Used below the candidate budget.
    std::vector<MumfordDivisor> enumerate_jacobian_by_candidates() const;
    /// Factorization-driven enumeration: u as a product of irreducibles, v by
    /// square roots in F_p[x]/(u_i), Hensel lifting and CRT. Output-sensitive.
    std::vector<MumfordDivisor> enumerate_jacobian_by_factorization() const;

    /// |J(F_p)| from N_1 and N_2 via the zeta function; genus 2 only.
    std::uint64_t jacobian_order_zeta() const;

    /// The common value of embed(P) + embed(i(P)) over C(F_p). Throws InconsistentCenter.
    MumfordDivisor symmetric_center() const;

    static constexpr std::uint64_t enumeration_limit = 100000;
    static constexpr std::uint64_t candidate_budget = 2000000;

private:
    HyperCurve(FieldCtx ctx, Poly f, unsigned genus) : ctx_(std::move(ctx)), f_(std::move(f)), genus_(genus) {}

    MumfordDivisor reduce(Poly u, Poly v) const;
    void require_enumerable() const;

    FieldCtx ctx_;
    Poly f_;
    unsigned genus_;
};

struct SymmetricSidonSet {
    GroupAdapter<MumfordDivisor> group;
    std::vector<MumfordDivisor> elements; // embed(C(F_p)) in point order
    MumfordDivisor center;
};

SymmetricSidonSet build_symmetric_sidon(const HyperCurve& curve);

/// One representative per involution orbit {D, -D} (the smaller encoding), and
/// a single involution-fixed class overall (the smallest encoding, i.e. the
/// identity when present). Distinct 2-torsion points D, E would give D + D = E + E.
/// Sorted by encoding.
std::vector<MumfordDivisor> halve_set(const HyperCurve& curve, const std::vector<MumfordDivisor>& set);

/// Number of orbits of the involution on C(F_p).
std::size_t involution_orbit_count(const HyperCurve& curve);

} // namespace sidon::hyper
