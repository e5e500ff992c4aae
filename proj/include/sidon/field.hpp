#pragma once

#include "sidon/poly.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sidon {

bool is_prime(std::uint64_t n) noexcept;
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Element of F_{p^m}: m residues in [0, p), low-to-high in the polynomial basis.
/// Comparison is lexicographic on the coefficient vector, which is also the
/// canonical encoding order used for every tie-break in the library.
struct FieldElem {
    std::vector<std::uint32_t> coeffs;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
    friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

/// Canonical bytes: three big-endian bytes per coefficient (p < 2^20).
void append_encoding(std::string& out, std::uint32_t coefficient);
std::string encode(const FieldElem& x);

/// F_q with q = p^m <= 2^20, realized as F_p[X]/(modulus). Immutable after
/// construction, so a single context can be shared between threads.
class FieldCtx {
public:
    static constexpr std::uint64_t max_order = std::uint64_t(1) << 20;

    /// Picks the lexicographically smallest (low-to-high) monic irreducible
    /// modulus of degree m. Throws NotPrime, FieldTooLarge, BadDegree.
    static FieldCtx create(std::uint64_t p, unsigned m = 1);
    /// F_p[X]/(modulus) for a caller-chosen monic irreducible modulus. Throws BadDegree otherwise.
    static FieldCtx with_modulus(std::uint64_t p, Poly modulus);
    /// Parses the "p^m:modulus" form produced by describe(); also accepts "p^m" and "p".
    static FieldCtx parse(std::string_view text);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return m_; }
    std::uint64_t order() const noexcept { return q_; }
    const Poly& modulus() const noexcept { return modulus_; }
    const PolyRing& prime_ring() const noexcept { return ring_; }
    bool is_prime_field() const noexcept { return m_ == 1; }

    FieldElem zero() const { return FieldElem{std::vector<std::uint32_t>(m_, 0)}; }
    FieldElem one() const;
    /// Image of an integer under Z -> F_p -> F_q.
    FieldElem from_int(std::int64_t n) const;
    /// Validates length and ranges; throws InvalidElement.
    FieldElem from_coeffs(std::vector<std::uint32_t> coeffs) const;
    /// Position of x in enumerate(); coefficient 0 is the most significant digit.
    std::uint64_t index(const FieldElem& x) const noexcept;
    FieldElem from_index(std::uint64_t i) const;

    bool is_zero(const FieldElem& x) const noexcept;
    bool is_one(const FieldElem& x) const noexcept;
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    /// Throws DivisionByZero for a = 0.
    FieldElem inv(const FieldElem& a) const;
    FieldElem pow(const FieldElem& a, std::uint64_t e) const;

    bool is_square(const FieldElem& x) const;
    /// Root r with r^2 = x and r <= -r, or nullopt for non-squares.
    std::optional<FieldElem> sqrt(const FieldElem& x) const;
    /// Generator of the multiplicative group with smallest encoding.
    FieldElem primitive_root() const;
    std::vector<FieldElem> enumerate() const;

    Poly to_poly(const FieldElem& x) const;
    FieldElem from_poly(const Poly& a) const;

    /// "c0,c1,...,c_{m-1}"
    std::string format(const FieldElem& x) const;
    FieldElem parse_elem(std::string_view text) const;
    /// "p^m:modulus" with the modulus as a low-to-high coefficient list.
    std::string describe() const;

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept
    {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
    }

private:
    FieldCtx(std::uint32_t p, unsigned m, Poly modulus);

    std::optional<FieldElem> tonelli_shanks(const FieldElem& x) const;

    std::uint32_t p_;
    unsigned m_;
    std::uint64_t q_;
    Poly modulus_;
    PolyRing ring_;
};

} // namespace sidon
