#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sidon {

/// Dense univariate polynomial over F_p, coefficients low-to-high.
/// Kept trimmed: no trailing zeros, so the zero polynomial is empty.
using Poly = std::vector<std::uint32_t>;

/// Arithmetic in F_p and F_p[X] for a fixed prime p < 2^32.
/// Products go through 64-bit intermediates.
class PolyRing {
public:
    explicit PolyRing(std::uint32_t p) : p_(p) {}

    std::uint32_t characteristic() const noexcept { return p_; }

    // scalars
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + p_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    /// Throws DivisionByZero on 0.
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t reduce(std::int64_t a) const noexcept
    {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }

    // polynomials
    static void trim(Poly& a) noexcept
    {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    static int degree(const Poly& a) noexcept { return static_cast<int>(a.size()) - 1; }
    static bool is_zero(const Poly& a) noexcept { return a.empty(); }
    static Poly constant(std::uint32_t c) { return c == 0 ? Poly{} : Poly{c}; }

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly scale(const Poly& a, std::uint32_t c) const;
    Poly mul(const Poly& a, const Poly& b) const;
    /// Quotient and remainder; throws DivisionByZero if b is zero.
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    /// Exact division; throws InternalMultiplicityError on a nonzero remainder.
    Poly exact_div(const Poly& a, const Poly& b) const;
    Poly monic(const Poly& a) const;
    /// Monic gcd; gcd(0, 0) = 0.
    Poly gcd(const Poly& a, const Poly& b) const;

    struct Bezout {
        Poly g, s, t; // g = s*a + t*b, g monic (or zero)
    };
    Bezout xgcd(const Poly& a, const Poly& b) const;

    Poly derivative(const Poly& a) const;
    std::uint32_t eval(const Poly& a, std::uint32_t x) const noexcept;
    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }
    Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) const;
    /// Writes a^{-1} mod m into out; false when gcd(a, m) is nonconstant.
    bool invmod(const Poly& a, const Poly& m, Poly& out) const;
    bool is_squarefree(const Poly& a) const;
    /// Product of the distinct irreducible factors of a (a nonzero).
    Poly radical(const Poly& a) const;
    /// Irreducibility over F_p by checking gcd(X^{p^d} - X, f) = 1 for d <= deg/2.
    bool is_irreducible(const Poly& f) const;

private:
    std::uint32_t p_;
};

} // namespace sidon
