#include "sidon/poly.hpp"

#include "sidon/error.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace sidon {

std::uint32_t PolyRing::pow(std::uint32_t a, std::uint64_t e) const noexcept
{
    std::uint64_t result = 1 % p_;
    std::uint64_t base = a % p_;
    while (e > 0) {
        if (e & 1)
            result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t PolyRing::inv(std::uint32_t a) const
{
    if (a % p_ == 0)
        throw Error(ErrorCode::DivisionByZero, "inverse of zero mod " + std::to_string(p_));
    // extended Euclid on integers
    std::int64_t r0 = p_, r1 = a % p_, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    return reduce(s0);
}

Poly PolyRing::add(const Poly& a, const Poly& b) const
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t x = i < a.size() ? a[i] : 0;
        std::uint32_t y = i < b.size() ? b[i] : 0;
        r[i] = add(x, y);
    }
    trim(r);
    return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t x = i < a.size() ? a[i] : 0;
        std::uint32_t y = i < b.size() ? b[i] : 0;
        r[i] = sub(x, y);
    }
    trim(r);
    return r;
}

Poly PolyRing::neg(const Poly& a) const
{
    Poly r(a.size());
    std::transform(a.begin(), a.end(), r.begin(), [this](std::uint32_t c) { return neg(c); });
    return r;
}

Poly PolyRing::scale(const Poly& a, std::uint32_t c) const
{
    if (c % p_ == 0)
        return {};
    Poly r(a.size());
    std::transform(a.begin(), a.end(), r.begin(), [&](std::uint32_t x) { return mul(x, c); });
    return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const
{
    if (a.empty() || b.empty())
        return {};
    // accumulate in 64 bits, reducing often enough to avoid overflow for p < 2^32
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p_;
    }
    Poly r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        r[i] = static_cast<std::uint32_t>(acc[i]);
    trim(r);
    return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const
{
    if (b.empty())
        throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (a.size() < b.size())
        return {Poly{}, a};
    Poly rem = a;
    Poly quo(a.size() - b.size() + 1, 0);
    const std::uint32_t lead_inv = inv(b.back());
    for (std::size_t k = quo.size(); k-- > 0;) {
        std::uint32_t c = mul(rem[k + b.size() - 1], lead_inv);
        quo[k] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[k + j] = sub(rem[k + j], mul(c, b[j]));
    }
    rem.resize(b.size() - 1);
    trim(rem);
    trim(quo);
    return {std::move(quo), std::move(rem)};
}

Poly PolyRing::exact_div(const Poly& a, const Poly& b) const
{
    auto [q, r] = divmod(a, b);
    if (!r.empty())
        throw Error(ErrorCode::InternalMultiplicityError, "polynomial division is not exact");
    return q;
}

Poly PolyRing::monic(const Poly& a) const
{
    if (a.empty())
        return {};
    return scale(a, inv(a.back()));
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const
{
    Poly x = a, y = b;
    while (!y.empty()) {
        Poly r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

PolyRing::Bezout PolyRing::xgcd(const Poly& a, const Poly& b) const
{
    Poly r0 = a, r1 = b;
    Poly s0 = constant(1), s1{};
    Poly t0{}, t1 = constant(1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = sub(t0, mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty())
        return {r0, s0, t0};
    std::uint32_t c = inv(r0.back());
    return {scale(r0, c), scale(s0, c), scale(t0, c)};
}

Poly PolyRing::derivative(const Poly& a) const
{
    if (a.size() <= 1)
        return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = mul(a[i], static_cast<std::uint32_t>(i % p_));
    trim(r);
    return r;
}

std::uint32_t PolyRing::eval(const Poly& a, std::uint32_t x) const noexcept
{
    std::uint64_t acc = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        acc = (acc * x + a[i]) % p_;
    return static_cast<std::uint32_t>(acc);
}

Poly PolyRing::powmod(const Poly& a, std::uint64_t e, const Poly& m) const
{
    Poly result = mod(constant(1), m);
    Poly base = mod(a, m);
    while (e > 0) {
        if (e & 1)
            result = mulmod(result, base, m);
        e >>= 1;
        if (e > 0)
            base = mulmod(base, base, m);
    }
    return result;
}

bool PolyRing::invmod(const Poly& a, const Poly& m, Poly& out) const
{
    auto bz = xgcd(mod(a, m), m);
    if (degree(bz.g) != 0)
        return false;
    out = mod(bz.s, m);
    return true;
}

bool PolyRing::is_squarefree(const Poly& a) const
{
    if (a.empty())
        return false;
    return degree(gcd(a, derivative(a))) <= 0;
}

Poly PolyRing::radical(const Poly& a) const
{
    if (a.empty())
        throw Error(ErrorCode::DivisionByZero, "radical of the zero polynomial");
    if (degree(a) <= 0)
        return constant(1);
    Poly am = monic(a);
    Poly d = derivative(am);
    if (d.empty()) {
        // a(X) = b(X^p) and c^p = c in F_p, so b is the p-th root of a.
        Poly b;
        for (std::size_t i = 0; i < am.size(); i += p_)
            b.push_back(am[i]);
        return radical(b);
    }
    // For a = prod f_i^e_i, a / gcd(a, a') = prod of f_i with p not dividing e_i.
    Poly g = gcd(am, d);
    Poly w = exact_div(am, g);
    // What is left of g after removing the factors of w is a p-th power.
    Poly h = g;
    for (Poly c = gcd(h, w); degree(c) > 0; c = gcd(h, w))
        h = exact_div(h, c);
    if (degree(h) <= 0)
        return w;
    return mul(w, radical(h));
}

bool PolyRing::is_irreducible(const Poly& f) const
{
    int n = degree(f);
    if (n <= 0)
        return false;
    if (n == 1)
        return true;
    const Poly x{0, 1};
    Poly frob = x; // X^{p^d} mod f
    for (int d = 1; d <= n / 2; ++d) {
        frob = powmod(frob, p_, f);
        if (degree(gcd(sub(frob, x), f)) > 0)
            return false;
    }
    return true;
}

} // namespace sidon
