#include "sidon/field.hpp"

#include "sidon/error.hpp"
#include "sidon/text.hpp"

#include <algorithm>

namespace sidon {

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        out.push_back(d);
        while (n % d == 0)
            n /= d;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

void append_encoding(std::string& out, std::uint32_t coefficient)
{
    out.push_back(static_cast<char>((coefficient >> 16) & 0xff));
    out.push_back(static_cast<char>((coefficient >> 8) & 0xff));
    out.push_back(static_cast<char>(coefficient & 0xff));
}

std::string encode(const FieldElem& x)
{
    std::string out;
    out.reserve(3 * x.coeffs.size());
    for (auto c : x.coeffs)
        append_encoding(out, c);
    return out;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned m, Poly modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)), ring_(p)
{
    for (unsigned i = 0; i < m; ++i)
        q_ *= p;
}

FieldCtx FieldCtx::create(std::uint64_t p, unsigned m)
{
    if (!is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1)
        throw Error(ErrorCode::BadDegree, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > max_order)
            throw Error(ErrorCode::FieldTooLarge,
                        std::to_string(p) + "^" + std::to_string(m) + " exceeds 2^20");
    }
    const auto pp = static_cast<std::uint32_t>(p);
    if (m == 1)
        return FieldCtx(pp, 1, Poly{0, 1});

    // Candidates (a0, ..., a_{m-1}, 1) in lexicographic order, a0 most significant.
    PolyRing ring(pp);
    std::vector<std::uint32_t> digits(m, 0);
    for (std::uint64_t k = 0; k < q; ++k) {
        std::uint64_t r = k;
        for (unsigned i = m; i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(r % p);
            r /= p;
        }
        Poly candidate(digits.begin(), digits.end());
        candidate.push_back(1);
        if (ring.is_irreducible(candidate))
            return FieldCtx(pp, m, std::move(candidate));
    }
    // unreachable: irreducibles of every degree exist
    throw Error(ErrorCode::BadDegree, "no irreducible polynomial found");
}

FieldCtx FieldCtx::with_modulus(std::uint64_t p, Poly modulus)
{
    if (!is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    const auto pp = static_cast<std::uint32_t>(p);
    PolyRing ring(pp);
    PolyRing::trim(modulus);
    if (PolyRing::degree(modulus) < 1 || modulus.back() != 1 || !ring.is_irreducible(modulus))
        throw Error(ErrorCode::BadDegree, "modulus must be monic irreducible of positive degree");
    const auto m = static_cast<unsigned>(PolyRing::degree(modulus));
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i)
        if ((q *= p) > max_order)
            throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^20");
    return FieldCtx(pp, m, std::move(modulus));
}

FieldCtx FieldCtx::parse(std::string_view text)
{
    text = text::strip(text);
    auto colon = text.find(':');
    auto head = text.substr(0, colon);
    auto caret = head.find('^');
    std::uint64_t p = text::parse_int<std::uint64_t>(head.substr(0, caret));
    unsigned m = caret == std::string_view::npos ? 1 : text::parse_int<unsigned>(head.substr(caret + 1));
    FieldCtx ctx = create(p, m);
    if (colon != std::string_view::npos) {
        auto coeffs = text::parse_int_list<std::uint32_t>(text.substr(colon + 1));
        Poly given(coeffs.begin(), coeffs.end());
        if (given != ctx.modulus_)
            throw Error(ErrorCode::ParseError, "modulus does not match the canonical choice " + ctx.describe());
    }
    return ctx;
}

FieldElem FieldCtx::one() const
{
    FieldElem e = zero();
    e.coeffs[0] = 1 % p_;
    return e;
}

FieldElem FieldCtx::from_int(std::int64_t n) const
{
    FieldElem e = zero();
    e.coeffs[0] = ring_.reduce(n);
    return e;
}

FieldElem FieldCtx::from_coeffs(std::vector<std::uint32_t> coeffs) const
{
    if (coeffs.size() != m_)
        throw Error(ErrorCode::InvalidElement, "expected " + std::to_string(m_) + " coefficients");
    for (auto c : coeffs)
        if (c >= p_)
            throw Error(ErrorCode::InvalidElement, "coefficient " + std::to_string(c) + " not reduced mod p");
    return FieldElem{std::move(coeffs)};
}

std::uint64_t FieldCtx::index(const FieldElem& x) const noexcept
{
    std::uint64_t i = 0;
    for (auto c : x.coeffs)
        i = i * p_ + c;
    return i;
}

FieldElem FieldCtx::from_index(std::uint64_t i) const
{
    FieldElem e = zero();
    for (unsigned k = m_; k-- > 0;) {
        e.coeffs[k] = static_cast<std::uint32_t>(i % p_);
        i /= p_;
    }
    return e;
}

bool FieldCtx::is_zero(const FieldElem& x) const noexcept
{
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](auto c) { return c == 0; });
}

bool FieldCtx::is_one(const FieldElem& x) const noexcept
{
    return x.coeffs[0] == 1 && std::all_of(x.coeffs.begin() + 1, x.coeffs.end(), [](auto c) { return c == 0; });
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = ring_.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = ring_.sub(a.coeffs[i], b.coeffs[i]);
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const
{
    FieldElem r = zero();
    for (unsigned i = 0; i < m_; ++i)
        r.coeffs[i] = ring_.neg(a.coeffs[i]);
    return r;
}

Poly FieldCtx::to_poly(const FieldElem& x) const
{
    Poly a(x.coeffs.begin(), x.coeffs.end());
    PolyRing::trim(a);
    return a;
}

FieldElem FieldCtx::from_poly(const Poly& a) const
{
    FieldElem r = zero();
    std::copy(a.begin(), a.end(), r.coeffs.begin());
    return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const
{
    if (m_ == 1)
        return FieldElem{{ring_.mul(a.coeffs[0], b.coeffs[0])}};
    return from_poly(ring_.mulmod(to_poly(a), to_poly(b), modulus_));
}

FieldElem FieldCtx::inv(const FieldElem& a) const
{
    if (is_zero(a))
        throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
    if (m_ == 1)
        return FieldElem{{ring_.inv(a.coeffs[0])}};
    Poly out;
    ring_.invmod(to_poly(a), modulus_, out);
    return from_poly(out);
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const
{
    FieldElem result = one();
    FieldElem base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        e >>= 1;
        if (e > 0)
            base = mul(base, base);
    }
    return result;
}

bool FieldCtx::is_square(const FieldElem& x) const
{
    if (p_ == 2 || is_zero(x))
        return true;
    return is_one(pow(x, (q_ - 1) / 2));
}

std::optional<FieldElem> FieldCtx::sqrt(const FieldElem& x) const
{
    if (is_zero(x))
        return zero();
    if (q_ <= 4096) {
        // enumeration order is encoding order, so the first hit is the smaller root
        for (std::uint64_t i = 0; i < q_; ++i) {
            FieldElem r = from_index(i);
            if (mul(r, r) == x)
                return r;
        }
        return std::nullopt;
    }
    if (p_ == 2)
        return pow(x, q_ / 2); // Frobenius is bijective; the root is unique
    auto r = tonelli_shanks(x);
    if (!r)
        return std::nullopt;
    FieldElem s = neg(*r);
    return std::min(*r, s);
}

std::optional<FieldElem> FieldCtx::tonelli_shanks(const FieldElem& x) const
{
    if (!is_square(x))
        return std::nullopt;
    std::uint64_t t = q_ - 1;
    unsigned s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    FieldElem z = one();
    for (std::uint64_t i = 1; i < q_; ++i) {
        z = from_index(i);
        if (!is_square(z))
            break;
    }
    FieldElem c = pow(z, t);
    FieldElem r = pow(x, (t + 1) / 2);
    FieldElem b = pow(x, t);
    unsigned m = s;
    while (!is_one(b)) {
        unsigned i = 0;
        FieldElem b2 = b;
        while (!is_one(b2)) {
            b2 = mul(b2, b2);
            ++i;
        }
        FieldElem w = c;
        for (unsigned k = 0; k + i + 1 < m; ++k)
            w = mul(w, w);
        r = mul(r, w);
        c = mul(w, w);
        b = mul(b, c);
        m = i;
    }
    return r;
}

FieldElem FieldCtx::primitive_root() const
{
    const auto factors = prime_factors(q_ - 1);
    for (std::uint64_t i = 1; i < q_; ++i) {
        FieldElem g = from_index(i);
        bool generator = std::none_of(factors.begin(), factors.end(),
                                      [&](std::uint64_t r) { return is_one(pow(g, (q_ - 1) / r)); });
        if (generator)
            return g;
    }
    throw Error(ErrorCode::NotAGroup, "no primitive root found"); // unreachable for a field
}

std::vector<FieldElem> FieldCtx::enumerate() const
{
    std::vector<FieldElem> out;
    out.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i)
        out.push_back(from_index(i));
    return out;
}

std::string FieldCtx::format(const FieldElem& x) const
{
    return text::join(x.coeffs);
}

FieldElem FieldCtx::parse_elem(std::string_view text) const
{
    return from_coeffs(text::parse_int_list<std::uint32_t>(text));
}

std::string FieldCtx::describe() const
{
    return std::to_string(p_) + "^" + std::to_string(m_) + ":" + text::join(modulus_);
}

} // namespace sidon
