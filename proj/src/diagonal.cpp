#include "sidon/diagonal.hpp"

#include "sidon/error.hpp"

#include <algorithm>

namespace sidon::diagonal {

GroupAdapter<ProductGroupElem> product_group(const FieldCtx& ctx)
{
    GroupAdapter<ProductGroupElem> g;
    g.name = "F_" + std::to_string(ctx.order()) + "^* x F_" + std::to_string(ctx.order());
    g.add = [ctx](const ProductGroupElem& a, const ProductGroupElem& b) {
        return ProductGroupElem{ctx.mul(a.mult_part, b.mult_part), ctx.add(a.add_part, b.add_part)};
    };
    g.neg = [ctx](const ProductGroupElem& a) {
        return ProductGroupElem{ctx.inv(a.mult_part), ctx.neg(a.add_part)};
    };
    g.identity = ProductGroupElem{ctx.one(), ctx.zero()};
    g.encode = [](const ProductGroupElem& a) { return encode(a.mult_part) + encode(a.add_part); };
    g.format = [ctx](const ProductGroupElem& a) { return ctx.format(a.mult_part) + ";" + ctx.format(a.add_part); };
    return g;
}

DiagonalSet build_diagonal(const FieldCtx& ctx)
{
    DiagonalSet out{product_group(ctx), {}};
    out.elements.reserve(ctx.order() - 1);
    for (std::uint64_t i = 1; i < ctx.order(); ++i) {
        FieldElem x = ctx.from_index(i);
        out.elements.push_back({x, x});
    }
    return out;
}

bool proof_identity_check(const FieldCtx& ctx, const FieldElem& x1, const FieldElem& x2, const FieldElem& x3,
                          const FieldElem& x4)
{
    for (const auto* x : {&x1, &x2, &x3, &x4})
        if (ctx.is_zero(*x))
            throw Error(ErrorCode::InvalidElement, "diagonal entries must be nonzero");
    const bool same_product = ctx.mul(x1, x2) == ctx.mul(x3, x4);
    const bool same_sum = ctx.add(x1, x2) == ctx.add(x3, x4);
    if (!(same_product && same_sum))
        return true;
    return x1 == x3 || x1 == x4;
}

std::vector<std::uint64_t> to_cyclic_integers(const FieldCtx& ctx, const std::vector<ProductGroupElem>& set)
{
    if (!ctx.is_prime_field())
        throw Error(ErrorCode::ExtensionFieldUnsupported, "integer export needs a prime field, got " + ctx.describe());
    const std::uint64_t q = ctx.order();
    const std::uint64_t modulus = q * (q - 1);

    // discrete logarithms by table
    std::vector<std::uint64_t> dlog(q, 0);
    const FieldElem g = ctx.primitive_root();
    FieldElem power = ctx.one();
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        dlog[ctx.index(power)] = k;
        power = ctx.mul(power, g);
    }

    std::vector<std::uint64_t> out;
    out.reserve(set.size());
    for (const auto& e : set) {
        if (ctx.is_zero(e.mult_part))
            throw Error(ErrorCode::InvalidElement, "multiplicative component is zero");
        const std::uint64_t a = dlog[ctx.index(e.mult_part)];
        const std::uint64_t y = e.add_part.coeffs[0];
        // q = 1 mod q-1, so n = y + q*t with t = (a - y) mod (q-1)
        const std::uint64_t t = (a + (q - 1) - y % (q - 1)) % (q - 1);
        out.push_back((y + q * t) % modulus);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sidon::diagonal
