#include "sidon/hyperelliptic.hpp"

#include "sidon/error.hpp"
#include "sidon/text.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>

namespace sidon::hyper {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= base;
    return r;
}

/// Monic polynomial of degree k whose lower coefficients are the base-p digits of index.
Poly monic_from_index(std::uint64_t index, unsigned k, std::uint32_t p)
{
    Poly u(k + 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        u[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    u[k] = 1;
    return u;
}

Poly poly_from_index(std::uint64_t index, unsigned k, std::uint32_t p)
{
    Poly v(k, 0);
    for (unsigned i = 0; i < k; ++i) {
        v[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    PolyRing::trim(v);
    return v;
}

} // namespace

HyperCurve HyperCurve::create(const FieldCtx& ctx, Poly f)
{
    if (!ctx.is_prime_field())
        throw Error(ErrorCode::ExtensionFieldUnsupported, "curves are defined over prime fields only");
    if (ctx.characteristic() == 2)
        throw Error(ErrorCode::EvenCharacteristic, "y^2 = f(x) needs odd characteristic");
    PolyRing::trim(f);
    const int deg = PolyRing::degree(f);
    if (deg < 5 || deg % 2 == 0)
        throw Error(ErrorCode::BadDegree, "deg f must be odd and at least 5, got " + std::to_string(deg));
    if (f.back() != 1)
        throw Error(ErrorCode::BadDegree, "f must be monic");
    if (!ctx.prime_ring().is_squarefree(f))
        throw Error(ErrorCode::NotSquarefree, "f has a repeated root");
    return HyperCurve(ctx, std::move(f), static_cast<unsigned>((deg - 1) / 2));
}

HyperCurve HyperCurve::create(std::uint64_t p, const std::vector<std::int64_t>& coeffs)
{
    FieldCtx ctx = FieldCtx::create(p);
    Poly f;
    for (auto c : coeffs)
        f.push_back(ctx.prime_ring().reduce(c));
    return create(ctx, std::move(f));
}

std::string HyperCurve::describe() const
{
    return "y^2 = f(x) over F_" + std::to_string(characteristic()) + ", f = [" + text::join(f_) + "], g = " +
           std::to_string(genus_);
}

bool HyperCurve::on_curve(const CurvePoint& P) const noexcept
{
    if (!P.is_affine)
        return true;
    const auto& R = ring();
    if (P.x >= characteristic() || P.y >= characteristic())
        return false;
    return R.mul(P.y, P.y) == R.eval(f_, P.x);
}

std::vector<CurvePoint> HyperCurve::points() const
{
    const std::uint32_t p = characteristic();
    const auto& R = ring();
    // smallest square root of every square
    std::vector<std::int64_t> root(p, -1);
    for (std::uint32_t y = p; y-- > 0;)
        root[R.mul(y, y)] = y;

    std::vector<CurvePoint> out{CurvePoint::infinity()};
    for (std::uint32_t x = 0; x < p; ++x) {
        const std::uint32_t fx = R.eval(f_, x);
        if (root[fx] < 0)
            continue;
        const auto y = static_cast<std::uint32_t>(root[fx]);
        out.push_back(CurvePoint::affine(x, y));
        if (y != 0)
            out.push_back(CurvePoint::affine(x, p - y));
    }
    return out;
}

std::uint64_t HyperCurve::count_points(unsigned d) const
{
    if (d == 1)
        return points().size();
    const FieldCtx ext = FieldCtx::create(characteristic(), d);
    const std::uint64_t q = ext.order();
    std::vector<bool> square(q, false);
    for (std::uint64_t i = 0; i < q; ++i) {
        FieldElem y = ext.from_index(i);
        square[ext.index(ext.mul(y, y))] = true;
    }
    std::vector<FieldElem> coeffs;
    for (auto c : f_)
        coeffs.push_back(ext.from_int(c));

    std::uint64_t n = 1; // the point at infinity
    for (std::uint64_t i = 0; i < q; ++i) {
        const FieldElem x = ext.from_index(i);
        FieldElem fx = ext.zero();
        for (std::size_t k = coeffs.size(); k-- > 0;)
            fx = ext.add(ext.mul(fx, x), coeffs[k]);
        if (ext.is_zero(fx))
            n += 1;
        else if (square[ext.index(fx)])
            n += 2;
    }
    return n;
}

CurvePoint HyperCurve::involution(const CurvePoint& P) const noexcept
{
    if (!P.is_affine)
        return P;
    return CurvePoint::affine(P.x, ring().neg(P.y));
}

MumfordDivisor HyperCurve::embed(const CurvePoint& P) const
{
    if (!on_curve(P))
        throw Error(ErrorCode::PointNotOnCurve,
                    "(" + std::to_string(P.x) + "," + std::to_string(P.y) + ") is not on " + describe());
    if (!P.is_affine)
        return identity();
    return MumfordDivisor{Poly{ring().neg(P.x), 1}, PolyRing::constant(P.y)};
}

MumfordDivisor HyperCurve::reduce(Poly u, Poly v) const
{
    const auto& R = ring();
    v = R.mod(v, u);
    while (PolyRing::degree(u) > static_cast<int>(genus_)) {
        Poly u_next = R.monic(R.exact_div(R.sub(f_, R.mul(v, v)), u));
        v = R.mod(R.neg(v), u_next);
        u = std::move(u_next);
    }
    return MumfordDivisor{std::move(u), std::move(v)};
}

MumfordDivisor HyperCurve::add(const MumfordDivisor& a, const MumfordDivisor& b) const
{
    const auto& R = ring();
    // composition
    auto [d1, e1, e2] = R.xgcd(a.u, b.u);
    auto [d, c1, c2] = R.xgcd(d1, R.add(a.v, b.v));
    const Poly s1 = R.mul(c1, e1);
    const Poly s2 = R.mul(c1, e2);
    const Poly& s3 = c2;
    const Poly dd = R.mul(d, d);
    Poly u = R.exact_div(R.mul(a.u, b.u), dd);
    Poly numerator = R.add(R.add(R.mul(R.mul(s1, a.u), b.v), R.mul(R.mul(s2, b.u), a.v)),
                           R.mul(s3, R.add(R.mul(a.v, b.v), f_)));
    Poly v = R.mod(R.exact_div(numerator, d), u);
    return reduce(std::move(u), std::move(v));
}

MumfordDivisor HyperCurve::neg(const MumfordDivisor& a) const
{
    return MumfordDivisor{a.u, ring().neg(a.v)};
}

bool HyperCurve::is_reduced(const MumfordDivisor& d) const
{
    const auto& R = ring();
    if (d.u.empty() || d.u.back() != 1)
        return false;
    if (PolyRing::degree(d.u) > static_cast<int>(genus_) || PolyRing::degree(d.v) >= PolyRing::degree(d.u))
        return false;
    for (auto c : d.u)
        if (c >= characteristic())
            return false;
    for (auto c : d.v)
        if (c >= characteristic())
            return false;
    if (!d.v.empty() && d.v.back() == 0)
        return false;
    return R.mod(R.sub(f_, R.mul(d.v, d.v)), d.u).empty();
}

std::string HyperCurve::encode(const MumfordDivisor& d) const
{
    const int k = PolyRing::degree(d.u);
    std::string out;
    out.reserve(1 + 6 * static_cast<std::size_t>(k));
    out.push_back(static_cast<char>(k));
    for (int i = 0; i < k; ++i)
        append_encoding(out, d.u[i]);
    for (int i = 0; i < k; ++i)
        append_encoding(out, i < static_cast<int>(d.v.size()) ? d.v[i] : 0);
    return out;
}

std::string HyperCurve::format(const MumfordDivisor& d) const
{
    const std::size_t k = d.u.size() - 1;
    Poly v = d.v;
    v.resize(k, 0);
    return "(" + text::join(d.u) + ";" + text::join(v) + ")";
}

MumfordDivisor HyperCurve::parse_divisor(std::string_view s) const
{
    s = text::strip(s);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw Error(ErrorCode::ParseError, "divisor must look like (u0,...,1;v0,...)");
    auto parts = text::split(s.substr(1, s.size() - 2), ';');
    if (parts.size() != 2)
        throw Error(ErrorCode::ParseError, "divisor needs exactly one ';'");
    auto u = text::parse_int_list<std::uint32_t>(parts[0]);
    auto v = text::parse_int_list<std::uint32_t>(parts[1]);
    MumfordDivisor d{Poly(u.begin(), u.end()), Poly(v.begin(), v.end())};
    PolyRing::trim(d.v);
    if (!is_reduced(d))
        throw Error(ErrorCode::InvalidElement, "not a reduced divisor: " + std::string(s));
    return d;
}

GroupAdapter<MumfordDivisor> HyperCurve::group() const
{
    GroupAdapter<MumfordDivisor> g;
    g.name = "J(F_" + std::to_string(characteristic()) + ") of " + describe();
    HyperCurve self = *this;
    g.add = [self](const MumfordDivisor& a, const MumfordDivisor& b) { return self.add(a, b); };
    g.neg = [self](const MumfordDivisor& a) { return self.neg(a); };
    g.identity = identity();
    g.encode = [self](const MumfordDivisor& a) { return self.encode(a); };
    g.format = [self](const MumfordDivisor& a) { return self.format(a); };
    return g;
}

void HyperCurve::require_enumerable() const
{
    if (genus_ > 3)
        throw Error(ErrorCode::GenusUnsupported, "jacobian enumeration supports genus <= 3");
    if (ipow(characteristic(), genus_) > enumeration_limit)
        throw Error(ErrorCode::FieldTooLarge, "p^g exceeds 10^5");
}

std::vector<MumfordDivisor> HyperCurve::enumerate_jacobian() const
{
    require_enumerable();
    std::uint64_t candidates = 0;
    for (unsigned k = 0; k <= genus_; ++k)
        candidates += ipow(characteristic(), 2 * k);
    return candidates <= candidate_budget ? enumerate_jacobian_by_candidates()
                                          : enumerate_jacobian_by_factorization();
}

std::vector<MumfordDivisor> HyperCurve::enumerate_jacobian_by_candidates() const
{
    require_enumerable();
    const auto& R = ring();
    const std::uint32_t p = characteristic();
    std::vector<MumfordDivisor> out;
    for (unsigned k = 0; k <= genus_; ++k) {
        const std::uint64_t count = ipow(p, k);
        for (std::uint64_t iu = 0; iu < count; ++iu) {
            Poly u = monic_from_index(iu, k, p);
            Poly f_mod_u = R.mod(f_, u);
            for (std::uint64_t iv = 0; iv < count; ++iv) {
                Poly v = poly_from_index(iv, k, p);
                if (R.mod(R.mul(v, v), u) == f_mod_u)
                    out.push_back(MumfordDivisor{u, std::move(v)});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [this](const MumfordDivisor& a, const MumfordDivisor& b) { return encode(a) < encode(b); });
    return out;
}

std::vector<MumfordDivisor> HyperCurve::enumerate_jacobian_by_factorization() const
{
    require_enumerable();
    const auto& R = ring();
    const std::uint32_t p = characteristic();

    // Local solutions of v^2 = f mod h^e for each monic irreducible h, deg h * e <= g.
    struct Local {
        unsigned degree;
        std::vector<Poly> power;               // power[e] = h^e
        std::vector<std::vector<Poly>> roots;  // roots[e] = solutions mod h^e
    };
    std::vector<Local> locals;
    for (unsigned d = 1; d <= genus_; ++d) {
        const std::uint64_t count = ipow(p, d);
        for (std::uint64_t ih = 0; ih < count; ++ih) {
            Poly h = monic_from_index(ih, d, p);
            if (!R.is_irreducible(h))
                continue;
            Local loc{d, {Poly{1}}, {{}}};
            const unsigned max_e = genus_ / d;
            for (unsigned e = 1; e <= max_e; ++e)
                loc.power.push_back(R.mul(loc.power.back(), h));
            loc.roots.resize(max_e + 1);

            const Poly f_mod_h = R.mod(f_, h);
            if (f_mod_h.empty()) {
                loc.roots[1].push_back(Poly{}); // ramified: only v = 0, only e = 1
            } else {
                const FieldCtx residue = FieldCtx::with_modulus(p, h);
                auto r = residue.sqrt(residue.from_poly(f_mod_h));
                if (r) {
                    Poly base = residue.to_poly(*r);
                    for (const Poly& start : {base, R.neg(base)}) {
                        Poly v = start;
                        loc.roots[1].push_back(v);
                        for (unsigned e = 2; e <= max_e; ++e) {
                            const Poly& m = loc.power[e];
                            // Newton step v <- v - (v^2 - f) / (2v) gains at least one power of h
                            for (unsigned it = 0; it < e; ++it) {
                                Poly inv;
                                R.invmod(R.scale(v, 2), m, inv);
                                v = R.mod(R.sub(v, R.mul(R.sub(R.mul(v, v), f_), inv)), m);
                            }
                            loc.roots[e].push_back(v);
                        }
                    }
                }
            }
            locals.push_back(std::move(loc));
        }
    }

    std::vector<MumfordDivisor> out;
    std::function<void(std::size_t, unsigned, const Poly&, const Poly&)> walk =
        [&](std::size_t start, unsigned budget, const Poly& U, const Poly& V) {
            out.push_back(MumfordDivisor{U, R.mod(V, U)});
            for (std::size_t i = start; i < locals.size(); ++i) {
                const Local& loc = locals[i];
                if (loc.degree > budget)
                    break; // locals are sorted by degree
                for (unsigned e = 1; e * loc.degree <= budget; ++e) {
                    const Poly& m = loc.power[e];
                    Poly u_inv;
                    R.invmod(U, m, u_inv);
                    for (const Poly& w : loc.roots[e]) {
                        // CRT: V' = V mod U, V' = w mod h^e
                        Poly t = R.mod(R.mul(R.sub(w, V), u_inv), m);
                        Poly V2 = R.add(V, R.mul(U, t));
                        walk(i + 1, budget - e * loc.degree, R.mul(U, m), V2);
                    }
                }
            }
        };
    walk(0, genus_, Poly{1}, Poly{});

    std::sort(out.begin(), out.end(),
              [this](const MumfordDivisor& a, const MumfordDivisor& b) { return encode(a) < encode(b); });
    return out;
}

std::uint64_t HyperCurve::jacobian_order_zeta() const
{
    if (genus_ != 2)
        throw Error(ErrorCode::GenusUnsupported, "zeta-function order is implemented for genus 2");
    const auto p = static_cast<std::int64_t>(characteristic());
    const auto n1 = static_cast<std::int64_t>(count_points(1));
    const auto n2 = static_cast<std::int64_t>(count_points(2));
    const std::int64_t a1 = n1 - (p + 1);
    const std::int64_t s2 = (a1 * a1 + n2 - p * p - 1) / 2;
    return static_cast<std::uint64_t>(1 + a1 + s2 + p * a1 + p * p);
}

MumfordDivisor HyperCurve::symmetric_center() const
{
    std::optional<MumfordDivisor> center;
    for (const auto& P : points()) {
        MumfordDivisor s = add(embed(P), embed(involution(P)));
        if (!center)
            center = s;
        else if (!(s == *center))
            throw Error(ErrorCode::InconsistentCenter,
                        "embed(P) + embed(i(P)) differs between points: " + format(s) + " vs " + format(*center));
    }
    return center.value_or(identity());
}

SymmetricSidonSet build_symmetric_sidon(const HyperCurve& curve)
{
    SymmetricSidonSet out{curve.group(), {}, curve.symmetric_center()};
    for (const auto& P : curve.points())
        out.elements.push_back(curve.embed(P));
    return out;
}

std::vector<MumfordDivisor> halve_set(const HyperCurve& curve, const std::vector<MumfordDivisor>& set)
{
    // orbit key -> chosen member (smallest encoding within the orbit)
    std::map<std::string, std::pair<std::string, MumfordDivisor>> orbits;
    std::optional<std::pair<std::string, MumfordDivisor>> fixed;
    for (const auto& D : set) {
        const std::string e = curve.encode(D);
        const std::string en = curve.encode(curve.neg(D));
        if (e == en) {
            if (!fixed || e < fixed->first)
                fixed = {e, D};
            continue;
        }
        const std::string key = std::min(e, en);
        auto it = orbits.find(key);
        if (it == orbits.end())
            orbits.emplace(key, std::make_pair(e, D));
        else if (e < it->second.first)
            it->second = {e, D};
    }
    std::vector<std::pair<std::string, MumfordDivisor>> kept;
    for (auto& [key, member] : orbits)
        kept.push_back(member);
    if (fixed)
        kept.push_back(*fixed);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MumfordDivisor> out;
    for (auto& [e, D] : kept)
        out.push_back(std::move(D));
    return out;
}

std::size_t involution_orbit_count(const HyperCurve& curve)
{
    std::size_t orbits = 0;
    for (const auto& P : curve.points())
        if (!(curve.involution(P) < P))
            ++orbits;
    return orbits;
}

} // namespace sidon::hyper
