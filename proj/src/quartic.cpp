#include "sidon/quartic.hpp"

#include "sidon/error.hpp"
#include "sidon/text.hpp"

#include <algorithm>
#include <map>

namespace sidon::quartic {

namespace {

using Vec3 = std::array<std::uint32_t, 3>;
/// Polynomial in y with coefficients in F_p[x], index = power of y, trimmed.
using BiPoly = std::vector<Poly>;

void trim_bi(BiPoly& a)
{
    while (!a.empty() && a.back().empty())
        a.pop_back();
}

int y_degree(const BiPoly& a) { return static_cast<int>(a.size()) - 1; }

std::size_t monomial_index(unsigned d, const Monomial& m)
{
    // position in descending lex order: blocks for a = d, d-1, ..., each of size d-a+1
    std::size_t idx = 0;
    for (unsigned a = d; a > m[0]; --a)
        idx += d - a + 1;
    return idx + (d - m[0] - m[1]);
}

Vec3 cross(const PolyRing& F, const Vec3& u, const Vec3& v)
{
    return {F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])), F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
            F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))};
}

bool is_null(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

Vec3 normalize(const PolyRing& F, Vec3 v)
{
    for (auto c : v)
        if (c != 0) {
            const auto s = F.inv(c);
            for (auto& x : v)
                x = F.mul(x, s);
            break;
        }
    return v;
}

/// Binary forms as coefficient vectors, index i for s^{d-i} t^i.
using Binary = std::vector<std::uint32_t>;

Binary binary_mul(const PolyRing& F, const Binary& a, const Binary& b)
{
    Binary out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    return out;
}

/// b / (alpha s + beta t); throws InternalMultiplicityError unless exact.
Binary binary_div_linear(const PolyRing& F, const Binary& b, std::uint32_t alpha, std::uint32_t beta)
{
    const std::size_t d = b.size() - 1;
    Binary c(d, 0);
    bool exact;
    if (alpha != 0) {
        const auto ia = F.inv(alpha);
        for (std::size_t i = 0; i < d; ++i)
            c[i] = F.mul(F.sub(b[i], i ? F.mul(beta, c[i - 1]) : 0), ia);
        exact = b[d] == F.mul(beta, c[d - 1]);
    } else {
        const auto ib = F.inv(beta);
        for (std::size_t i = 1; i <= d; ++i)
            c[i - 1] = F.mul(b[i], ib);
        exact = b[0] == 0;
    }
    if (!exact)
        throw Error(ErrorCode::InternalMultiplicityError, "restriction does not vanish at the expected parameter");
    return c;
}

BinaryForm normalize_binary(const PolyRing& F, Binary b)
{
    auto lead = std::find_if(b.begin(), b.end(), [](auto c) { return c != 0; });
    if (lead == b.end())
        throw Error(ErrorCode::InternalMultiplicityError, "residual form vanishes identically");
    const auto s = F.inv(*lead);
    for (auto& c : b)
        c = F.mul(c, s);
    return BinaryForm{std::move(b)};
}

/// Bareiss fraction-free determinant over F_p[x].
Poly determinant(const PolyRing& R, std::vector<std::vector<Poly>> M)
{
    const std::size_t n = M.size();
    if (n == 0)
        return {1};
    bool negate = false;
    Poly prev{1};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].empty()) {
            std::size_t r = k + 1;
            while (r < n && M[r][k].empty())
                ++r;
            if (r == n)
                return {};
            std::swap(M[k], M[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = R.exact_div(R.sub(R.mul(M[i][j], M[k][k]), R.mul(M[i][k], M[k][j])), prev);
            M[i][k].clear();
        }
        prev = M[k][k];
    }
    return negate ? R.neg(M[n - 1][n - 1]) : M[n - 1][n - 1];
}

Poly ipow_poly(const PolyRing& R, const Poly& a, unsigned e)
{
    Poly r{1};
    for (unsigned i = 0; i < e; ++i)
        r = R.mul(r, a);
    return r;
}

/// Polynomial in x vanishing at the x-coordinate of every common zero of a and b
/// (zero when no constraint can be derived).
Poly elimination(const PolyRing& R, const BiPoly& a, const BiPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    if (a.size() == 1 && b.size() == 1)
        return R.gcd(a[0], b[0]);
    if (a.size() == 1)
        return R.monic(ipow_poly(R, a[0], static_cast<unsigned>(y_degree(b))));
    if (b.size() == 1)
        return R.monic(ipow_poly(R, b[0], static_cast<unsigned>(y_degree(a))));
    return resultant_y(R, a, b);
}

} // namespace

std::vector<Monomial> monomials_of_degree(unsigned d)
{
    std::vector<Monomial> out;
    for (unsigned a = d + 1; a-- > 0;)
        for (unsigned b = d - a + 1; b-- > 0;)
            out.push_back({a, b, d - a - b});
    return out;
}

const std::vector<Monomial>& quartic_monomials()
{
    static const std::vector<Monomial> monomials = monomials_of_degree(4);
    return monomials;
}

TernaryForm::TernaryForm(std::uint32_t p, unsigned degree, std::vector<std::uint32_t> coeffs)
    : ring_(p), degree_(degree), coeffs_(std::move(coeffs)), monomials_(monomials_of_degree(degree))
{
    if (coeffs_.size() != (degree + 1) * (degree + 2) / 2)
        throw Error(ErrorCode::BadDegree, "a ternary form of degree " + std::to_string(degree) + " has " +
                                              std::to_string((degree + 1) * (degree + 2) / 2) + " coefficients");
    for (auto c : coeffs_)
        if (c >= p)
            throw Error(ErrorCode::InvalidElement, "coefficient " + std::to_string(c) + " is not reduced mod p");
}

bool TernaryForm::is_zero() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

std::uint32_t TernaryForm::eval(const std::array<std::uint32_t, 3>& point) const noexcept
{
    std::array<std::vector<std::uint32_t>, 3> powers;
    for (unsigned v = 0; v < 3; ++v) {
        powers[v].assign(degree_ + 1, 1);
        for (unsigned e = 1; e <= degree_; ++e)
            powers[v][e] = ring_.mul(powers[v][e - 1], point[v] % ring_.characteristic());
    }
    const auto& monomials = monomials_;
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        const auto& m = monomials[i];
        auto term = ring_.mul(coeffs_[i], ring_.mul(powers[0][m[0]], ring_.mul(powers[1][m[1]], powers[2][m[2]])));
        sum = ring_.add(sum, term);
    }
    return sum;
}

TernaryForm TernaryForm::partial(unsigned var) const
{
    if (degree_ == 0)
        throw Error(ErrorCode::BadDegree, "cannot differentiate a constant form");
    std::vector<std::uint32_t> out((degree_) * (degree_ + 1) / 2, 0);
    const auto& monomials = monomials_;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        Monomial m = monomials[i];
        if (m[var] == 0 || coeffs_[i] == 0)
            continue;
        const auto factor = ring_.reduce(m[var]);
        --m[var];
        auto& slot = out[monomial_index(degree_ - 1, m)];
        slot = ring_.add(slot, ring_.mul(coeffs_[i], factor));
    }
    return TernaryForm(ring_.characteristic(), degree_ - 1, std::move(out));
}

std::vector<Poly> TernaryForm::dehomogenize() const
{
    BiPoly out(degree_ + 1);
    const auto& monomials = monomials_;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        auto& coeff = out[monomials[i][1]];
        if (coeff.size() <= monomials[i][0])
            coeff.resize(monomials[i][0] + 1, 0);
        coeff[monomials[i][0]] = coeffs_[i];
    }
    for (auto& c : out)
        PolyRing::trim(c);
    trim_bi(out);
    return out;
}

std::vector<std::uint32_t> TernaryForm::at_infinity() const
{
    std::vector<std::uint32_t> out(degree_ + 1, 0);
    const auto& monomials = monomials_;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        if (monomials[i][2] == 0)
            out[monomials[i][1]] = coeffs_[i];
    return out;
}

Poly resultant_y(const PolyRing& ring, const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    const int m = y_degree(a), n = y_degree(b);
    if (m < 0 || n < 0)
        return {};
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0)
        return {1};
    std::vector<std::vector<Poly>> M(size, std::vector<Poly>(size));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            M[i][i + k] = a[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            M[n + i][i + k] = b[n - k];
    return determinant(ring, std::move(M));
}

std::optional<Poly> common_root_locus(const PolyRing& R, const Poly& modulus, std::vector<std::vector<Poly>> polys)
{
    if (PolyRing::degree(modulus) < 1)
        return std::nullopt;

    // reduce mod the modulus and make every leading coefficient a unit, splitting on zero divisors
    for (auto& a : polys) {
        for (auto& c : a)
            c = R.mod(c, modulus);
        trim_bi(a);
        if (a.empty())
            continue;
        Poly g = R.gcd(a.back(), modulus);
        if (PolyRing::degree(g) >= 1) {
            Poly other = R.div(modulus, g);
            if (auto hit = common_root_locus(R, g, polys))
                return hit;
            return common_root_locus(R, other, polys);
        }
    }
    polys.erase(std::remove_if(polys.begin(), polys.end(), [](const BiPoly& a) { return a.empty(); }), polys.end());

    if (polys.empty())
        return modulus; // everything vanishes identically over this locus
    for (const auto& a : polys)
        if (a.size() == 1)
            return std::nullopt; // a unit in y at every root of the modulus
    if (polys.size() == 1)
        return modulus;

    // one Euclidean step on the two polynomials of largest y-degree
    std::sort(polys.begin(), polys.end(), [](const BiPoly& x, const BiPoly& y) { return x.size() > y.size(); });
    BiPoly& a = polys[0];
    const BiPoly& b = polys[1];
    Poly lead_inv;
    R.invmod(b.back(), modulus, lead_inv);
    while (a.size() >= b.size()) {
        const Poly q = R.mulmod(a.back(), lead_inv, modulus);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = R.mod(R.sub(a[shift + i], R.mul(q, b[i])), modulus);
        trim_bi(a);
    }
    return common_root_locus(R, modulus, std::move(polys));
}

SmoothnessEvidence is_smooth(const TernaryForm& form)
{
    SmoothnessEvidence ev;
    const PolyRing R(form.characteristic());
    if (form.is_zero()) {
        ev.smooth = false;
        ev.reason = "zero form";
        return ev;
    }
    const TernaryForm FX = form.partial(0), FY = form.partial(1), FZ = form.partial(2);

    // line Z = 0
    std::vector<Binary> at_inf = {form.at_infinity(), FX.at_infinity(), FY.at_infinity(), FZ.at_infinity()};
    bool all_zero = true, root_at_x_axis = true;
    Poly g_inf;
    for (const auto& b : at_inf) {
        const bool zero = std::all_of(b.begin(), b.end(), [](auto c) { return c == 0; });
        all_zero = all_zero && zero;
        root_at_x_axis = root_at_x_axis && b.front() == 0; // value at (1:0:0)
        // (X : 1 : 0) -> polynomial in X, coefficient of X^{d-i} is b_i
        Poly dehom(b.rbegin(), b.rend());
        PolyRing::trim(dehom);
        g_inf = R.gcd(g_inf, dehom);
    }
    if (all_zero || root_at_x_axis || PolyRing::degree(g_inf) >= 1) {
        ev.smooth = false;
        ev.singular_at_infinity = true;
        ev.reason = "singular point on the line Z = 0";
    }

    // chart Z = 1
    const BiPoly f = form.dehomogenize(), fx = FX.dehomogenize(), fy = FY.dehomogenize();
    Poly G = R.gcd(R.gcd(elimination(R, fx, fy), elimination(R, f, fx)), elimination(R, f, fy));
    ev.elimination_gcd = G;
    if (G.empty()) {
        // all three resultants vanish: f shares a component with its partials
        ev.smooth = false;
        if (ev.reason.empty())
            ev.reason = "f, f_x, f_y share a common component";
    } else if (PolyRing::degree(G) >= 1) {
        const Poly M = R.radical(G);
        if (auto locus = common_root_locus(R, M, {f, fx, fy})) {
            ev.smooth = false;
            ev.singular_x_locus = R.monic(*locus);
            if (ev.reason.empty())
                ev.reason = "common zero of f, f_x, f_y over a root of the elimination gcd";
        }
    }

    if (!ev.smooth) {
        const std::uint64_t p = form.characteristic();
        if (p * p <= 1000000) {
            const TernaryForm* parts[] = {&form, &FX, &FY, &FZ};
            auto check = [&](Vec3 v) {
                for (auto* F : parts)
                    if (F->eval(v) != 0)
                        return;
                ev.rational_singular_points.push_back(ProjPoint{v});
            };
            check({0, 0, 1});
            for (std::uint32_t z = 0; z < p; ++z)
                check({0, 1, z});
            for (std::uint32_t y = 0; y < p; ++y)
                for (std::uint32_t z = 0; z < p; ++z)
                    check({1, y, z});
        }
    }
    return ev;
}

PlaneQuartic PlaneQuartic::create(const FieldCtx& ctx, const std::vector<std::uint32_t>& coeffs)
{
    if (!ctx.is_prime_field())
        throw Error(ErrorCode::ExtensionFieldUnsupported, "plane quartics are defined over prime fields only");
    if (coeffs.size() != quartic_monomials().size())
        throw Error(ErrorCode::BadDegree, "a plane quartic has 15 coefficients, got " + std::to_string(coeffs.size()));
    TernaryForm form(ctx.characteristic(), 4, coeffs);
    if (form.is_zero())
        throw Error(ErrorCode::ZeroForm, "all coefficients vanish");
    SmoothnessEvidence ev = is_smooth(form);
    if (!ev.smooth) {
        std::string msg = ev.reason;
        if (!ev.rational_singular_points.empty())
            msg += "; rational witness " + format_point(ev.rational_singular_points.front());
        else if (ev.singular_x_locus)
            msg += "; x-locus " + text::join(*ev.singular_x_locus);
        throw Error(ErrorCode::Singular, msg);
    }
    return PlaneQuartic(ctx, std::move(form), std::move(ev));
}

PlaneQuartic PlaneQuartic::create(std::uint64_t p, const std::vector<std::int64_t>& coeffs)
{
    FieldCtx ctx = FieldCtx::create(p);
    std::vector<std::uint32_t> reduced;
    for (auto c : coeffs)
        reduced.push_back(ctx.prime_ring().reduce(c));
    return create(ctx, reduced);
}

std::vector<ProjPoint> PlaneQuartic::rational_points() const
{
    const std::uint32_t p = characteristic();
    std::vector<ProjPoint> out;
    auto consider = [&](Vec3 v) {
        if (form_.eval(v) == 0)
            out.push_back(ProjPoint{v});
    };
    consider({0, 0, 1});
    for (std::uint32_t z = 0; z < p; ++z)
        consider({0, 1, z});
    for (std::uint32_t y = 0; y < p; ++y)
        for (std::uint32_t z = 0; z < p; ++z)
            consider({1, y, z});
    return out;
}

LineResidual PlaneQuartic::line_and_residual(const ProjPoint& P, const ProjPoint& Q) const
{
    if (!on_curve(P))
        throw Error(ErrorCode::PointNotOnCurve, format_point(P));
    if (!on_curve(Q))
        throw Error(ErrorCode::PointNotOnCurve, format_point(Q));
    const PolyRing& F = ctx_.prime_ring();
    const std::uint32_t p = characteristic();

    Vec3 L;
    if (P == Q) {
        for (unsigned v = 0; v < 3; ++v)
            L[v] = form_.partial(v).eval(P.coords);
        if (is_null(L))
            throw Error(ErrorCode::InternalMultiplicityError, "vanishing gradient at " + format_point(P));
    } else {
        L = cross(F, P.coords, Q.coords);
    }
    L = normalize(F, L);

    // two independent vectors spanning L, then all p + 1 points, keep the two smallest
    std::vector<Vec3> span;
    for (unsigned i = 0; i < 3 && span.size() < 2; ++i) {
        Vec3 e{0, 0, 0};
        e[i] = 1;
        Vec3 w = cross(F, L, e);
        if (is_null(w))
            continue;
        if (span.empty() || !is_null(cross(F, span[0], w)))
            span.push_back(w);
    }
    std::vector<Vec3> on_line{normalize(F, span[0])};
    for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
        Vec3 w;
        for (unsigned k = 0; k < 3; ++k)
            w[k] = F.add(F.mul(lambda, span[0][k]), span[1][k]);
        on_line.push_back(normalize(F, w));
    }
    std::partial_sort(on_line.begin(), on_line.begin() + 2, on_line.end());
    const Vec3 B1 = on_line[0], B2 = on_line[1];

    // B(s, t) = F(s B1 + t B2)
    const auto& monomials = quartic_monomials();
    Binary B(5, 0);
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        const auto c = form_.coeffs()[i];
        if (c == 0)
            continue;
        Binary term{c};
        for (unsigned v = 0; v < 3; ++v)
            for (unsigned e = 0; e < monomials[i][v]; ++e)
                term = binary_mul(F, term, {B1[v], B2[v]});
        for (std::size_t k = 0; k < 5; ++k)
            B[k] = F.add(B[k], term[k]);
    }

    const Vec3 base_cross = cross(F, B1, B2);
    const unsigned k = base_cross[0] != 0 ? 0 : (base_cross[1] != 0 ? 1 : 2);
    auto param_form = [&](const ProjPoint& X) -> std::array<std::uint32_t, 2> {
        const auto s0 = cross(F, X.coords, B2)[k];
        const auto t0 = F.neg(cross(F, X.coords, B1)[k]);
        return {t0, F.neg(s0)}; // t0 s - s0 t
    };
    const auto lp = param_form(P), lq = param_form(Q);
    Binary residual = binary_div_linear(F, binary_div_linear(F, B, lp[0], lp[1]), lq[0], lq[1]);

    LineResidual out;
    out.line = L;
    out.base1 = ProjPoint{B1};
    out.base2 = ProjPoint{B2};
    out.restriction = B;
    out.residual = normalize_binary(F, std::move(residual));
    return out;
}

namespace {

/// Shared decision procedure; `residual_of` supplies line/residual data for a pair.
template <class ResidualOf>
bool decide_equivalent(const PlaneQuartic& C, const std::array<ProjPoint, 2>& lhs, const std::array<ProjPoint, 2>& rhs,
                       ResidualOf&& residual_of)
{
    for (const auto& P : {lhs[0], lhs[1], rhs[0], rhs[1]})
        if (!C.on_curve(P))
            throw Error(ErrorCode::PointNotOnCurve, format_point(P));

    std::vector<ProjPoint> a(lhs.begin(), lhs.end()), b(rhs.begin(), rhs.end());
    for (auto it = a.begin(); it != a.end();) {
        auto hit = std::find(b.begin(), b.end(), *it);
        if (hit != b.end()) {
            b.erase(hit);
            it = a.erase(it);
        } else {
            ++it;
        }
    }
    if (a.empty())
        return true;
    if (a.size() == 1)
        return a[0] == b[0]; // distinct points are never equivalent in positive genus

    const LineResidual& r1 = residual_of(a[0], a[1]);
    const LineResidual& r2 = residual_of(b[0], b[1]);
    if (r1.line == r2.line)
        return false;
    const PolyRing& F = C.field().prime_ring();
    const ProjPoint R{normalize(F, cross(F, r1.line, r2.line))};
    if (!C.on_curve(R))
        return false;

    auto double_point_form = [&](const LineResidual& r) {
        const Vec3 base_cross = cross(F, r.base1.coords, r.base2.coords);
        const unsigned k = base_cross[0] != 0 ? 0 : (base_cross[1] != 0 ? 1 : 2);
        const auto s0 = cross(F, R.coords, r.base2.coords)[k];
        const auto t0 = F.neg(cross(F, R.coords, r.base1.coords)[k]);
        const Binary l{t0, F.neg(s0)};
        return normalize_binary(F, binary_mul(F, l, l));
    };
    return r1.residual == double_point_form(r1) && r2.residual == double_point_form(r2);
}

} // namespace

bool PlaneQuartic::pair_class_equivalent(const ProjPoint& x1, const ProjPoint& x2, const ProjPoint& x3,
                                         const ProjPoint& x4) const
{
    LineResidual first, second;
    bool used_first = false;
    auto fresh = [&](const ProjPoint& P, const ProjPoint& Q) -> const LineResidual& {
        LineResidual& slot = used_first ? second : first;
        used_first = true;
        slot = line_and_residual(P, Q);
        return slot;
    };
    return decide_equivalent(*this, {x1, x2}, {x3, x4}, fresh);
}

std::string PlaneQuartic::format_coeffs() const { return text::join(form_.coeffs()); }

std::string format_point(const ProjPoint& P)
{
    return "(" + std::to_string(P.coords[0]) + ":" + std::to_string(P.coords[1]) + ":" + std::to_string(P.coords[2]) +
           ")";
}

std::string format_binary_form(const BinaryForm& b) { return "[" + text::join(b.coeffs) + "]"; }

QuarticSidonResult verify_sidon_quartic(const PlaneQuartic& curve)
{
    const auto points = curve.rational_points();
    const std::size_t n = points.size();
    if (n * (n + 1) / 2 > max_pair_count)
        throw Error(ErrorCode::SetTooLarge,
                    std::to_string(n) + " points give more than " + std::to_string(max_pair_count) + " pairs");

    // residual data per unordered pair, computed on demand
    std::map<std::pair<ProjPoint, ProjPoint>, LineResidual> cache;
    auto cached = [&](const ProjPoint& P, const ProjPoint& Q) -> const LineResidual& {
        auto key = P < Q ? std::pair{P, Q} : std::pair{Q, P};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, curve.line_and_residual(key.first, key.second)).first;
        return it->second;
    };

    QuarticSidonResult result;
    PairClassOracle<ProjPoint> oracle = [&](const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                                            const ProjPoint& d) {
        return decide_equivalent(curve, {a, b}, {c, d}, cached);
    };
    result.report = verify_sidon_by_oracle(points, oracle, &result.oracle_calls);
    return result;
}

PlaneQuartic random_smooth_quartic(std::uint64_t p, std::mt19937_64& rng)
{
    FieldCtx ctx = FieldCtx::create(p);
    std::uniform_int_distribution<std::uint32_t> coeff(0, static_cast<std::uint32_t>(p - 1));
    for (;;) {
        std::vector<std::uint32_t> c(15);
        for (auto& x : c)
            x = coeff(rng);
        TernaryForm form(ctx.characteristic(), 4, c);
        if (form.is_zero() || !is_smooth(form).smooth)
            continue;
        return PlaneQuartic::create(ctx, c);
    }
}

std::vector<std::int64_t> klein_coefficients()
{
    std::vector<std::int64_t> c(15, 0);
    c[1] = 1;  // X^3 Y
    c[11] = 1; // Y^3 Z
    c[9] = 1;  // X Z^3
    return c;
}

} // namespace sidon::quartic
