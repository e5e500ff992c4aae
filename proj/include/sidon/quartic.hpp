#pragma once

// Smooth plane quartics F(X, Y, Z) = 0 over F_p (genus 3, canonically embedded,
// hence never hyperelliptic), with a linear-equivalence test for sums of two
// rational points that works through lines and their residual intersections.

#include "sidon/field.hpp"
#include "sidon/poly.hpp"
#include "sidon/sidon.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sidon::quartic {

/// Exponent triple (a, b, c) of X^a Y^b Z^c.
using Monomial = std::array<unsigned, 3>;

/// The 15 degree-4 monomials in descending lexicographic order:
/// X^4, X^3Y, X^3Z, X^2Y^2, X^2YZ, X^2Z^2, XY^3, XY^2Z, XYZ^2, XZ^3, Y^4, Y^3Z, Y^2Z^2, YZ^3, Z^4.
const std::vector<Monomial>& quartic_monomials();
std::vector<Monomial> monomials_of_degree(unsigned d);

/// Point of P^2(F_p), first nonzero coordinate equal to 1.
struct ProjPoint {
    std::array<std::uint32_t, 3> coords{0, 0, 1};

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Scalar-canonical binary form sum_i c_i s^{d-i} t^i, first nonzero coefficient 1.
struct BinaryForm {
    std::vector<std::uint32_t> coeffs;

    unsigned degree() const noexcept { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

/// Homogeneous form of fixed degree over F_p, coefficients in monomials_of_degree order.
class TernaryForm {
public:
    TernaryForm(std::uint32_t p, unsigned degree, std::vector<std::uint32_t> coeffs);

    std::uint32_t characteristic() const noexcept { return ring_.characteristic(); }
    unsigned degree() const noexcept { return degree_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept;

    std::uint32_t eval(const std::array<std::uint32_t, 3>& point) const noexcept;
    /// Formal partial derivative in variable 0 (X), 1 (Y) or 2 (Z).
    TernaryForm partial(unsigned var) const;
    /// f(x, y) = F(x, y, 1) as a polynomial in y with coefficients in F_p[x].
    std::vector<Poly> dehomogenize() const;
    /// F(X, Y, 0) as coefficients of X^{d-i} Y^i.
    std::vector<std::uint32_t> at_infinity() const;

private:
    PolyRing ring_;
    unsigned degree_;
    std::vector<std::uint32_t> coeffs_;
    std::vector<Monomial> monomials_;
};

struct SmoothnessEvidence {
    bool smooth = true;
    std::string reason;
    /// gcd of the resultants in the chart Z = 1 (zero when they all vanish).
    Poly elimination_gcd;
    /// Squarefree factor of elimination_gcd over whose roots a common zero lifts.
    std::optional<Poly> singular_x_locus;
    /// Whether the line Z = 0 carries a singular point.
    bool singular_at_infinity = false;
    /// F_p-rational singular points found by direct search (small p only).
    std::vector<ProjPoint> rational_singular_points;
};

/// Common projective zero of F, F_X, F_Y, F_Z over the algebraic closure?
///
/// Chart Z = 1: with f = F(x, y, 1), the x-coordinate of any common zero is a
/// root of G = gcd(Res_y(f_x, f_y), Res_y(f, f_x), Res_y(f, f_y)). Each root
/// class of the radical of G is then lifted: the gcd of f, f_x, f_y is taken in
/// (F_p[x]/(G))[y], splitting the modulus whenever a leading coefficient is a
/// zero divisor, so degenerate leading coefficients are specialized exactly.
/// Line Z = 0: gcd of the four restricted binary forms.
SmoothnessEvidence is_smooth(const TernaryForm& form);

/// Common zero of the given polynomials in y over F_p[x]/(modulus) for some root
/// of the squarefree modulus. Returns the split factor of the modulus on which a
/// common root (or identically vanishing specialization) occurs.
std::optional<Poly> common_root_locus(const PolyRing& ring, const Poly& modulus, std::vector<std::vector<Poly>> polys);

/// Res_y(a, b) for a, b in F_p[x][y] via a fraction-free Sylvester determinant.
Poly resultant_y(const PolyRing& ring, const std::vector<Poly>& a, const std::vector<Poly>& b);

struct LineResidual {
    std::array<std::uint32_t, 3> line; // aX + bY + cZ, first nonzero coefficient 1
    ProjPoint base1, base2;            // the two smallest points of L(F_p); L = {s*base1 + t*base2}
    std::vector<std::uint32_t> restriction; // F(s*base1 + t*base2), degree 4, raw coefficients
    BinaryForm residual;                    // restriction / (l_P l_Q), normalized
};

class PlaneQuartic {
public:
    /// Throws ExtensionFieldUnsupported, ZeroForm, Singular.
    static PlaneQuartic create(const FieldCtx& ctx, const std::vector<std::uint32_t>& coeffs);
    static PlaneQuartic create(std::uint64_t p, const std::vector<std::int64_t>& coeffs);

    const FieldCtx& field() const noexcept { return ctx_; }
    const TernaryForm& form() const noexcept { return form_; }
    const SmoothnessEvidence& evidence() const noexcept { return evidence_; }
    std::uint32_t characteristic() const noexcept { return ctx_.characteristic(); }

    bool on_curve(const ProjPoint& P) const noexcept { return form_.eval(P.coords) == 0; }
    /// C(F_p) in canonical order.
    std::vector<ProjPoint> rational_points() const;

    /// Line through P and Q (tangent line when P = Q) and the residual
    /// quadratic E with L.C = P + Q + E. Throws PointNotOnCurve, InternalMultiplicityError.
    LineResidual line_and_residual(const ProjPoint& P, const ProjPoint& Q) const;

    /// Decides (x1) + (x2) ~ (x3) + (x4) on C. After cancelling common points,
    /// two points remain per side (else the answer is immediate). Their lines
    /// cut canonical divisors, so the pairs are equivalent iff the residuals are
    /// equivalent, iff they are equal (C is not hyperelliptic). Residuals on
    /// distinct lines can only agree as 2R with R = L1 n L2.
    bool pair_class_equivalent(const ProjPoint& x1, const ProjPoint& x2, const ProjPoint& x3,
                               const ProjPoint& x4) const;

    std::string format_coeffs() const;

private:
    PlaneQuartic(FieldCtx ctx, TernaryForm form, SmoothnessEvidence evidence)
        : ctx_(std::move(ctx)), form_(std::move(form)), evidence_(std::move(evidence))
    {
    }

    FieldCtx ctx_;
    TernaryForm form_;
    SmoothnessEvidence evidence_;
};

std::string format_point(const ProjPoint& P);
std::string format_binary_form(const BinaryForm& b);

struct QuarticSidonResult {
    SidonReport<ProjPoint> report;
    std::uint64_t oracle_calls = 0; // pair-pair comparisons, spot checks excluded
};

/// Runs the oracle-driven Sidon check over all of C(F_p); needs N(N+1)/2 <= 5000.
QuarticSidonResult verify_sidon_quartic(const PlaneQuartic& curve);

inline constexpr std::size_t max_pair_count = 5000;

/// Draws coefficient vectors until one is smooth.
PlaneQuartic random_smooth_quartic(std::uint64_t p, std::mt19937_64& rng);

/// X^3 Y + Y^3 Z + Z^3 X.
std::vector<std::int64_t> klein_coefficients();

} // namespace sidon::quartic
