#pragma once

// Size bounds for curve-image Sidon sets and the genus-2 survey scan.

#include "sidon/group_structure.hpp"
#include "sidon/poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sidon::survey {

/// Exact value num/den, reduced, den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Integer square root when n is a perfect square.
std::optional<std::uint64_t> exact_sqrt(std::uint64_t n);

/// |N - q - 1| <= 2 g sqrt(q), decided in integers.
bool within_weil_points(std::uint64_t q, unsigned g, std::uint64_t N);
/// (sqrt(q) - 1)^{2g} <= A <= (sqrt(q) + 1)^{2g}, decided in integers.
bool within_weil_jacobian(std::uint64_t q, unsigned g, std::uint64_t A);

struct BoundsReport {
    std::uint64_t q = 0;
    unsigned g = 0;
    std::uint64_t S_size = 0;
    std::uint64_t A_order = 0;
    bool weil_S_ok = false;
    bool weil_A_ok = false;
    /// S_size = q + (4 - epsilon) sqrt(q) + 1; genus 2 only.
    std::optional<double> epsilon;
    /// Same value as an exact rational, when q is a perfect square.
    std::optional<Rational> epsilon_exact;
    /// A^{1/2} + (2 - epsilon) A^{1/4} - 2; genus 2 only.
    std::optional<double> et_lower;
    /// S_size / (A^{1/2} + A^{1/4} + 1).
    double et_ratio = 0;
};

BoundsReport compute_bounds_report(std::uint64_t q, unsigned g, std::uint64_t S_size, std::uint64_t A_order);

struct ScanRow {
    std::uint32_t p = 0;
    Poly f;
    std::uint64_t N1 = 0;
    std::uint64_t A_order = 0;
    InvariantFactors invariant_factors;
    bool is_cyclic = false;
    bool sym_sidon_ok = false;
    std::size_t halved_size = 0;
    bool halved_sidon_ok = false;
    double epsilon = 0;
    double elapsed_ms = 0;
};

struct ScanOptions {
    bool random = false;
    std::uint64_t count = 0; // random mode only
    std::uint64_t seed = 0;  // random mode only
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Reads SIDON_THREADS (unset or 0 means automatic).
unsigned threads_from_env();

/// Parses a random-mode seed; throws InvalidSeed.
std::uint64_t parse_seed(std::string_view text);

/// Runs the genus-2 pipeline on a single monic squarefree quintic.
ScanRow analyze_genus2(std::uint32_t p, const Poly& f);

/// Exhaustive mode walks the monic squarefree quintics in lexicographic order of
/// (c0, ..., c4), with c4 = 0 unless p = 5 (any quintic can be translated to that
/// form when 5 is invertible); it needs p^5 <= 10^6. Random mode draws row r from
/// mt19937_64 seeded with (seed, r), retrying until squarefree.
/// Rows are computed in parallel and returned in that order.
/// Throws NotPrime, EvenCharacteristic, FieldTooLarge.
std::vector<ScanRow> scan_genus2(std::uint64_t p, const ScanOptions& options);

/// Quintic drawn for random-mode row `row`.
Poly random_quintic(std::uint32_t p, std::uint64_t seed, std::uint64_t row);

inline constexpr std::uint64_t exhaustive_limit = 1000000;

struct ScanSummary {
    std::size_t rows = 0;
    double cyclic_fraction = 0;
    std::size_t max_halved_size = 0;
    double epsilon_at_max = 0;
};

ScanSummary summarize(const std::vector<ScanRow>& rows);

std::string csv_header();
std::string csv_row(const ScanRow& row);
/// "# scan ..." line, header, rows and "# summary ..." footer.
void write_scan_csv(std::ostream& out, std::uint64_t p, const ScanOptions& options, const std::vector<ScanRow>& rows);

/// "%.9f"
std::string format_real(double x);

} // namespace sidon::survey
