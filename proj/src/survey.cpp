#include "sidon/survey.hpp"

#include "sidon/error.hpp"
#include "sidon/field.hpp"
#include "sidon/hyperelliptic.hpp"
#include "sidon/text.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

namespace sidon::survey {

namespace {

using i128 = __int128;

/// (sqrt(q) + sign)^{2g} = a + b sqrt(q) with integers a, b.
std::pair<i128, i128> binomial_surd(std::uint64_t q, unsigned g, int sign)
{
    i128 a = 0, b = 0;
    const unsigned n = 2 * g;
    i128 binom = 1;
    for (unsigned k = 0; k <= n; ++k) {
        // term C(n,k) sqrt(q)^k sign^{n-k}
        i128 term = binom;
        for (unsigned i = 0; i < k / 2; ++i)
            term *= q;
        if ((n - k) % 2 == 1)
            term *= sign;
        (k % 2 == 0 ? a : b) += term;
        binom = binom * (n - k) / (k + 1);
    }
    return {a, b};
}

/// x <= y sqrt(q) for y >= 0.
bool le_surd(i128 x, i128 y, std::uint64_t q) { return x <= 0 || x * x <= y * y * static_cast<i128>(q); }

} // namespace

std::string Rational::to_string() const
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::optional<std::uint64_t> exact_sqrt(std::uint64_t n)
{
    using u128 = unsigned __int128;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (u128(r) * r > n)
        --r;
    while (u128(r + 1) * (r + 1) <= n)
        ++r;
    if (u128(r) * r == n)
        return r;
    return std::nullopt;
}

bool within_weil_points(std::uint64_t q, unsigned g, std::uint64_t N)
{
    const i128 d = static_cast<i128>(N) - static_cast<i128>(q) - 1;
    return d * d <= static_cast<i128>(4) * g * g * static_cast<i128>(q);
}

bool within_weil_jacobian(std::uint64_t q, unsigned g, std::uint64_t A)
{
    const auto [a_hi, b_hi] = binomial_surd(q, g, +1);
    const auto [a_lo, b_lo] = binomial_surd(q, g, -1); // b_lo <= 0
    const i128 Ai = static_cast<i128>(A);
    // A <= a_hi + b_hi sqrt(q)  and  a_lo + b_lo sqrt(q) <= A
    return le_surd(Ai - a_hi, b_hi, q) && le_surd(a_lo - Ai, -b_lo, q);
}

BoundsReport compute_bounds_report(std::uint64_t q, unsigned g, std::uint64_t S_size, std::uint64_t A_order)
{
    BoundsReport r;
    r.q = q;
    r.g = g;
    r.S_size = S_size;
    r.A_order = A_order;
    r.weil_S_ok = within_weil_points(q, g, S_size);
    r.weil_A_ok = within_weil_jacobian(q, g, A_order);

    const double sq = std::sqrt(static_cast<double>(q));
    const double A2 = std::sqrt(static_cast<double>(A_order));
    const double A4 = std::sqrt(A2);
    r.et_ratio = static_cast<double>(S_size) / (A2 + A4 + 1);
    if (g == 2) {
        // (4 - eps) sqrt(q) = S - q - 1
        const auto deficit = static_cast<std::int64_t>(q) + 1 - static_cast<std::int64_t>(S_size);
        if (auto s = exact_sqrt(q)) {
            const auto root = static_cast<std::int64_t>(*s);
            Rational e{4 * root + deficit, root};
            const auto d = std::gcd(e.num, e.den);
            e.num /= d;
            e.den /= d;
            r.epsilon_exact = e;
            r.epsilon = e.value();
        } else {
            r.epsilon = 4.0 + static_cast<double>(deficit) / sq;
        }
        r.et_lower = A2 + (2.0 - *r.epsilon) * A4 - 2.0;
    }
    return r;
}

unsigned threads_from_env()
{
    unsigned n = 0;
    if (const char* env = std::getenv("SIDON_THREADS")) {
        try {
            n = text::parse_int<unsigned>(env);
        } catch (const Error&) {
            n = 0;
        }
    }
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

std::uint64_t parse_seed(std::string_view text)
{
    try {
        return text::parse_int<std::uint64_t>(text);
    } catch (const Error&) {
        throw Error(ErrorCode::InvalidSeed, "seed must be an unsigned 64-bit integer, got '" + std::string(text) + "'");
    }
}

ScanRow analyze_genus2(std::uint32_t p, const Poly& f)
{
    const auto start = std::chrono::steady_clock::now();
    const auto curve = hyper::HyperCurve::create(FieldCtx::create(p), f);
    const auto group = curve.group();

    ScanRow row;
    row.p = p;
    row.f = f;
    row.N1 = curve.points().size();
    const auto jac = curve.enumerate_jacobian();
    row.A_order = jac.size();
    row.invariant_factors = group_structure(jac, group);
    row.is_cyclic = row.invariant_factors.is_cyclic();

    const auto sym = hyper::build_symmetric_sidon(curve);
    row.sym_sidon_ok = verify_symmetric_sidon(sym.elements, sym.group, sym.center).is_symmetric_sidon;
    const auto halved = hyper::halve_set(curve, sym.elements);
    row.halved_size = halved.size();
    row.halved_sidon_ok = verify_sidon(halved, group).is_sidon;
    row.epsilon = *compute_bounds_report(p, 2, row.N1, row.A_order).epsilon;
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

Poly random_quintic(std::uint32_t p, std::uint64_t seed, std::uint64_t row)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
    const PolyRing R(p);
    for (;;) {
        Poly f(6);
        for (unsigned i = 0; i < 5; ++i)
            f[i] = coeff(rng);
        f[5] = 1;
        if (R.is_squarefree(f))
            return f;
    }
}

std::vector<ScanRow> scan_genus2(std::uint64_t p, const ScanOptions& options)
{
    const FieldCtx ctx = FieldCtx::create(p);
    if (p == 2)
        throw Error(ErrorCode::EvenCharacteristic, "genus-2 scans need odd characteristic");
    const auto P = static_cast<std::uint32_t>(p);
    const PolyRing& R = ctx.prime_ring();

    std::vector<Poly> curves;
    if (options.random) {
        for (std::uint64_t r = 0; r < options.count; ++r)
            curves.push_back(random_quintic(P, options.seed, r));
    } else {
        if (p * p * p * p * p > exhaustive_limit)
            throw Error(ErrorCode::FieldTooLarge, "exhaustive scan needs p^5 <= 10^6");
        const unsigned free = p == 5 ? 5 : 4; // c0..c3, plus c4 when p = 5
        std::uint64_t total = 1;
        for (unsigned i = 0; i < free; ++i)
            total *= p;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly f(6, 0);
            std::uint64_t rest = idx;
            for (unsigned i = free; i-- > 0;) { // c0 is the most significant digit
                f[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            f[5] = 1;
            if (R.is_squarefree(f))
                curves.push_back(std::move(f));
        }
    }

    std::vector<ScanRow> rows(curves.size());
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads ? options.threads : threads_from_env(),
                                                             static_cast<unsigned>(std::max<std::size_t>(1, curves.size()))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < curves.size();) {
            try {
                rows[i] = analyze_genus2(P, curves[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = curves.size();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return rows;
}

ScanSummary summarize(const std::vector<ScanRow>& rows)
{
    ScanSummary s;
    s.rows = rows.size();
    std::size_t cyclic = 0;
    bool first = true;
    for (const auto& r : rows) {
        cyclic += r.is_cyclic ? 1 : 0;
        if (first || r.halved_size > s.max_halved_size) {
            s.max_halved_size = r.halved_size;
            s.epsilon_at_max = r.epsilon;
            first = false;
        }
    }
    s.cyclic_fraction = rows.empty() ? 0.0 : static_cast<double>(cyclic) / static_cast<double>(rows.size());
    return s;
}

std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

std::string csv_header()
{
    return "p,f,N1,A_order,invariant_factors,is_cyclic,sym_sidon_ok,halved_size,halved_sidon_ok,epsilon,elapsed_ms";
}

std::string csv_row(const ScanRow& r)
{
    auto b = [](bool v) { return v ? "true" : "false"; };
    char ms[64];
    std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
    return std::to_string(r.p) + "," + text::join(r.f, ";") + "," + std::to_string(r.N1) + "," +
           std::to_string(r.A_order) + "," + r.invariant_factors.to_string() + "," + b(r.is_cyclic) + "," +
           b(r.sym_sidon_ok) + "," + std::to_string(r.halved_size) + "," + b(r.halved_sidon_ok) + "," +
           format_real(r.epsilon) + "," + ms;
}

void write_scan_csv(std::ostream& out, std::uint64_t p, const ScanOptions& options, const std::vector<ScanRow>& rows)
{
    out << "# scan p=" << p;
    if (options.random)
        out << " mode=random count=" << options.count << " seed=" << options.seed << " rng=mt19937_64";
    else
        out << " mode=exhaustive";
    out << "\n" << csv_header() << "\n";
    for (const auto& r : rows)
        out << csv_row(r) << "\n";
    const auto s = summarize(rows);
    out << "# summary rows=" << s.rows << " cyclic_fraction=" << format_real(s.cyclic_fraction)
        << " max_halved_size=" << s.max_halved_size << " epsilon_at_max=" << format_real(s.epsilon_at_max) << "\n";
}

} // namespace sidon::survey
