#include "sidon/cli.hpp"

#include "sidon/diagonal.hpp"
#include "sidon/error.hpp"
#include "sidon/hyperelliptic.hpp"
#include "sidon/quartic.hpp"
#include "sidon/survey.hpp"
#include "sidon/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sidon {

namespace {

using nlohmann::json;

constexpr int schema_version = 1;

json envelope(const std::string& command)
{
    json j;
    j["schema"] = schema_version;
    j["command"] = command;
    return j;
}

std::ofstream open_csv(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
    return f;
}

/// Opens path for appending and writes the header only into an empty file.
std::ofstream append_csv(const std::string& path, std::string_view header)
{
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream f(path, std::ios::app);
    if (!f)
        throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
    if (fresh)
        f << header << "\n";
    return f;
}

/// q = p^m with p prime.
FieldCtx field_of_order(std::uint64_t q)
{
    if (q < 2)
        throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    const auto primes = prime_factors(q);
    if (primes.size() != 1)
        throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    unsigned m = 0;
    for (std::uint64_t r = q; r > 1; r /= primes[0])
        ++m;
    return FieldCtx::create(primes[0], m);
}

std::string format_curve_point(const hyper::CurvePoint& P)
{
    return P.is_affine ? "(" + std::to_string(P.x) + "," + std::to_string(P.y) + ")" : "inf";
}

int run_diagonal(std::uint64_t q, bool integers, std::ostream& out)
{
    const FieldCtx ctx = field_of_order(q);
    const auto set = diagonal::build_diagonal(ctx);
    const auto report = verify_sidon(set.elements, set.group);

    json j = envelope("diagonal");
    j["field"] = ctx.describe();
    j["group_order"] = q * (q - 1);
    j["report"] = report_to_json(report, set.group.format);
    bool ok = report.is_sidon && report.set_size == q - 1;

    for (const auto& e : set.elements)
        out << set.group.format(e) << "\n";
    if (integers) {
        const auto ints = diagonal::to_cyclic_integers(ctx, set.elements);
        const auto zn = cyclic_group(q * (q - 1));
        const auto int_report = verify_sidon(ints, zn);
        for (auto n : ints)
            out << n << "\n";
        j["integers"] = ints;
        j["integer_report"] = report_to_json(int_report, zn.format);
        ok = ok && int_report.is_sidon;
    }
    out << j.dump() << "\n";
    return ok ? exit_ok : exit_verification_failed;
}

std::vector<std::uint64_t> read_set(const std::string& inline_set, const std::string& set_file)
{
    std::string text = inline_set;
    if (!set_file.empty()) {
        std::ifstream in(set_file);
        if (!in)
            throw Error(ErrorCode::ParseError, "cannot read " + set_file);
        std::string line;
        while (std::getline(in, line)) {
            auto body = text::strip(line.substr(0, line.find('#')));
            if (!body.empty())
                text += (text.empty() ? "" : ",") + std::string(body);
        }
    }
    return text::parse_int_list<std::uint64_t>(text);
}

int run_verify(const std::string& group_spec, const std::vector<std::uint64_t>& set,
               const std::optional<std::uint64_t>& center, bool brute, std::ostream& out)
{
    auto parts = text::split(group_spec, ':');
    if (parts.size() != 2 || parts[0] != "Z")
        throw Error(ErrorCode::ParseError, "group must be written Z:<n>, got '" + group_spec + "'");
    const auto n = text::parse_int<std::uint64_t>(parts[1]);
    if (n == 0)
        throw Error(ErrorCode::ParseError, "group order must be positive");
    for (auto x : set)
        if (x >= n)
            throw Error(ErrorCode::InvalidElement, std::to_string(x) + " is not a residue mod " + std::to_string(n));
    const auto G = cyclic_group(n);
    if (center && *center >= n)
        throw Error(ErrorCode::InvalidElement, "center " + std::to_string(*center) + " is not a residue mod " +
                                                   std::to_string(n));

    const auto report = center ? verify_symmetric_sidon(set, G, *center) : verify_sidon(set, G);
    json j = envelope("verify");
    j["group"] = G.name;
    j["report"] = report_to_json(report, G.format);
    bool ok = center ? report.is_symmetric_sidon : report.is_sidon;
    if (brute) {
        const auto b = brute_force_sidon(set, G);
        j["brute_force_is_sidon"] = b.is_sidon;
        j["brute_force_agrees"] = b.is_sidon == report.is_sidon && b.collision_count == report.collision_count;
        ok = ok && b.is_sidon == report.is_sidon;
    }
    out << j.dump() << "\n";
    return ok ? exit_ok : exit_verification_failed;
}

int run_hyper(std::uint64_t p, const std::string& f_text, const std::string& csv, std::ostream& out)
{
    const auto curve = hyper::HyperCurve::create(p, text::parse_int_list<std::int64_t>(f_text));
    const auto group = curve.group();
    const auto points = curve.points();
    const auto jac = curve.enumerate_jacobian();
    const auto factors = group_structure(jac, group);
    const auto sym = hyper::build_symmetric_sidon(curve);
    const auto sym_report = verify_symmetric_sidon(sym.elements, sym.group, sym.center);
    const auto halved = hyper::halve_set(curve, sym.elements);
    const auto halved_report = verify_sidon(halved, group);
    const auto bounds = survey::compute_bounds_report(p, curve.genus(), points.size(), jac.size());

    json j = envelope("hyper");
    j["curve"] = curve.describe();
    j["genus"] = curve.genus();
    json pts = json::array();
    for (const auto& P : points)
        pts.push_back(format_curve_point(P));
    j["points"] = pts;
    j["N1"] = points.size();
    j["A_order"] = jac.size();
    if (curve.genus() == 2)
        j["A_order_zeta"] = curve.jacobian_order_zeta();
    j["invariant_factors"] = factors.factors;
    j["is_cyclic"] = factors.is_cyclic();
    j["sym_sidon"] = sym_report.is_symmetric_sidon;
    j["sym_report"] = report_to_json(sym_report, group.format);
    j["halved_size"] = halved.size();
    j["halved_sidon"] = halved_report.is_sidon;
    j["halved_report"] = report_to_json(halved_report, group.format);
    j["weil"] = {{"N1_ok", bounds.weil_S_ok}, {"A_ok", bounds.weil_A_ok}};
    if (bounds.epsilon) {
        j["epsilon"] = *bounds.epsilon;
        if (bounds.epsilon_exact)
            j["epsilon_exact"] = bounds.epsilon_exact->to_string();
        j["et_lower"] = *bounds.et_lower;
    }
    j["et_ratio"] = bounds.et_ratio;
    out << j.dump() << "\n";

    if (!csv.empty()) {
        auto f = append_csv(csv, "p,f,g,N1,A_order,invariant_factors,sym_sidon,halved_size,halved_sidon,is_cyclic,epsilon");
        f << p << "," << text::join(curve.f(), ";") << "," << curve.genus() << "," << points.size() << ","
          << jac.size() << "," << factors.to_string() << "," << (sym_report.is_symmetric_sidon ? "true" : "false")
          << "," << halved.size() << "," << (halved_report.is_sidon ? "true" : "false") << ","
          << (factors.is_cyclic() ? "true" : "false") << ","
          << (bounds.epsilon ? survey::format_real(*bounds.epsilon) : "") << "\n";
    }
    const bool ok = sym_report.is_symmetric_sidon && halved_report.is_sidon && bounds.weil_S_ok && bounds.weil_A_ok &&
                    (curve.genus() != 2 || curve.jacobian_order_zeta() == jac.size());
    return ok ? exit_ok : exit_verification_failed;
}

int run_quartic(std::uint64_t p, const std::string& coeffs_text, const std::string& csv, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const auto curve = quartic::PlaneQuartic::create(p, text::parse_int_list<std::int64_t>(coeffs_text));
    const auto points = curve.rational_points();
    const auto result = quartic::verify_sidon_quartic(curve);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool weil = survey::within_weil_points(p, 3, points.size());

    json j = envelope("quartic");
    j["p"] = p;
    j["coeffs"] = curve.form().coeffs();
    json pts = json::array();
    for (const auto& P : points)
        pts.push_back(quartic::format_point(P));
    j["points"] = pts;
    j["N"] = points.size();
    const auto& ev = curve.evidence();
    j["smoothness"] = {{"smooth", ev.smooth}, {"elimination_gcd", ev.elimination_gcd}};
    j["weil_N_ok"] = weil;
    j["report"] = report_to_json<quartic::ProjPoint>(result.report, quartic::format_point);
    j["oracle_calls"] = result.oracle_calls;
    out << j.dump() << "\n";

    if (!csv.empty()) {
        auto f = open_csv(csv);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        f << "p,coeffs,N,smooth,is_sidon,oracle_calls,ms_elapsed\n";
        f << p << "," << text::join(curve.form().coeffs(), ";") << "," << points.size() << ","
          << (ev.smooth ? "true" : "false") << "," << (result.report.is_sidon ? "true" : "false") << ","
          << result.oracle_calls << "," << buf << "\n";
    }
    return result.report.is_sidon && weil ? exit_ok : exit_verification_failed;
}

int run_scan(std::uint64_t p, std::optional<std::uint64_t> random_count, const std::string& seed_text,
             const std::string& csv, std::ostream& out, std::ostream& err)
{
    survey::ScanOptions options;
    if (random_count) {
        options.random = true;
        options.count = *random_count;
        options.seed = survey::parse_seed(seed_text);
    }
    options.threads = survey::threads_from_env();
    err << "scanning p=" << p << " with " << options.threads << " thread(s)\n";
    const auto rows = survey::scan_genus2(p, options);

    bool ok = true;
    for (const auto& r : rows)
        ok = ok && r.sym_sidon_ok && r.halved_sidon_ok;

    if (csv.empty()) {
        survey::write_scan_csv(out, p, options, rows);
    } else {
        auto f = open_csv(csv);
        survey::write_scan_csv(f, p, options, rows);
        const auto s = survey::summarize(rows);
        json j = envelope("scan");
        j["p"] = p;
        j["mode"] = options.random ? "random" : "exhaustive";
        if (options.random) {
            j["count"] = options.count;
            j["seed"] = options.seed;
            j["rng"] = "mt19937_64";
        }
        j["rows"] = s.rows;
        j["cyclic_fraction"] = s.cyclic_fraction;
        j["max_halved_size"] = s.max_halved_size;
        j["epsilon_at_max"] = s.epsilon_at_max;
        j["all_verified"] = ok;
        out << j.dump() << "\n";
    }
    return ok ? exit_ok : exit_verification_failed;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sidon sets from finite fields and curve jacobians", "sidon"};
    app.require_subcommand(1);

    std::uint64_t q = 0, p = 0;
    bool integers = false, brute = false;
    std::string f_text, coeffs_text, csv, group_spec, set_text, set_file, seed_text = "0";
    std::optional<std::uint64_t> center, random_count;

    auto* diag = app.add_subcommand("diagonal", "Diagonal set in k^* x k");
    diag->add_option("--q", q, "Field order (a prime power)")->required();
    diag->add_flag("--integers", integers, "Also print the image in Z/q(q-1) (prime q)");

    auto* verify = app.add_subcommand("verify", "Check a set of residues for the Sidon property");
    verify->add_option("--group", group_spec, "Group, written Z:<n>")->required();
    auto* set_opt = verify->add_option("--set", set_text, "Comma-separated elements");
    verify->add_option("--set-file", set_file, "File of elements (commas or newlines, # comments)")->excludes(set_opt);
    verify->add_option("--center", center, "Check the symmetric-Sidon property about this center");
    verify->add_flag("--brute", brute, "Cross-check by brute force (at most 64 elements)");

    auto* hyp = app.add_subcommand("hyper", "Curve image in the jacobian of y^2 = f(x)");
    hyp->add_option("--p", p, "Odd prime")->required();
    hyp->add_option("--f", f_text, "Coefficients c0,...,c_{2g+1} of monic f")->required();
    hyp->add_option("--csv", csv, "Append a summary row to this CSV file");

    auto* quart = app.add_subcommand("quartic", "Sidon check on a smooth plane quartic");
    quart->add_option("--p", p, "Prime")->required();
    quart->add_option("--coeffs", coeffs_text, "15 coefficients, X^4 X^3Y X^3Z ... Z^4")->required();
    quart->add_option("--csv", csv, "Write a summary row to this CSV file");

    auto* scan = app.add_subcommand("scan", "Genus-2 survey over monic squarefree quintics");
    scan->add_option("--p", p, "Odd prime")->required();
    auto* random_opt = scan->add_option("--random", random_count, "Number of random curves (default: exhaustive)");
    scan->add_option("--seed", seed_text, "Seed for --random")->needs(random_opt);
    scan->add_option("--csv", csv, "CSV output path (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out, error_out;
        const int code = app.exit(e, help_out, error_out);
        out << help_out.str();
        err << error_out.str();
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (diag->parsed())
            return run_diagonal(q, integers, out);
        if (verify->parsed()) {
            if (set_text.empty() && set_file.empty())
                throw Error(ErrorCode::ParseError, "one of --set or --set-file is required");
            return run_verify(group_spec, read_set(set_text, set_file), center, brute, out);
        }
        if (hyp->parsed())
            return run_hyper(p, f_text, csv, out);
        if (quart->parsed())
            return run_quartic(p, coeffs_text, csv, out);
        return run_scan(p, random_count, seed_text, csv, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}

int cli_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace sidon
