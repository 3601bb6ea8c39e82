// starbary -- rational barycentric interpolation on starlike domains.
//
// Subcommands: domains, interp, table, lebesgue. Exit codes: 0 success,
// 2 invalid arguments or domain data, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <starbary/report_io.hpp>
#include <starbary/starbary.hpp>

namespace {

struct ShiftOptions {
    bool enabled = false;
    double alpha = 2.8;
    double beta = 0.0; // default: derived from the domain
    double eta = 0.65;
    double phi = 0.0; // default: the f2 front angle
};

void add_shift_flags(CLI::App* cmd, ShiftOptions& opt) {
    cmd->add_flag("--shifted", opt.enabled,
                  "cluster nodes at the f2 front with default parameters");
    cmd->add_option("--shift-alpha", opt.alpha, "radial shift density (default 2.8)")
        ->expected(1);
    cmd->add_option("--shift-beta", opt.beta, "radial cluster center in (0,2)")->expected(1);
    cmd->add_option("--shift-eta", opt.eta, "angular shift density in [0,1) (default 0.65)")
        ->expected(1);
    cmd->add_option("--shift-phi", opt.phi, "angular cluster center in [0,2pi)")->expected(1);
}

bool shifts_requested(const CLI::App* cmd, const ShiftOptions& opt) {
    return opt.enabled || cmd->count("--shift-alpha") || cmd->count("--shift-beta") ||
           cmd->count("--shift-eta") || cmd->count("--shift-phi");
}

std::pair<std::optional<starbary::RadialShift>, std::optional<starbary::AngularShift>>
resolve_shifts(const CLI::App* cmd, const ShiftOptions& opt, const starbary::StarlikeDomain* dom) {
    if (!shifts_requested(cmd, opt)) return {std::nullopt, std::nullopt};
    const double phi = cmd->count("--shift-phi")
                           ? opt.phi
                           : std::atan2(starbary::front_y, starbary::front_x);
    double beta = opt.beta;
    if (!cmd->count("--shift-beta")) {
        const double xi = std::hypot(starbary::front_x, starbary::front_y);
        beta = dom ? std::min(2.0 * xi / dom->rho(starbary::detail::reduce_angle(phi)), 1.999)
                   : 0.75;
    }
    return {starbary::make_radial_shift(beta, opt.alpha),
            starbary::make_angular_shift(phi, opt.eta)};
}

starbary::BuiltinDomain resolve_domain(const std::string& name, const std::string& boundary_file) {
    if (!boundary_file.empty()) {
        auto [thetas, rhos] = starbary::load_boundary_samples(boundary_file);
        auto dom = starbary::domain_from_samples(std::move(thetas), std::move(rhos));
        const double r = dom.rho_max;
        return {boundary_file, std::move(dom), {-r, r, -r, r}};
    }
    if (name.empty())
        throw std::invalid_argument("specify --domain NAME or --boundary-file PATH");
    return starbary::builtin_domain(name);
}

std::vector<std::pair<int, int>> parse_sizes(const std::vector<std::string>& tokens) {
    std::vector<std::pair<int, int>> sizes;
    for (const auto& tok : tokens) {
        const auto x = tok.find('x');
        if (x == std::string::npos || x == 0 || x + 1 >= tok.size())
            throw std::invalid_argument("bad size '" + tok + "', expected N1xN2 (e.g. 10x30)");
        sizes.emplace_back(std::stoi(tok.substr(0, x)), std::stoi(tok.substr(x + 1)));
    }
    return sizes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear rational barycentric interpolation on starlike domains"};
    app.require_subcommand(1);

    auto* cmd_domains = app.add_subcommand("domains", "list builtin domains");

    std::string domain_name, boundary_file, function_name = "f1";
    ShiftOptions shifts;
    int n1 = 10, n2 = 30;

    auto* cmd_interp = app.add_subcommand("interp", "evaluate the interpolant at one point");
    std::vector<double> eval_point;
    cmd_interp->add_option("--domain", domain_name, "builtin domain name");
    cmd_interp->add_option("--boundary-file", boundary_file, "two-column theta/rho sample file");
    cmd_interp->add_option("--function", function_name, "f1 or f2");
    cmd_interp->add_option("--n1", n1, "radial grid size")->required();
    cmd_interp->add_option("--n2", n2, "angular grid size")->required();
    cmd_interp->add_option("--eval", eval_point, "evaluation point X,Y")
        ->required()
        ->delimiter(',')
        ->expected(2);
    add_shift_flags(cmd_interp, shifts);

    auto* cmd_table = app.add_subcommand("table", "convergence table over grid sizes");
    std::vector<std::string> size_tokens;
    std::string out_path, format = "csv";
    int lattice_m = 170;
    bool no_timing = false;
    cmd_table->add_option("--domain", domain_name, "builtin domain name");
    cmd_table->add_option("--boundary-file", boundary_file, "two-column theta/rho sample file");
    cmd_table->add_option("--function", function_name, "f1 or f2");
    cmd_table->add_option("--sizes", size_tokens, "comma list of N1xN2 sizes")
        ->required()
        ->delimiter(',');
    cmd_table->add_option("--out", out_path, "output file (default stdout)");
    cmd_table->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_table->add_option("--m", lattice_m, "evaluation lattice points per axis (default 170)");
    cmd_table->add_flag("--no-timing", no_timing, "zero the elapsed column for bytewise-stable output");
    add_shift_flags(cmd_table, shifts);

    auto* cmd_lebesgue = app.add_subcommand("lebesgue", "Lebesgue constant estimate on the disk");
    int m1 = 0, m2 = 0;
    bool full_scan = false;
    cmd_lebesgue->add_option("--n1", n1, "radial grid size")->required();
    cmd_lebesgue->add_option("--n2", n2, "angular grid size")->required();
    cmd_lebesgue->add_option("--m1", m1, "radial lattice size (default 4*(n1+1))");
    cmd_lebesgue->add_option("--m2", m2, "angular lattice size (default 4*n2)");
    cmd_lebesgue->add_flag("--full-scan", full_scan, "cross-check with the full 2D lattice scan");
    add_shift_flags(cmd_lebesgue, shifts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_domains)) {
            for (const auto& name : starbary::builtin_domain_names()) {
                const auto bd = starbary::builtin_domain(name);
                std::printf("%-16s rect=[%g,%g]x[%g,%g] rho=[%.6g,%.6g]%s\n", name.c_str(),
                            bd.rect.x0, bd.rect.x1, bd.rect.y0, bd.rect.y1, bd.domain.rho_min,
                            bd.domain.rho_max,
                            bd.domain.smoothness_warning ? " (non-smooth boundary)" : "");
            }
            return 0;
        }

        if (app.got_subcommand(cmd_interp)) {
            const auto bd = resolve_domain(domain_name, boundary_file);
            if (bd.domain.smoothness_warning)
                std::fprintf(stderr, "warning: boundary looks non-smooth; expect poor convergence\n");
            const auto f = starbary::test_function(function_name);
            const auto [rs, as] = resolve_shifts(cmd_interp, shifts, &bd.domain);
            const auto di = starbary::build_domain_interpolant(bd.domain, n1, n2, rs, as, f);
            const double v = starbary::eval_domain(di, eval_point[0], eval_point[1]);
            std::printf("%.17g\n", v);
            if (!std::isfinite(v)) return 3;
            return 0;
        }

        if (app.got_subcommand(cmd_table)) {
            const auto bd = resolve_domain(domain_name, boundary_file);
            if (bd.domain.smoothness_warning)
                std::fprintf(stderr, "warning: boundary looks non-smooth; expect poor convergence\n");
            const auto f = starbary::test_function(function_name);
            const auto [rs, as] = resolve_shifts(cmd_table, shifts, &bd.domain);
            const auto reports = starbary::convergence_table(bd, function_name, f,
                                                             parse_sizes(size_tokens), rs, as,
                                                             lattice_m);
            const std::string text = format == "json" ? starbary::to_json(reports, !no_timing)
                                                      : starbary::to_csv(reports, !no_timing);
            if (out_path.empty()) {
                std::fputs(text.c_str(), stdout);
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot open output file " + out_path);
                out << text;
            }
            return 0;
        }

        if (app.got_subcommand(cmd_lebesgue)) {
            const auto [rs, as] = resolve_shifts(cmd_lebesgue, shifts, nullptr);
            const auto di = starbary::build_disk_interpolant(
                n1, n2, rs, as, [](double, double) { return 0.0; });
            if (m1 <= 0) m1 = 4 * (n1 + 1);
            if (m2 <= 0) m2 = 4 * n2;
            std::printf("%.12g\n", starbary::lebesgue_estimate(di.grid, m1, m2, full_scan));
            return 0;
        }
    } catch (const starbary::sampling_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const starbary::not_starlike_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const starbary::invalid_boundary_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
