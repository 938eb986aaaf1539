// Batch front door: parse inner-function spec files, run certifications and
// experiments, emit reports, tables, and plot data.
//
// Exit codes: 0 = run completed (verdicts are data, not exit codes),
//             2 = usage/config/parse error,
//             3 = internal numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "h2inv/invariance.hpp"
#include "h2inv/report_io.hpp"
#include "h2inv/spec_io.hpp"

namespace fs = std::filesystem;
using namespace h2inv;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

std::string spec_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

std::string number_tag(double x) {
    std::ostringstream out;
    out << x;
    return out.str();
}

InnerFunctionSpec load_or_exit(const std::string& path) {
    try {
        return load_spec(path);
    } catch (const spec_parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        std::exit(2);
    }
}

InvarianceReport certify_one(const InnerFunctionSpec& spec, const std::string& subspace,
                             const std::string& method, double a, int order, double radius,
                             int grid) {
    const bool beurling_side = subspace == "beurling";
    std::string resolved = method;
    if (resolved == "auto") {
        if (!beurling_side)
            resolved = "compression";
        else
            resolved = spec.zero_free() ? "schur" : "multiplicity";
    }
    if (resolved == "schur") {
        // Beurling side uses the affine symbol; the model side is certified
        // through its dual: the Beurling space under sigma.
        auto symbol = beurling_side ? SymbolMap::affine(a) : SymbolMap::moebius_sigma(a);
        auto report = schur_quotient(spec, symbol, order, radius, grid);
        if (!beurling_side) report.subject = "model";
        return report;
    }
    if (resolved == "multiplicity") {
        if (!beurling_side)
            throw std::invalid_argument("--method multiplicity certifies Beurling subspaces only");
        auto report = multiplicity_criterion(spec.zeros(), a);
        report.order = order;
        return report;
    }
    // compression
    SubspaceBasis sub =
        beurling_side ? beurling_basis(spec, order) : model_basis(spec, order);
    auto op = affine_matrix(a, order);
    auto report = compression_residual(sub, op);
    report.a = a;
    std::vector<int> orders;
    for (int n : {order / 4, order / 2, order})
        if (n >= 16 && (orders.empty() || n > orders.back())) orders.push_back(n);
    report.trend = compression_trend(
        [&](int n) { return beurling_side ? beurling_basis(spec, n) : model_basis(spec, n); },
        [&](int n) { return affine_matrix(a, n); }, orders);
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy-space composition/Cesaro invariance toolkit"};
    app.require_subcommand(1);

    // matrix
    std::string m_kind;
    double m_a = 0.5;
    int m_order = 256;
    std::string m_out = ".";
    auto* matrix_cmd = app.add_subcommand("matrix", "emit an operator matrix as CSV");
    matrix_cmd->add_option("--kind", m_kind, "affine | sigma | cesaro")
        ->required()
        ->check(CLI::IsMember({"affine", "sigma", "cesaro"}));
    matrix_cmd->add_option("--a", m_a, "symbol parameter in (0,1)");
    matrix_cmd->add_option("--order", m_order, "truncation order N")->required();
    matrix_cmd->add_option("--out", m_out, "output directory");

    // certify
    std::string c_spec, c_subspace, c_method = "auto", c_out = ".";
    std::vector<double> c_as{0.5};
    int c_order = 256, c_grid = 4096;
    double c_radius = 0.999;
    auto* certify_cmd = app.add_subcommand("certify", "certify subspace invariance");
    certify_cmd->add_option("--spec", c_spec, "inner-function spec file")->required();
    certify_cmd->add_option("--subspace", c_subspace, "beurling | model")
        ->required()
        ->check(CLI::IsMember({"beurling", "model"}));
    certify_cmd->add_option("--a", c_as, "affine parameters (comma separated)")
        ->delimiter(',');
    certify_cmd->add_option("--method", c_method, "auto | compression | schur | multiplicity")
        ->check(CLI::IsMember({"auto", "compression", "schur", "multiplicity"}));
    certify_cmd->add_option("--order", c_order, "truncation order N");
    certify_cmd->add_option("--radius", c_radius, "schur boundary radius");
    certify_cmd->add_option("--grid", c_grid, "schur angular grid size");
    certify_cmd->add_option("--out", c_out, "output directory");

    // spectra
    std::string s_spec, s_out = ".";
    int s_grid = 1024;
    double s_tol = 0.1;
    auto* spectra_cmd = app.add_subcommand("spectra", "boundary spectra sweep");
    spectra_cmd->add_option("--spec", s_spec, "inner-function spec file")->required();
    spectra_cmd->add_option("--grid", s_grid, "angular grid size (>= 256)");
    spectra_cmd->add_option("--tol", s_tol, "hit threshold");
    spectra_cmd->add_option("--out", s_out, "output directory");

    // cesaro
    std::string z_spec, z_out = ".";
    std::vector<double> z_ts = default_t_samples();
    int z_order = 256;
    auto* cesaro_cmd = app.add_subcommand("cesaro", "Cesaro/semigroup correspondence");
    cesaro_cmd->add_option("--spec", z_spec, "inner-function spec file")->required();
    cesaro_cmd->add_option("--t", z_ts, "semigroup times (comma separated, positive)")
        ->delimiter(',');
    cesaro_cmd->add_option("--order", z_order, "truncation order N");
    cesaro_cmd->add_option("--out", z_out, "output directory");

    // orbit
    std::vector<double> o_point;
    std::vector<double> o_coeffs;
    double o_a = 0.5;
    int o_iterations = 8, o_order = 128;
    std::string o_out = ".";
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit span ranks and zero orbits");
    auto* point_opt = orbit_cmd->add_option("--point", o_point,
                                            "kernel point re,im (orbit seed)")
                          ->delimiter(',')
                          ->expected(2);
    auto* coeffs_opt =
        orbit_cmd->add_option("--coeffs", o_coeffs, "coefficient list re,im,re,im,...")
            ->delimiter(',');
    point_opt->excludes(coeffs_opt);
    orbit_cmd->add_option("--a", o_a, "affine parameter in (0,1)");
    orbit_cmd->add_option("--iterations", o_iterations, "orbit length");
    orbit_cmd->add_option("--order", o_order, "truncation order N");
    orbit_cmd->add_option("--out", o_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (matrix_cmd->parsed()) {
            Timer timer;
            OperatorMatrix m = m_kind == "cesaro"   ? cesaro_matrix(m_order)
                               : m_kind == "affine" ? affine_matrix(m_a, m_order)
                                                    : sigma_matrix(m_a, m_order);
            std::string tag = m_kind == "cesaro"
                                  ? m_kind + "_N" + std::to_string(m_order)
                                  : m_kind + "_a" + number_tag(m_a) + "_N" +
                                        std::to_string(m_order);
            write_file_atomic((fs::path(m_out) / ("matrix_" + tag + ".csv")).string(),
                              matrix_to_csv(m.entries));
            auto norm = operator_norm(m);
            std::ostringstream summary;
            summary << "{\n  \"kind\": \"" << m_kind << "\",\n";
            if (m_kind != "cesaro") summary << "  \"a\": " << format_number(m_a) << ",\n";
            summary << "  \"order\": " << m_order << ",\n"
                    << "  \"norm\": " << format_number(norm.value) << ",\n"
                    << "  \"converged\": " << (norm.converged ? "true" : "false") << ",\n"
                    << "  \"iterations\": " << norm.iterations << ",\n"
                    << "  \"wall_time_ms\": " << timer.ms() << "\n}\n";
            write_file_atomic((fs::path(m_out) / ("norm_" + tag + ".json")).string(),
                              summary.str());
            if (!norm.converged) return 3;
            return 0;
        }

        if (certify_cmd->parsed()) {
            auto spec = load_or_exit(c_spec);
            std::string summary = summary_csv_header();
            for (double a : c_as) {
                if (!(a > 0.0 && a < 1.0)) {
                    std::fprintf(stderr,
                                 "error: --a must lie strictly in (0,1), got %g\n", a);
                    return 2;
                }
                Timer timer;
                auto report =
                    certify_one(spec, c_subspace, c_method, a, c_order, c_radius, c_grid);
                report.a = a;
                std::string name = "certify_" + spec_stem(c_spec) + "_" + c_subspace + "_" +
                                   to_string(report.method) + "_a" + number_tag(a) + "_N" +
                                   std::to_string(c_order);
                write_file_atomic((fs::path(c_out) / (name + ".json")).string(),
                                  report_to_json(report, timer.ms()));
                summary += summary_csv_row(spec_stem(c_spec), report);
            }
            write_file_atomic(
                (fs::path(c_out) / ("summary_" + spec_stem(c_spec) + "_" + c_subspace + ".csv"))
                    .string(),
                summary);
            return 0;
        }

        if (spectra_cmd->parsed()) {
            auto spec = load_or_exit(s_spec);
            auto report = spectra_estimate(spec, s_grid, default_radius_schedule(), s_tol);
            write_file_atomic(
                (fs::path(s_out) / ("spectra_" + spec_stem(s_spec) + ".csv")).string(),
                spectra_to_csv(report));
            write_file_atomic(
                (fs::path(s_out) / ("spectra_" + spec_stem(s_spec) + ".json")).string(),
                spectra_to_json(report));
            return 0;
        }

        if (cesaro_cmd->parsed()) {
            auto spec = load_or_exit(z_spec);
            for (double t : z_ts) {
                if (!(t > 0.0)) {
                    std::fprintf(stderr, "error: --t samples must be positive, got %g\n", t);
                    return 2;
                }
            }
            Timer timer;
            auto c = cesaro_correspondence_check(spec, z_ts, z_order);
            write_file_atomic(
                (fs::path(z_out) / ("cesaro_" + spec_stem(z_spec) + ".json")).string(),
                correspondence_to_json(c, timer.ms()));
            std::ostringstream csv;
            csv << "order,residual\n";
            if (c.cesaro_side.trend) {
                for (size_t i = 0; i < c.cesaro_side.trend->orders.size(); ++i)
                    csv << c.cesaro_side.trend->orders[i] << ','
                        << format_number(c.cesaro_side.trend->residuals[i]) << '\n';
            }
            write_file_atomic(
                (fs::path(z_out) / ("cesaro_residuals_" + spec_stem(z_spec) + ".csv"))
                    .string(),
                csv.str());
            return 0;
        }

        if (orbit_cmd->parsed()) {
            if (o_point.empty() && o_coeffs.empty()) {
                std::fprintf(stderr, "error: orbit needs --point or --coeffs\n");
                return 2;
            }
            TaylorSeries f = TaylorSeries::zero(o_order);
            std::optional<Complex> seed;
            if (!o_point.empty()) {
                seed = Complex(o_point[0], o_point[1]);
                if (std::abs(*seed) >= 1.0) {
                    std::fprintf(stderr, "error: --point must lie inside the open disk\n");
                    return 2;
                }
                f = kernel(*seed, o_order);
            } else {
                if (o_coeffs.size() % 2 != 0) {
                    std::fprintf(stderr, "error: --coeffs needs re,im pairs\n");
                    return 2;
                }
                std::vector<Complex> c(o_order + 1, Complex(0.0));
                if (o_coeffs.size() / 2 > c.size()) {
                    std::fprintf(stderr, "error: more coefficients than --order admits\n");
                    return 2;
                }
                for (size_t i = 0; 2 * i < o_coeffs.size(); ++i)
                    c[i] = Complex(o_coeffs[2 * i], o_coeffs[2 * i + 1]);
                f = TaylorSeries(std::move(c));
            }
            if (!(o_a > 0.0 && o_a < 1.0)) {
                std::fprintf(stderr, "error: --a must lie strictly in (0,1)\n");
                return 2;
            }
            auto profile = orbit_span_rank(f, o_a, o_iterations);
            std::ostringstream ranks;
            ranks << "k,rank\n";
            for (size_t k = 0; k < profile.ranks.size(); ++k)
                ranks << (k + 1) << ',' << profile.ranks[k] << '\n';
            write_file_atomic((fs::path(o_out) / "orbit_ranks.csv").string(), ranks.str());
            if (seed) {
                std::ostringstream pts;
                pts << "n,re,im\n";
                auto orbit = zero_orbit(*seed, o_a, o_iterations);
                for (size_t n = 0; n < orbit.size(); ++n)
                    pts << n << ',' << format_number(orbit[n].real()) << ','
                        << format_number(orbit[n].imag()) << '\n';
                write_file_atomic((fs::path(o_out) / "orbit_points.csv").string(), pts.str());
            }
            return 0;
        }
    } catch (const spec_parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const resolution_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const theorem_violation& e) {
        std::fprintf(stderr, "numerical failure (dichotomy diagnostic): %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
