#include "h2inv/report_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace h2inv {

namespace {

using nlohmann::json;

json safe_number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json complex_json(Complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

json report_json(const InvarianceReport& r) {
    json doc;
    doc["verdict"] = to_string(r.verdict);
    doc["method"] = to_string(r.method);
    doc["residual"] = safe_number(r.residual);
    doc["tolerance"] = r.tolerance;
    doc["subject"] = r.subject;
    doc["symbol"] = r.symbol;
    json params;
    params["order"] = r.order;
    if (std::isfinite(r.a)) params["a"] = r.a;
    if (std::isfinite(r.boundary_radius)) params["boundary_radius"] = r.boundary_radius;
    if (r.grid > 0) params["grid"] = r.grid;
    doc["params"] = params;
    if (r.method == Method::compression) {
        doc["op_norm"] = safe_number(r.op_norm);
        doc["sub_dim"] = r.sub_dim;
        if (std::isfinite(r.residual_half)) doc["residual_half"] = r.residual_half;
    }
    if (r.method == Method::schur_quotient) {
        doc["sup_quotient"] = safe_number(r.sup_quotient);
        if (std::isfinite(r.argmax_theta)) doc["argmax_theta"] = r.argmax_theta;
        doc["quotient_blocked"] = r.quotient_blocked;
        if (r.quotient_blocked) {
            doc["blocked_zero"] = complex_json(r.blocked_zero);
            doc["blocked_image"] = complex_json(r.blocked_image);
        }
    }
    if (!r.violations.empty()) {
        json vs = json::array();
        for (const MultiplicityViolation& v : r.violations)
            vs.push_back({{"zero", complex_json(v.zero)},
                          {"image", complex_json(v.image)},
                          {"needed_mult", v.needed},
                          {"found_mult", v.found}});
        doc["violations"] = vs;
    }
    doc["horizon_caveat"] = r.horizon_caveat;
    if (!r.caveats.empty()) doc["caveats"] = r.caveats;
    if (r.trend) {
        doc["trend"] = {{"orders", r.trend->orders},
                        {"residuals", r.trend->residuals},
                        {"decreasing", r.trend->decreasing()}};
    }
    return doc;
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string report_to_json(const InvarianceReport& report, double wall_time_ms) {
    json doc = report_json(report);
    doc["toolkit_version"] = kToolkitVersion;
    doc["wall_time_ms"] = wall_time_ms;
    return doc.dump(2) + "\n";
}

std::string correspondence_to_json(const CesaroCorrespondence& c, double wall_time_ms) {
    json doc;
    doc["cesaro_side"] = report_json(c.cesaro_side);
    json sem = json::array();
    for (const auto& [t, r] : c.semigroup_side) {
        json entry = report_json(r);
        entry["t"] = t;
        sem.push_back(entry);
    }
    doc["semigroup_side"] = sem;
    doc["consistent"] = c.consistent;
    doc["toolkit_version"] = kToolkitVersion;
    doc["wall_time_ms"] = wall_time_ms;
    return doc.dump(2) + "\n";
}

std::string spectra_to_json(const SpectraReport& report) {
    json doc;
    doc["tol"] = report.tol;
    doc["angular_grid_size"] = report.angular_grid_size;
    doc["radius_schedule"] = report.radius_schedule;
    json hits = json::array();
    for (const auto& h : report.boundary_hits)
        hits.push_back({{"theta", h.theta}, {"min_modulus", h.min_modulus}});
    doc["boundary_hits"] = hits;
    json zs = json::array();
    for (const Zero& z : report.interior_zeros)
        zs.push_back({{"re", z.point.real()}, {"im", z.point.imag()}, {"mult", z.multiplicity}});
    doc["interior_zeros"] = zs;
    doc["toolkit_version"] = kToolkitVersion;
    return doc.dump(2) + "\n";
}

std::string summary_csv_header() {
    return "spec,subspace,symbol,method,verdict,residual,sup_quotient,N,caveats\n";
}

std::string summary_csv_row(const std::string& spec_name, const InvarianceReport& r) {
    std::ostringstream out;
    out << spec_name << ',' << r.subject << ',' << r.symbol << ',' << to_string(r.method)
        << ',' << to_string(r.verdict) << ',' << format_number(r.residual) << ','
        << (std::isfinite(r.sup_quotient) && r.method == Method::schur_quotient
                ? format_number(r.sup_quotient)
                : std::string(""))
        << ',' << r.order << ',';
    for (size_t i = 0; i < r.caveats.size(); ++i)
        out << (i ? "; " : "") << r.caveats[i];
    out << '\n';
    return out.str();
}

std::string matrix_to_csv(const Eigen::MatrixXcd& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_number(m(i, j).real()) << ',' << format_number(m(i, j).imag());
        }
        out << '\n';
    }
    return out.str();
}

std::string basis_to_csv(const SubspaceBasis& basis) {
    std::ostringstream out;
    out << "# label: " << basis.label << '\n';
    out << "# order: " << basis.order << '\n';
    out << "# dim: " << basis.dim() << '\n';
    if (basis.usable_shifts >= 0) out << "# usable_shifts: " << basis.usable_shifts << '\n';
    out << "# tail_bound: " << format_number(basis.tail_bound) << '\n';
    out << matrix_to_csv(basis.vectors);
    return out.str();
}

std::string spectra_to_csv(const SpectraReport& report) {
    std::ostringstream out;
    out << "theta,min_modulus,flagged\n";
    for (const auto& s : report.grid) {
        bool flagged = s.min_modulus < report.tol;
        out << format_number(s.theta) << ',' << format_number(s.min_modulus) << ','
            << (flagged ? 1 : 0) << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + path);
        out << contents;
    }
    fs::rename(tmp, target);
}

}  // namespace h2inv
