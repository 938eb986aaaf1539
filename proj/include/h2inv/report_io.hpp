#pragma once

#include <string>

#include "h2inv/invariance.hpp"
#include "h2inv/operators.hpp"
#include "h2inv/subspaces.hpp"

namespace h2inv {

/// Report document (JSON). Nonfinite numbers are emitted as strings so the
/// document stays machine-readable. wall_time_ms is the only field allowed
/// to differ between identical runs.
std::string report_to_json(const InvarianceReport& report, double wall_time_ms = 0.0);
std::string correspondence_to_json(const CesaroCorrespondence& c, double wall_time_ms = 0.0);
std::string spectra_to_json(const SpectraReport& report);

/// CSV row for the certification summary table. Columns:
/// spec,subspace,symbol,method,verdict,residual,sup_quotient,N,caveats
std::string summary_csv_header();
std::string summary_csv_row(const std::string& spec_name, const InvarianceReport& report);

/// Matrix CSV: row-major, each entry as a "re,im" pair (2(N+1) numbers/row).
std::string matrix_to_csv(const Eigen::MatrixXcd& m);

/// Basis CSV with label metadata in '#' header lines.
std::string basis_to_csv(const SubspaceBasis& basis);

/// Spectra CSV: theta,min_modulus,flagged.
std::string spectra_to_csv(const SpectraReport& report);

/// Deterministic float formatting used by every CSV writer.
std::string format_number(double x);

/// Atomic file write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace h2inv
