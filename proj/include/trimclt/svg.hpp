#ifndef TRIMCLT_SVG_HPP
#define TRIMCLT_SVG_HPP

#include <string>

namespace trimclt {

/// Reads a results.csv and writes one self-contained SVG line plot per
/// experiment found in it (rho_hat vs n, one polyline per estimator, the
/// plotted data embedded as a comment). Returns the number of plots written.
int plot_csv(const std::string& csv_path, const std::string& out_dir);

}  // namespace trimclt

#endif
