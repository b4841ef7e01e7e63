#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fluxmol/fitter.hpp"

namespace fluxmol {

/// Shortest decimal representation that round-trips to the same double;
/// locale-independent, '.' separator.
std::string format_double(double value);

struct CsvError : std::runtime_error {
    CsvError(int row_, const std::string& message) : std::runtime_error(message), row(row_) {}
    int row;  // 1-based line number, 0 when not line-specific
};

/// Reads the spectroscopy schema
///   phi_ext,frequency_ghz,label[,weight]
/// Unknown extra columns are ignored (one warning per file); an unknown
/// label or malformed number raises CsvError with the row number.
std::vector<TransitionObservation> read_spectroscopy_csv(std::istream& in,
                                                         std::vector<std::string>* warnings);
std::vector<TransitionObservation> load_spectroscopy_csv(const std::string& path,
                                                         std::vector<std::string>* warnings);

void write_spectroscopy_csv(std::ostream& out, const std::vector<TransitionObservation>& rows,
                            bool include_weight = false);

}  // namespace fluxmol
