#include "fluxmol/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fluxmol {

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field_double(const std::string& field, int row, const std::string& column) {
    const std::string value = strip(field);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw CsvError(row, "csv: row " + std::to_string(row) + ": invalid " + column +
                                " value '" + value + "'");
    return out;
}

}  // namespace

std::vector<TransitionObservation> read_spectroscopy_csv(std::istream& in,
                                                         std::vector<std::string>* warnings) {
    std::string line;
    int row = 0;

    // Header
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++row;
        const std::string stripped = strip(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        header = split_csv(stripped);
        break;
    }
    if (header.size() < 3 || strip(header[0]) != "phi_ext" ||
        strip(header[1]) != "frequency_ghz" || strip(header[2]) != "label")
        throw CsvError(row, "csv: expected header 'phi_ext,frequency_ghz,label[,weight]'");
    const bool has_weight = header.size() >= 4 && strip(header[3]) == "weight";
    const size_t known = has_weight ? 4 : 3;
    if (header.size() > known && warnings)
        warnings->push_back("csv: ignoring " + std::to_string(header.size() - known) +
                            " unknown extra column(s)");

    std::vector<TransitionObservation> observations;
    while (std::getline(in, line)) {
        ++row;
        const std::string stripped = strip(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto fields = split_csv(stripped);
        if (fields.size() < 3)
            throw CsvError(row, "csv: row " + std::to_string(row) + ": expected at least 3 fields");
        TransitionObservation obs;
        obs.phi_ext = parse_field_double(fields[0], row, "phi_ext");
        obs.frequency = parse_field_double(fields[1], row, "frequency_ghz");
        try {
            obs.label = transition_label_from_string(strip(fields[2]));
        } catch (const std::exception&) {
            throw CsvError(row, "csv: row " + std::to_string(row) + ": unknown label '" +
                                    strip(fields[2]) + "'");
        }
        if (has_weight && fields.size() >= 4 && !strip(fields[3]).empty())
            obs.weight = parse_field_double(fields[3], row, "weight");
        if (!(obs.frequency > 0.0))
            throw CsvError(row, "csv: row " + std::to_string(row) + ": frequency must be > 0");
        if (!std::isfinite(obs.phi_ext))
            throw CsvError(row, "csv: row " + std::to_string(row) + ": phi_ext must be finite");
        if (obs.weight < 0.0)
            throw CsvError(row, "csv: row " + std::to_string(row) + ": weight must be >= 0");
        observations.push_back(obs);
    }
    return observations;
}

std::vector<TransitionObservation> load_spectroscopy_csv(const std::string& path,
                                                         std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError(0, "csv: cannot open file '" + path + "'");
    return read_spectroscopy_csv(in, warnings);
}

void write_spectroscopy_csv(std::ostream& out, const std::vector<TransitionObservation>& rows,
                            bool include_weight) {
    out << "phi_ext,frequency_ghz,label" << (include_weight ? ",weight" : "") << "\n";
    for (const auto& obs : rows) {
        out << format_double(obs.phi_ext) << ',' << format_double(obs.frequency) << ','
            << to_string(obs.label);
        if (include_weight) out << ',' << format_double(obs.weight);
        out << "\n";
    }
}

}  // namespace fluxmol
