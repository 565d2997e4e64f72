#pragma once

#include "ionchain/scan.hpp"
#include "ionchain/validity.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ionchain {

std::string version();

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Resolved parameters, version and (optionally) a UTC timestamp.
Metadata run_metadata(const DimensionlessParams& p, bool timestamp = true);

/// %.17g for doubles, 0/1 for booleans.
std::string format_cell(const Cell& c);

/// "# key=value" lines, one header row, then the records.
void write_csv(std::ostream& out, const Metadata& meta, const Table& t);
void write_json(std::ostream& out, const Metadata& meta, const Table& t);

Metadata scan_metadata(const ScanResult& r, bool timestamp = true);

Table scan_table(const ScanResult& r);
Table max_entanglement_table(const ScanResult& r, const std::vector<MaxEntanglementRecord>& m);
Table window_table(const ScanResult& r);
Table resonance_table(const std::vector<ResonancePoint>& pts);
Table equilibria_table(const EquilibriumSet& set, const DimensionlessParams& p);
Table modes_table(const EquilibriumSet& set, const DimensionlessParams& p);
Table covariance_table(const GaussianState& s);
Table report_table(const EntanglementReport& rep, const std::vector<std::string>& labels);
Table validity_table(const ValidityCheck& v, const ClassicalEquilibrium& eq);

} // namespace ionchain
