#pragma once

// Reference violation-ratio tables: layouts, published values and reproduction.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geobell/lhv.hpp"
#include "geobell/scenario.hpp"

namespace geobell::tables {

enum class TableId { T1, T2, T2a, T3, T4, T6 };

std::string_view toString(TableId id);
TableId parseTableId(std::string_view text);
std::vector<TableId> allTables();

/// Column key: number of bases L (empty = infinity), or N for Table 6.
using ColumnKey = std::optional<int>;

struct TableSpec {
    TableId id = TableId::T1;
    std::vector<int> rows;          // d values
    std::vector<ColumnKey> columns; // L values, or N values when columnsArePartyCounts
    bool columnsArePartyCounts = false;
    Scenario base;                  // template; d and L (or N) are filled per cell
};

TableSpec tableSpec(TableId id);

Scenario cellScenario(const TableSpec& spec, int d, ColumnKey column);

std::string columnLabel(const TableSpec& spec, ColumnKey column);

/// Published reference value, if the cell is populated.
std::optional<double> publishedValue(TableId id, int d, ColumnKey column);

/// Cells whose printed value is believed to be a typesetting error.
bool suspectedTypo(TableId id, int d, ColumnKey column);

struct TableCell {
    int d = 0;
    ColumnKey column;
    double value = 0.0;
    std::optional<double> published;
    std::optional<ViolationReport> report;  // empty for closed-form (L = infinity) cells
};

struct TableResult {
    TableSpec spec;
    std::vector<std::vector<TableCell>> rows;
};

TableResult computeTable(TableId id, const SearchOptions& options = {});

/// Half-away-from-zero rounding to the given number of decimals.
double roundHalfAway(double value, int decimals);

/// Same layout as the reference table with 3-decimal values. The trailing "*"
/// column lists the columns of that row that have no published value.
void writeTableCsv(std::ostream& out, const TableResult& table);

}  // namespace geobell::tables
