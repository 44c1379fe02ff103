#include "geobell/tables.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

#include "geobell/asymptotics.hpp"
#include "geobell/errors.hpp"

namespace geobell::tables {

namespace {

using Row = std::vector<std::optional<double>>;

constexpr std::nullopt_t kEmpty = std::nullopt;

// Published values, one row per d, columns in tableSpec order.
const std::map<TableId, std::vector<Row>>& published() {
    static const std::map<TableId, std::vector<Row>> values = {
        {TableId::T1,
         {{1.414, 1.299, 1.268, 1.255, 1.248},
          {1.170, 1.116, 1.101, 1.094, 1.090},
          {1.119, 1.077, 1.064, 1.059, 1.056},
          {1.098, 1.061, 1.050, 1.045, 1.043},
          {1.087, 1.053, 1.043, 1.038, 1.036}}},
        {TableId::T2,
         {{2.000, 1.688, 1.941, 1.844, 1.939},
          {1.404, 1.289, 1.388, 1.351, 1.387},
          {1.293, 1.209, 1.281, 1.255, 1.281},
          {1.249, 1.176, 1.239, 1.216, 1.239},
          {1.225, 1.159, 1.216, 1.196, 1.216}}},
        {TableId::T2a,
         {{2.828, 2.923, 2.971, 2.996, 3.010},
          {1.658, 1.692, 1.707, 1.714, 1.718},
          {1.470, 1.493, 1.503, 1.508, 1.510},
          {1.397, 1.416, 1.424, kEmpty, kEmpty},
          {kEmpty, kEmpty, kEmpty, kEmpty, kEmpty}}},
        {TableId::T3,
         {{1.414, 1.299, 1.268, 1.255, 1.248, kEmpty},
          {1.170, 1.116, 1.001, 1.094, 1.090, kEmpty},
          {0.975, 0.982, 0.986, 0.988, 0.989, 0.991},
          {0.939, 0.948, 0.951, 0.953, 0.954, 0.956},
          {0.929, 0.936, 0.939, 0.939, 0.940, 0.942}}},
        {TableId::T4,
         {{2.000, 1.688, 1.941, 1.844, 1.939, 1.938},
          {1.277, 1.289, 1.356, 1.351, 1.373, 1.387},
          {1.056, 1.086, 1.109, 1.113, 1.119, 1.128},
          {0.988, 1.010, 1.022, 1.026, 1.029, 1.034},
          {0.962, 0.978, 0.986, 0.988, 0.990, 0.994}}},
        {TableId::T6,
         {{0.770, 0.889},
          {0.863, 0.976},
          {0.911, 1.020},
          {0.940, 1.047},
          {0.959, 1.064},
          {0.973, 1.077}}},
    };
    return values;
}

std::vector<ColumnKey> bases2to6(bool withInfinity) {
    std::vector<ColumnKey> cols = {2, 3, 4, 5, 6};
    if (withInfinity) cols.emplace_back(std::nullopt);
    return cols;
}

}  // namespace

std::string_view toString(TableId id) {
    switch (id) {
        case TableId::T1: return "1";
        case TableId::T2: return "2";
        case TableId::T2a: return "2a";
        case TableId::T3: return "3";
        case TableId::T4: return "4";
        case TableId::T6: return "6";
    }
    return "?";
}

TableId parseTableId(std::string_view text) {
    for (TableId id : allTables())
        if (toString(id) == text) return id;
    throw InvalidScenario("unknown table id '" + std::string(text) + "' (expected 1, 2, 2a, 3, 4 or 6)");
}

std::vector<TableId> allTables() {
    return {TableId::T1, TableId::T2, TableId::T2a, TableId::T3, TableId::T4, TableId::T6};
}

TableSpec tableSpec(TableId id) {
    TableSpec spec;
    spec.id = id;
    spec.base.state = StateKind::UnbiasedGhz;
    switch (id) {
        case TableId::T1:
        case TableId::T2:
        case TableId::T2a:
            spec.base.strategy = Strategy::RealScalar;
            spec.base.n = id == TableId::T1 ? 2 : id == TableId::T2 ? 3 : 4;
            spec.rows = {2, 3, 4, 5, 6};
            spec.columns = bases2to6(false);
            break;
        case TableId::T3:
        case TableId::T4:
            spec.base.strategy = Strategy::ComplexRoot;
            spec.base.n = id == TableId::T3 ? 2 : 3;
            spec.rows = {2, 3, 4, 5, 6};
            spec.columns = bases2to6(true);
            break;
        case TableId::T6:
            spec.base.strategy = Strategy::DichotomicModD;
            spec.base.state = StateKind::BiasedGhz;
            spec.base.bases = 2;
            spec.rows = {3, 4, 5, 6, 7, 8};
            spec.columns = {2, 3};
            spec.columnsArePartyCounts = true;
            break;
    }
    return spec;
}

Scenario cellScenario(const TableSpec& spec, int d, ColumnKey column) {
    Scenario s = spec.base;
    s.d = d;
    if (spec.columnsArePartyCounts) s.n = column.value();
    else s.bases = column;
    return s;
}

std::string columnLabel(const TableSpec& spec, ColumnKey column) {
    if (spec.columnsArePartyCounts) return "N=" + std::to_string(*column);
    return column ? "L=" + std::to_string(*column) : std::string("L=inf");
}

std::optional<double> publishedValue(TableId id, int d, ColumnKey column) {
    const TableSpec spec = tableSpec(id);
    const auto& rows = published().at(id);
    for (std::size_t r = 0; r < spec.rows.size(); ++r) {
        if (spec.rows[r] != d) continue;
        for (std::size_t c = 0; c < spec.columns.size(); ++c)
            if (spec.columns[c] == column) return rows[r][c];
    }
    return std::nullopt;
}

bool suspectedTypo(TableId id, int d, ColumnKey column) {
    return id == TableId::T3 && d == 3 && column == ColumnKey(4);
}

TableResult computeTable(TableId id, const SearchOptions& options) {
    TableResult result;
    result.spec = tableSpec(id);
    for (int d : result.spec.rows) {
        std::vector<TableCell> row;
        for (ColumnKey column : result.spec.columns) {
            TableCell cell;
            cell.d = d;
            cell.column = column;
            cell.published = publishedValue(id, d, column);
            const Scenario s = cellScenario(result.spec, d, column);
            if (!s.finite()) {
                cell.value = asymptotics::limitRatioComplex(d, s.n);
            } else {
                cell.report = violationRatio(s, options);
                cell.value = cell.report->ratio;
            }
            row.push_back(std::move(cell));
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

double roundHalfAway(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

void writeTableCsv(std::ostream& out, const TableResult& table) {
    out << "d";
    for (ColumnKey c : table.spec.columns) out << ',' << columnLabel(table.spec, c);
    out << ",*\n";
    for (const auto& row : table.rows) {
        out << row.front().d;
        std::string unpublished;
        for (const TableCell& cell : row) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", roundHalfAway(cell.value, 3));
            out << ',' << buf;
            if (!cell.published) {
                if (!unpublished.empty()) unpublished += ';';
                unpublished += columnLabel(table.spec, cell.column);
            }
        }
        out << ',' << unpublished << '\n';
    }
}

}  // namespace geobell::tables
