#pragma once

#include "eigensurf/types.hpp"

#include <filesystem>
#include <string>

namespace eigensurf {

struct ComparisonReport;

enum class TableFormat { csv, tsv };

/// Picks tsv for ".tsv"/".tab" extensions, csv otherwise.
TableFormat format_from_extension(const std::filesystem::path& path);

/// Reads a header row `id,<t1>,...,<tn>` followed by `<row id>,<v1>,...,<vn>` lines.
/// Errors name the offending line and column.
ExpressionMatrix load_matrix(const std::filesystem::path& path, TableFormat format);
ExpressionMatrix load_matrix(const std::filesystem::path& path);

void write_matrix(const ExpressionMatrix& matrix, const std::filesystem::path& path,
                  TableFormat format = TableFormat::csv);

/// Surface CSV: `# origin=<r>,<c> k=<k>`, `# rows=<R> cols=<C>`, then the grid.
/// Values use the shortest decimal form that round-trips exactly.
void write_surface(const Surface& surface, const std::filesystem::path& path);
Surface read_surface(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

void write_report(const ComparisonReport& report, const std::filesystem::path& path);

} // namespace eigensurf
