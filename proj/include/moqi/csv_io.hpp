#ifndef MOQI_CSV_IO_HPP
#define MOQI_CSV_IO_HPP

#include <string>

#include "moqi/core.hpp"

namespace moqi {

/// Read a population from CSV. The header names decision columns x1..xn
/// (optional) and objective columns f1..fm (required, m >= 2), in any order
/// but each sequence complete. Leading '#' comment lines are skipped; a
/// '# problem: <name>' comment sets problem_id. Malformed input raises
/// DataError with the offending line number.
Population read_population_csv(const std::string& path);

/// Write a population as CSV with 17 significant digits (value-preserving
/// round trip). Decision columns are written only when every member has one.
void write_population_csv(const Population& pop, const std::string& path);

/// Objective vectors only (reference front files use plain f1..fm headers).
ReferenceFront read_front_csv(const std::string& path);
void write_front_csv(const ReferenceFront& front, const std::string& path,
                     const std::string& problem_tag = "");

/// Shortest decimal form that restores the exact double (up to 17
/// significant digits).
std::string format_full(double v);

}  // namespace moqi

#endif  // MOQI_CSV_IO_HPP
