#pragma once

#include <iosfwd>
#include <string>

#include "bcc/bitvec.hpp"
#include "bcc/reductions.hpp"
#include "bcc/relation.hpp"
#include "bcc/solver.hpp"

namespace bcc {

/// Dataset text format: header "n m", then n lines of exactly m characters
/// from {0,1}. Malformed input raises InputError with line/column positions.
Dataset parse_dataset(std::istream& in);
Dataset parse_dataset_file(const std::string& path);

/// Relation-family text format:
///   "SHARED k t"   followed by t k-character tuple lines, or
///   "PERCOORD m k" followed by m blocks, each "t_i" then t_i tuple lines.
/// Duplicate tuples and empty relations are rejected.
RelationFamily parse_relations(std::istream& in);
RelationFamily parse_relations_file(const std::string& path);

/// Matrix text format: header "m n" then m rows of n characters; entry (i,j)
/// is row i, column j. Columns become the clustering points.
BinaryMatrix parse_matrix(std::istream& in);
BinaryMatrix parse_matrix_file(const std::string& path);

/// Canonical JSON rendering of a solution: fixed key order, integral values
/// only, byte-identical across runs for equal inputs.
std::string emit_solution(const Solution& sol, const std::string& mode);

/// As emit_solution with the approximating matrix appended (lowrank output).
std::string emit_solution_with_matrix(const Solution& sol, const std::string& mode,
                                      const BinaryMatrix& b, std::uint64_t matrix_cost);

std::string emit_matrix_result(const BinaryMatrix& b, std::uint64_t cost,
                               std::uint32_t column);

}  // namespace bcc
