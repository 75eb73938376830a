#pragma once

#include <string>

#include "efx/model.hpp"

namespace efx {

// Strict JSON parsers. Unknown or missing fields, non-integer numbers and type
// mismatches raise ParseError(malformed); negative integers raise
// ParseError(negative_number); shape and range problems raise
// ParseError(dimension_mismatch); arithmetic guards raise ParseError(overflow_risk).
Instance parse_instance(const std::string& text);
Allocation parse_allocation(const std::string& text);
SolveResult parse_result(const std::string& text);

// Canonical serializers: fixed field order, compact separators, decimal
// integers only. serialize(parse(serialize(x))) is byte-identical to
// serialize(x).
std::string serialize_instance(const Instance& inst);
std::string serialize_allocation(const Allocation& alloc);
std::string serialize_result(const SolveResult& result);

// File helpers for the CLI; throw Error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace efx
