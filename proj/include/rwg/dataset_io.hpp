#pragma once
#include <string>

#include "rwg/graph.hpp"

namespace rwg {

// Serializes a double with 17 significant digits so parsing recovers the
// exact bit pattern. Shared by the dataset writer and checkpoint dumps.
std::string format_double(double x);

// Writes dir/manifest.json and dir/samples.jsonl. The writer is fully
// deterministic: fixed key order, fixed number formatting, LF line ends.
void write_dataset(const Dataset& ds, const std::string& dir);

// Reads a dataset written by write_dataset. Malformed records raise
// ParseError naming the line; a manifest/sample count mismatch raises
// ConfigError ("integrity error").
Dataset read_dataset(const std::string& dir);

}  // namespace rwg
