#pragma once

// Small output helpers shared by the report writers and the CLI: fixed
// 17-significant-digit formatting (deterministic, round-trip safe) and
// atomic file writes (write to a sibling temp file, then rename).

#include <string>

namespace linesol::io {

// %.17g formatting; always byte-identical for identical doubles.
std::string fmt(double v);

// Writes content to path via a temp file + rename so readers never observe
// a partially written file.  Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace linesol::io
