#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ncg {

/// Write bytes to `path` atomically: the content lands in `path` + ".tmp"
/// first and is renamed over the target, so readers never observe a partial
/// file.  Throws parameter_error when the destination is not writable.
void atomic_write_file(const std::filesystem::path& path, const std::string& bytes);

/// RFC 4180 field quoting: the field is wrapped in double quotes (with inner
/// quotes doubled) exactly when it contains a comma, a quote, or a line break.
std::string csv_field(const std::string& field);

/// One CSV record: quoted fields joined by commas, CRLF-terminated.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace ncg
