#pragma once

#include <string>
#include <vector>

namespace saut {

bool file_exists(const std::string& path);
std::string read_file(const std::string& path);

// Write-temp-then-rename; the file is either absent, whole, or the old
// version.
void atomic_write_file(const std::string& path, const std::string& content);

void ensure_directory(const std::string& path);

// A record file is a list of payload lines closed by "end <count> crc <hex>"
// over the concatenated payload.  Readers reject anything incomplete.
void write_record_file(const std::string& path, const std::vector<std::string>& lines);
std::vector<std::string> read_record_file(const std::string& path);

// A ledger is append-only; every line carries its own crc.  Readers reject
// malformed or mismatched lines.
void append_ledger_line(const std::string& path, const std::string& payload);
std::vector<std::string> read_ledger(const std::string& path);

}  // namespace saut
