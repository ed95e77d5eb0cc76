#include "saut/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saut/common.hpp"

namespace saut {

namespace fs = std::filesystem;

bool file_exists(const std::string& path) { return fs::exists(path); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw checkpoint_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw checkpoint_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw checkpoint_error("short write to " + tmp);
  }
  fs::rename(tmp, path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw checkpoint_error("cannot create directory " + path);
}

namespace {

std::string crc_hex(const std::string& s) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc32(s));
  return buf;
}

}  // namespace

void write_record_file(const std::string& path, const std::vector<std::string>& lines) {
  std::string body;
  for (const std::string& l : lines) {
    body += l;
    body += '\n';
  }
  std::ostringstream os;
  os << body << "end " << lines.size() << " crc " << crc_hex(body) << "\n";
  atomic_write_file(path, os.str());
}

std::vector<std::string> read_record_file(const std::string& path) {
  const std::string content = read_file(path);
  std::vector<std::string> lines;
  std::istringstream is(content);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  if (lines.empty()) throw checkpoint_error(path + ": empty record file");
  std::istringstream tail(lines.back());
  std::string w1, w2;
  std::size_t count = 0;
  std::string crc;
  tail >> w1 >> count >> w2 >> crc;
  if (!tail || w1 != "end" || w2 != "crc") throw checkpoint_error(path + ": missing end record");
  lines.pop_back();
  if (lines.size() != count) throw checkpoint_error(path + ": record count mismatch");
  std::string body;
  for (const std::string& l : lines) {
    body += l;
    body += '\n';
  }
  if (crc_hex(body) != crc) throw checkpoint_error(path + ": checksum mismatch");
  return lines;
}

void append_ledger_line(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw checkpoint_error("cannot append to " + path);
  out << payload << " crc " << crc_hex(payload) << "\n";
  out.flush();
  if (!out) throw checkpoint_error("short append to " + path);
}

std::vector<std::string> read_ledger(const std::string& path) {
  const std::string content = read_file(path);
  std::vector<std::string> out;
  std::istringstream is(content);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t pos = line.rfind(" crc ");
    if (pos == std::string::npos) throw checkpoint_error(path + ": ledger line without checksum");
    const std::string payload = line.substr(0, pos);
    const std::string crc = line.substr(pos + 5);
    if (crc_hex(payload) != crc) throw checkpoint_error(path + ": ledger checksum mismatch");
    out.push_back(payload);
  }
  return out;
}

}  // namespace saut
