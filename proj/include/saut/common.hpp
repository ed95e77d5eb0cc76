#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace saut {

// Thrown when a computation exceeds a configured resource bound.  A capacity
// error means "refused to answer", never a wrong answer.
class capacity_error : public std::runtime_error {
public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed or inconsistent checkpoint data.
class checkpoint_error : public std::runtime_error {
public:
  explicit checkpoint_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised after a shard callback requests a stop; the on-disk state at that
// point resumes losslessly.
class search_interrupted : public std::runtime_error {
public:
  search_interrupted() : std::runtime_error("search interrupted") {}
};

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  // splitmix64-style mixing
  v += 0x9e3779b97f4a7c15ULL + seed;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

inline std::uint32_t crc32(const std::string& s, std::uint32_t seed = 0) {
  return crc32(s.data(), s.size(), seed);
}

long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);

}  // namespace saut
