#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistlab {

// Exit codes: 0 = success, 1 = expectation failed, 2 = internal inconsistency, 3 = usage.
struct Error : std::runtime_error {
  int exit_code;
  Error(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

// A requested verification or construction legitimately failed (bad input data,
// a twist that is not a twist, a root that does not exist, ...).
struct ExpectationError : Error {
  explicit ExpectationError(const std::string& what) : Error(1, what) {}
};

// The library caught itself producing contradictory results.
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& what) : Error(2, what) {}
};

// Malformed request: unknown option, unparsable file, out-of-range argument.
struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(3, what) {}
};

struct Config {
  int table_cap = 512;                 // largest order for dense multiplication tables
  int closure_cap = 20000;             // element budget for subgroup closures
  long long aut_cap = 2000000;         // node budget for automorphism backtracking
  int enum_cap = 10000;                // candidate budget for brute-force form enumeration
  int triple_tensor_cap = 2000;        // largest |G| for materialized triple tensors
  std::uint64_t seed = 0x5eed5eed5eedULL;
  int conductor_multiplier = 12;       // allowed cyclotomic enlargement when taking roots
  std::string cache_dir = ".twistlab-cache";
};

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace twistlab
