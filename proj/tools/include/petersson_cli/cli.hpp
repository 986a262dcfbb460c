#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "petersson/measure.hpp"

namespace petersson::cli {

using nlohmann::json;

// Deterministic serialisation: sorted keys, doubles as %.17g, two-space indent.
std::string canonical_dump(const json& j);

json rat_json(const Rat& q);
Rat rat_of_json(const json& j);

// Exit status of a command: 0 success, 2 unsupported regime, 1 other failure.
enum class Status { Ok = 0, Error = 1, Unsupported = 2 };

struct CommandOutput {
  json result;
  std::string csv;  // only for measure-density with format csv
};

// Persistent exact L-value store, keyed by (n, sigma, kappa, primes and lambdas).
// Reads are shared; each insertion rewrites the file atomically.
class LValueCache {
 public:
  explicit LValueCache(std::string dir);
  LValueFn wrap(const HalfIntegralSymMat& sigma, int kappa);
  static std::string key(const HalfIntegralSymMat& sigma, int kappa, const SimilitudeSpec& spec);
  long hits() const { return hits_; }
  long misses() const { return misses_; }

 private:
  void load();
  void store(const std::string& k, const Rat& v);
  std::string path_;
  std::mutex mu_;
  json data_ = json::object();
  long hits_ = 0, misses_ = 0;
};

// Fills in defaults and validates; throws invalid_argument on schema errors.
json normalize_config(const std::string& command, json cfg);

CommandOutput run_command(const std::string& command, const json& cfg);

// Full front end: parses argv, merges --config with flag overrides, writes
// to --out or the given stream.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const std::vector<std::string>& subcommands();

}  // namespace petersson::cli
