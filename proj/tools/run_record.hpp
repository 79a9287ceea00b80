#pragma once

#include <chrono>
#include <complex>
#include <string>

#include "json.hpp"

namespace liouville::cli {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0.0";

/// Complex numbers are written as [re, im].
json to_json(std::complex<double> z);

/// Envelope shared by every subcommand: schema version, parameter echo,
/// library version, timings and the result payload.
class RunRecord {
 public:
  explicit RunRecord(std::string subcommand);

  json& parameters() { return parameters_; }
  json& result() { return result_; }

  void set_error(const std::string& kind, const std::string& message);
  void set_error_location(std::complex<double> location);
  void add_timing(const std::string& name, double seconds);

  json finish() const;

 private:
  std::string subcommand_;
  std::chrono::steady_clock::time_point start_;
  json parameters_ = json::object();
  json result_ = json::object();
  json timings_ = json::object();
  json error_;
};

/// Writes the record to `path`, or to stdout when the path is empty.
void emit(const json& record, const std::string& path);

}  // namespace liouville::cli
