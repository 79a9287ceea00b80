#include "run_record.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

#include "liouville/version.hpp"

namespace liouville::cli {

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

RunRecord::RunRecord(std::string subcommand)
    : subcommand_(std::move(subcommand)), start_(std::chrono::steady_clock::now()) {}

void RunRecord::set_error(const std::string& kind, const std::string& message) {
  error_ = json{{"kind", kind}, {"message", message}};
}

void RunRecord::set_error_location(std::complex<double> location) {
  error_["location"] = to_json(location);
}

void RunRecord::add_timing(const std::string& name, double seconds) { timings_[name] = seconds; }

json RunRecord::finish() const {
  json timings = timings_;
  timings["total_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json out{{"schema_version", kSchemaVersion},
           {"subcommand", subcommand_},
           {"library_version", kVersion},
           {"parameters", parameters_},
           {"timings", timings},
           {"status", error_.is_null() ? "ok" : error_["kind"].get<std::string>()}};
  if (error_.is_null()) {
    out["result"] = result_;
  } else {
    out["error"] = error_;
  }
  return out;
}

void emit(const json& record, const std::string& path) {
  if (path.empty()) {
    std::cout << record.dump(2) << '\n';
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << record.dump(2) << '\n';
}

}  // namespace liouville::cli
