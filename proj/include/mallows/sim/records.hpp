#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

namespace mallows::sim {

// One emitted result. `params` carries op-specific extras (sample counts,
// depths, bounds) as a JSON object; scalar context lives in the named
// fields. ci is the 95% half-width, zero for exact values.
struct ResultRecord {
  std::string op;
  nlohmann::json params = nlohmann::json::object();
  int n = 0;
  double q = 0.0;
  double value = 0.0;
  double ci = 0.0;
  std::uint64_t seed = 0;
};

// JSON form; nlohmann serializes object keys alphabetically, which is the
// documented column-independent schema.
inline nlohmann::json to_json(const ResultRecord& r) {
  return nlohmann::json{{"op", r.op}, {"params", r.params}, {"n", r.n},
                        {"q", r.q},   {"value", r.value},   {"ci", r.ci},
                        {"seed", r.seed}};
}

inline std::string csv_header() { return "op,params,n,q,value,ci,seed"; }

namespace detail {

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline std::string to_csv_row(const ResultRecord& r) {
  std::string row = detail::csv_escape(r.op);
  row += ',';
  row += detail::csv_escape(r.params.dump());
  row += ',';
  row += std::to_string(r.n);
  row += ',';
  row += detail::format_double(r.q);
  row += ',';
  row += detail::format_double(r.value);
  row += ',';
  row += detail::format_double(r.ci);
  row += ',';
  row += std::to_string(r.seed);
  return row;
}

}  // namespace mallows::sim
