#ifndef EVOCOUNT_REPORT_IO_HPP
#define EVOCOUNT_REPORT_IO_HPP

#include <ostream>
#include <string>

#include <json.hpp>

#include "evocount/count_report.hpp"

namespace evocount {

/* Counts are rendered as decimal strings so 64-bit JSON consumers never
 * overflow. */
inline nlohmann::json report_to_json(const CountReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["q"] = r.q;
  j["p"] = r.p;
  j["m"] = r.m;
  j["method"] = r.method;
  j["N"] = r.N.to_string();
  j["B"] = nlohmann::json::array();
  for (const auto& c : r.contributions) {
    j["B"].push_back({{"partition", c.partition.parts}, {"value", c.value.to_string()}});
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline CountReport report_from_json(const nlohmann::json& j) {
  CountReport r;
  r.n = j.at("n").get<int>();
  r.q = j.at("q").get<std::uint64_t>();
  r.p = j.at("p").get<std::uint64_t>();
  r.m = j.at("m").get<int>();
  r.method = j.at("method").get<std::string>();
  r.N = BigUint::parse(j.at("N").get<std::string>());
  for (const auto& item : j.at("B")) {
    PartitionContribution c;
    std::vector<int> parts = item.at("partition").get<std::vector<int>>();
    int n = 0;
    for (int part : parts) n += part;
    for (const Partition& mu : partitions(n)) {
      if (mu.parts == parts) {
        c.partition = mu;
        break;
      }
    }
    c.value = BigUint::parse(item.at("value").get<std::string>());
    r.contributions.push_back(c);
  }
  r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
  return r;
}

inline bool reports_equal(const CountReport& a, const CountReport& b) {
  if (a.n != b.n || a.q != b.q || a.p != b.p || a.m != b.m || a.method != b.method ||
      a.N != b.N || a.elapsed_ms != b.elapsed_ms ||
      a.contributions.size() != b.contributions.size())
    return false;
  for (size_t i = 0; i < a.contributions.size(); ++i) {
    if (a.contributions[i].partition.parts != b.contributions[i].partition.parts) return false;
    if (a.contributions[i].value != b.contributions[i].value) return false;
  }
  return true;
}

inline void report_to_text(std::ostream& os, const CountReport& r) {
  os << "n = " << r.n << ", q = " << r.q << " (p = " << r.p << ", m = " << r.m << ")\n";
  os << "method: " << r.method << "\n";
  os << "N = " << r.N.to_string() << "\n";
  for (const auto& c : r.contributions) {
    os << "  B(" << c.partition.to_string() << ") = " << c.value.to_string() << "\n";
  }
  os << "elapsed: " << r.elapsed_ms << " ms\n";
}

}  // namespace evocount

#endif
