#ifndef EVOCOUNT_COUNT_REPORT_HPP
#define EVOCOUNT_COUNT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "evocount/bigint.hpp"
#include "evocount/partitions.hpp"

namespace evocount {

struct PartitionContribution {
  Partition partition;
  BigUint value;  // B(mu)
};

/* Result of one class count, by whichever method produced it. */
struct CountReport {
  int n = 0;
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  int m = 0;
  std::string method;  // "formula" | "burnside" | "orbit"
  BigUint N;
  std::vector<PartitionContribution> contributions;  // empty for orbit/formula
  std::uint64_t elapsed_ms = 0;
};

}  // namespace evocount

#endif
