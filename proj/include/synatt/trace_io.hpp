// Trace files: '#'-prefixed metadata, a CSV header, then one row per sample
// with every number printed to 17 significant digits.

#ifndef SYNATT_TRACE_IO_HPP_
#define SYNATT_TRACE_IO_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "synatt/hybrid_sim.hpp"

namespace synatt {

inline constexpr const char* kTraceHeader = "t,j,eta,eps1,eps2,eps3,q,omega1,omega2,omega3,tau1,tau2,tau3,V,mu";

struct TraceFile {
  /// Ordered key/value metadata, written as "# key: value".
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<TraceSample> rows;

  /// Empty string when the key is absent.
  std::string meta_value(const std::string& key) const;
};

void write_trace(std::ostream& out, const TraceFile& f);
/// Throws std::runtime_error on a malformed file.
TraceFile read_trace(std::istream& in);

void save_trace(const std::string& path, const TraceFile& f);
TraceFile load_trace(const std::string& path);

}  // namespace synatt

#endif  // SYNATT_TRACE_IO_HPP_
