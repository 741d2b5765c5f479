#include "synatt/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "synatt/numfmt.hpp"

namespace synatt {

std::string TraceFile::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return "";
}

void write_trace(std::ostream& out, const TraceFile& f) {
  for (const auto& [k, v] : f.meta) {
    // Multi-line values (the scenario echo) get one comment line each; the
    // reader joins consecutive lines with the same key.
    std::istringstream lines(v);
    std::string line;
    bool any = false;
    while (std::getline(lines, line)) {
      out << "# " << k << ": " << line << "\n";
      any = true;
    }
    if (!any) out << "# " << k << ": \n";
  }
  out << kTraceHeader << "\n";
  for (const TraceSample& s : f.rows) {
    out << format_double(s.time.t) << "," << s.time.j;
    for (int i = 0; i < 4; ++i) out << "," << format_double(s.Q(i));
    out << "," << s.q.value();
    for (int i = 0; i < 3; ++i) out << "," << format_double(s.omega(i));
    for (int i = 0; i < 3; ++i) out << "," << format_double(s.tau(i));
    out << "," << format_double(s.V) << "," << format_double(s.mu) << "\n";
  }
}

namespace {

class FieldReader {
 public:
  FieldReader(const std::string& line, int lineno) : line_(line), lineno_(lineno) {}

  double number() {
    const std::string_view f = next();
    double v = 0.0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
    if (r.ec != std::errc() || r.ptr != f.data() + f.size()) fail("bad number");
    return v;
  }

  int integer() {
    const std::string_view f = next();
    int v = 0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
    if (r.ec != std::errc() || r.ptr != f.data() + f.size()) fail("bad integer");
    return v;
  }

  void finish() const {
    if (pos_ != line_.size() + 1) fail("too many fields");
  }

 private:
  std::string_view next() {
    if (pos_ > line_.size()) fail("too few fields");
    std::size_t end = line_.find(',', pos_);
    if (end == std::string::npos) end = line_.size();
    const std::string_view f(line_.data() + pos_, end - pos_);
    pos_ = end + 1;
    return f;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("trace line " + std::to_string(lineno_) + ": " + what);
  }

  const std::string& line_;
  int lineno_;
  std::size_t pos_ = 0;
};

}  // namespace

TraceFile read_trace(std::istream& in) {
  TraceFile f;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!header) {
      if (line.rfind("# ", 0) == 0) {
        const auto colon = line.find(": ", 2);
        if (colon == std::string::npos) throw std::runtime_error("trace line " + std::to_string(lineno) + ": bad metadata");
        const std::string key = line.substr(2, colon - 2);
        const std::string val = line.substr(colon + 2);
        if (!f.meta.empty() && f.meta.back().first == key) {
          f.meta.back().second += "\n" + val;
        } else {
          f.meta.emplace_back(key, val);
        }
        continue;
      }
      if (line != kTraceHeader) throw std::runtime_error("trace line " + std::to_string(lineno) + ": bad header");
      header = true;
      continue;
    }
    if (line.empty()) continue;
    FieldReader r(line, lineno);
    TraceSample s{};
    s.time.t = r.number();
    s.time.j = r.integer();
    for (int i = 0; i < 4; ++i) s.Q(i) = r.number();
    try {
      s.q = LogicState(r.integer());
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": logic index must be -1 or 1");
    }
    for (int i = 0; i < 3; ++i) s.omega(i) = r.number();
    for (int i = 0; i < 3; ++i) s.tau(i) = r.number();
    s.V = r.number();
    s.mu = r.number();
    r.finish();
    f.rows.push_back(s);
  }
  if (!header) throw std::runtime_error("trace: missing header line");
  return f;
}

void save_trace(const std::string& path, const TraceFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_trace(out, f);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

TraceFile load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_trace(in);
}

}  // namespace synatt
