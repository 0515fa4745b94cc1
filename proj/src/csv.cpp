#include "simove/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace simove {

namespace {

constexpr int kLeadingColumns = 7;   // exp_id .. iteration
constexpr int kTrailingColumns = 3;  // g_root, upo_max, wall_ms

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number in trace: " + s);
  return v;
}

template <typename T>
T parse_integer(const std::string& s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer in trace: " + s);
  return v;
}

// Reads one logical record, which may span lines inside quotes.
bool read_record(std::istream& in, std::string& record) {
  record.clear();
  std::string line;
  bool open = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!record.empty() || open) record += '\n';
    record += line;
    for (char c : line) {
      if (c == '"') open = !open;
    }
    if (!open) return true;
  }
  if (open) throw std::invalid_argument("unterminated quoted field in trace");
  return !record.empty();
}

}  // namespace

std::vector<std::string> trace_header(const std::vector<ExtractFlavor>& flavors) {
  std::vector<std::string> h = {"exp_id", "game", "variant", "policy", "gamma", "seed", "iteration"};
  for (ExtractFlavor f : flavors) {
    h.push_back("expl1_" + to_string(f));
    h.push_back("expl2_" + to_string(f));
  }
  h.insert(h.end(), {"g_root", "upo_max", "wall_ms"});
  return h;
}

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field in trace");
  fields.push_back(std::move(cur));
  return fields;
}

void write_trace_csv(std::ostream& out, const std::vector<ExtractFlavor>& flavors, const std::vector<TraceRow>& rows) {
  const auto header = trace_header(flavors);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const TraceRow& r : rows) {
    if (r.expl.size() != flavors.size()) throw std::invalid_argument("trace row does not match the flavor list");
    out << quote(r.exp_id) << ',' << quote(r.game) << ',' << quote(r.variant) << ',' << quote(r.policy) << ','
        << number(r.gamma) << ',' << r.seed << ',' << r.iteration;
    for (const Exploitability& e : r.expl) out << ',' << number(e.player1) << ',' << number(e.player2);
    out << ',' << number(r.g_root) << ',' << number(r.upo_max) << ',' << number(r.wall_ms) << '\n';
  }
}

void write_trace_csv(const std::string& path, const std::vector<ExtractFlavor>& flavors,
                     const std::vector<TraceRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_trace_csv(out, flavors, rows);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Trace read_trace_csv(std::istream& in) {
  std::string record;
  if (!read_record(in, record)) throw std::invalid_argument("empty trace");
  const auto header = split_csv_record(record);
  const int extra = static_cast<int>(header.size()) - kLeadingColumns - kTrailingColumns;
  if (extra < 0 || extra % 2 != 0) throw std::invalid_argument("unexpected trace header");

  Trace trace;
  for (int k = 0; k < extra; k += 2) {
    const std::string& name = header[static_cast<std::size_t>(kLeadingColumns + k)];
    if (name.rfind("expl1_", 0) != 0) throw std::invalid_argument("unexpected trace column " + name);
    trace.flavors.push_back(parse_flavor(name.substr(6)));
  }
  if (header != trace_header(trace.flavors)) throw std::invalid_argument("unexpected trace header");

  while (read_record(in, record)) {
    if (record.empty()) continue;
    const auto f = split_csv_record(record);
    if (f.size() != header.size()) throw std::invalid_argument("trace row has the wrong number of fields");
    TraceRow r;
    r.exp_id = f[0];
    r.game = f[1];
    r.variant = f[2];
    r.policy = f[3];
    r.gamma = parse_number(f[4]);
    r.seed = parse_integer<std::uint64_t>(f[5]);
    r.iteration = parse_integer<long long>(f[6]);
    std::size_t k = kLeadingColumns;
    for (std::size_t a = 0; a < trace.flavors.size(); ++a, k += 2) {
      r.expl.push_back({parse_number(f[k]), parse_number(f[k + 1])});
    }
    r.g_root = parse_number(f[k]);
    r.upo_max = parse_number(f[k + 1]);
    r.wall_ms = parse_number(f[k + 2]);
    trace.rows.push_back(std::move(r));
  }
  return trace;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_trace_csv(in);
}

}  // namespace simove
