#include "infoflow/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "infoflow/error.hpp"

namespace infoflow {

namespace {

std::vector<std::string> default_names(std::vector<std::string> names, std::size_t n) {
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  }
  if (names.size() != n) throw Error(Errc::kShapeMismatch, "one name per variable expected");
  return names;
}

std::vector<std::size_t> default_segments(std::vector<std::size_t> segments, std::size_t length) {
  if (segments.empty()) return {length};
  const std::size_t total = std::accumulate(segments.begin(), segments.end(), std::size_t{0});
  if (total != length) throw Error(Errc::kShapeMismatch, "segment lengths do not sum to the length");
  return segments;
}

template <class T>
void require_rectangular(const std::vector<std::vector<T>>& columns) {
  if (columns.empty()) throw Error(Errc::kShapeMismatch, "series needs at least one variable");
  for (const auto& c : columns) {
    if (c.size() != columns.front().size()) throw Error(Errc::kShapeMismatch, "ragged series columns");
  }
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

struct RawCsv {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> cells;  // per column
  std::vector<std::size_t> segments;
};

RawCsv read_raw(std::istream& in) {
  RawCsv raw;
  std::string line;
  bool header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string body = trim(t.substr(1));
      const std::string key = "segments:";
      if (body.rfind(key, 0) == 0) {
        raw.segments.clear();
        for (const auto& f : split(trim(body.substr(key.size())))) {
          raw.segments.push_back(static_cast<std::size_t>(std::stoull(f)));
        }
      }
      continue;
    }
    auto fields = split(t);
    if (!header) {
      raw.names = fields;
      raw.cells.resize(fields.size());
      header = true;
      continue;
    }
    ++row;
    if (fields.size() != raw.names.size()) {
      throw Error(Errc::kParseError, "row " + std::to_string(row) + " has " +
                                         std::to_string(fields.size()) + " fields, expected " +
                                         std::to_string(raw.names.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) raw.cells[i].push_back(std::move(fields[i]));
  }
  if (!header) throw Error(Errc::kParseError, "missing header row");
  return raw;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::kParseError, "not a decimal number: '" + s + "'");
  }
  return v;
}

Symbol parse_symbol(const std::string& s) {
  Symbol v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::kParseError, "not a nonnegative integer symbol: '" + s + "'");
  }
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kParseError, "cannot open '" + path + "'");
  return in;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments,
                    const std::vector<std::size_t>& segments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  if (segments.size() > 1) {
    out << "# segments: ";
    for (std::size_t k = 0; k < segments.size(); ++k) out << (k ? "," : "") << segments[k];
    out << '\n';
  }
}

template <class Series, class Cell>
void write_rows(std::ostream& out, const Series& series, Cell&& cell) {
  const auto& names = series.names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (std::size_t t = 0; t < series.length(); ++t) {
    for (std::size_t i = 0; i < series.n_vars(); ++i) {
      if (i) out << ',';
      out << cell(series.column(i)[t]);
    }
    out << '\n';
  }
}

}  // namespace

RealSeries::RealSeries(std::vector<std::vector<double>> columns, std::vector<std::string> names,
                       std::vector<std::size_t> segments, std::optional<double> sample_interval)
    : columns_(std::move(columns)), sample_interval_(sample_interval) {
  require_rectangular(columns_);
  if (length() < 2) throw Error(Errc::kSeriesTooShort, "series needs at least two samples");
  for (const auto& c : columns_) {
    for (double v : c) {
      if (!std::isfinite(v)) throw Error(Errc::kInvalidArgument, "series contains a non-finite value");
    }
  }
  names_ = default_names(std::move(names), n_vars());
  segments_ = default_segments(std::move(segments), length());
}

SymbolSeries::SymbolSeries(std::vector<std::vector<Symbol>> columns, std::vector<std::size_t> arities,
                           std::vector<std::string> names, std::vector<std::size_t> segments)
    : columns_(std::move(columns)), arities_(std::move(arities)) {
  require_rectangular(columns_);
  if (arities_.size() != columns_.size()) {
    throw Error(Errc::kShapeMismatch, "one arity per variable expected");
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (arities_[i] == 0) throw Error(Errc::kInvalidArgument, "arity must be positive");
    for (Symbol s : columns_[i]) {
      if (s >= arities_[i]) throw Error(Errc::kTupleOutOfRange, "symbol outside its alphabet");
    }
  }
  names_ = default_names(std::move(names), n_vars());
  segments_ = default_segments(std::move(segments), length());
}

RealSeries read_real_csv(std::istream& in) {
  RawCsv raw = read_raw(in);
  std::vector<std::vector<double>> columns(raw.cells.size());
  for (std::size_t i = 0; i < raw.cells.size(); ++i) {
    columns[i].reserve(raw.cells[i].size());
    for (const auto& s : raw.cells[i]) columns[i].push_back(parse_double(s));
  }
  return RealSeries(std::move(columns), std::move(raw.names), std::move(raw.segments));
}

RealSeries read_real_csv(const std::string& path) {
  auto in = open_input(path);
  return read_real_csv(in);
}

SymbolSeries read_symbol_csv(std::istream& in, std::optional<std::vector<std::size_t>> arities) {
  RawCsv raw = read_raw(in);
  std::vector<std::vector<Symbol>> columns(raw.cells.size());
  std::vector<std::size_t> inferred(raw.cells.size(), 1);
  for (std::size_t i = 0; i < raw.cells.size(); ++i) {
    columns[i].reserve(raw.cells[i].size());
    for (const auto& s : raw.cells[i]) {
      columns[i].push_back(parse_symbol(s));
      inferred[i] = std::max<std::size_t>(inferred[i], columns[i].back() + std::size_t{1});
    }
  }
  return SymbolSeries(std::move(columns), arities.value_or(inferred), std::move(raw.names),
                      std::move(raw.segments));
}

SymbolSeries read_symbol_csv(const std::string& path, std::optional<std::vector<std::size_t>> arities) {
  auto in = open_input(path);
  return read_symbol_csv(in, std::move(arities));
}

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_real_csv(std::ostream& out, const RealSeries& series,
                    const std::vector<std::string>& comments) {
  write_comments(out, comments, series.segments());
  write_rows(out, series, [](double v) { return format_number(v); });
}

void write_symbol_csv(std::ostream& out, const SymbolSeries& series,
                      const std::vector<std::string>& comments) {
  write_comments(out, comments, series.segments());
  write_rows(out, series, [](Symbol s) { return s; });
}

}  // namespace infoflow
