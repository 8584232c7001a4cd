#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace infoflow {

// Series may be the concatenation of independent trajectories; segment
// lengths record the boundaries so lag windows never straddle two of them.
class RealSeries {
 public:
  // Columns are per variable. Throws ShapeMismatch on ragged columns or bad
  // segment lengths, SeriesTooShort below 2 samples, InvalidArgument on
  // non-finite values. Empty `names` become x0, x1, ...; empty `segments`
  // means one segment.
  RealSeries(std::vector<std::vector<double>> columns, std::vector<std::string> names = {},
             std::vector<std::size_t> segments = {}, std::optional<double> sample_interval = {});

  std::size_t n_vars() const noexcept { return columns_.size(); }
  std::size_t length() const noexcept { return columns_.front().size(); }
  const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<std::vector<double>>& columns() const noexcept { return columns_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::size_t>& segments() const noexcept { return segments_; }
  std::optional<double> sample_interval() const noexcept { return sample_interval_; }

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> names_;
  std::vector<std::size_t> segments_;
  std::optional<double> sample_interval_;
};

using Symbol = std::uint32_t;

class SymbolSeries {
 public:
  // Throws ShapeMismatch on ragged input, TupleOutOfRange on a symbol outside
  // its variable's arity, InvalidArgument on a zero arity.
  SymbolSeries(std::vector<std::vector<Symbol>> columns, std::vector<std::size_t> arities,
               std::vector<std::string> names = {}, std::vector<std::size_t> segments = {});

  std::size_t n_vars() const noexcept { return columns_.size(); }
  std::size_t length() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
  const std::vector<Symbol>& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<std::vector<Symbol>>& columns() const noexcept { return columns_; }
  const std::vector<std::size_t>& arities() const noexcept { return arities_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::size_t>& segments() const noexcept { return segments_; }

 private:
  std::vector<std::vector<Symbol>> columns_;
  std::vector<std::size_t> arities_;
  std::vector<std::string> names_;
  std::vector<std::size_t> segments_;
};

// Time-series CSV: optional '#' comment lines, a header of variable names,
// then one row of N values per step. A comment of the form
// "# segments: a,b,c" restores segment boundaries.
RealSeries read_real_csv(std::istream& in);
RealSeries read_real_csv(const std::string& path);
// Symbol arities default to max symbol + 1 per column.
SymbolSeries read_symbol_csv(std::istream& in, std::optional<std::vector<std::size_t>> arities = {});
SymbolSeries read_symbol_csv(const std::string& path,
                             std::optional<std::vector<std::size_t>> arities = {});

// `comments` lines are written first, each prefixed with "# ".
void write_real_csv(std::ostream& out, const RealSeries& series,
                    const std::vector<std::string>& comments = {});
void write_symbol_csv(std::ostream& out, const SymbolSeries& series,
                      const std::vector<std::string>& comments = {});

// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

}  // namespace infoflow
