#include "efrep/weights.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "efrep/error.hpp"
#include "efrep/numeric.hpp"
#include "fft.hpp"

namespace efrep {
namespace {

constexpr std::size_t kDirectConvolutionLimit = std::size_t{1} << 12;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

double parse_real(std::string_view s, std::string_view context) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParameterError("cannot parse number '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<double> read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open weight table '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    try {
      values.push_back(parse_real(std::string_view(line).substr(b, e - b + 1), path));
    } catch (const ParameterError&) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": not a real number");
    }
  }
  return values;
}

}  // namespace

WeightSequence WeightSequence::constant(double c, std::optional<double> b0) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ParameterError("constant weights need 0 <= sqrt(c) <= 1, got c=" + std::to_string(c));
  }
  WeightSequence w;
  w.kind_ = WeightKind::kConstant;
  w.c_ = c;
  w.root_c_ = std::sqrt(c);
  w.b0_ = b0.value_or(w.root_c_);
  check_unit(w.b0_, "b0");
  return w;
}

WeightSequence WeightSequence::central_binomial(double c) {
  if (!(c > 0.0 && c <= 1.0)) {
    throw ParameterError("central-binomial weights need 0 < c <= 1, got c=" + std::to_string(c));
  }
  WeightSequence w;
  w.kind_ = WeightKind::kCentralBinomial;
  w.c_ = c;
  w.root_c_ = std::sqrt(c);
  w.b0_ = w.root_c_;
  return w;
}

WeightSequence WeightSequence::table(std::vector<double> values) {
  if (values.empty()) throw ParameterError("weight table is empty");
  for (double v : values) check_unit(v, "table weight");
  WeightSequence w;
  w.kind_ = WeightKind::kTable;
  w.table_ = std::move(values);
  return w;
}

WeightSequence WeightSequence::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("weight spec '" + std::string(spec) + "' lacks a kind prefix");
  }
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);

  if (kind == "table") {
    if (!rest.empty() && rest.front() == '@') return table(read_table_file(std::string(rest.substr(1))));
    std::vector<double> values;
    for (auto tok : split(rest, ',')) values.push_back(parse_real(tok, spec));
    return table(std::move(values));
  }

  std::optional<double> c, b0;
  for (auto tok : split(rest, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("expected key=value in weight spec '" + std::string(spec) + "'");
    }
    const auto key = tok.substr(0, eq);
    const double val = parse_real(tok.substr(eq + 1), spec);
    if (key == "c") {
      c = val;
    } else if (key == "b0") {
      b0 = val;
    } else {
      throw ParameterError("unknown weight parameter '" + std::string(key) + "'");
    }
  }
  if (!c) throw ParameterError("weight spec '" + std::string(spec) + "' needs c=");
  if (kind == "constant") return constant(*c, b0);
  if (kind == "central-binomial" || kind == "cbinom") {
    if (b0) throw ParameterError("central-binomial weights take no b0 override");
    return central_binomial(*c);
  }
  throw ParameterError("unknown weight kind '" + std::string(kind) + "'");
}

std::size_t WeightSequence::n_cap() const noexcept {
  if (kind_ == WeightKind::kTable) {
    return table_.size() - 1;
  }
  return std::numeric_limits<std::size_t>::max();
}

double WeightSequence::at(std::size_t n) const {
  switch (kind_) {
    case WeightKind::kConstant:
      return n == 0 ? b0_ : root_c_;
    case WeightKind::kCentralBinomial: {
      double b = root_c_;
      for (std::size_t k = 1; k <= n; ++k) {
        b = b * static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
      }
      return b;
    }
    case WeightKind::kTable:
      if (n >= table_.size()) {
        throw RangeError("weight index " + std::to_string(n) + " beyond table of size " +
                         std::to_string(table_.size()));
      }
      return table_[n];
  }
  return 0.0;
}

std::vector<double> WeightSequence::values(std::size_t n_max) const {
  if (kind_ == WeightKind::kTable) {
    if (n_max >= table_.size()) {
      throw RangeError("weights requested to " + std::to_string(n_max) + " but table has " +
                       std::to_string(table_.size()) + " entries");
    }
    return {table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(n_max + 1)};
  }
  std::vector<double> out(n_max + 1);
  if (kind_ == WeightKind::kConstant) {
    std::fill(out.begin(), out.end(), root_c_);
    out[0] = b0_;
    return out;
  }
  out[0] = root_c_;
  for (std::size_t k = 1; k <= n_max; ++k) {
    out[k] = out[k - 1] * static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
  }
  return out;
}

std::string WeightSequence::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case WeightKind::kConstant:
      os << "constant:c=" << c_;
      if (b0_ != root_c_) os << ",b0=" << b0_;
      break;
    case WeightKind::kCentralBinomial:
      os << "central-binomial:c=" << c_;
      break;
    case WeightKind::kTable:
      os << "table:[" << table_.size() << " entries]";
      break;
  }
  return os.str();
}

std::vector<double> direct_self_convolution(std::span<const double> b, std::size_t n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    CompensatedSum s;
    for (std::size_t k = 0; k <= n && k < b.size(); ++k) {
      if (n - k < b.size()) s += b[k] * b[n - k];
    }
    out[n] = s.value();
  }
  return out;
}

std::vector<double> convolution_target(const WeightSequence& w, std::size_t n_max) {
  if (!w.defined_up_to(n_max)) {
    throw RangeError("weights not defined up to " + std::to_string(n_max));
  }
  std::vector<double> t(n_max + 1);
  switch (w.kind()) {
    case WeightKind::kConstant: {
      // b_0 may differ from the bulk value sqrt(c).
      const double b0 = w.at(0);
      const double s = std::sqrt(w.c());
      t[0] = b0 * b0;
      for (std::size_t n = 1; n <= n_max; ++n) {
        t[n] = 2.0 * b0 * s + static_cast<double>(n - 1) * w.c();
      }
      return t;
    }
    case WeightKind::kCentralBinomial:
      std::fill(t.begin(), t.end(), w.c());
      return t;
    case WeightKind::kTable: {
      const auto b = w.values(n_max);
      if (n_max <= kDirectConvolutionLimit) return direct_self_convolution(b, n_max);
      return detail::fft_self_convolve(b, n_max + 1);
    }
  }
  return t;
}

double cumulative_target(const WeightSequence& w, std::size_t N) {
  if (!w.defined_up_to(N)) throw RangeError("weights not defined up to " + std::to_string(N));
  const double n = static_cast<double>(N);
  switch (w.kind()) {
    case WeightKind::kConstant: {
      const double b0 = w.at(0);
      const double s = std::sqrt(w.c());
      // b0^2 + 2 b0 s N + c N (N - 1) / 2; equals c (N+1)(N+2)/2 when b0 = s.
      if (b0 == s) return w.c() * (n + 1.0) * (n + 2.0) / 2.0;
      return b0 * b0 + 2.0 * b0 * s * n + w.c() * n * (n - 1.0) / 2.0;
    }
    case WeightKind::kCentralBinomial:
      return w.c() * (n + 1.0);
    case WeightKind::kTable: {
      CompensatedSum s;
      for (double t : convolution_target(w, N)) s += t;
      return s.value();
    }
  }
  return 0.0;
}

Target make_target(const WeightSequence& w, std::size_t n_max) {
  Target t;
  t.pointwise = convolution_target(w, n_max);
  t.cumulative.resize(n_max + 1);
  if (w.kind() == WeightKind::kTable) {
    CompensatedSum s;
    for (std::size_t n = 0; n <= n_max; ++n) {
      s += t.pointwise[n];
      t.cumulative[n] = s.value();
    }
  } else {
    for (std::size_t n = 0; n <= n_max; ++n) t.cumulative[n] = cumulative_target(w, n);
  }
  return t;
}

Target make_target(std::vector<double> pointwise) {
  Target t;
  t.cumulative.resize(pointwise.size());
  CompensatedSum s;
  for (std::size_t n = 0; n < pointwise.size(); ++n) {
    s += pointwise[n];
    t.cumulative[n] = s.value();
  }
  t.pointwise = std::move(pointwise);
  return t;
}

}  // namespace efrep
