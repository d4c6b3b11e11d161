#include "bohrwig/frequency.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace bohrwig {

std::string_view to_string(FrequencyKind kind) {
  return kind == FrequencyKind::rational ? "rational" : "real";
}

KindMismatch::KindMismatch(FrequencyKind lhs, FrequencyKind rhs)
    : std::invalid_argument(fmt::format("frequency kind mismatch: {} vs {} (promote explicitly)",
                                        to_string(lhs), to_string(rhs))) {}

void require_same_kind(FrequencyKind a, FrequencyKind b) {
  if (a != b) throw KindMismatch(a, b);
}

Frequency Frequency::rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return Frequency(Rational(num, den));
}

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view s) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw std::invalid_argument(fmt::format("malformed integer '{}'", s));
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument(fmt::format("malformed integer '{}'", s));
  }
  cpp_int value{std::string(digits)};
  return negative ? cpp_int(-value) : value;
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_integer(text.substr(0, slash));
    cpp_int den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument(fmt::format("malformed rational '{}'", text));
    std::string digits = std::string(whole) + std::string(frac);
    cpp_int num = parse_integer(digits);
    cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational q(num, den);
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(text));
}

}  // namespace

Frequency Frequency::parse(std::string_view text, FrequencyKind kind) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (kind == FrequencyKind::rational) return Frequency(parse_rational(text));

  if (text.find('/') != std::string_view::npos) {
    return Frequency(parse_rational(text)).promoted();
  }
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x))
    throw std::invalid_argument(fmt::format("malformed real frequency '{}'", text));
  return real(x);
}

const Rational& Frequency::as_rational() const {
  if (auto* q = std::get_if<Rational>(&value_)) return *q;
  throw KindMismatch(FrequencyKind::real, FrequencyKind::rational);
}

double Frequency::to_double() const {
  if (auto* q = std::get_if<Rational>(&value_)) return q->convert_to<double>();
  return std::get<double>(value_);
}

bool Frequency::is_zero() const {
  if (auto* q = std::get_if<Rational>(&value_)) return q->is_zero();
  return std::get<double>(value_) == 0.0;
}

int Frequency::sign() const {
  if (auto* q = std::get_if<Rational>(&value_)) return q->sign();
  double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

Frequency Frequency::half() const {
  if (auto* q = std::get_if<Rational>(&value_)) return Frequency(Rational(*q / 2));
  return real(std::get<double>(value_) / 2);
}

Frequency Frequency::operator-() const {
  if (auto* q = std::get_if<Rational>(&value_)) return Frequency(Rational(-*q));
  return real(-std::get<double>(value_));
}

Frequency operator+(const Frequency& a, const Frequency& b) {
  require_same_kind(a.kind(), b.kind());
  if (a.is_rational()) return Frequency(Rational(a.as_rational() + b.as_rational()));
  return Frequency::real(std::get<double>(a.value_) + std::get<double>(b.value_));
}

Frequency operator-(const Frequency& a, const Frequency& b) {
  require_same_kind(a.kind(), b.kind());
  if (a.is_rational()) return Frequency(Rational(a.as_rational() - b.as_rational()));
  return Frequency::real(std::get<double>(a.value_) - std::get<double>(b.value_));
}

bool operator==(const Frequency& a, const Frequency& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_rational()) return a.as_rational() == b.as_rational();
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::string Frequency::to_string() const {
  if (auto* q = std::get_if<Rational>(&value_)) return q->str();
  return fmt::format("{:.17g}", std::get<double>(value_));
}

bool FrequencyLess::operator()(const Frequency& a, const Frequency& b) const {
  if (a.kind() != b.kind()) return a.kind() == FrequencyKind::rational;
  if (a.is_rational()) return a.as_rational() < b.as_rational();
  return a.to_double() < b.to_double();
}

bool frequencies_match(const Frequency& a, const Frequency& b, double freq_tol) {
  if (a.kind() != b.kind()) return false;
  if (a.is_rational()) return a.as_rational() == b.as_rational();
  double x = a.to_double();
  double y = b.to_double();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= freq_tol * scale;
}

double snap_window(double x, double freq_tol) {
  if (freq_tol >= 1.0) return std::numeric_limits<double>::infinity();
  // |x - y| <= tol * max(1, |x|, |y|) <= tol * (max(1, |x|) + |x - y|)
  return freq_tol * std::max(1.0, std::abs(x)) / (1.0 - freq_tol);
}

}  // namespace bohrwig
