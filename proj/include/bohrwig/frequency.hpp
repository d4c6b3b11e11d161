#pragma once

// Frequency labels for characters h_mu(c) = exp(i mu c) on the Bohr
// compactification of the real line.
//
// Two kinds of label exist. Rational labels are exact (arbitrary precision)
// and give true Kronecker-delta semantics. Real labels are IEEE doubles; they
// are only ever compared through the snapping relation
//
//     |a - b| <= tol * max(1, |a|, |b|)
//
// which containers apply when a new label is inserted next to an existing one.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace bohrwig {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class FrequencyKind { rational, real };

std::string_view to_string(FrequencyKind kind);

struct Tolerances {
  /// Relative snapping radius for real labels.
  double freq = 1e-9;
  /// Coefficients below coeff * (largest modulus) are dropped.
  double coeff = 1e-15;
};

/// Raised when operands carry different frequency kinds and no explicit
/// promotion was requested.
class KindMismatch : public std::invalid_argument {
 public:
  KindMismatch(FrequencyKind lhs, FrequencyKind rhs);
};

class Frequency {
 public:
  Frequency() : value_(Rational(0)) {}
  Frequency(Rational q) : value_(std::move(q)) {}  // NOLINT: implicit by design of the algebra

  static Frequency rational(long long num, long long den = 1);
  static Frequency real(double x) { return Frequency(RealTag{}, x); }

  /// Parses "p/q", "p" or a plain decimal ("1.25") as an exact rational, or
  /// any floating literal as a real label when kind == real.
  static Frequency parse(std::string_view text, FrequencyKind kind);

  FrequencyKind kind() const {
    return std::holds_alternative<Rational>(value_) ? FrequencyKind::rational
                                                     : FrequencyKind::real;
  }
  bool is_rational() const { return kind() == FrequencyKind::rational; }

  const Rational& as_rational() const;
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  Frequency half() const;
  Frequency promoted() const { return real(to_double()); }

  Frequency operator-() const;
  friend Frequency operator+(const Frequency& a, const Frequency& b);
  friend Frequency operator-(const Frequency& a, const Frequency& b);

  /// Exact identity: same kind and identical value (bitwise for reals).
  friend bool operator==(const Frequency& a, const Frequency& b);

  /// Canonical text: "p/q" (or "p") for rationals, 17 significant digits for reals.
  std::string to_string() const;

 private:
  struct RealTag {};
  Frequency(RealTag, double x) : value_(x) {}

  std::variant<Rational, double> value_;
};

/// Strict weak order used for map keys. Rationals sort before reals; within a
/// kind the natural numeric order applies.
struct FrequencyLess {
  bool operator()(const Frequency& a, const Frequency& b) const;
};

/// The snapping relation. Exact equality for rationals, relative tolerance for
/// reals. Mixed kinds never match.
bool frequencies_match(const Frequency& a, const Frequency& b, double freq_tol);

/// Window half-width around x that contains every label matching x, or
/// +infinity when the relation is too loose to bound (freq_tol >= 1).
double snap_window(double x, double freq_tol);

void require_same_kind(FrequencyKind a, FrequencyKind b);

}  // namespace bohrwig
