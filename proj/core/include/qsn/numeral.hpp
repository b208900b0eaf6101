#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsn/error.hpp"
#include "qsn/rational.hpp"

namespace qsn {

// Fresh string label. Labels keep tuple members and sequence elements
// distinguishable; they never enter value or basis-vector identity.
std::int64_t next_label();

// A signed digit string in base k over an integer site interval [low, high]
// with low <= 0 <= high. Site j holds the coefficient of k^j and the sign
// sits at the radix point, so the represented value is
// sign * sum_j digit(j) * k^j. Leading/trailing zero padding is preserved:
// padded strings denote the same number but are distinct basis vectors.
class BasisNumeral {
public:
  BasisNumeral(int base, bool negative, std::vector<std::uint32_t> digits,
               int low, std::int64_t label = next_label());

  static BasisNumeral zero(int base);
  static BasisNumeral from_int(long long v, int base);
  static BasisNumeral power(int base, int exponent);  // k^exponent

  int base() const noexcept { return base_; }
  bool negative() const noexcept { return negative_; }
  std::int64_t label() const noexcept { return label_; }
  int low() const noexcept { return low_; }
  int high() const noexcept {
    return low_ + static_cast<int>(digits_.size()) - 1;
  }
  const std::vector<std::uint32_t>& digits() const noexcept { return digits_; }
  std::uint32_t digit_at(int site) const noexcept;  // 0 outside [low, high]

  // String length high - low + 1: the cost of the representation in qukits.
  int unary_value() const noexcept { return static_cast<int>(digits_.size()); }

  bool is_zero() const noexcept;

  BasisNumeral with_label(std::int64_t label) const;

  // Basis-vector identity: base, sign, interval and every digit including
  // padding. Labels are deliberately ignored.
  friend bool operator==(const BasisNumeral& a, const BasisNumeral& b);
  friend bool operator!=(const BasisNumeral& a, const BasisNumeral& b) {
    return !(a == b);
  }

private:
  int base_;
  bool negative_;
  int low_;
  std::vector<std::uint32_t> digits_;  // digits_[i] is the digit at site low_+i
  std::int64_t label_;
};

// Structural strict weak order (padding-sensitive, label-blind). Suitable as a
// deterministic map key ordering.
struct NumeralOrder {
  bool operator()(const BasisNumeral& a, const BasisNumeral& b) const;
};

enum class ArithOrdering { less, equivalent, greater };

// Minimal-padding representative: strips zero digits outside
// [min(0, lowest nonzero), max(0, highest nonzero)]; the zero string becomes
// sign +, interval [0, 0]. The label is preserved.
BasisNumeral canonicalize(const BasisNumeral& a);
bool is_canonical(const BasisNumeral& a);

// Value-level relations (signed exact comparison, padding-blind).
bool arith_equal(const BasisNumeral& a, const BasisNumeral& b);
bool arith_less(const BasisNumeral& a, const BasisNumeral& b);
ArithOrdering arith_compare(const BasisNumeral& a, const BasisNumeral& b);

// Exact digit-level arithmetic. Results are canonical and carry fresh labels.
BasisNumeral arith_add(const BasisNumeral& a, const BasisNumeral& b);
BasisNumeral arith_sub(const BasisNumeral& a, const BasisNumeral& b);
BasisNumeral arith_mul(const BasisNumeral& a, const BasisNumeral& b);
// Quotient with magnitude truncated toward zero at ell fraction digits:
// |value(a)/value(b) - value(result)| < k^-ell.
BasisNumeral arith_div(const BasisNumeral& a, const BasisNumeral& b, int ell);
BasisNumeral arith_abs(const BasisNumeral& a);
// Adds k^j: the site-j successor.
BasisNumeral successor(const BasisNumeral& a, int j);

struct OpKind {
  enum class Tag { add, sub, mul, div, abs, succ };
  Tag tag = Tag::add;
  int param = 0;  // ell for div, site j for succ

  static OpKind add() { return {Tag::add, 0}; }
  static OpKind sub() { return {Tag::sub, 0}; }
  static OpKind mul() { return {Tag::mul, 0}; }
  static OpKind div(int ell) { return {Tag::div, ell}; }
  static OpKind abs() { return {Tag::abs, 0}; }
  static OpKind succ(int j) { return {Tag::succ, j}; }

  bool binary() const noexcept {
    return tag == Tag::add || tag == Tag::sub || tag == Tag::mul ||
           tag == Tag::div;
  }
  std::string name() const;
};

BasisNumeral apply_op(const OpKind& op, const BasisNumeral& a,
                      const BasisNumeral* b = nullptr);

// Terminating base-k expansion of v, canonical. Throws NonTerminating when
// the reduced denominator has a prime factor outside base's factorization.
BasisNumeral encode_rational(const Rational& v, int base);
Rational decode_rational(const BasisNumeral& a);

// Text form "<k>:<int-digits><sign><frac-digits>" where the sign character
// doubles as the radix mark; digits of bases above ten are comma-separated
// decimal values. Parsing accepts padding; printing preserves it.
BasisNumeral parse_numeral(const std::string& text);
std::string to_text(const BasisNumeral& a);
std::string canonical_text(const BasisNumeral& a);

}  // namespace qsn
