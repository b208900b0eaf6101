#pragma once

#include <string>
#include <utility>

#include "qsn/sequence.hpp"

namespace qsn {

// A complex rational value stored as an explicit two-slot record: a real-part
// numeral and an imaginary-part numeral sharing one base. The imaginary sign
// is the sign of the second slot read as +i / -i. The two slots always carry
// distinct labels so they occupy separate string registers; a clash on
// construction restamps the imaginary slot.
class ComplexBasisPair {
public:
  ComplexBasisPair(BasisNumeral real_part, BasisNumeral imag_part);

  static ComplexBasisPair zero(int base);

  const BasisNumeral& real_part() const noexcept { return re_; }
  const BasisNumeral& imag_part() const noexcept { return im_; }
  int base() const noexcept { return re_.base(); }

  bool is_zero() const;

private:
  BasisNumeral re_;
  BasisNumeral im_;
};

// Value-level equality of both components.
bool complex_equal(const ComplexBasisPair& a, const ComplexBasisPair& b);

// Terminating representation of re + i*im; either non-terminating part
// throws. (0, 0) yields the canonical zero pair with signs +, +i.
ComplexBasisPair complex_encode(const Rational& re, const Rational& im,
                                int base);
std::pair<Rational, Rational> complex_decode(const ComplexBasisPair& z);

// Componentwise realization of the complex field operations:
//   ADD/SUB  slotwise
//   MUL      (x*x' - y*y') + i(x*y' + x'*y)
//   DIV(ell) conjugate form: both component numerators divided by the exact
//            modulus squared x'^2 + y'^2, each to accuracy ell; that division
//            is the only inexact step.
// ABS and SUCC have no complex form. Division by the zero pair throws.
ComplexBasisPair complex_arith(const OpKind& op, const ComplexBasisPair& a,
                               const ComplexBasisPair& b);

// Text form "<re-numeral>;<im-numeral>i", e.g. "10:1-5;10:0-25i".
ComplexBasisPair parse_complex(const std::string& text);
std::string to_text(const ComplexBasisPair& z);
std::string canonical_text(const ComplexBasisPair& z);
std::string to_json_text(const ComplexBasisPair& z);

// An indexed family of arity-2 states whose slots are the real and imaginary
// components. Superpositions are joint states over whole pairs.
class ComplexSequence {
public:
  explicit ComplexSequence(StateSequence states);

  // Product family: element n pairs every term of re(n) with every term of
  // im(n).
  static ComplexSequence from_parts(const StateSequence& re,
                                    const StateSequence& im);
  static ComplexSequence constant(const ComplexBasisPair& z);

  const StateSequence& states() const noexcept { return states_; }
  int base() const { return states_.base(); }
  FockState at(int n) const { return states_.at(n); }

private:
  StateSequence states_;
};

// Elementwise pair arithmetic on basis-valued families; DIV runs at the
// diagonal accuracy ell = n.
ComplexSequence complex_seq_arith(SeqArith kind, const ComplexSequence& a,
                                  const ComplexSequence& b);

// Convergence of a complex family is judged on the two components separately,
// plus the joint reading for superpositions: the combined classification runs
// the standard protocol on the probability that both components lie within
// k^-ell at once. For product families that cell is the product of the two
// marginal cells, so combined CAUCHY coincides with both parts CAUCHY.
struct ComplexCauchyReport {
  CauchyReport real_report;
  CauchyReport imag_report;
  CauchyClass combined;
};

ComplexCauchyReport complex_cauchy_report(const ComplexSequence& psi, int N,
                                          int L, double eps);

// Asymptotic equality of two complex families: the EQ horizon estimate on
// each component; equal when both reach 1 - eps. No order estimates exist
// for pairs.
struct ComplexEqualityReport {
  double real_eq;
  double imag_eq;
  bool equal;
};

ComplexEqualityReport complex_compare_equal(const ComplexSequence& a,
                                            const ComplexSequence& b, int N,
                                            int L, double eps);

std::string to_json_text(const ComplexCauchyReport& r);
std::string to_json_text(const ComplexEqualityReport& r);

}  // namespace qsn
