#pragma once

#include <optional>
#include <string>

#include "qsn/gauge.hpp"

namespace qsn {

enum class DomainClass { disjoint, subset, superset, overlap, equal };

std::string domain_class_name(DomainClass c);

// Relation between the prime supports of the source and target bases. It
// decides how much of the source's number domain survives re-expression:
// subset/equal embed everything, the others only values whose reduced
// denominators stay inside the target's primes.
DomainClass pf_domain_class(int from_base, int to_base);

// Exact re-expression of the value in the target base (canonical, label
// preserved). Throws OutOfDomain when the denominator needs a missing prime.
BasisNumeral convert_exact(const BasisNumeral& a, int to_base);

// Truncation toward zero at ell target fraction digits. Agrees with
// convert_exact whenever the exact expansion fits in ell digits; ell = 0 is
// the signed floor toward zero.
BasisNumeral convert_approx(const BasisNumeral& a, int to_base, int ell);

// The canonical numeral of v truncated toward zero at ell fraction digits.
BasisNumeral approx_of_rational(const Rational& v, int base, int ell);

// Radical: the smallest base with the same prime support.
int smallest_same_pf(int base);

// Product of the first n primes.
long long primorial(int n);

// Digit grouping onto base^n: blocks of n source digits become one target
// digit, with the interval padded outward to block alignment. The string form
// is kept (no canonicalization) so per-site gauge actions can follow the
// grouping. Strings whose padded intervals tile identically merge.
BasisNumeral regroup_digits(const BasisNumeral& a, int n);
FockState regroup_digits(const FockState& s, int n);

// Base^n field induced by a base-k field: the block-j matrix is the Kronecker
// product of the constituent site matrices, most significant site first.
GaugeField induced_block_gauge(const GaugeField& u, int n);

// to_gauge o convert o from_gauge*: pulls the state back through from_gauge,
// converts every component (exactly, or truncated at approx_ell), pushes the
// result through to_gauge (whose base is the target). Any out-of-domain
// component with surviving amplitude aborts the exact form.
FockState convert_with_gauges(const GaugeField& to_gauge, const FockState& s,
                              const GaugeField& from_gauge,
                              std::optional<int> approx_ell = std::nullopt);

}  // namespace qsn
