#include "qsn/base_change.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace qsn {
namespace {

constexpr int kMaxBase = 1 << 20;

std::set<long long> prime_support(int base) {
  if (base < 2 || base > kMaxBase)
    throw DomainError(errc::bad_numeral,
                      "base " + std::to_string(base) + " out of range");
  std::set<long long> s;
  for (const auto& f : prime_factorize(base)) s.insert(f.prime);
  return s;
}

// Little-endian target digits of a nonnegative integer.
std::vector<std::uint32_t> integer_digits(BigInt v, int base) {
  std::vector<std::uint32_t> out;
  while (v > 0) {
    out.push_back(static_cast<std::uint32_t>(v % base));
    v /= base;
  }
  if (out.empty()) out.push_back(0);
  return out;
}

GaugeMatrix kron(const GaugeMatrix& a, const GaugeMatrix& b) {
  GaugeMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_group_width(int base, int n) {
  if (n < 1)
    throw DomainError(errc::out_of_domain,
                      "group width must be positive, got " + std::to_string(n));
  long long target = 1;
  for (int i = 0; i < n; ++i) {
    target *= base;
    if (target > kMaxBase)
      throw DomainError(errc::out_of_domain,
                        "grouped base " + std::to_string(base) + "^" +
                            std::to_string(n) + " exceeds the digit limit");
  }
}

int floor_div(int a, int b) {
  int q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

}  // namespace

std::string domain_class_name(DomainClass c) {
  switch (c) {
    case DomainClass::disjoint: return "DISJOINT";
    case DomainClass::subset: return "SUBSET";
    case DomainClass::superset: return "SUPERSET";
    case DomainClass::overlap: return "OVERLAP";
    case DomainClass::equal: return "EQUAL";
  }
  throw DomainError(errc::out_of_domain, "unknown domain class");
}

DomainClass pf_domain_class(int from_base, int to_base) {
  const auto from = prime_support(from_base);
  const auto to = prime_support(to_base);
  const bool from_in_to =
      std::includes(to.begin(), to.end(), from.begin(), from.end());
  const bool to_in_from =
      std::includes(from.begin(), from.end(), to.begin(), to.end());
  if (from_in_to && to_in_from) return DomainClass::equal;
  if (from_in_to) return DomainClass::subset;
  if (to_in_from) return DomainClass::superset;
  std::set<long long> both;
  std::set_intersection(from.begin(), from.end(), to.begin(), to.end(),
                        std::inserter(both, both.begin()));
  return both.empty() ? DomainClass::disjoint : DomainClass::overlap;
}

BasisNumeral convert_exact(const BasisNumeral& a, int to_base) {
  try {
    return encode_rational(decode_rational(a), to_base).with_label(a.label());
  } catch (const DomainError& e) {
    if (e.code() == errc::non_terminating)
      throw DomainError(errc::out_of_domain,
                        "value of '" + to_text(a) + "' has no terminating base-" +
                            std::to_string(to_base) + " expansion");
    throw;
  }
}

BasisNumeral convert_approx(const BasisNumeral& a, int to_base, int ell) {
  return approx_of_rational(decode_rational(a), to_base, ell)
      .with_label(a.label());
}

BasisNumeral approx_of_rational(const Rational& v0, int base, int ell) {
  if (base < 2 || base > kMaxBase)
    throw DomainError(errc::bad_numeral, "base out of range");
  if (ell < 0)
    throw DomainError(errc::bad_numeral,
                      "negative accuracy " + std::to_string(ell));
  Rational v = v0;
  const bool neg = v < 0;
  if (neg) v = -v;
  for (int i = 0; i < ell; ++i) v *= base;
  BigInt scaled = boost::multiprecision::numerator(v) /
                  boost::multiprecision::denominator(v);
  auto digits = integer_digits(scaled, base);
  while (static_cast<int>(digits.size()) < ell + 1) digits.push_back(0);
  return canonicalize(
      BasisNumeral(base, neg && scaled != 0, std::move(digits), -ell));
}

int smallest_same_pf(int base) {
  long long radical = 1;
  for (long long p : prime_support(base)) radical *= p;
  return static_cast<int>(radical);
}

long long primorial(int n) {
  if (n < 1 || n > 15)
    throw DomainError(errc::out_of_domain,
                      "primorial index " + std::to_string(n) +
                          " outside [1, 15]");
  long long product = 1;
  long long candidate = 2;
  for (int taken = 0; taken < n; ++candidate) {
    bool prime = true;
    for (long long d = 2; d * d <= candidate; ++d)
      if (candidate % d == 0) { prime = false; break; }
    if (prime) {
      product *= candidate;
      ++taken;
    }
  }
  return product;
}

BasisNumeral regroup_digits(const BasisNumeral& a, int n) {
  check_group_width(a.base(), n);
  long long target = 1;
  for (int i = 0; i < n; ++i) target *= a.base();
  const int block_low = floor_div(a.low(), n);
  const int block_high = floor_div(a.high(), n);
  std::vector<std::uint32_t> digits;
  digits.reserve(block_high - block_low + 1);
  for (int b = block_low; b <= block_high; ++b) {
    std::uint32_t d = 0;
    std::uint32_t scale = 1;
    for (int i = 0; i < n; ++i) {
      d += a.digit_at(b * n + i) * scale;
      scale *= static_cast<std::uint32_t>(a.base());
    }
    digits.push_back(d);
  }
  return BasisNumeral(static_cast<int>(target), a.negative(),
                      std::move(digits), block_low, a.label());
}

FockState regroup_digits(const FockState& s, int n) {
  check_group_width(s.base(), n);
  long long target = 1;
  for (int i = 0; i < n; ++i) target *= s.base();
  std::vector<std::pair<NumeralTuple, Amplitude>> terms;
  terms.reserve(s.term_count());
  for (const auto& [tuple, amp] : s.terms()) {
    NumeralTuple mapped;
    mapped.reserve(tuple.size());
    for (const auto& numeral : tuple) mapped.push_back(regroup_digits(numeral, n));
    terms.emplace_back(std::move(mapped), amp);
  }
  return FockState::make(static_cast<int>(target), s.arity(), std::move(terms));
}

GaugeField induced_block_gauge(const GaugeField& u, int n) {
  check_group_width(u.base(), n);
  long long target = 1;
  for (int i = 0; i < n; ++i) target *= u.base();
  GaugeField out(static_cast<int>(target), u.name() + "^" + std::to_string(n));
  const GaugeMatrix identity =
      GaugeMatrix::Identity(u.base(), u.base());

  if (u.global())
    out.set_global([&] {
      GaugeMatrix g = *u.global();
      for (int i = 1; i < n; ++i) g = kron(g, *u.global());
      return g;
    }());

  std::set<int> column_blocks;
  for (const auto& [site, matrix] : u.columns())
    column_blocks.insert(floor_div(site, n));
  for (int b : column_blocks) {
    GaugeMatrix block = identity;
    for (int i = n - 1; i >= 0; --i) {
      const int site = b * n + i;
      auto it = u.columns().find(site);
      const GaugeMatrix& factor =
          it != u.columns().end() ? it->second
                                  : (u.global() ? *u.global() : identity);
      block = i == n - 1 ? factor : kron(block, factor);
    }
    out.set_column(b, std::move(block));
  }

  std::set<std::pair<int, std::int64_t>> site_blocks;
  for (const auto& [key, matrix] : u.sites())
    site_blocks.insert({floor_div(key.first, n), key.second});
  for (const auto& [b, h] : site_blocks) {
    GaugeMatrix block = identity;
    for (int i = n - 1; i >= 0; --i) {
      const GaugeMatrix* found = u.lookup(b * n + i, h);
      const GaugeMatrix& factor = found ? *found : identity;
      block = i == n - 1 ? factor : kron(block, factor);
    }
    out.set_site(b, h, std::move(block));
  }
  return out;
}

FockState convert_with_gauges(const GaugeField& to_gauge, const FockState& s,
                              const GaugeField& from_gauge,
                              std::optional<int> approx_ell) {
  if (from_gauge.base() != s.base())
    throw DomainError(errc::base_mismatch,
                      "source field base " + std::to_string(from_gauge.base()) +
                          " does not match state base " +
                          std::to_string(s.base()));
  const FockState pulled = apply_gauge(from_gauge.adjoint(), s);
  std::vector<std::pair<NumeralTuple, Amplitude>> terms;
  terms.reserve(pulled.term_count());
  for (const auto& [tuple, amp] : pulled.terms()) {
    NumeralTuple mapped;
    mapped.reserve(tuple.size());
    for (const auto& numeral : tuple)
      mapped.push_back(approx_ell
                           ? convert_approx(numeral, to_gauge.base(), *approx_ell)
                           : convert_exact(numeral, to_gauge.base()));
    terms.emplace_back(std::move(mapped), amp);
  }
  return apply_gauge(to_gauge,
                     FockState::make(to_gauge.base(), s.arity(),
                                     std::move(terms)));
}

}  // namespace qsn
