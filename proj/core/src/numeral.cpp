#include "qsn/numeral.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <sstream>

namespace qsn {

namespace {

constexpr int kMaxBase = 1 << 20;

// Magnitudes are little-endian digit vectors in base k; the site of entry 0
// is tracked by the caller. All helpers stay at the digit level: the exact
// rational type is reserved for encode/decode and never backs arithmetic.

using Mag = std::vector<std::uint32_t>;

void trim_high(Mag& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

bool mag_is_zero(const Mag& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t d) { return d == 0; });
}

int cmp_mag(const Mag& a, const Mag& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t da = i < a.size() ? a[i] : 0;
    std::uint32_t db = i < b.size() ? b[i] : 0;
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

Mag add_mag(const Mag& a, const Mag& b, std::uint64_t k) {
  Mag r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    r.push_back(static_cast<std::uint32_t>(cur % k));
    carry = cur / k;
  }
  if (carry) r.push_back(static_cast<std::uint32_t>(carry));
  trim_high(r);
  return r;
}

// Requires a >= b.
Mag sub_mag(const Mag& a, const Mag& b, std::uint64_t k) {
  Mag r;
  r.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                       (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (cur < 0) {
      cur += static_cast<std::int64_t>(k);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<std::uint32_t>(cur));
  }
  trim_high(r);
  return r;
}

Mag mul_mag(const Mag& a, const Mag& b, std::uint64_t k) {
  if (mag_is_zero(a) || mag_is_zero(b)) return {0};
  Mag r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = r[i + j] +
                          static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      r[i + j] = static_cast<std::uint32_t>(cur % k);
      carry = cur / k;
    }
    std::size_t pos = i + b.size();
    while (carry) {
      std::uint64_t cur = r[pos] + carry;
      r[pos] = static_cast<std::uint32_t>(cur % k);
      carry = cur / k;
      ++pos;
    }
  }
  trim_high(r);
  return r;
}

Mag mul_scalar(const Mag& a, std::uint64_t s, std::uint64_t k) {
  Mag r;
  r.reserve(a.size() + 2);
  std::uint64_t carry = 0;
  for (std::uint32_t d : a) {
    std::uint64_t cur = d * s + carry;
    r.push_back(static_cast<std::uint32_t>(cur % k));
    carry = cur / k;
  }
  while (carry) {
    r.push_back(static_cast<std::uint32_t>(carry % k));
    carry /= k;
  }
  trim_high(r);
  return r;
}

// Schoolbook long division; the per-position quotient digit is found by
// binary search so the routine works for any base.
std::pair<Mag, Mag> divmod_mag(const Mag& a, const Mag& b, std::uint64_t k) {
  Mag q(a.size(), 0);
  Mag rem{0};
  for (std::size_t i = a.size(); i-- > 0;) {
    rem.insert(rem.begin(), a[i]);
    trim_high(rem);
    std::uint64_t lo = 0, hi = k - 1;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi + 1) / 2;
      if (cmp_mag(mul_scalar(b, mid, k), rem) <= 0)
        lo = mid;
      else
        hi = mid - 1;
    }
    if (lo) rem = sub_mag(rem, mul_scalar(b, lo, k), k);
    q[i] = static_cast<std::uint32_t>(lo);
  }
  trim_high(q);
  trim_high(rem);
  return {std::move(q), std::move(rem)};
}

// Magnitude of a numeral as a little-endian vector whose entry 0 sits at
// site `low`; prepends zeros to move the anchor down to `low`.
Mag mag_at(const BasisNumeral& a, int low) {
  Mag m;
  m.resize(static_cast<std::size_t>(a.high() - low + 1), 0);
  for (int s = a.low(); s <= a.high(); ++s)
    m[static_cast<std::size_t>(s - low)] = a.digit_at(s);
  trim_high(m);
  return m;
}

BasisNumeral from_mag(int base, bool negative, Mag m, int low) {
  trim_high(m);
  if (mag_is_zero(m)) return BasisNumeral::zero(base);
  // Interval must reach site 0.
  while (low + static_cast<int>(m.size()) - 1 < 0) m.push_back(0);
  if (low > 0) {
    m.insert(m.begin(), static_cast<std::size_t>(low), 0);
    low = 0;
  }
  return canonicalize(BasisNumeral(base, negative, std::move(m), low));
}

void require_same_base(const BasisNumeral& a, const BasisNumeral& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch,
                      "operands have bases " + std::to_string(a.base()) +
                          " and " + std::to_string(b.base()));
}

int cmp_values(const BasisNumeral& a, const BasisNumeral& b) {
  bool az = a.is_zero(), bz = b.is_zero();
  if (az && bz) return 0;
  bool an = !az && a.negative(), bn = !bz && b.negative();
  if (an != bn) return an ? -1 : 1;
  int low = std::min(a.low(), b.low());
  int c = cmp_mag(mag_at(a, low), mag_at(b, low));
  return an ? -c : c;
}

}  // namespace

std::int64_t next_label() {
  static std::atomic<std::int64_t> counter{0};
  return ++counter;
}

BasisNumeral::BasisNumeral(int base, bool negative,
                           std::vector<std::uint32_t> digits, int low,
                           std::int64_t label)
    : base_(base), negative_(negative), low_(low), digits_(std::move(digits)),
      label_(label) {
  if (base_ < 2 || base_ > kMaxBase)
    throw DomainError(errc::bad_numeral, "base " + std::to_string(base_) +
                                             " out of range");
  if (digits_.empty())
    throw DomainError(errc::bad_numeral, "empty digit interval");
  if (low_ > 0 || high() < 0)
    throw DomainError(errc::bad_numeral,
                      "digit interval [" + std::to_string(low_) + ", " +
                          std::to_string(high()) + "] must contain site 0");
  for (std::uint32_t d : digits_)
    if (d >= static_cast<std::uint32_t>(base_))
      throw DomainError(errc::bad_numeral, "digit " + std::to_string(d) +
                                               " not below base " +
                                               std::to_string(base_));
}

BasisNumeral BasisNumeral::zero(int base) {
  return BasisNumeral(base, false, {0}, 0);
}

BasisNumeral BasisNumeral::from_int(long long v, int base) {
  bool neg = v < 0;
  unsigned long long m = neg ? 0ULL - static_cast<unsigned long long>(v)
                             : static_cast<unsigned long long>(v);
  std::vector<std::uint32_t> digits;
  do {
    digits.push_back(static_cast<std::uint32_t>(m % base));
    m /= base;
  } while (m);
  return BasisNumeral(base, neg && !(digits.size() == 1 && digits[0] == 0),
                      std::move(digits), 0);
}

BasisNumeral BasisNumeral::power(int base, int exponent) {
  int low = std::min(exponent, 0);
  int high = std::max(exponent, 0);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(high - low + 1), 0);
  digits[static_cast<std::size_t>(exponent - low)] = 1;
  return BasisNumeral(base, false, std::move(digits), low);
}

std::uint32_t BasisNumeral::digit_at(int site) const noexcept {
  if (site < low_ || site > high()) return 0;
  return digits_[static_cast<std::size_t>(site - low_)];
}

bool BasisNumeral::is_zero() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(),
                     [](std::uint32_t d) { return d == 0; });
}

BasisNumeral BasisNumeral::with_label(std::int64_t label) const {
  BasisNumeral copy = *this;
  copy.label_ = label;
  return copy;
}

bool operator==(const BasisNumeral& a, const BasisNumeral& b) {
  return a.base_ == b.base_ && a.negative_ == b.negative_ && a.low_ == b.low_ &&
         a.digits_ == b.digits_;
}

bool NumeralOrder::operator()(const BasisNumeral& a,
                              const BasisNumeral& b) const {
  if (a.base() != b.base()) return a.base() < b.base();
  if (a.negative() != b.negative()) return b.negative();
  if (a.low() != b.low()) return a.low() < b.low();
  return a.digits() < b.digits();
}

BasisNumeral canonicalize(const BasisNumeral& a) {
  if (a.is_zero()) {
    BasisNumeral z = BasisNumeral::zero(a.base());
    return z.with_label(a.label());
  }
  int hi = a.high();
  while (a.digit_at(hi) == 0) --hi;
  hi = std::max(hi, 0);
  int lo = a.low();
  while (a.digit_at(lo) == 0) ++lo;
  lo = std::min(lo, 0);
  std::vector<std::uint32_t> digits;
  digits.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int s = lo; s <= hi; ++s) digits.push_back(a.digit_at(s));
  return BasisNumeral(a.base(), a.negative(), std::move(digits), lo, a.label());
}

bool is_canonical(const BasisNumeral& a) {
  if (a.is_zero()) return !a.negative() && a.low() == 0 && a.high() == 0;
  bool top_ok = a.high() == 0 || a.digit_at(a.high()) != 0;
  bool bot_ok = a.low() == 0 || a.digit_at(a.low()) != 0;
  return top_ok && bot_ok;
}

bool arith_equal(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  return cmp_values(a, b) == 0;
}

bool arith_less(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  return cmp_values(a, b) < 0;
}

ArithOrdering arith_compare(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  int c = cmp_values(a, b);
  if (c < 0) return ArithOrdering::less;
  if (c > 0) return ArithOrdering::greater;
  return ArithOrdering::equivalent;
}

BasisNumeral arith_add(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  std::uint64_t k = static_cast<std::uint64_t>(a.base());
  int low = std::min(a.low(), b.low());
  Mag ma = mag_at(a, low), mb = mag_at(b, low);
  bool an = a.negative() && !a.is_zero();
  bool bn = b.negative() && !b.is_zero();
  if (an == bn) return from_mag(a.base(), an, add_mag(ma, mb, k), low);
  int c = cmp_mag(ma, mb);
  if (c == 0) return BasisNumeral::zero(a.base());
  if (c > 0) return from_mag(a.base(), an, sub_mag(ma, mb, k), low);
  return from_mag(a.base(), bn, sub_mag(mb, ma, k), low);
}

BasisNumeral arith_sub(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  BasisNumeral nb(b.base(), !b.negative(), b.digits(), b.low(), b.label());
  return arith_add(a, nb);
}

BasisNumeral arith_mul(const BasisNumeral& a, const BasisNumeral& b) {
  require_same_base(a, b);
  std::uint64_t k = static_cast<std::uint64_t>(a.base());
  if (a.is_zero() || b.is_zero()) return BasisNumeral::zero(a.base());
  Mag m = mul_mag(mag_at(a, a.low()), mag_at(b, b.low()), k);
  return from_mag(a.base(), a.negative() != b.negative(), std::move(m),
                  a.low() + b.low());
}

BasisNumeral arith_div(const BasisNumeral& a, const BasisNumeral& b, int ell) {
  require_same_base(a, b);
  if (ell < 0)
    throw DomainError(errc::bad_numeral, "negative accuracy " +
                                             std::to_string(ell));
  if (b.is_zero())
    throw DomainError(errc::division_by_zero, "divisor is the zero string");
  if (a.is_zero()) return BasisNumeral::zero(a.base());
  std::uint64_t k = static_cast<std::uint64_t>(a.base());
  Mag ma = mag_at(a, a.low()), mb = mag_at(b, b.low());
  // floor(|a| * k^ell / |b|) placed at site -ell truncates toward zero.
  int shift = a.low() - b.low() + ell;
  if (shift >= 0)
    ma.insert(ma.begin(), static_cast<std::size_t>(shift), 0);
  else
    mb.insert(mb.begin(), static_cast<std::size_t>(-shift), 0);
  Mag q = divmod_mag(ma, mb, k).first;
  return from_mag(a.base(), a.negative() != b.negative(), std::move(q), -ell);
}

BasisNumeral arith_abs(const BasisNumeral& a) {
  return canonicalize(
      BasisNumeral(a.base(), false, a.digits(), a.low(), next_label()));
}

BasisNumeral successor(const BasisNumeral& a, int j) {
  return arith_add(a, BasisNumeral::power(a.base(), j));
}

std::string OpKind::name() const {
  switch (tag) {
    case Tag::add: return "add";
    case Tag::sub: return "sub";
    case Tag::mul: return "mul";
    case Tag::div: return "div";
    case Tag::abs: return "abs";
    case Tag::succ: return "succ";
  }
  return "?";
}

BasisNumeral apply_op(const OpKind& op, const BasisNumeral& a,
                      const BasisNumeral* b) {
  if (op.binary() && b == nullptr)
    throw DomainError(errc::bad_numeral,
                      op.name() + " needs a second operand");
  switch (op.tag) {
    case OpKind::Tag::add: return arith_add(a, *b);
    case OpKind::Tag::sub: return arith_sub(a, *b);
    case OpKind::Tag::mul: return arith_mul(a, *b);
    case OpKind::Tag::div: return arith_div(a, *b, op.param);
    case OpKind::Tag::abs: return arith_abs(a);
    case OpKind::Tag::succ: return successor(a, op.param);
  }
  throw DomainError(errc::bad_numeral, "unknown operation");
}

BasisNumeral encode_rational(const Rational& v, int base) {
  if (base < 2 || base > kMaxBase)
    throw DomainError(errc::bad_numeral, "base out of range");
  if (v == 0) return BasisNumeral::zero(base);
  BigInt p = boost::multiprecision::numerator(v);
  BigInt q = boost::multiprecision::denominator(v);
  bool neg = p < 0;
  if (neg) p = -p;
  // Smallest ell with q | k^ell; each pass removes one k's worth of factors.
  BigInt r = q;
  int ell = 0;
  while (r != 1) {
    BigInt g = boost::multiprecision::gcd(r, BigInt(base));
    if (g == 1)
      throw DomainError(errc::non_terminating,
                        "denominator has a prime factor outside base " +
                            std::to_string(base));
    r /= g;
    ++ell;
  }
  BigInt scale = 1;
  for (int i = 0; i < ell; ++i) scale *= base;
  BigInt n = p * (scale / q);
  Mag m;
  if (n == 0) m.push_back(0);
  while (n != 0) {
    m.push_back(static_cast<std::uint32_t>(n % base));
    n /= base;
  }
  return from_mag(base, neg, std::move(m), -ell);
}

Rational decode_rational(const BasisNumeral& a) {
  BigInt n = 0;
  for (int s = a.high(); s >= a.low(); --s) {
    n *= a.base();
    n += a.digit_at(s);
  }
  if (a.negative()) n = -n;
  BigInt den = 1;
  for (int i = 0; i < -a.low(); ++i) den *= a.base();
  return Rational(n, den);
}

namespace {

std::vector<std::uint32_t> parse_digit_run(const std::string& body,
                                           std::size_t begin, std::size_t end,
                                           int base, const std::string& text) {
  std::vector<std::uint32_t> out;
  if (begin == end) return out;
  std::string run = body.substr(begin, end - begin);
  if (run.find(',') != std::string::npos || base > 10) {
    std::stringstream ss(run);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty())
        throw DomainError(errc::bad_numeral, "empty digit in '" + text + "'");
      unsigned long v = 0;
      for (char c : piece) {
        if (c < '0' || c > '9')
          throw DomainError(errc::bad_numeral,
                            "bad digit character in '" + text + "'");
        v = v * 10 + static_cast<unsigned long>(c - '0');
        if (v > static_cast<unsigned long>(kMaxBase))
          throw DomainError(errc::bad_numeral, "digit overflow in '" + text + "'");
      }
      out.push_back(static_cast<std::uint32_t>(v));
    }
    if (!run.empty() && run.back() == ',')
      throw DomainError(errc::bad_numeral, "trailing comma in '" + text + "'");
  } else {
    for (char c : run) {
      if (c < '0' || c > '9')
        throw DomainError(errc::bad_numeral,
                          "bad digit character in '" + text + "'");
      out.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  }
  return out;
}

}  // namespace

BasisNumeral parse_numeral(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0)
    throw DomainError(errc::bad_numeral,
                      "missing base prefix in '" + text + "'");
  int base = 0;
  {
    const char* first = text.data();
    auto [ptr, ec] = std::from_chars(first, first + colon, base);
    if (ec != std::errc{} || ptr != first + colon)
      throw DomainError(errc::bad_numeral, "bad base in '" + text + "'");
  }
  if (base < 2 || base > kMaxBase)
    throw DomainError(errc::bad_numeral, "base out of range in '" + text + "'");
  std::string body = text.substr(colon + 1);
  std::size_t sign_pos = body.find_first_of("+-");
  if (sign_pos == std::string::npos ||
      body.find_first_of("+-", sign_pos + 1) != std::string::npos)
    throw DomainError(errc::bad_numeral,
                      "expected exactly one sign character in '" + text + "'");
  bool negative = body[sign_pos] == '-';
  std::vector<std::uint32_t> int_digits =
      parse_digit_run(body, 0, sign_pos, base, text);
  std::vector<std::uint32_t> frac_digits =
      parse_digit_run(body, sign_pos + 1, body.size(), base, text);
  if (int_digits.empty())
    throw DomainError(errc::bad_numeral,
                      "missing integer digits in '" + text + "'");
  int low = -static_cast<int>(frac_digits.size());
  std::vector<std::uint32_t> digits;
  digits.reserve(int_digits.size() + frac_digits.size());
  for (std::size_t i = frac_digits.size(); i-- > 0;)
    digits.push_back(frac_digits[i]);
  for (std::size_t i = int_digits.size(); i-- > 0;)
    digits.push_back(int_digits[i]);
  BasisNumeral out(base, negative, std::move(digits), low);
  for (std::uint32_t d : out.digits())
    if (d >= static_cast<std::uint32_t>(base))
      throw DomainError(errc::bad_numeral, "digit out of range in '" + text + "'");
  return out;
}

std::string to_text(const BasisNumeral& a) {
  std::string out = std::to_string(a.base()) + ":";
  bool commas = a.base() > 10;
  auto emit = [&](int from, int to) {  // inclusive, descending
    bool first = true;
    for (int s = from; s >= to; --s) {
      if (commas && !first) out += ',';
      out += std::to_string(a.digit_at(s));
      first = false;
    }
  };
  emit(a.high(), 0);
  out += a.negative() ? '-' : '+';
  if (a.low() < 0) emit(-1, a.low());
  return out;
}

std::string canonical_text(const BasisNumeral& a) {
  return to_text(canonicalize(a));
}

}  // namespace qsn
