#include "selftest.hpp"

#include <cmath>
#include <iomanip>
#include <string>
#include <vector>

#include "qsn/complex_pair.hpp"
#include "qsn/error.hpp"
#include "qsn/random.hpp"
#include "qsn/sequence.hpp"

namespace qsn::cli {

namespace {

struct Family {
  std::string name;
  int checks = 0;
  int failed = 0;

  void tally(bool ok) {
    ++checks;
    if (!ok) ++failed;
  }
};

BasisNumeral draw_numeral(DeterministicRng& rng, int base, int max_len) {
  const int len = static_cast<int>(rng.between(1, max_len));
  const int low = -static_cast<int>(rng.between(0, len - 1));
  std::vector<std::uint32_t> digits;
  digits.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i)
    digits.push_back(
        static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(base))));
  return BasisNumeral(base, rng.chance(0.5), std::move(digits), low);
}

Family arithmetic_oracle(DeterministicRng& rng) {
  Family f{"arithmetic-oracle"};
  for (const int base : {2, 3, 10, 16, 30}) {
    for (int i = 0; i < 40; ++i) {
      const BasisNumeral a = draw_numeral(rng, base, 8);
      const BasisNumeral b = draw_numeral(rng, base, 8);
      const Rational da = decode_rational(a);
      const Rational db = decode_rational(b);
      const int which = i % 3;
      const OpKind op = which == 0   ? OpKind::add()
                        : which == 1 ? OpKind::sub()
                                     : OpKind::mul();
      Rational expect;
      if (which == 0)
        expect = da + db;
      else if (which == 1)
        expect = da - db;
      else
        expect = da * db;
      const BasisNumeral got = apply_op(op, a, &b);
      f.tally(decode_rational(got) == expect && is_canonical(got));
    }
  }
  return f;
}

Family successor_law(DeterministicRng& rng) {
  Family f{"successor-law"};
  const std::vector<int> bases{2, 3, 10, 16, 30};
  for (int i = 0; i < 100; ++i) {
    const int base = bases[rng.below(bases.size())];
    const BasisNumeral a = draw_numeral(rng, base, 6);
    const int j = static_cast<int>(rng.between(-3, 3));
    BasisNumeral stepped = a;
    for (int k = 0; k < base; ++k) stepped = successor(stepped, j);
    f.tally(arith_equal(stepped, successor(a, j + 1)));
  }
  return f;
}

Family gauge_covariance(DeterministicRng& rng) {
  Family f{"gauge-covariance"};
  for (int i = 0; i < 30; ++i) {
    const int base = rng.chance(0.5) ? 2 : 3;
    GaugeField u(base, "sf");
    u.set_column(static_cast<int>(rng.between(-1, 1)),
                 random_unitary(rng, base));
    std::vector<std::uint32_t> da{static_cast<std::uint32_t>(rng.below(base)),
                                  static_cast<std::uint32_t>(rng.below(base))};
    std::vector<std::uint32_t> db{static_cast<std::uint32_t>(rng.below(base)),
                                  static_cast<std::uint32_t>(rng.below(base))};
    const BasisNumeral a(base, rng.chance(0.5), std::move(da), -1);
    const BasisNumeral b(base, rng.chance(0.5), std::move(db), -1);
    const FockState sa = FockState::basis(a);
    const FockState sb = FockState::basis(b);
    const FockState ta = apply_gauge(u, sa);
    const FockState tb = apply_gauge(u, sb);
    for (const Relation rel : {Relation::eq, Relation::lt, Relation::gt}) {
      const double direct = relation_probability(rel, sa, sb);
      const double transported = relation_in_gauge(rel, u, ta, tb);
      f.tally(std::abs(direct - transported) <= 1e-10);
    }
  }
  return f;
}

Family domain_rules(DeterministicRng& rng) {
  Family f{"domain-rules"};
  const std::vector<std::pair<std::pair<int, int>, DomainClass>> fixed{
      {{10, 3}, DomainClass::disjoint},   {{2, 10}, DomainClass::subset},
      {{10, 2}, DomainClass::superset},   {{6, 10}, DomainClass::overlap},
      {{6, 12}, DomainClass::equal}};
  for (const auto& [pair, expect] : fixed)
    f.tally(pf_domain_class(pair.first, pair.second) == expect);

  const std::vector<int> bases{2, 3, 10, 16, 30};
  for (int i = 0; i < 40; ++i) {
    const int from = bases[rng.below(bases.size())];
    const int to = bases[rng.below(bases.size())];
    const Rational v = decode_rational(draw_numeral(rng, from, 6));
    const BigInt per = boost::multiprecision::pow(BigInt(to), 64);
    const bool terminates = per % boost::multiprecision::denominator(v) == 0;
    bool converted = true;
    try {
      encode_rational(v, to);
    } catch (const DomainError&) {
      converted = false;
    }
    f.tally(converted == terminates);
  }
  return f;
}

Family lattice_monotonicity() {
  Family f{"lattice-monotonicity"};
  for (const char* spec :
       {"constant:10:3+14", "stream:10:1/7", "psiex1:10:3",
        "alternating:10:1+|10:2+"}) {
    const CauchyReport r = cauchy_report(seq_from_spec(spec), 8, 5, 1e-9);
    f.tally(!r.lattice.monotone_defect());
    bool in_range = true;
    for (int p = 0; p < 8; ++p)
      for (int l = 1; l <= 5; ++l) {
        const double w = r.lattice.windowed_min(p, l);
        if (w < 0.0 || w > 1.0) in_range = false;
      }
    f.tally(in_range);
  }
  return f;
}

Family trichotomy(DeterministicRng& rng) {
  Family f{"trichotomy"};
  const auto draw_value = [&rng] {
    const long long num = rng.between(-9999, 9999);
    Rational v(num);
    const int shift = static_cast<int>(rng.between(0, 4));
    for (int i = 0; i < shift; ++i) v /= 10;
    return v;
  };
  const auto spec_of = [](const Rational& v) {
    return "stream:10:" + boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
  };
  for (int i = 0; i < 15; ++i) {
    const Rational x = draw_value();
    Rational y = i % 3 == 0 ? x : draw_value();
    if (i % 3 != 0 && y == x) y += 1;
    const ComparisonReport r = asymptotic_compare(
        seq_from_spec(spec_of(x)), seq_from_spec(spec_of(y)), 16, 8, 1e-9);
    const char* expect = x == y ? "EQ" : x < y ? "LT" : "GT";
    int ones = 0;
    for (const double v : {r.eq, r.lt, r.gt})
      if (v >= 1.0 - 1e-9) ++ones;
    f.tally(ones == 1 && r.zero_one && r.verdict == expect);
  }
  return f;
}

Family complex_sign_algebra(DeterministicRng& rng) {
  Family f{"complex-sign-algebra"};
  for (const int s : {1, -1}) {
    for (const int sp : {1, -1}) {
      const Rational two(2 * s);
      const Rational three(3 * sp);
      const Rational six(6 * s * sp);
      const auto mul = [](const ComplexBasisPair& a, const ComplexBasisPair& b) {
        return complex_decode(complex_arith(OpKind::mul(), a, b));
      };
      const auto cc = mul(complex_encode(two, Rational(0), 10),
                          complex_encode(three, Rational(0), 10));
      f.tally(cc.first == six && cc.second == 0);
      const auto cd = mul(complex_encode(two, Rational(0), 10),
                          complex_encode(Rational(0), three, 10));
      f.tally(cd.first == 0 && cd.second == six);
      const auto dd = mul(complex_encode(Rational(0), two, 10),
                          complex_encode(Rational(0), three, 10));
      f.tally(dd.first == -six && dd.second == 0);
    }
  }
  const std::vector<int> bases{2, 10, 16};
  for (int i = 0; i < 60; ++i) {
    const int base = bases[i % bases.size()];
    const Rational ar = decode_rational(draw_numeral(rng, base, 5));
    const Rational ai = decode_rational(draw_numeral(rng, base, 5));
    const Rational br = decode_rational(draw_numeral(rng, base, 5));
    const Rational bi = decode_rational(draw_numeral(rng, base, 5));
    const ComplexBasisPair a = complex_encode(ar, ai, base);
    const ComplexBasisPair b = complex_encode(br, bi, base);
    if (i % 2 == 0) {
      const auto [re, im] = complex_decode(complex_arith(OpKind::add(), a, b));
      f.tally(re == ar + br && im == ai + bi);
    } else {
      const auto [re, im] = complex_decode(complex_arith(OpKind::mul(), a, b));
      f.tally(re == ar * br - ai * bi && im == ar * bi + br * ai);
    }
  }
  return f;
}

}  // namespace

int run_selftest(std::uint64_t seed, std::ostream& out) {
  DeterministicRng rng(seed);
  std::vector<Family> families;
  families.push_back(arithmetic_oracle(rng));
  families.push_back(successor_law(rng));
  families.push_back(gauge_covariance(rng));
  families.push_back(domain_rules(rng));
  families.push_back(lattice_monotonicity());
  families.push_back(trichotomy(rng));
  families.push_back(complex_sign_algebra(rng));

  int bad = 0;
  for (const Family& f : families) {
    if (f.failed > 0) ++bad;
    out << (f.failed > 0 ? "FAIL" : "ok  ") << "  " << std::left
        << std::setw(22) << f.name << std::right << std::setw(4) << f.checks
        << " checks";
    if (f.failed > 0) out << ", " << f.failed << " failed";
    out << "\n";
  }
  out << "selftest: " << (families.size() - bad) << "/" << families.size()
      << " families passed (seed " << seed << ")\n";
  return bad;
}

}  // namespace qsn::cli
