// Release gate: one line per criterion, PASS only when every check inside
// holds. Runs against the installed library plus (for the determinism
// criterion) the CLI binary passed as --cli.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsn/base_change.hpp"
#include "qsn/complex_pair.hpp"
#include "qsn/error.hpp"
#include "qsn/fock.hpp"
#include "qsn/frames.hpp"
#include "qsn/gauge.hpp"
#include "qsn/numeral.hpp"
#include "qsn/random.hpp"
#include "qsn/rational.hpp"
#include "qsn/sequence.hpp"
#include "support/generators.hpp"

namespace {

using namespace qsn;
using Clock = std::chrono::steady_clock;

constexpr double kEps = 1e-9;          // classification tolerance
constexpr double kCovarianceTol = 1e-10;
constexpr double kProjectionEqTol = 1e-3;
constexpr double kCellSlack = 1e-12;   // floating slack on cell inequalities
constexpr double kOracleSecondsLimit = 10.0;
constexpr double kExampleSecondsLimit = 5.0;

struct Outcome {
  bool pass = true;
  long long checks = 0;
  long long failed = 0;
  std::string detail;

  void tally(bool ok) {
    ++checks;
    if (!ok) {
      ++failed;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BigInt int_pow(BigInt b, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

// Magnitude truncation of v toward zero at ell base-k fraction digits.
Rational truncate_rational(const Rational& v, int base, int ell) {
  const BigInt scale = int_pow(base, ell);
  BigInt num = numerator(v) * scale;
  const BigInt den = denominator(v);
  const bool neg = num < 0;
  if (neg) num = -num;
  const BigInt q = num / den;
  Rational out(q, scale);
  return neg ? Rational(-out) : out;
}

// 1. Exact digit arithmetic against the rational oracle: 10,000 triples per
//    base, digit lengths up to 32, zero tolerance, bounded runtime.
Outcome arithmetic_oracle() {
  Outcome out;
  const auto t0 = Clock::now();
  DeterministicRng rng(101);
  for (const int base : {2, 3, 10, 16, 30}) {
    for (int i = 0; i < 10000; ++i) {
      const BasisNumeral a = testsupport::random_numeral(rng, base, 32);
      BasisNumeral b = testsupport::random_numeral(rng, base, 32);
      const int which = i % 4;
      if (which == 3) {
        while (b.is_zero()) b = testsupport::random_numeral(rng, base, 32);
      }
      const Rational da = decode_rational(a);
      const Rational db = decode_rational(b);
      Rational expect;
      OpKind op = OpKind::add();
      if (which == 0) {
        expect = da + db;
      } else if (which == 1) {
        op = OpKind::sub();
        expect = da - db;
      } else if (which == 2) {
        op = OpKind::mul();
        expect = da * db;
      } else {
        const int ell = static_cast<int>(rng.between(1, 8));
        op = OpKind::div(ell);
        expect = truncate_rational(da / db, base, ell);
      }
      const BasisNumeral got = apply_op(op, a, &b);
      out.tally(decode_rational(got) == expect);
    }
  }
  const double secs = seconds_since(t0);
  out.tally(secs < kOracleSecondsLimit);
  char buf[96];
  std::snprintf(buf, sizeof buf, "50000 triples, %.2f s", secs);
  out.detail = buf;
  return out;
}

// 2. Applying the site-j successor base-many times lands exactly on the
//    site-(j+1) successor; 1,000 random cases.
Outcome successor_law() {
  Outcome out;
  DeterministicRng rng(102);
  const std::vector<int> bases{2, 3, 10, 16, 30};
  for (int i = 0; i < 1000; ++i) {
    const int base = bases[rng.below(bases.size())];
    const BasisNumeral a = testsupport::random_numeral(rng, base, 8);
    const int j = static_cast<int>(rng.between(-4, 4));
    BasisNumeral stepped = a;
    for (int k = 0; k < base; ++k) stepped = successor(stepped, j);
    out.tally(arith_equal(stepped, successor(a, j + 1)));
  }
  out.detail = "1000 cases";
  return out;
}

// 3. The digit-repetition family in base ten: every grid cell with both
//    indices past the depth is exactly one, and the family classifies as
//    Cauchy at the horizon; bounded runtime.
Outcome repetition_family_grid() {
  Outcome out;
  const auto t0 = Clock::now();
  const int N = 16;
  const int L = 8;
  for (const int digit : {0, 3, 9}) {
    const StateSequence s =
        seq_from_spec("psiex1:10:" + std::to_string(digit));
    const CauchyReport r = cauchy_report(s, N, L, kEps);
    out.tally(r.classification == CauchyClass::cauchy_at_horizon);
    for (int n = 1; n <= N; ++n)
      for (int m = 1; m <= N; ++m)
        for (int l = 1; l <= L; ++l)
          if (n > l && m > l) out.tally(r.lattice.cell(n, m, l) == 1.0);
  }
  const double secs = seconds_since(t0);
  out.tally(secs < kExampleSecondsLimit);
  char buf[96];
  std::snprintf(buf, sizeof buf, "3 digits, %.2f s", secs);
  out.detail = buf;
  return out;
}

// 4. Asymptotic comparison of convergent basis families is a zero-one
//    trichotomy: exactly one relation estimate at one, the rest at zero.
Outcome trichotomy() {
  Outcome out;
  DeterministicRng rng(104);
  const auto spec_of = [](const Rational& v) {
    return "stream:10:" + numerator(v).str() + "/" + denominator(v).str();
  };
  const auto draw = [&rng] {
    Rational v(rng.between(-9999, 9999));
    const int shift = static_cast<int>(rng.between(0, 4));
    for (int i = 0; i < shift; ++i) v /= 10;
    return v;
  };
  for (int i = 0; i < 50; ++i) {
    const Rational x = draw();
    Rational y = i % 3 == 0 ? x : draw();
    if (i % 3 != 0 && y == x) y += 1;
    const StateSequence a = seq_from_spec(spec_of(x));
    const StateSequence b = seq_from_spec(spec_of(y));
    const ComparisonReport r = asymptotic_compare(a, b, 32, 16, kEps);
    const int high = (r.eq >= 1.0 - kEps ? 1 : 0) +
                     (r.lt >= 1.0 - kEps ? 1 : 0) +
                     (r.gt >= 1.0 - kEps ? 1 : 0);
    const int low = (r.eq <= kEps ? 1 : 0) + (r.lt <= kEps ? 1 : 0) +
                    (r.gt <= kEps ? 1 : 0);
    out.tally(high == 1);
    out.tally(low == 2);
    out.tally(r.both_cauchy);
    std::string expect = "EQ";
    if (x < y)
      expect = "LT";
    else if (y < x)
      expect = "GT";
    out.tally(r.verdict == expect);
  }
  out.detail = "50 pairs";
  return out;
}

// 5. Base-change domain rules across the five prime-support cases, checked
//    against a 64-digit brute-force expansion oracle, with exact round trips
//    on the equal-support pair.
Outcome base_change_domains() {
  Outcome out;
  DeterministicRng rng(105);
  const std::vector<std::pair<std::pair<int, int>, DomainClass>> cases{
      {{10, 3}, DomainClass::disjoint}, {{2, 10}, DomainClass::subset},
      {{10, 2}, DomainClass::superset}, {{6, 10}, DomainClass::overlap},
      {{6, 12}, DomainClass::equal},
  };
  for (const auto& [pair, expect] : cases)
    out.tally(pf_domain_class(pair.first, pair.second) == expect);

  for (const auto& [pair, expect] : cases) {
    const auto [from, to] = pair;
    for (int i = 0; i < 40; ++i) {
      const BasisNumeral a = testsupport::random_numeral(rng, from, 10);
      const Rational v = decode_rational(a);
      const bool terminates =
          int_pow(to, 64) % denominator(v) == 0;
      bool threw = false;
      try {
        const BasisNumeral c = convert_exact(a, to);
        out.tally(decode_rational(c) == v);
      } catch (const DomainError& e) {
        threw = true;
        out.tally(e.code() == errc::out_of_domain);
      }
      out.tally(threw != terminates);
    }
  }

  for (int i = 0; i < 50; ++i) {
    const BasisNumeral a = testsupport::random_numeral(rng, 6, 10);
    const BasisNumeral forth = convert_exact(a, 12);
    const BasisNumeral back = convert_exact(forth, 6);
    out.tally(decode_rational(back) == decode_rational(a));
    const BasisNumeral b = testsupport::random_numeral(rng, 12, 10);
    out.tally(decode_rational(convert_exact(convert_exact(b, 6), 12)) ==
              decode_rational(b));
  }
  out.detail = "5 classes, 200 oracle draws, 100 round trips";
  return out;
}

FockState random_two_term_state(DeterministicRng& rng, int base) {
  const BasisNumeral u = testsupport::random_numeral(rng, base, 3, false);
  BasisNumeral v = testsupport::random_numeral(rng, base, 3, false);
  if (u == v) v = arith_add(v, BasisNumeral::from_int(1, base));
  const Amplitude au(rng.normal(), rng.normal());
  const Amplitude av(rng.normal(), rng.normal());
  return FockState::make(base, 1, {{{u}, au}, {{v}, av}});
}

// 6. Relations evaluated in a transformed digit basis agree with the plain
//    evaluation, and in-gauge classification of a transformed family
//    reproduces the original classification.
Outcome gauge_covariance() {
  Outcome out;
  DeterministicRng rng(106);
  for (int iter = 0; iter < 200; ++iter) {
    const int base = iter % 2 == 0 ? 2 : 3;
    GaugeField u(base, "acc");
    const int columns = static_cast<int>(rng.between(1, 2));
    for (int c = 0; c < columns; ++c)
      u.set_column(static_cast<int>(rng.between(-2, 1)),
                   random_unitary(rng, base));
    const FockState a = random_two_term_state(rng, base);
    const FockState b = random_two_term_state(rng, base);
    const FockState ta = apply_gauge(u, a);
    const FockState tb = apply_gauge(u, b);
    for (const Relation rel : {Relation::eq, Relation::lt, Relation::gt}) {
      const double plain = relation_probability(rel, a, b);
      const double in_gauge = relation_in_gauge(rel, u, ta, tb);
      out.tally(std::abs(in_gauge - plain) <= kCovarianceTol);
    }
  }

  const int N = 12;
  const int L = 6;
  for (const std::string& spec :
       {std::string("psiex1:2:1"), std::string("stream:2:1/3"),
        std::string("alternating:3:1+|3:2+")}) {
    const StateSequence s = seq_from_spec(spec);
    const int base = s.base();
    GaugeField u(base, "accs");
    u.set_column(0, random_unitary(rng, base));
    u.set_column(-1, random_unitary(rng, base));
    const StateSequence t = transform_sequence_gauge(u, s);
    const GaugeField adj = u.adjoint();
    const ProbabilityLattice lat = ProbabilityLattice::build(
        N, L,
        [&](int n, int m) {
          return relation_profile(SeqRelation::eq, apply_gauge(adj, t.at(n)),
                                  apply_gauge(adj, t.at(m)), L);
        },
        EllMonotone::nonincreasing);
    const CauchyReport plain = cauchy_report(s, N, L, kEps);
    const CauchyReport transformed = classify_lattice(lat, kEps);
    out.tally(transformed.classification == plain.classification);
  }
  out.detail = "200 field/state pairs, 3 families";
  return out;
}

// 7. The nearest-basis projection of a clustered superposition family is
//    basis-valued, Cauchy, asymptotically equal to the original, and the
//    explanation-mass / separation inequalities hold cellwise.
Outcome projection_quality() {
  Outcome out;
  DeterministicRng rng(107);
  const int N = 16;
  const int L = 8;
  const std::vector<int> bases{2, 3, 10};
  for (int iter = 0; iter < 20; ++iter) {
    const int base = bases[rng.below(bases.size())];
    const BigInt scale = int_pow(base, 6);
    const long long span = static_cast<long long>(
        std::min<double>(1e6, static_cast<double>(scale)));
    const Rational v(rng.between(-(span - 1), span - 1), scale);
    const double a0 = 0.5 + 0.4 * rng.uniform();
    const double a1 = std::sqrt((1.0 - a0 * a0) * 0.7);
    const double a2 = std::sqrt(1.0 - a0 * a0 - a1 * a1);
    const StateSequence s(
        base, 1, "cluster",
        [base, v, a0, a1, a2](int n) {
          const BasisNumeral head = approx_of_rational(v, base, n);
          const BasisNumeral step = BasisNumeral::power(base, -(n + 1));
          return FockState::make(
              base, 1,
              {{{head}, Amplitude(a0, 0)},
               {{arith_add(head, step)}, Amplitude(a1, 0)},
               {{arith_add(arith_add(head, step), step)}, Amplitude(0, a2)}});
        });

    const StateSequence proj = nearest_basis_sequence(s, L);
    bool all_basis = true;
    for (int n = 1; n <= N; ++n)
      if (!proj.at(n).is_basis()) all_basis = false;
    out.tally(all_basis);
    out.tally(cauchy_report(proj, N, L, kEps).classification ==
              CauchyClass::cauchy_at_horizon);
    out.tally(asymptotic_compare(s, proj, N, L, kProjectionEqTol).eq >=
              1.0 - kProjectionEqTol);

    for (const int ell : {2, 5, 8}) {
      const StateSequence p_ell = nearest_basis_sequence(s, ell);
      for (int n = 1; n <= 10; ++n) {
        const double q = nearest_basis_element(s.at(n), ell).q;
        for (int m = 1; m <= 10; ++m) {
          const double p =
              relation_profile(SeqRelation::eq, s.at(n), s.at(m),
                               ell)[static_cast<std::size_t>(ell) - 1];
          out.tally(q >= p - kCellSlack);
          const int w = projection_w(p_ell.at(n).sole_numeral(),
                                     p_ell.at(m).sole_numeral(), ell);
          const double x =
              projection_x(s.at(n), s.at(m), p_ell.at(n).sole_numeral(),
                           p_ell.at(m).sole_numeral(), ell);
          out.tally(static_cast<double>(w) <= x + kCellSlack);
        }
      }
    }
  }
  out.detail = "20 families";
  return out;
}

// 8. Complex pair arithmetic: the twelve sign-pair product cases, a random
//    oracle sweep, and the division accuracy bound on both components.
Outcome complex_algebra() {
  Outcome out;
  for (const int ga : {1, -1}) {
    for (const int gb : {1, -1}) {
      const Rational two(2), three(3);
      const auto check = [&](const ComplexBasisPair& z, const Rational& re,
                             const Rational& im) {
        const auto [zr, zi] = complex_decode(z);
        bool ok = zr == re;
        if (zi != im) ok = false;
        out.tally(ok);
      };
      const ComplexBasisPair ia = complex_encode(0, ga * two, 10);
      const ComplexBasisPair ib = complex_encode(0, gb * three, 10);
      check(complex_arith(OpKind::mul(), ia, ib), -ga * gb * two * three, 0);
      const ComplexBasisPair ra = complex_encode(ga * two, 0, 10);
      check(complex_arith(OpKind::mul(), ra, ib), 0, ga * gb * two * three);
      const ComplexBasisPair rb = complex_encode(gb * three, 0, 10);
      check(complex_arith(OpKind::mul(), ra, rb), ga * gb * two * three, 0);
    }
  }

  DeterministicRng rng(108);
  const std::vector<int> bases{2, 3, 10, 16};
  int div_checked = 0;
  for (int i = 0; i < 500; ++i) {
    const int base = bases[rng.below(bases.size())];
    const ComplexBasisPair a(testsupport::random_numeral(rng, base, 6),
                             testsupport::random_numeral(rng, base, 6));
    const ComplexBasisPair b(testsupport::random_numeral(rng, base, 6),
                             testsupport::random_numeral(rng, base, 6));
    const auto [ax, ay] = complex_decode(a);
    const auto [bx, by] = complex_decode(b);
    const int which = i % 4;
    if (which == 0) {
      const auto [zx, zy] = complex_decode(complex_arith(OpKind::add(), a, b));
      out.tally(zx == ax + bx);
      out.tally(zy == ay + by);
    } else if (which == 1) {
      const auto [zx, zy] = complex_decode(complex_arith(OpKind::sub(), a, b));
      out.tally(zx == ax - bx);
      out.tally(zy == ay - by);
    } else if (which == 2) {
      const auto [zx, zy] = complex_decode(complex_arith(OpKind::mul(), a, b));
      out.tally(zx == ax * bx - ay * by);
      out.tally(zy == ax * by + bx * ay);
    } else {
      const int ell = static_cast<int>(rng.between(1, 8));
      if (b.is_zero()) {
        bool threw = false;
        try {
          complex_arith(OpKind::div(ell), a, b);
        } catch (const DomainError& e) {
          threw = e.code() == errc::division_by_zero;
        }
        out.tally(threw);
        continue;
      }
      const auto [zx, zy] = complex_decode(complex_arith(OpKind::div(ell), a, b));
      const Rational mod2 = bx * bx + by * by;
      const Rational ex = (ax * bx + ay * by) / mod2;
      const Rational ey = (bx * ay - ax * by) / mod2;
      const Rational bound = Rational(1, int_pow(base, ell));
      out.tally(abs(zx - ex) < bound);
      out.tally(abs(zy - ey) < bound);
      ++div_checked;
    }
  }
  out.tally(div_checked > 80);
  char buf[96];
  std::snprintf(buf, sizeof buf, "12 sign cases, 500 random, %d divisions",
                div_checked);
  out.detail = buf;
  return out;
}

// 9. Frame visibility is a strict partial order aligned with iteration depth
//    on a finite field, and cyclic paths report their completed turns.
Outcome frame_semantics() {
  Outcome out;
  const FrameField field = FrameField::finite(3, {2, 10}, {"g0", "g1"});
  std::vector<FrameId> frames = field.frames_at_stage(0);
  for (int stage = 1; stage <= 3; ++stage)
    for (const FrameId& f : field.frames_at_stage(stage))
      frames.push_back(f);
  out.tally(frames.size() == 13);

  const auto sees = [&field](const FrameId& a, const FrameId& b) {
    return field.can_see(a, b).visible;
  };
  for (const FrameId& a : frames) {
    out.tally(!sees(a, a));
    for (const FrameId& b : frames) {
      out.tally(sees(a, b) == (b.stage > a.stage));
      out.tally(!field.can_see(a, b).wraps);
      if (sees(a, b)) out.tally(!sees(b, a));
      for (const FrameId& c : frames) {
        bool implied = true;
        if (sees(a, b) && sees(b, c)) implied = sees(a, c);
        out.tally(implied);
      }
    }
  }

  const FrameField wheel = FrameField::cyclic(8, {2}, {"g"});
  const auto lap = [](int steps) {
    IterationPath path;
    for (int i = 0; i <= steps; ++i)
      path.push_back(FrameId::frame(i % 8, 2, "g"));
    return path;
  };
  out.tally(wheel.winding_number(lap(8)) == 1);
  out.tally(wheel.winding_number(lap(16)) == 2);
  out.tally(lap(8).front() == lap(8).back());
  out.tally(lap(16).front() == lap(16).back());
  out.detail = "13 frames exhaustive, 2 windings";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 10. Two runs of the CLI selftest with the same seed emit byte-identical
//     output and both exit cleanly.
Outcome selftest_determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.tally(false);
    out.detail = "no --cli path given";
    return out;
  }
  const std::string base = "acceptance_selftest_";
  const std::string f1 = base + "1.txt";
  const std::string f2 = base + "2.txt";
  const int rc1 =
      std::system((cli + " selftest --seed 0 > " + f1 + " 2>&1").c_str());
  const int rc2 =
      std::system((cli + " selftest --seed 0 > " + f2 + " 2>&1").c_str());
  out.tally(rc1 == 0);
  out.tally(rc2 == 0);
  const std::string o1 = slurp(f1);
  const std::string o2 = slurp(f2);
  out.tally(!o1.empty());
  out.tally(o1 == o2);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  out.detail = "2 runs compared";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"digit arithmetic matches the exact rational oracle",
       arithmetic_oracle},
      {"k-fold site successor equals the next-site successor", successor_law},
      {"digit-repetition family: unit cells past the depth, Cauchy",
       repetition_family_grid},
      {"asymptotic comparison is a zero-one trichotomy", trichotomy},
      {"base-change domains follow the prime-support rules",
       base_change_domains},
      {"relations and classifications are gauge covariant", gauge_covariance},
      {"nearest-basis projection converges and dominates",
       projection_quality},
      {"complex sign algebra and arithmetic match the oracle",
       complex_algebra},
      {"frame visibility order and cyclic windings hold", frame_semantics},
      {"selftest output is byte-identical across runs",
       [&cli] { return selftest_determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %s %-55s", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].name);
    if (o.failed > 0)
      std::printf(" [%lld/%lld checks failed]", o.failed, o.checks);
    if (!o.detail.empty()) std::printf(" (%s)", o.detail.c_str());
    std::printf("\n");
  }
  std::printf("acceptance: %zu/%zu criteria passed\n",
              criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
