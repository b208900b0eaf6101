#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "qsn/random.hpp"
#include "qsn/sequence.hpp"
#include "support/generators.hpp"

using namespace qsn;

namespace {

std::set<std::int64_t> labels_of(const FockState& s) {
  std::set<std::int64_t> out;
  for (const auto& [tuple, amp] : s.terms())
    for (const auto& numeral : tuple) out.insert(numeral.label());
  return out;
}

StateSequence shifted(const StateSequence& s, int by) {
  return StateSequence(s.base(), s.arity(),
                       s.description() + "+" + std::to_string(by),
                       [s, by](int n) { return s.at(n + by); });
}

}  // namespace

TEST_CASE("constant family repeats the value with fresh labels per index") {
  const StateSequence s = seq_from_spec("constant:10:5+");
  CHECK(s.base() == 10);
  CHECK(s.arity() == 1);
  for (int n : {0, 1, 7}) {
    CHECK(s.at(n).is_basis());
    CHECK(to_text(s.at(n).sole_numeral()) == "10:5+");
  }
  const auto l1 = labels_of(s.at(1));
  const auto l2 = labels_of(s.at(2));
  std::set<std::int64_t> both;
  std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(),
                        std::inserter(both, both.begin()));
  CHECK(both.empty());
  CHECK(labels_of(s.at(1)) == l1);  // memoized elements keep their labels
}

TEST_CASE("truncation and stream families cut to n fraction digits") {
  const StateSequence t = seq_from_spec("trunc:10:3+14159");
  CHECK(to_text(t.at(0).sole_numeral()) == "10:3+");
  CHECK(to_text(t.at(2).sole_numeral()) == "10:3+14");
  CHECK(to_text(t.at(9).sole_numeral()) == "10:3+14159");

  const StateSequence r = seq_from_spec("stream:10:1/3");
  CHECK(to_text(r.at(3).sole_numeral()) == "10:0+333");
  const StateSequence b = seq_from_spec("stream:2:1/3");
  CHECK(to_text(b.at(4).sole_numeral()) == "2:0+0101");
  const StateSequence neg = seq_from_spec("stream:10:-1/3");
  CHECK(to_text(neg.at(2).sole_numeral()) == "10:0-33");
}

TEST_CASE("psiex1 puts a uniform digit under a repeated prefix") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  const FockState two = s.at(2);
  CHECK(two.term_count() == 10);
  std::set<std::string> texts;
  for (const auto& [tuple, amp] : two.terms()) {
    CHECK(std::abs(amp - Amplitude(1.0 / std::sqrt(10.0), 0)) < 1e-12);
    texts.insert(to_text(tuple[0]));
  }
  CHECK(texts.count("10:3+30") == 1);
  CHECK(texts.count("10:3+39") == 1);

  const FockState zero = s.at(0);
  CHECK(zero.term_count() == 10);
  for (const auto& [tuple, amp] : zero.terms()) {
    CHECK(tuple[0].low() == 0);
    CHECK(tuple[0].high() == 0);
  }
}

TEST_CASE("alternating and table families") {
  const StateSequence alt = seq_from_spec("alternating:10:0+|10:1+");
  CHECK(to_text(alt.at(0).sole_numeral()) == "10:0+");
  CHECK(to_text(alt.at(1).sole_numeral()) == "10:1+");
  CHECK(to_text(alt.at(6).sole_numeral()) == "10:0+");

  const StateSequence tab = seq_from_spec("table:10:1+|10:12+|10:123+");
  CHECK(to_text(tab.at(0).sole_numeral()) == "10:1+");
  CHECK(to_text(tab.at(2).sole_numeral()) == "10:123+");
  CHECK(to_text(tab.at(9).sole_numeral()) == "10:123+");
}

TEST_CASE("malformed sequence specs are rejected") {
  CHECK_THROWS_AS(seq_from_spec("nope:1"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("constant"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("constant:banana"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("psiex1:10:12"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("psiex1:10"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("alternating:10:1+"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("alternating:10:1+|2:1+"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("stream:10:1/0"), DomainError);
  CHECK_THROWS_AS(seq_from_spec("stream:10:x/3"), DomainError);
}

TEST_CASE("memoized first evaluation is stable under concurrent access") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  std::vector<std::set<std::int64_t>> seen(4);
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&s, &seen, i] { seen[i] = labels_of(s.at(5)); });
  for (auto& w : workers) w.join();
  CHECK(seen[0] == seen[1]);
  CHECK(seen[0] == seen[2]);
  CHECK(seen[0] == seen[3]);
}

TEST_CASE("pairwise relation probability on grid cells") {
  const StateSequence a = seq_from_spec("constant:10:5+");
  const StateSequence padded = seq_from_spec("constant:10:05+0");
  for (int ell : {1, 3, 8})
    CHECK(p_nml(SeqRelation::eq, a, padded, 2, 5, ell) == doctest::Approx(1.0));

  const StateSequence s = seq_from_spec("psiex1:10:3");
  CHECK(p_nml(SeqRelation::self_cauchy, s, s, 4, 7, 3) == doctest::Approx(1.0));
  CHECK(p_nml(SeqRelation::self_cauchy, s, s, 3, 9, 3) ==
        doctest::Approx(0.2).epsilon(1e-9));

  const StateSequence third = seq_from_spec("stream:10:1/3");
  const StateSequence c = seq_from_spec("constant:10:0+4");
  CHECK(p_nml(SeqRelation::lt, third, c, 8, 8, 2) == doctest::Approx(1.0));
  CHECK(p_nml(SeqRelation::lt, third, c, 8, 8, 1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(p_nml(SeqRelation::self_cauchy, a, padded, 1, 1, 1),
                  DomainError);
  const StateSequence b2 = seq_from_spec("constant:2:1+");
  CHECK_THROWS_AS(p_nml(SeqRelation::eq, a, b2, 1, 1, 1), DomainError);
}

TEST_CASE("constant sequences are Cauchy at the horizon with full lattices") {
  const CauchyReport r =
      cauchy_report(seq_from_spec("constant:10:5+"), 8, 4, 1e-9);
  CHECK(r.classification == CauchyClass::cauchy_at_horizon);
  CHECK_FALSE(r.lattice.monotone_defect());
  for (int p = 0; p < 8; ++p)
    for (int l = 1; l <= 4; ++l)
      CHECK(r.lattice.windowed_min(p, l) == doctest::Approx(1.0));
  for (int w : r.witness_p) CHECK(w == 0);
}

TEST_CASE("example superposition family is Cauchy with stepped witnesses") {
  const CauchyReport r =
      cauchy_report(seq_from_spec("psiex1:10:3"), 16, 8, 1e-9);
  CHECK(r.classification == CauchyClass::cauchy_at_horizon);
  CHECK_FALSE(r.lattice.monotone_defect());
  for (int l = 1; l <= 8; ++l) CHECK(r.witness_p[l - 1] == l);
}

TEST_CASE("alternating values are refuted even though the last window matches") {
  const CauchyReport r =
      cauchy_report(seq_from_spec("alternating:10:0+|10:1+"), 12, 4, 1e-9);
  CHECK(r.classification == CauchyClass::refuted_at_horizon);
  for (int l = 1; l <= 4; ++l) CHECK(r.witness_p[l - 1] == 11);
}

TEST_CASE("too small a horizon is indeterminate") {
  const CauchyReport r =
      cauchy_report(seq_from_spec("psiex1:10:3"), 4, 8, 1e-9);
  CHECK(r.classification == CauchyClass::indeterminate);
}

TEST_CASE("protocol parameters are validated") {
  const StateSequence s = seq_from_spec("constant:10:5+");
  CHECK_THROWS_AS(cauchy_report(s, 1, 4, 1e-9), DomainError);
  CHECK_THROWS_AS(cauchy_report(s, 8, 0, 1e-9), DomainError);
  CHECK_THROWS_AS(cauchy_report(s, 8, 4, 0.0), DomainError);
  CHECK_THROWS_AS(cauchy_report(s, 8, 4, 0.7), DomainError);
}

TEST_CASE("report serialization is shaped and deterministic") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  const std::string a = to_json_text(cauchy_report(s, 6, 3, 1e-9));
  const std::string b = to_json_text(cauchy_report(s, 6, 3, 1e-9));
  CHECK(a == b);
  const auto j = nlohmann::ordered_json::parse(a);
  CHECK(j["classification"] == "CAUCHY_AT_HORIZON");
  CHECK(j["N"] == 6);
  CHECK(j["L"] == 3);
  CHECK(j["P_p_l"].size() == 6);
  CHECK(j["P_p_l"][0].size() == 3);
  CHECK(j["witness_p"].size() == 3);

  const CauchyReport r = cauchy_report(s, 6, 3, 1e-9);
  const std::string csv = to_csv_text(r.lattice);
  CHECK(csv.rfind("n,m,l,P\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6 * 6 * 3 + 1);
}

TEST_CASE("asymptotic comparison separates equal, less, and greater") {
  const StateSequence third = seq_from_spec("stream:10:1/3");
  const StateSequence c4 = seq_from_spec("constant:10:0+4");

  const ComparisonReport same =
      asymptotic_compare(seq_from_spec("constant:10:5+"),
                         seq_from_spec("constant:10:05+"), 16, 8, 1e-9);
  CHECK(same.verdict == "EQ");
  CHECK(same.eq == doctest::Approx(1.0));
  CHECK(same.lt == doctest::Approx(0.0));
  CHECK(same.gt == doctest::Approx(0.0));
  CHECK(same.zero_one);

  const ComparisonReport less = asymptotic_compare(third, c4, 16, 8, 1e-9);
  CHECK(less.verdict == "LT");
  CHECK(less.lt == doctest::Approx(1.0));
  CHECK(less.both_cauchy);
  CHECK(less.zero_one);

  const ComparisonReport more = asymptotic_compare(c4, third, 16, 8, 1e-9);
  CHECK(more.verdict == "GT");
  CHECK(more.gt == doctest::Approx(1.0));

  CHECK_THROWS_AS(
      asymptotic_compare(third, seq_from_spec("constant:2:1+"), 8, 4, 1e-9),
      DomainError);
}

TEST_CASE("a shifted copy of the superposition family compares equal") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  const ComparisonReport r =
      asymptotic_compare(s, shifted(s, 3), 24, 12, 1e-3);
  CHECK(r.verdict == "EQ");
  CHECK(r.eq == doctest::Approx(1.0));
}

TEST_CASE("elementwise equality stays below one while the asymptotic form holds") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  for (int n : {2, 5, 9}) {
    const double exact =
        p_nml(SeqRelation::self_cauchy, s, s, n, n, n + 2);
    CHECK(exact == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(exact < 1.0);
  }
  const ComparisonReport r = asymptotic_compare(s, shifted(s, 1), 24, 12, 1e-3);
  CHECK(r.eq == doctest::Approx(1.0));
}

TEST_CASE("asymptotic equality is an equivalence on the stream family") {
  const StateSequence a = seq_from_spec("stream:10:1/3");
  const StateSequence b = shifted(a, 1);
  const StateSequence c = shifted(a, 2);
  CHECK(asymptotic_compare(a, a, 16, 8, 1e-9).eq == doctest::Approx(1.0));
  CHECK(asymptotic_compare(a, b, 16, 8, 1e-9).eq ==
        asymptotic_compare(b, a, 16, 8, 1e-9).eq);
  CHECK(asymptotic_compare(a, b, 16, 8, 1e-9).verdict == "EQ");
  CHECK(asymptotic_compare(b, c, 16, 8, 1e-9).verdict == "EQ");
  CHECK(asymptotic_compare(a, c, 16, 8, 1e-9).verdict == "EQ");
}

TEST_CASE("nearest basis element of a basis state is the state itself") {
  const StateSequence s = seq_from_spec("trunc:10:3+14159");
  for (int n : {0, 2, 5}) {
    const ProjectionWitness w = nearest_basis_element(s.at(n), 4);
    CHECK(w.q == doctest::Approx(1.0));
    CHECK(to_text(w.element) == canonical_text(s.at(n).sole_numeral()));
  }
}

TEST_CASE("projecting the superposition family keeps it Cauchy and equal") {
  const StateSequence s = seq_from_spec("psiex1:10:3");
  const StateSequence proj = nearest_basis_sequence(s, 6);
  CHECK(to_text(proj.at(4).sole_numeral()) == "10:3+333");

  const CauchyReport r = cauchy_report(proj, 16, 8, 1e-9);
  CHECK(r.classification == CauchyClass::cauchy_at_horizon);

  const ComparisonReport eq = asymptotic_compare(s, proj, 16, 8, 1e-3);
  CHECK(eq.eq >= 1.0 - 1e-3);
}

TEST_CASE("projection mass dominates pair probabilities and W stays under X") {
  DeterministicRng rng(611);
  for (int iter = 0; iter < 5; ++iter) {
    const Rational v = testsupport::random_rational(rng, 50, 9);
    const double a0 = 0.5 + 0.4 * rng.uniform();
    const double a1 = std::sqrt((1.0 - a0 * a0) * 0.7);
    const double a2 = std::sqrt(1.0 - a0 * a0 - a1 * a1);
    const StateSequence s(
        3, 1, "cluster",
        [v, a0, a1, a2](int n) {
          const BasisNumeral head = approx_of_rational(v, 3, n);
          const BasisNumeral step = BasisNumeral::power(3, -(n + 1));
          return FockState::make(
              3, 1,
              {{{head}, Amplitude(a0, 0)},
               {{arith_add(head, step)}, Amplitude(a1, 0)},
               {{arith_add(arith_add(head, step), step)}, Amplitude(0, a2)}});
        });
    const int ell = 3;
    const StateSequence proj = nearest_basis_sequence(s, ell);
    for (int n = 1; n <= 6; ++n) {
      const double q = nearest_basis_element(s.at(n), ell).q;
      for (int m = 1; m <= 6; ++m) {
        const double p =
            relation_profile(SeqRelation::eq, s.at(n), s.at(m), ell)[ell - 1];
        CHECK(q >= p - 1e-12);
        const int w = projection_w(proj.at(n).sole_numeral(),
                                   proj.at(m).sole_numeral(), ell);
        const double x = projection_x(s.at(n), s.at(m),
                                      proj.at(n).sole_numeral(),
                                      proj.at(m).sole_numeral(), ell);
        CHECK(static_cast<double>(w) <= x + 1e-12);
      }
    }
  }
}

TEST_CASE("sequence arithmetic works elementwise on basis sequences") {
  const StateSequence two = seq_from_spec("constant:10:2+");
  const StateSequence three = seq_from_spec("constant:10:3+");
  const StateSequence six = seq_arith(SeqArith::mul, two, three);
  for (int n : {0, 3}) CHECK(to_text(six.at(n).sole_numeral()) == "10:6+");

  const StateSequence third = seq_from_spec("stream:10:1/3");
  const StateSequence sum = seq_arith(SeqArith::add, third, third);
  CHECK(to_text(sum.at(4).sole_numeral()) == "10:0+6666");
  const CauchyReport r = cauchy_report(sum, 16, 8, 1e-9);
  CHECK(r.classification == CauchyClass::cauchy_at_horizon);
  const ComparisonReport eq =
      asymptotic_compare(sum, seq_from_spec("stream:10:2/3"), 16, 8, 1e-9);
  CHECK(eq.verdict == "EQ");

  const StateSequence one = seq_from_spec("constant:10:1+");
  const StateSequence div = seq_arith(SeqArith::div_diag, one, three);
  CHECK(to_text(div.at(0).sole_numeral()) == "10:0+");
  CHECK(to_text(div.at(4).sole_numeral()) == "10:0+3333");

  const StateSequence bad =
      seq_arith(SeqArith::add, seq_from_spec("psiex1:10:3"), two);
  CHECK_THROWS_AS(bad.at(2), DomainError);
  CHECK_THROWS_AS(
      seq_arith(SeqArith::add, two, seq_from_spec("constant:2:1+")),
      DomainError);
}

TEST_CASE("class operations are well defined on equivalent representatives") {
  const StateSequence a = seq_from_spec("stream:10:1/3");
  const StateSequence a2 = shifted(a, 2);
  const StateSequence c = seq_from_spec("constant:10:0+25");
  const ComparisonReport r = asymptotic_compare(
      seq_arith(SeqArith::add, a, c), seq_arith(SeqArith::add, a2, c), 16, 8,
      1e-9);
  CHECK(r.verdict == "EQ");
}

TEST_CASE("gauge transforms preserve the classification under pullback") {
  DeterministicRng rng(612);
  GaugeField u(2, "probe");
  u.set_column(0, random_unitary(rng, 2));
  u.set_column(-1, random_unitary(rng, 2));

  const StateSequence id_case = seq_from_spec("stream:2:1/3");
  const StateSequence same = transform_sequence_gauge(GaugeField(2, "id"),
                                                      id_case);
  CHECK(std::abs(inner_product(same.at(3), id_case.at(3)) - Amplitude(1, 0)) <
        1e-12);

  const StateSequence pushed = transform_sequence_gauge(u, id_case);
  const StateSequence pulled = transform_sequence_gauge(u.adjoint(), pushed);
  const CauchyReport base = cauchy_report(id_case, 8, 4, 1e-9);
  const CauchyReport round = cauchy_report(pulled, 8, 4, 1e-9);
  CHECK(base.classification == CauchyClass::cauchy_at_horizon);
  CHECK(round.classification == base.classification);

  const StateSequence alt = seq_from_spec("alternating:2:0+|2:1+");
  const StateSequence alt_round =
      transform_sequence_gauge(u.adjoint(), transform_sequence_gauge(u, alt));
  CHECK(cauchy_report(alt_round, 8, 4, 1e-9).classification ==
        CauchyClass::refuted_at_horizon);

  CHECK_THROWS_AS(transform_sequence_gauge(GaugeField(3, "x"), id_case),
                  DomainError);
}

TEST_CASE("base transforms track the value across bases") {
  const StateSequence half10 = seq_from_spec("stream:10:1/2");
  const StateSequence half2 = transform_sequence_base(2, half10);
  CHECK(half2.base() == 2);
  CHECK(to_text(half2.at(3).sole_numeral()) == "2:0+1");
  const ComparisonReport eq =
      asymptotic_compare(half2, seq_from_spec("stream:2:1/2"), 16, 8, 1e-9);
  CHECK(eq.verdict == "EQ");
}

TEST_CASE("the operator view indexes by canonical natural numerals") {
  const StateSequence s = seq_from_spec("trunc:10:3+14159");
  const SequenceOperator op = as_operator(s);
  CHECK(to_text(op(parse_numeral("10:7+")).sole_numeral()) ==
        to_text(s.at(7).sole_numeral()));
  CHECK(to_text(op(parse_numeral("10:0+")).sole_numeral()) == "10:3+");
  CHECK_THROWS_AS(op(parse_numeral("10:07+")), DomainError);
  CHECK_THROWS_AS(op(parse_numeral("10:7-")), DomainError);
  CHECK_THROWS_AS(op(parse_numeral("10:0+5")), DomainError);
  CHECK_THROWS_AS(op(parse_numeral("2:1+")), DomainError);
}
