#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qsn/base_change.hpp"
#include "qsn/gauge.hpp"

namespace qsn {

// A lazy indexed family n >= 0 of normalized states of one base and arity.
// Elements are memoized on first evaluation (idempotent under concurrent
// first access), so the string labels inside an element are stable across
// calls. Generators are expected to produce pairwise-distinct labels across
// indices; every factory here does.
class StateSequence {
public:
  StateSequence(int base, int arity, std::string description,
                std::function<FockState(int)> generator);

  int base() const noexcept;
  int arity() const noexcept;
  const std::string& description() const;

  FockState at(int n) const;

  // Identity of the underlying generator, not of the values.
  bool same_family(const StateSequence& other) const noexcept;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Families written "<family>:<arguments>":
//   constant:<numeral>              the same value at every index
//   trunc:<numeral>                 the numeral cut to n fraction digits
//   stream:<k>:<p>/<q>              p/q expanded to n base-k digits
//   psiex1:<k>:<digit>              digit repeated n times, then a uniform
//                                   superposition over the k digits at -n
//   alternating:<numeral>|<numeral> period two
//   table:<numeral>|...             explicit start, last entry repeated
StateSequence seq_from_spec(const std::string& spec);

enum class SeqRelation { self_cauchy, eq, lt };

// Probability that independent samples x of one state and y of the other
// satisfy the depth-ell relation, for every ell in [1, L] at once:
// EQ/SELF_CAUCHY counts |y - x| <= k^-ell, LT counts y - x >= k^-ell.
std::vector<double> relation_profile(SeqRelation rel, const FockState& x,
                                     const FockState& y, int L);

// Single grid cell: samples are drawn from a(n) and b(m). SELF_CAUCHY
// requires b to be the same family as a.
double p_nml(SeqRelation rel, const StateSequence& a, const StateSequence& b,
             int n, int m, int ell);

enum class EllMonotone { none, nonincreasing, nondecreasing };

// The full (n, m <= N, ell <= L) probability grid with its windowed infima
// P_{p,ell} = min over n,m in (p, N]. Entry bounds and the declared
// ell-monotonicity are checked during the build; violations beyond 1e-12
// set the defect flag instead of throwing.
class ProbabilityLattice {
public:
  static ProbabilityLattice build(
      int N, int L,
      const std::function<std::vector<double>(int, int)>& pair_profile,
      EllMonotone direction);

  int horizon() const noexcept { return n_; }
  int depth() const noexcept { return l_; }
  double cell(int n, int m, int ell) const;
  double windowed_min(int p, int ell) const;  // p in [0, N)
  bool monotone_defect() const noexcept { return defect_; }

private:
  ProbabilityLattice(int N, int L) : n_(N), l_(L) {}

  int n_;
  int l_;
  std::vector<double> cells_;
  std::vector<double> window_;
  bool defect_ = false;
};

enum class CauchyClass { cauchy_at_horizon, refuted_at_horizon, indeterminate };
std::string cauchy_class_name(CauchyClass c);

// Horizon surrogate for the asymptotic Cauchy property. With window minima
// monotone in p, the convergent reading is: every depth admits a tail where
// the self-overlap probability stays >= 1 - eps. Refutation is the stronger
// observation that some depth pins the probability <= eps across the whole
// top half of the tail windows (the last window p = N-1 is excluded: it only
// holds the trivially matching pair n = m = N).
struct CauchyReport {
  ProbabilityLattice lattice;
  CauchyClass classification;
  double epsilon;
  int horizon;
  int depth;
  std::vector<int> witness_p;  // per depth: smallest qualifying p, else -1
};

CauchyReport cauchy_report(const StateSequence& s, int N, int L, double eps);

// Runs the classification protocol on an already-built lattice (any source of
// per-pair overlap probabilities, not just self-equality of one family).
CauchyReport classify_lattice(ProbabilityLattice lattice, double eps);

// Horizon estimates of the three asymptotic relations between two families:
// EQ is the top-half window minimum at the deepest ell; LT/GT take the best
// depth (the exists-ell reading) of the same window minimum. The verdict
// names the single relation estimated at 1 when both inputs self-classify as
// Cauchy, else NONE.
struct ComparisonReport {
  double eq;
  double lt;
  double gt;
  bool both_cauchy;
  bool zero_one;  // every estimate within eps of 0 or 1
  std::string verdict;
};

ComparisonReport asymptotic_compare(const StateSequence& a,
                                    const StateSequence& b, int N, int L,
                                    double eps);

// Best basis explanation of a state at depth ell: the candidate numeral
// (support of the state widened by one k^-ell step either way) carrying the
// most probability mass within k^-ell. Ties prefer support members, then the
// smallest canonical text; q is the attained mass.
struct ProjectionWitness {
  BasisNumeral element;
  double q;
};
ProjectionWitness nearest_basis_element(const FockState& s, int ell);

StateSequence nearest_basis_sequence(const StateSequence& s, int ell);

// Projection separation indicator: 1 when the projected elements sit more
// than three depth-ell steps apart.
int projection_w(const BasisNumeral& proj_n, const BasisNumeral& proj_m,
                 int ell);
// Mass of sample pairs whose three-leg path projection-to-sample,
// sample-to-sample, sample-to-projection exceeds three depth-ell steps;
// always an upper bound for projection_w.
double projection_x(const FockState& sn, const FockState& sm,
                    const BasisNumeral& proj_n, const BasisNumeral& proj_m,
                    int ell);

enum class SeqArith { add, sub, mul, div_diag };

// Elementwise arithmetic on basis-valued sequences; div_diag divides with
// accuracy equal to the element index.
StateSequence seq_arith(SeqArith kind, const StateSequence& a,
                        const StateSequence& b);

StateSequence transform_sequence_gauge(const GaugeField& u,
                                       const StateSequence& s);
// Re-expresses every basis component in the target base, truncated at n
// fraction digits for element n.
StateSequence transform_sequence_base(int to_base, const StateSequence& s);

// The sequence as a map on natural-number basis numerals: a canonical
// nonnegative integer numeral n yields the element at index value(n).
// Indices above 1e6 are refused as impractical.
class SequenceOperator {
public:
  explicit SequenceOperator(StateSequence s) : seq_(std::move(s)) {}
  FockState operator()(const BasisNumeral& index) const;
  const StateSequence& sequence() const noexcept { return seq_; }

private:
  StateSequence seq_;
};
SequenceOperator as_operator(const StateSequence& s);

std::string to_json_text(const CauchyReport& r);
std::string to_json_text(const ComparisonReport& r);
std::string to_csv_text(const ProbabilityLattice& lat);  // columns n,m,l,P

}  // namespace qsn
