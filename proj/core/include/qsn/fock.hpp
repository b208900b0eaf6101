#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsn/numeral.hpp"
#include "qsn/tolerances.hpp"

namespace qsn {

using Amplitude = std::complex<double>;
using NumeralTuple = std::vector<BasisNumeral>;

struct TupleOrder {
  bool operator()(const NumeralTuple& a, const NumeralTuple& b) const;
};

// A normalized superposition of numeral tuples with complex amplitudes.
// Term identity is padding-sensitive: tuples differing only in zero padding
// are orthogonal basis vectors even though their values agree.
class FockState {
public:
  using TermMap = std::map<NumeralTuple, Amplitude, TupleOrder>;

  // Merges duplicate tuples, prunes below tol::prune, normalizes.
  // Throws BadState for an empty or zero vector, BaseMismatch for mixed bases.
  static FockState make(int base, int arity,
                        std::vector<std::pair<NumeralTuple, Amplitude>> terms);
  static FockState basis(const BasisNumeral& a);

  int base() const noexcept { return base_; }
  int arity() const noexcept { return arity_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  double norm_squared() const;

  // True when the state is a single tuple of bare numerals.
  bool is_basis() const noexcept { return terms_.size() == 1; }
  // The single numeral of an arity-1 basis state.
  const BasisNumeral& sole_numeral() const;

private:
  FockState(int base, int arity, TermMap terms)
      : base_(base), arity_(arity), terms_(std::move(terms)) {}

  int base_;
  int arity_;
  TermMap terms_;
};

// A classical distribution over canonical numerals; probabilities sum to one
// within tol::norm.
struct MixedResult {
  int base = 0;
  std::vector<std::pair<BasisNumeral, double>> outcomes;  // sorted by text
};

Amplitude inner_product(const FockState& a, const FockState& b);

// Entangles two arity-1 states under a binary operation: each amplitude pair
// (a, b) contributes the triple (a, b, a op b). The two input slots keep the
// map unitary; norms multiply exactly.
FockState apply_op_entangled(const OpKind& op, const FockState& x,
                             const FockState& y);

// Traces out everything but the final slot and merges value-equal outcomes.
MixedResult result_mixture(const FockState& entangled);

std::string to_json_text(const FockState& s);
FockState state_from_json_text(const std::string& text);
std::string to_json_text(const MixedResult& m);

}  // namespace qsn
