#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsn/fock.hpp"
#include "qsn/random.hpp"

namespace qsn {

using GaugeMatrix = Eigen::MatrixXcd;

struct PrimePower {
  long long prime;
  int exponent;
};

std::vector<PrimePower> prime_factorize(long long n);

struct CompositeSignature {
  int base;
  std::vector<PrimePower> factors;
  std::string group_product;  // e.g. "U(1)xSU(2)xSU(3)xSU(5)"
};

CompositeSignature composite_signature(int base);

enum class Relation { eq, lt, gt };
std::string relation_name(Relation r);
Relation relation_from_name(const std::string& name);

// Per-site choice of digit basis. Lookup precedence: exact (j, h) entry,
// column entry (site j, every string label), global matrix, identity.
// Matrices are validated as unitary on insertion; the sign qukit is never
// touched.
class GaugeField {
public:
  GaugeField(int base, std::string name);

  int base() const noexcept { return base_; }
  const std::string& name() const noexcept { return name_; }

  void set_global(GaugeMatrix u);
  void set_column(int j, GaugeMatrix u);
  void set_site(int j, std::int64_t h, GaugeMatrix u);

  // nullptr means the identity acts at this site.
  const GaugeMatrix* lookup(int j, std::int64_t h) const noexcept;

  bool trivial() const noexcept;
  GaugeField adjoint() const;

  const std::optional<GaugeMatrix>& global() const noexcept { return global_; }
  const std::map<int, GaugeMatrix>& columns() const noexcept { return columns_; }
  const std::map<std::pair<int, std::int64_t>, GaugeMatrix>& sites()
      const noexcept {
    return sites_;
  }

private:
  GaugeMatrix checked(GaugeMatrix u) const;

  int base_;
  std::string name_;
  std::optional<GaugeMatrix> global_;
  std::map<int, GaugeMatrix> columns_;
  std::map<std::pair<int, std::int64_t>, GaugeMatrix> sites_;
};

// Field acting as outer after inner at every site.
GaugeField compose(const GaugeField& outer, const GaugeField& inner);

// Re-expresses every digit in the new basis: a digit value a at site (j, h)
// becomes sum_b U(a, b) |b>. Signs, intervals and labels are untouched.
FockState apply_gauge(const GaugeField& u, const FockState& s);

// Probability that a Born sample pair from two arity-1 states satisfies the
// value relation.
double relation_probability(Relation rel, const FockState& a,
                            const FockState& b);

// Evaluates U rel U*: pulls both states back through the inverse gauge and
// samples the plain relation.
double relation_in_gauge(Relation rel, const GaugeField& u, const FockState& a,
                         const FockState& b);

GaugeMatrix random_unitary(DeterministicRng& rng, int dim);

std::string to_json_text(const GaugeField& u);
GaugeField gauge_from_json_text(const std::string& text);

}  // namespace qsn
