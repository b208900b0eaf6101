#include "qsn/sequence.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

namespace qsn {
namespace {

using Json = nlohmann::ordered_json;

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DomainError(errc::bad_sequence, "bad " + what + " '" + text + "'");
  return value;
}

}  // namespace

struct StateSequence::Impl {
  int base;
  int arity;
  std::string description;
  std::function<FockState(int)> generator;
  mutable std::mutex mu;
  mutable std::map<int, FockState> memo;
};

StateSequence::StateSequence(int base, int arity, std::string description,
                             std::function<FockState(int)> generator)
    : impl_(std::make_shared<Impl>()) {
  if (base < 2)
    throw DomainError(errc::bad_sequence,
                      "sequence base " + std::to_string(base) + " out of range");
  if (arity < 1)
    throw DomainError(errc::bad_sequence, "sequence arity must be positive");
  if (!generator)
    throw DomainError(errc::bad_sequence, "sequence needs a generator");
  impl_->base = base;
  impl_->arity = arity;
  impl_->description = std::move(description);
  impl_->generator = std::move(generator);
}

int StateSequence::base() const noexcept { return impl_->base; }
int StateSequence::arity() const noexcept { return impl_->arity; }
const std::string& StateSequence::description() const {
  return impl_->description;
}

bool StateSequence::same_family(const StateSequence& other) const noexcept {
  return impl_ == other.impl_;
}

FockState StateSequence::at(int n) const {
  if (n < 0)
    throw DomainError(errc::bad_sequence,
                      "sequence index " + std::to_string(n) + " is negative");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    const auto it = impl_->memo.find(n);
    if (it != impl_->memo.end()) return it->second;
  }
  FockState value = impl_->generator(n);
  if (value.base() != impl_->base || value.arity() != impl_->arity)
    throw DomainError(errc::bad_sequence,
                      "generator changed base or arity at index " +
                          std::to_string(n));
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->memo.try_emplace(n, std::move(value)).first->second;
}

StateSequence seq_from_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos || colon == 0)
    throw DomainError(errc::bad_sequence,
                      "malformed sequence spec '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  if (family == "constant") {
    const BasisNumeral a = parse_numeral(rest);
    return StateSequence(a.base(), 1, spec, [a](int) {
      return FockState::basis(a.with_label(next_label()));
    });
  }

  if (family == "trunc") {
    const BasisNumeral a = parse_numeral(rest);
    return StateSequence(a.base(), 1, spec, [a](int n) {
      return FockState::basis(
          convert_approx(a, a.base(), n).with_label(next_label()));
    });
  }

  if (family == "stream") {
    const std::size_t colon2 = rest.find(':');
    if (colon2 == std::string::npos)
      throw DomainError(errc::bad_sequence,
                        "malformed sequence spec '" + spec + "'");
    const int base = parse_int(rest.substr(0, colon2), "stream base");
    const auto parts = split(rest.substr(colon2 + 1), '/');
    if (parts.size() != 2)
      throw DomainError(errc::bad_sequence,
                        "malformed sequence spec '" + spec + "'");
    BigInt p, q;
    try {
      p = BigInt(parts[0]);
      q = BigInt(parts[1]);
    } catch (const std::exception&) {
      throw DomainError(errc::bad_sequence,
                        "malformed sequence spec '" + spec + "'");
    }
    if (q == 0)
      throw DomainError(errc::division_by_zero,
                        "zero denominator in '" + spec + "'");
    const Rational v(p, q);
    approx_of_rational(v, base, 0);  // validates the base up front
    return StateSequence(base, 1, spec, [v, base](int n) {
      return FockState::basis(approx_of_rational(v, base, n));
    });
  }

  if (family == "psiex1") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2)
      throw DomainError(errc::bad_sequence,
                        "malformed sequence spec '" + spec + "'");
    const int base = parse_int(parts[0], "base");
    const int digit = parse_int(parts[1], "digit");
    if (base < 2)
      throw DomainError(errc::bad_sequence,
                        "base out of range in '" + spec + "'");
    if (digit < 0 || digit >= base)
      throw DomainError(errc::bad_sequence,
                        "digit out of range in '" + spec + "'");
    return StateSequence(base, 1, spec, [base, digit](int n) {
      std::vector<std::pair<NumeralTuple, Amplitude>> terms;
      terms.reserve(base);
      const Amplitude amp(1.0 / std::sqrt(static_cast<double>(base)), 0.0);
      for (int j = 0; j < base; ++j) {
        std::vector<std::uint32_t> digits(n + 1,
                                          static_cast<std::uint32_t>(digit));
        digits[0] = static_cast<std::uint32_t>(j);
        terms.push_back({{BasisNumeral(base, false, std::move(digits), -n)},
                         amp});
      }
      return FockState::make(base, 1, std::move(terms));
    });
  }

  if (family == "alternating" || family == "table") {
    const auto parts = split(rest, '|');
    if (family == "alternating" && parts.size() != 2)
      throw DomainError(errc::bad_sequence,
                        "alternating needs two entries in '" + spec + "'");
    if (parts.empty())
      throw DomainError(errc::bad_sequence,
                        "malformed sequence spec '" + spec + "'");
    std::vector<BasisNumeral> entries;
    entries.reserve(parts.size());
    for (const auto& part : parts) entries.push_back(parse_numeral(part));
    for (const auto& e : entries)
      if (e.base() != entries.front().base())
        throw DomainError(errc::base_mismatch,
                          "mixed bases in '" + spec + "'");
    const bool cyclic = family == "alternating";
    return StateSequence(
        entries.front().base(), 1, spec, [entries, cyclic](int n) {
          const std::size_t i =
              cyclic ? static_cast<std::size_t>(n % 2)
                     : std::min<std::size_t>(n, entries.size() - 1);
          return FockState::basis(entries[i].with_label(next_label()));
        });
  }

  throw DomainError(errc::bad_sequence,
                    "unknown sequence family '" + family + "'");
}

std::vector<double> relation_profile(SeqRelation rel, const FockState& x,
                                     const FockState& y, int L) {
  if (x.base() != y.base())
    throw DomainError(errc::base_mismatch, "relation across bases");
  if (x.arity() != 1 || y.arity() != 1)
    throw DomainError(errc::bad_state, "relations compare arity-1 states");
  if (L < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");

  std::vector<BasisNumeral> steps;
  steps.reserve(L);
  for (int l = 1; l <= L; ++l) steps.push_back(BasisNumeral::power(x.base(), -l));

  std::vector<double> acc(static_cast<std::size_t>(L) + 2, 0.0);
  for (const auto& [tx, ax] : x.terms()) {
    const double wx = std::norm(ax);
    for (const auto& [ty, ay] : y.terms()) {
      const double w = wx * std::norm(ay);
      const BasisNumeral diff = arith_sub(ty[0], tx[0]);
      if (rel == SeqRelation::lt) {
        if (diff.negative() || diff.is_zero()) continue;
        for (int l = 1; l <= L; ++l) {
          if (arith_compare(diff, steps[l - 1]) != ArithOrdering::less) {
            acc[l] += w;
            acc[L + 1] -= w;
            break;
          }
        }
      } else {
        const BasisNumeral d = arith_abs(diff);
        int lmax = 0;
        for (int l = 1; l <= L; ++l) {
          if (arith_compare(d, steps[l - 1]) == ArithOrdering::greater) break;
          lmax = l;
        }
        if (lmax > 0) {
          acc[1] += w;
          acc[lmax + 1] -= w;
        }
      }
    }
  }

  std::vector<double> out(L);
  double run = 0.0;
  for (int l = 1; l <= L; ++l) {
    run += acc[l];
    out[l - 1] = std::clamp(run, 0.0, 1.0);
  }
  return out;
}

double p_nml(SeqRelation rel, const StateSequence& a, const StateSequence& b,
             int n, int m, int ell) {
  if (rel == SeqRelation::self_cauchy && !a.same_family(b))
    throw DomainError(errc::bad_sequence,
                      "self comparison needs one family on both sides");
  if (ell < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");
  return relation_profile(rel, a.at(n), b.at(m), ell)[ell - 1];
}

ProbabilityLattice ProbabilityLattice::build(
    int N, int L,
    const std::function<std::vector<double>(int, int)>& pair_profile,
    EllMonotone direction) {
  if (N < 1 || L < 1)
    throw DomainError(errc::bad_sequence, "lattice needs N >= 1, L >= 1");
  ProbabilityLattice lat(N, L);
  lat.cells_.assign(static_cast<std::size_t>(N) * N * L, 0.0);
  const auto at = [N, L](int n, int m, int l) {
    return (static_cast<std::size_t>(n - 1) * N + (m - 1)) * L + (l - 1);
  };
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const std::vector<double> prof = pair_profile(n, m);
      if (static_cast<int>(prof.size()) != L)
        throw DomainError(errc::bad_sequence, "profile depth mismatch");
      for (int l = 1; l <= L; ++l) {
        double v = prof[l - 1];
        if (v < -1e-12 || v > 1.0 + 1e-12) lat.defect_ = true;
        v = std::clamp(v, 0.0, 1.0);
        if (l > 1) {
          const double prev = lat.cells_[at(n, m, l - 1)];
          if (direction == EllMonotone::nonincreasing && v > prev + 1e-12)
            lat.defect_ = true;
          if (direction == EllMonotone::nondecreasing && v < prev - 1e-12)
            lat.defect_ = true;
        }
        lat.cells_[at(n, m, l)] = v;
      }
    }
  }
  lat.window_.assign(static_cast<std::size_t>(N) * L, 0.0);
  for (int l = 1; l <= L; ++l) {
    double run = std::numeric_limits<double>::infinity();
    for (int p = N - 1; p >= 0; --p) {
      for (int m = p + 1; m <= N; ++m)
        run = std::min(run, lat.cells_[at(p + 1, m, l)]);
      for (int n = p + 2; n <= N; ++n)
        run = std::min(run, lat.cells_[at(n, p + 1, l)]);
      lat.window_[static_cast<std::size_t>(p) * L + (l - 1)] = run;
    }
  }
  return lat;
}

double ProbabilityLattice::cell(int n, int m, int ell) const {
  if (n < 1 || n > n_ || m < 1 || m > n_ || ell < 1 || ell > l_)
    throw DomainError(errc::bad_sequence, "lattice index out of range");
  return cells_[(static_cast<std::size_t>(n - 1) * n_ + (m - 1)) * l_ +
                (ell - 1)];
}

double ProbabilityLattice::windowed_min(int p, int ell) const {
  if (p < 0 || p >= n_ || ell < 1 || ell > l_)
    throw DomainError(errc::bad_sequence, "lattice index out of range");
  return window_[static_cast<std::size_t>(p) * l_ + (ell - 1)];
}

std::string cauchy_class_name(CauchyClass c) {
  switch (c) {
    case CauchyClass::cauchy_at_horizon: return "CAUCHY_AT_HORIZON";
    case CauchyClass::refuted_at_horizon: return "REFUTED_AT_HORIZON";
    case CauchyClass::indeterminate: return "INDETERMINATE";
  }
  throw DomainError(errc::bad_sequence, "unknown classification");
}

namespace {

void check_protocol(int N, int L, double eps) {
  if (N < 2)
    throw DomainError(errc::bad_sequence, "horizon must be at least 2");
  if (L < 1)
    throw DomainError(errc::bad_sequence, "depth must be at least 1");
  if (!(eps > 0.0) || !(eps < 0.5))
    throw DomainError(errc::bad_sequence, "tolerance must lie in (0, 0.5)");
}

struct PairCache {
  std::map<std::pair<int, int>, std::vector<double>> store;

  const std::vector<double>& get(
      int n, int m, bool symmetric,
      const std::function<std::vector<double>(int, int)>& eval) {
    std::pair<int, int> key(n, m);
    if (symmetric && key.first > key.second) std::swap(key.first, key.second);
    const auto it = store.find(key);
    if (it != store.end()) return it->second;
    return store.emplace(key, eval(key.first, key.second)).first->second;
  }
};

}  // namespace

CauchyReport cauchy_report(const StateSequence& s, int N, int L, double eps) {
  check_protocol(N, L, eps);
  PairCache cache;
  const auto eval = [&s, L](int n, int m) {
    return relation_profile(SeqRelation::eq, s.at(n), s.at(m), L);
  };
  ProbabilityLattice lattice = ProbabilityLattice::build(
      N, L,
      [&](int n, int m) { return cache.get(n, m, true, eval); },
      EllMonotone::nonincreasing);
  return classify_lattice(std::move(lattice), eps);
}

CauchyReport classify_lattice(ProbabilityLattice lattice, double eps) {
  const int N = lattice.horizon();
  const int L = lattice.depth();
  check_protocol(N, L, eps);

  std::vector<int> witness(L, -1);
  for (int l = 1; l <= L; ++l)
    for (int p = 0; p < N; ++p)
      if (lattice.windowed_min(p, l) >= 1.0 - eps) {
        witness[l - 1] = p;
        break;
      }

  bool refuted = false;
  for (int l = 1; l <= L && !refuted; ++l) {
    bool seen = false;
    bool all = true;
    for (int p = N / 2; p <= N - 2; ++p) {
      seen = true;
      if (lattice.windowed_min(p, l) > eps) {
        all = false;
        break;
      }
    }
    refuted = seen && all;
  }

  CauchyClass cls = CauchyClass::indeterminate;
  if (refuted) {
    cls = CauchyClass::refuted_at_horizon;
  } else {
    bool all_witnessed = true;
    for (const int w : witness)
      if (w < 0) all_witnessed = false;
    if (all_witnessed) cls = CauchyClass::cauchy_at_horizon;
  }
  return CauchyReport{std::move(lattice), cls, eps, N, L, std::move(witness)};
}

ComparisonReport asymptotic_compare(const StateSequence& a,
                                    const StateSequence& b, int N, int L,
                                    double eps) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "comparison across bases");
  check_protocol(N, L, eps);

  const auto lattice_for = [&](SeqRelation rel, const StateSequence& x,
                               const StateSequence& y, EllMonotone dir) {
    PairCache cache;
    const auto eval = [&x, &y, rel, L](int n, int m) {
      return relation_profile(rel, x.at(n), y.at(m), L);
    };
    return ProbabilityLattice::build(
        N, L, [&](int n, int m) { return cache.get(n, m, false, eval); }, dir);
  };

  const ProbabilityLattice eq_lat =
      lattice_for(SeqRelation::eq, a, b, EllMonotone::nonincreasing);
  const ProbabilityLattice lt_lat =
      lattice_for(SeqRelation::lt, a, b, EllMonotone::nondecreasing);
  const ProbabilityLattice gt_lat =
      lattice_for(SeqRelation::lt, b, a, EllMonotone::nondecreasing);

  const int window = N / 2;
  ComparisonReport r{};
  r.eq = eq_lat.windowed_min(window, L);
  r.lt = 0.0;
  r.gt = 0.0;
  for (int l = 1; l <= L; ++l) {
    r.lt = std::max(r.lt, lt_lat.windowed_min(window, l));
    r.gt = std::max(r.gt, gt_lat.windowed_min(window, l));
  }

  r.both_cauchy =
      cauchy_report(a, N, L, eps).classification ==
          CauchyClass::cauchy_at_horizon &&
      cauchy_report(b, N, L, eps).classification ==
          CauchyClass::cauchy_at_horizon;

  const auto near01 = [eps](double v) { return v <= eps || v >= 1.0 - eps; };
  r.zero_one = near01(r.eq) && near01(r.lt) && near01(r.gt);

  r.verdict = "NONE";
  if (r.both_cauchy) {
    const bool eq1 = r.eq >= 1.0 - eps;
    const bool lt1 = r.lt >= 1.0 - eps;
    const bool gt1 = r.gt >= 1.0 - eps;
    if (eq1 && !lt1 && !gt1 && r.lt <= eps && r.gt <= eps) r.verdict = "EQ";
    if (lt1 && !eq1 && !gt1 && r.eq <= eps && r.gt <= eps) r.verdict = "LT";
    if (gt1 && !eq1 && !lt1 && r.eq <= eps && r.lt <= eps) r.verdict = "GT";
  }
  return r;
}

ProjectionWitness nearest_basis_element(const FockState& s, int ell) {
  if (s.arity() != 1)
    throw DomainError(errc::bad_state, "projection needs an arity-1 state");
  if (ell < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");
  const BasisNumeral step = BasisNumeral::power(s.base(), -ell);

  std::vector<std::pair<BasisNumeral, double>> support;
  support.reserve(s.term_count());
  for (const auto& [tuple, amp] : s.terms())
    support.emplace_back(tuple[0], std::norm(amp));

  struct Candidate {
    BasisNumeral numeral;
    bool in_support;
  };
  std::map<std::string, Candidate> candidates;
  for (const auto& [x, w] : support) {
    const std::string text = canonical_text(x);
    const auto it = candidates.find(text);
    if (it == candidates.end())
      candidates.emplace(text, Candidate{canonicalize(x), true});
    else
      it->second.in_support = true;
  }
  for (const auto& [x, w] : support) {
    for (const BasisNumeral& neighbor :
         {arith_add(x, step), arith_sub(x, step)}) {
      const std::string text = to_text(neighbor);
      candidates.emplace(text, Candidate{neighbor, false});
    }
  }

  bool have = false;
  ProjectionWitness best{BasisNumeral::zero(s.base()), -1.0};
  bool best_support = false;
  for (const auto& [text, cand] : candidates) {
    double score = 0.0;
    for (const auto& [x, w] : support) {
      const BasisNumeral d = arith_abs(arith_sub(x, cand.numeral));
      if (arith_compare(d, step) != ArithOrdering::greater) score += w;
    }
    const bool better =
        !have || score > best.q ||
        (score == best.q && cand.in_support && !best_support);
    if (better) {
      best = ProjectionWitness{cand.numeral, score};
      best_support = cand.in_support;
      have = true;
    }
  }
  return best;
}

StateSequence nearest_basis_sequence(const StateSequence& s, int ell) {
  if (ell < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");
  return StateSequence(
      s.base(), s.arity(),
      "nearest_basis(" + s.description() + ", " + std::to_string(ell) + ")",
      [s, ell](int n) {
        const ProjectionWitness w = nearest_basis_element(s.at(n), ell);
        return FockState::basis(w.element.with_label(next_label()));
      });
}

int projection_w(const BasisNumeral& proj_n, const BasisNumeral& proj_m,
                 int ell) {
  if (ell < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");
  const BasisNumeral bound =
      arith_mul(BasisNumeral::from_int(3, proj_n.base()),
                BasisNumeral::power(proj_n.base(), -ell));
  const BasisNumeral d = arith_abs(arith_sub(proj_n, proj_m));
  return arith_compare(d, bound) == ArithOrdering::greater ? 1 : 0;
}

double projection_x(const FockState& sn, const FockState& sm,
                    const BasisNumeral& proj_n, const BasisNumeral& proj_m,
                    int ell) {
  if (sn.arity() != 1 || sm.arity() != 1)
    throw DomainError(errc::bad_state, "projection needs arity-1 states");
  if (ell < 1)
    throw DomainError(errc::bad_sequence, "depth must be positive");
  const BasisNumeral bound =
      arith_mul(BasisNumeral::from_int(3, proj_n.base()),
                BasisNumeral::power(proj_n.base(), -ell));
  double total = 0.0;
  for (const auto& [tx, ax] : sn.terms()) {
    const BasisNumeral first = arith_abs(arith_sub(proj_n, tx[0]));
    const double wx = std::norm(ax);
    for (const auto& [ty, ay] : sm.terms()) {
      const BasisNumeral path = arith_add(
          arith_add(first, arith_abs(arith_sub(tx[0], ty[0]))),
          arith_abs(arith_sub(ty[0], proj_m)));
      if (arith_compare(path, bound) == ArithOrdering::greater)
        total += wx * std::norm(ay);
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

StateSequence seq_arith(SeqArith kind, const StateSequence& a,
                        const StateSequence& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "sequence arithmetic across bases");
  if (a.arity() != 1 || b.arity() != 1)
    throw DomainError(errc::bad_sequence,
                      "sequence arithmetic needs arity-1 sequences");
  const char* name = kind == SeqArith::add   ? "ADD"
                     : kind == SeqArith::sub ? "SUB"
                     : kind == SeqArith::mul ? "MUL"
                                             : "DIV_DIAG";
  return StateSequence(
      a.base(), 1,
      std::string(name) + "(" + a.description() + ", " + b.description() + ")",
      [a, b, kind](int n) {
        const FockState xa = a.at(n);
        const FockState xb = b.at(n);
        if (!xa.is_basis() || !xb.is_basis())
          throw DomainError(errc::bad_sequence,
                            "sequence arithmetic needs basis-valued elements");
        const OpKind op = kind == SeqArith::add   ? OpKind::add()
                          : kind == SeqArith::sub ? OpKind::sub()
                          : kind == SeqArith::mul ? OpKind::mul()
                                                  : OpKind::div(n);
        const BasisNumeral& na = xa.sole_numeral();
        const BasisNumeral& nb = xb.sole_numeral();
        return FockState::basis(apply_op(op, na, &nb));
      });
}

StateSequence transform_sequence_gauge(const GaugeField& u,
                                       const StateSequence& s) {
  if (u.base() != s.base())
    throw DomainError(errc::base_mismatch,
                      "field base does not match the sequence");
  return StateSequence(s.base(), s.arity(),
                       "gauge[" + u.name() + "](" + s.description() + ")",
                       [u, s](int n) { return apply_gauge(u, s.at(n)); });
}

StateSequence transform_sequence_base(int to_base, const StateSequence& s) {
  approx_of_rational(Rational(0), to_base, 0);  // validates the base
  return StateSequence(
      to_base, s.arity(),
      "base[" + std::to_string(to_base) + "](" + s.description() + ")",
      [to_base, s](int n) {
        const FockState x = s.at(n);
        std::vector<std::pair<NumeralTuple, Amplitude>> terms;
        terms.reserve(x.term_count());
        for (const auto& [tuple, amp] : x.terms()) {
          NumeralTuple mapped;
          mapped.reserve(tuple.size());
          for (const auto& numeral : tuple)
            mapped.push_back(convert_approx(numeral, to_base, n));
          terms.emplace_back(std::move(mapped), amp);
        }
        return FockState::make(to_base, x.arity(), std::move(terms));
      });
}

FockState SequenceOperator::operator()(const BasisNumeral& index) const {
  if (index.base() != seq_.base())
    throw DomainError(errc::base_mismatch,
                      "operator index base does not match the sequence");
  if (!is_canonical(index) || index.negative() || index.low() != 0)
    throw DomainError(errc::bad_sequence,
                      "'" + to_text(index) + "' is not a canonical natural number");
  long long value = 0;
  for (int site = index.high(); site >= 0; --site) {
    value = value * index.base() + index.digit_at(site);
    if (value > 1000000)
      throw DomainError(errc::out_of_domain,
                        "sequence index " + to_text(index) + " is too large");
  }
  return seq_.at(static_cast<int>(value));
}

SequenceOperator as_operator(const StateSequence& s) {
  return SequenceOperator(s);
}

std::string to_json_text(const CauchyReport& r) {
  Json j;
  j["classification"] = cauchy_class_name(r.classification);
  j["epsilon"] = round12(r.epsilon);
  j["N"] = r.horizon;
  j["L"] = r.depth;
  Json grid = Json::array();
  for (int p = 0; p < r.horizon; ++p) {
    Json row = Json::array();
    for (int l = 1; l <= r.depth; ++l)
      row.push_back(round12(r.lattice.windowed_min(p, l)));
    grid.push_back(std::move(row));
  }
  j["P_p_l"] = std::move(grid);
  j["witness_p"] = r.witness_p;
  return j.dump(2);
}

std::string to_json_text(const ComparisonReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["eq"] = round12(r.eq);
  j["lt"] = round12(r.lt);
  j["gt"] = round12(r.gt);
  j["both_cauchy"] = r.both_cauchy;
  j["zero_one"] = r.zero_one;
  return j.dump(2);
}

std::string to_csv_text(const ProbabilityLattice& lat) {
  std::string out = "n,m,l,P\n";
  char buf[64];
  for (int n = 1; n <= lat.horizon(); ++n)
    for (int m = 1; m <= lat.horizon(); ++m)
      for (int l = 1; l <= lat.depth(); ++l) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.12g\n", n, m, l,
                      lat.cell(n, m, l));
        out += buf;
      }
  return out;
}

}  // namespace qsn
