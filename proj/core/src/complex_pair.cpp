#include "qsn/complex_pair.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsn/error.hpp"

namespace qsn {

namespace {

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

void check_protocol(int N, int L, double eps) {
  if (N < 2)
    throw DomainError(errc::bad_sequence, "horizon must be at least 2");
  if (L < 1)
    throw DomainError(errc::bad_sequence, "depth must be at least 1");
  if (!(eps > 0.0) || !(eps < 0.5))
    throw DomainError(errc::bad_sequence, "tolerance must lie in (0, 0.5)");
}

// Largest l in [0, L] with |b - a| <= k^-l.
int agreement_depth(const BasisNumeral& a, const BasisNumeral& b,
                    const std::vector<BasisNumeral>& steps) {
  const BasisNumeral d = arith_abs(arith_sub(b, a));
  int lmax = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (arith_compare(d, steps[i]) == ArithOrdering::greater) break;
    lmax = static_cast<int>(i) + 1;
  }
  return lmax;
}

struct ProfileTriple {
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> joint;
};

// One pass over the term pairs of two arity-2 states yields the equality
// profile of each slot plus the joint profile (both slots agree). Per pair
// the joint depth is the smaller slot depth, so all three are nonincreasing
// in ell.
ProfileTriple pair_profiles(const FockState& x, const FockState& y, int L) {
  std::vector<BasisNumeral> steps;
  steps.reserve(L);
  for (int l = 1; l <= L; ++l)
    steps.push_back(BasisNumeral::power(x.base(), -l));

  std::vector<std::vector<double>> acc(
      3, std::vector<double>(static_cast<std::size_t>(L) + 2, 0.0));
  for (const auto& [tx, ax] : x.terms()) {
    const double wx = std::norm(ax);
    for (const auto& [ty, ay] : y.terms()) {
      const double w = wx * std::norm(ay);
      const int dre = agreement_depth(tx[0], ty[0], steps);
      const int dim = agreement_depth(tx[1], ty[1], steps);
      const int depths[3] = {dre, dim, std::min(dre, dim)};
      for (int c = 0; c < 3; ++c)
        if (depths[c] > 0) {
          acc[c][1] += w;
          acc[c][depths[c] + 1] -= w;
        }
    }
  }

  ProfileTriple out;
  for (int c = 0; c < 3; ++c) {
    std::vector<double>& prof = c == 0 ? out.re : c == 1 ? out.im : out.joint;
    prof.resize(L);
    double run = 0.0;
    for (int l = 1; l <= L; ++l) {
      run += acc[c][l];
      prof[l - 1] = std::clamp(run, 0.0, 1.0);
    }
  }
  return out;
}

const FockState& checked_pair_state(const FockState& s) {
  if (s.arity() != 2)
    throw DomainError(errc::bad_sequence,
                      "complex families need arity-2 states");
  return s;
}

}  // namespace

ComplexBasisPair::ComplexBasisPair(BasisNumeral real_part,
                                   BasisNumeral imag_part)
    : re_(std::move(real_part)), im_(std::move(imag_part)) {
  if (re_.base() != im_.base())
    throw DomainError(errc::base_mismatch,
                      "pair components in different bases");
  if (re_.label() == im_.label()) im_ = im_.with_label(next_label());
}

ComplexBasisPair ComplexBasisPair::zero(int base) {
  return ComplexBasisPair(BasisNumeral::zero(base), BasisNumeral::zero(base));
}

bool ComplexBasisPair::is_zero() const {
  return re_.is_zero() && im_.is_zero();
}

bool complex_equal(const ComplexBasisPair& a, const ComplexBasisPair& b) {
  return arith_equal(a.real_part(), b.real_part()) &&
         arith_equal(a.imag_part(), b.imag_part());
}

ComplexBasisPair complex_encode(const Rational& re, const Rational& im,
                                int base) {
  return ComplexBasisPair(encode_rational(re, base),
                          encode_rational(im, base));
}

std::pair<Rational, Rational> complex_decode(const ComplexBasisPair& z) {
  return {decode_rational(z.real_part()), decode_rational(z.imag_part())};
}

ComplexBasisPair complex_arith(const OpKind& op, const ComplexBasisPair& a,
                               const ComplexBasisPair& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "pair arithmetic across bases");
  const BasisNumeral& x = a.real_part();
  const BasisNumeral& y = a.imag_part();
  const BasisNumeral& xp = b.real_part();
  const BasisNumeral& yp = b.imag_part();
  switch (op.tag) {
    case OpKind::Tag::add:
      return ComplexBasisPair(arith_add(x, xp), arith_add(y, yp));
    case OpKind::Tag::sub:
      return ComplexBasisPair(arith_sub(x, xp), arith_sub(y, yp));
    case OpKind::Tag::mul:
      return ComplexBasisPair(
          arith_sub(arith_mul(x, xp), arith_mul(y, yp)),
          arith_add(arith_mul(x, yp), arith_mul(xp, y)));
    case OpKind::Tag::div: {
      if (b.is_zero())
        throw DomainError(errc::division_by_zero, "complex division by zero");
      const BasisNumeral mod2 =
          arith_add(arith_mul(xp, xp), arith_mul(yp, yp));
      return ComplexBasisPair(
          arith_div(arith_add(arith_mul(x, xp), arith_mul(y, yp)), mod2,
                    op.param),
          arith_div(arith_sub(arith_mul(xp, y), arith_mul(x, yp)), mod2,
                    op.param));
    }
    default:
      throw DomainError(errc::out_of_domain,
                        "no complex form of '" + op.name() + "'");
  }
}

ComplexBasisPair parse_complex(const std::string& text) {
  const std::size_t semi = text.find(';');
  if (semi == std::string::npos || text.empty() || text.back() != 'i' ||
      text.find(';', semi + 1) != std::string::npos)
    throw DomainError(errc::bad_numeral,
                      "complex text must read '<re>;<im>i': '" + text + "'");
  return ComplexBasisPair(
      parse_numeral(text.substr(0, semi)),
      parse_numeral(text.substr(semi + 1, text.size() - semi - 2)));
}

std::string to_text(const ComplexBasisPair& z) {
  return to_text(z.real_part()) + ";" + to_text(z.imag_part()) + "i";
}

std::string canonical_text(const ComplexBasisPair& z) {
  return canonical_text(z.real_part()) + ";" + canonical_text(z.imag_part()) +
         "i";
}

std::string to_json_text(const ComplexBasisPair& z) {
  nlohmann::ordered_json j;
  j["re"] = to_text(z.real_part());
  j["im"] = to_text(z.imag_part());
  return j.dump(2);
}

ComplexSequence::ComplexSequence(StateSequence states)
    : states_(std::move(states)) {
  if (states_.arity() != 2)
    throw DomainError(errc::bad_sequence,
                      "complex families need arity-2 states");
}

ComplexSequence ComplexSequence::from_parts(const StateSequence& re,
                                            const StateSequence& im) {
  if (re.base() != im.base())
    throw DomainError(errc::base_mismatch, "pair components across bases");
  if (re.arity() != 1 || im.arity() != 1)
    throw DomainError(errc::bad_sequence,
                      "pair components must be arity-1 families");
  return ComplexSequence(StateSequence(
      re.base(), 2, "pair(" + re.description() + "; " + im.description() + ")",
      [re, im](int n) {
        const FockState r = re.at(n);
        const FockState i = im.at(n);
        std::vector<std::pair<NumeralTuple, Amplitude>> terms;
        terms.reserve(r.term_count() * i.term_count());
        for (const auto& [tr, ar] : r.terms())
          for (const auto& [ti, ai] : i.terms())
            terms.emplace_back(NumeralTuple{tr[0], ti[0]}, ar * ai);
        return FockState::make(re.base(), 2, std::move(terms));
      }));
}

ComplexSequence ComplexSequence::constant(const ComplexBasisPair& z) {
  return ComplexSequence(StateSequence(
      z.base(), 2, "constant-pair:" + canonical_text(z), [z](int) {
        return FockState::make(
            z.base(), 2,
            {{NumeralTuple{z.real_part().with_label(next_label()),
                           z.imag_part().with_label(next_label())},
              Amplitude(1.0, 0.0)}});
      }));
}

ComplexSequence complex_seq_arith(SeqArith kind, const ComplexSequence& a,
                                  const ComplexSequence& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "sequence arithmetic across bases");
  const char* name = kind == SeqArith::add   ? "ADD"
                     : kind == SeqArith::sub ? "SUB"
                     : kind == SeqArith::mul ? "MUL"
                                             : "DIV_DIAG";
  const StateSequence& sa = a.states();
  const StateSequence& sb = b.states();
  return ComplexSequence(StateSequence(
      a.base(), 2,
      std::string(name) + "(" + sa.description() + ", " + sb.description() +
          ")",
      [sa, sb, kind](int n) {
        const FockState xa = sa.at(n);
        const FockState xb = sb.at(n);
        if (!xa.is_basis() || !xb.is_basis())
          throw DomainError(errc::bad_sequence,
                            "sequence arithmetic needs basis-valued elements");
        const OpKind op = kind == SeqArith::add   ? OpKind::add()
                          : kind == SeqArith::sub ? OpKind::sub()
                          : kind == SeqArith::mul ? OpKind::mul()
                                                  : OpKind::div(n);
        const NumeralTuple& ta = xa.terms().begin()->first;
        const NumeralTuple& tb = xb.terms().begin()->first;
        const ComplexBasisPair out = complex_arith(
            op, ComplexBasisPair(ta[0], ta[1]), ComplexBasisPair(tb[0], tb[1]));
        return FockState::make(
            sa.base(), 2,
            {{NumeralTuple{out.real_part(), out.imag_part()},
              Amplitude(1.0, 0.0)}});
      }));
}

ComplexCauchyReport complex_cauchy_report(const ComplexSequence& psi, int N,
                                          int L, double eps) {
  check_protocol(N, L, eps);
  std::map<std::pair<int, int>, ProfileTriple> cache;
  const auto triple = [&](int n, int m) -> const ProfileTriple& {
    std::pair<int, int> key = std::minmax(n, m);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache
        .emplace(key, pair_profiles(checked_pair_state(psi.at(key.first)),
                                    psi.at(key.second), L))
        .first->second;
  };
  const auto lattice_for = [&](int which) {
    return ProbabilityLattice::build(
        N, L,
        [&, which](int n, int m) {
          const ProfileTriple& t = triple(n, m);
          return which == 0 ? t.re : which == 1 ? t.im : t.joint;
        },
        EllMonotone::nonincreasing);
  };
  CauchyReport real_report = classify_lattice(lattice_for(0), eps);
  CauchyReport imag_report = classify_lattice(lattice_for(1), eps);
  const CauchyClass combined =
      classify_lattice(lattice_for(2), eps).classification;
  return ComplexCauchyReport{std::move(real_report), std::move(imag_report),
                             combined};
}

ComplexEqualityReport complex_compare_equal(const ComplexSequence& a,
                                            const ComplexSequence& b, int N,
                                            int L, double eps) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "comparison across bases");
  check_protocol(N, L, eps);
  std::map<std::pair<int, int>, ProfileTriple> cache;
  const auto triple = [&](int n, int m) -> const ProfileTriple& {
    const std::pair<int, int> key(n, m);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache
        .emplace(key, pair_profiles(checked_pair_state(a.at(n)),
                                    checked_pair_state(b.at(m)), L))
        .first->second;
  };
  const auto estimate = [&](int which) {
    return ProbabilityLattice::build(
               N, L,
               [&, which](int n, int m) {
                 const ProfileTriple& t = triple(n, m);
                 return which == 0 ? t.re : t.im;
               },
               EllMonotone::nonincreasing)
        .windowed_min(N / 2, L);
  };
  const double re = estimate(0);
  const double im = estimate(1);
  return ComplexEqualityReport{re, im, re >= 1.0 - eps && im >= 1.0 - eps};
}

std::string to_json_text(const ComplexCauchyReport& r) {
  nlohmann::ordered_json j;
  j["combined"] = cauchy_class_name(r.combined);
  j["real"] = nlohmann::ordered_json::parse(to_json_text(r.real_report));
  j["imag"] = nlohmann::ordered_json::parse(to_json_text(r.imag_report));
  return j.dump(2);
}

std::string to_json_text(const ComplexEqualityReport& r) {
  nlohmann::ordered_json j;
  j["equal"] = r.equal;
  j["real_eq"] = round12(r.real_eq);
  j["imag_eq"] = round12(r.imag_eq);
  return j.dump(2);
}

}  // namespace qsn
