#include "qsn/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace qsn {

namespace {

using Json = nlohmann::ordered_json;

std::string tuple_text(const NumeralTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += '|';
    out += to_text(t[i]);
  }
  return out;
}

std::string tuple_canonical_text(const NumeralTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += '|';
    out += canonical_text(t[i]);
  }
  return out;
}

NumeralTuple with_distinct_labels(NumeralTuple t) {
  std::vector<std::int64_t> seen;
  bool clash = false;
  for (const BasisNumeral& n : t) {
    if (std::find(seen.begin(), seen.end(), n.label()) != seen.end()) {
      clash = true;
      break;
    }
    seen.push_back(n.label());
  }
  if (clash)
    for (BasisNumeral& n : t) n = n.with_label(next_label());
  return t;
}

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

bool TupleOrder::operator()(const NumeralTuple& a, const NumeralTuple& b) const {
  NumeralOrder lt;
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](const BasisNumeral& x, const BasisNumeral& y) { return lt(x, y); });
}

FockState FockState::make(
    int base, int arity, std::vector<std::pair<NumeralTuple, Amplitude>> terms) {
  if (arity < 1) throw DomainError(errc::bad_state, "arity must be positive");
  if (terms.empty())
    throw DomainError(errc::bad_state, "state needs at least one term");
  TermMap merged;
  for (auto& [tuple, amp] : terms) {
    if (static_cast<int>(tuple.size()) != arity)
      throw DomainError(errc::bad_state,
                        "tuple size " + std::to_string(tuple.size()) +
                            " does not match arity " + std::to_string(arity));
    for (const BasisNumeral& n : tuple)
      if (n.base() != base)
        throw DomainError(errc::base_mismatch,
                          "tuple member base " + std::to_string(n.base()) +
                              " in a base " + std::to_string(base) + " state");
    merged[with_distinct_labels(std::move(tuple))] += amp;
  }
  double norm2 = 0;
  for (const auto& [tuple, amp] : merged) norm2 += std::norm(amp);
  if (norm2 <= tol::prune * tol::prune)
    throw DomainError(errc::bad_state, "zero vector after merging");
  double inv = 1.0 / std::sqrt(norm2);
  TermMap scaled;
  for (auto& [tuple, amp] : merged) {
    Amplitude a = amp * inv;
    if (std::abs(a) >= tol::prune) scaled.emplace(tuple, a);
  }
  if (scaled.empty())
    throw DomainError(errc::bad_state, "zero vector after pruning");
  // Pruning can nudge the norm; rescale once more so the invariant is tight.
  norm2 = 0;
  for (const auto& [tuple, amp] : scaled) norm2 += std::norm(amp);
  inv = 1.0 / std::sqrt(norm2);
  for (auto& [tuple, amp] : scaled) amp *= inv;
  return FockState(base, arity, std::move(scaled));
}

FockState FockState::basis(const BasisNumeral& a) {
  return make(a.base(), 1, {{NumeralTuple{a}, Amplitude(1.0, 0.0)}});
}

double FockState::norm_squared() const {
  double n = 0;
  for (const auto& [tuple, amp] : terms_) n += std::norm(amp);
  return n;
}

const BasisNumeral& FockState::sole_numeral() const {
  if (arity_ != 1 || terms_.size() != 1)
    throw DomainError(errc::bad_state, "not an arity-1 basis state");
  return terms_.begin()->first.front();
}

Amplitude inner_product(const FockState& a, const FockState& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "inner product across bases");
  if (a.arity() != b.arity())
    throw DomainError(errc::bad_state, "inner product across arities");
  const auto& small = a.term_count() <= b.term_count() ? a : b;
  const auto& large = a.term_count() <= b.term_count() ? b : a;
  Amplitude sum = 0;
  for (const auto& [tuple, amp] : small.terms()) {
    auto it = large.terms().find(tuple);
    if (it == large.terms().end()) continue;
    // <a|b> conjugates the bra side regardless of which map is iterated.
    if (&small == &a)
      sum += std::conj(amp) * it->second;
    else
      sum += std::conj(it->second) * amp;
  }
  return sum;
}

FockState apply_op_entangled(const OpKind& op, const FockState& x,
                             const FockState& y) {
  if (!op.binary())
    throw DomainError(errc::bad_state,
                      "entangled application needs a binary operation");
  if (x.base() != y.base())
    throw DomainError(errc::base_mismatch, "operand bases differ");
  if (x.arity() != 1 || y.arity() != 1)
    throw DomainError(errc::bad_state, "operands must have arity 1");
  if (op.tag == OpKind::Tag::div)
    for (const auto& [tuple, amp] : y.terms())
      if (tuple.front().is_zero())
        throw DomainError(errc::division_by_zero,
                          "zero divisor component carries amplitude " +
                              std::to_string(std::abs(amp)));
  std::vector<std::pair<NumeralTuple, Amplitude>> triples;
  triples.reserve(x.term_count() * y.term_count());
  for (const auto& [ta, ca] : x.terms())
    for (const auto& [tb, cb] : y.terms()) {
      const BasisNumeral& a = ta.front();
      const BasisNumeral& b = tb.front();
      BasisNumeral r = apply_op(op, a, &b);
      NumeralTuple triple{a.with_label(next_label()),
                          b.with_label(next_label()),
                          r.with_label(next_label())};
      triples.emplace_back(std::move(triple), ca * cb);
    }
  return FockState::make(x.base(), 3, std::move(triples));
}

MixedResult result_mixture(const FockState& entangled) {
  std::map<BasisNumeral, double, NumeralOrder> probs;
  for (const auto& [tuple, amp] : entangled.terms()) {
    BasisNumeral rep = canonicalize(tuple.back());
    probs[rep] += std::norm(amp);
  }
  // Canonical representatives are still padding-keyed; fold value-equal ones.
  MixedResult out;
  out.base = entangled.base();
  for (auto& [numeral, p] : probs) {
    bool merged = false;
    for (auto& [existing, q] : out.outcomes)
      if (arith_equal(existing, numeral)) {
        q += p;
        merged = true;
        break;
      }
    if (!merged) out.outcomes.emplace_back(numeral, p);
  }
  std::sort(out.outcomes.begin(), out.outcomes.end(),
            [](const auto& a, const auto& b) {
              return to_text(a.first) < to_text(b.first);
            });
  return out;
}

std::string to_json_text(const FockState& s) {
  std::vector<const FockState::TermMap::value_type*> rows;
  rows.reserve(s.term_count());
  for (const auto& kv : s.terms()) rows.push_back(&kv);
  std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
    std::string ca = tuple_canonical_text(a->first);
    std::string cb = tuple_canonical_text(b->first);
    if (ca != cb) return ca < cb;
    return tuple_text(a->first) < tuple_text(b->first);
  });
  Json j;
  j["base"] = s.base();
  j["arity"] = s.arity();
  j["terms"] = Json::array();
  for (const auto* kv : rows) {
    Json term;
    term["tuple"] = Json::array();
    for (const BasisNumeral& n : kv->first) term["tuple"].push_back(to_text(n));
    term["re"] = round12(kv->second.real());
    term["im"] = round12(kv->second.imag());
    j["terms"].push_back(std::move(term));
  }
  return j.dump(2);
}

FockState state_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(errc::bad_state, std::string("bad state JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("base") || !j.contains("terms"))
    throw DomainError(errc::bad_state, "state JSON needs base and terms");
  int base = j["base"].get<int>();
  int arity = j.contains("arity") ? j["arity"].get<int>() : 1;
  std::vector<std::pair<NumeralTuple, Amplitude>> terms;
  for (const auto& t : j["terms"]) {
    NumeralTuple tuple;
    for (const auto& cell : t.at("tuple"))
      tuple.push_back(parse_numeral(cell.get<std::string>()));
    double re = t.value("re", 0.0);
    double im = t.value("im", 0.0);
    terms.emplace_back(std::move(tuple), Amplitude(re, im));
  }
  return FockState::make(base, arity, std::move(terms));
}

std::string to_json_text(const MixedResult& m) {
  Json j;
  j["base"] = m.base;
  j["outcomes"] = Json::array();
  for (const auto& [numeral, p] : m.outcomes) {
    Json row;
    row["numeral"] = to_text(numeral);
    row["p"] = round12(p);
    j["outcomes"].push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace qsn
