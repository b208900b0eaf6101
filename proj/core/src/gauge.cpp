#include "qsn/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "qsn/tolerances.hpp"

namespace qsn {

namespace {

using Json = nlohmann::ordered_json;

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json matrix_to_json(const GaugeMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Json cell;
      cell["re"] = round12(m(r, c).real());
      cell["im"] = round12(m(r, c).imag());
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GaugeMatrix matrix_from_json(const Json& rows, int base) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != base)
    throw DomainError(errc::bad_field, "matrix must have one row per digit");
  GaugeMatrix m(base, base);
  for (int r = 0; r < base; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != base)
      throw DomainError(errc::bad_field, "matrix row has wrong width");
    for (int c = 0; c < base; ++c) {
      const Json& cell = row[static_cast<std::size_t>(c)];
      m(r, c) = Amplitude(cell.value("re", 0.0), cell.value("im", 0.0));
    }
  }
  return m;
}

}  // namespace

std::vector<PrimePower> prime_factorize(long long n) {
  if (n < 2)
    throw DomainError(errc::bad_field,
                      "factorization needs an integer above 1");
  std::vector<PrimePower> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

CompositeSignature composite_signature(int base) {
  CompositeSignature sig;
  sig.base = base;
  sig.factors = prime_factorize(base);
  sig.group_product = "U(1)";
  for (const PrimePower& pp : sig.factors)
    for (int i = 0; i < pp.exponent; ++i)
      sig.group_product += "×SU(" + std::to_string(pp.prime) + ")";
  return sig;
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::eq: return "eq";
    case Relation::lt: return "lt";
    case Relation::gt: return "gt";
  }
  return "?";
}

Relation relation_from_name(const std::string& name) {
  if (name == "eq") return Relation::eq;
  if (name == "lt") return Relation::lt;
  if (name == "gt") return Relation::gt;
  throw DomainError(errc::bad_field, "unknown relation '" + name + "'");
}

GaugeField::GaugeField(int base, std::string name)
    : base_(base), name_(std::move(name)) {
  if (base_ < 2) throw DomainError(errc::bad_field, "field base below 2");
}

GaugeMatrix GaugeField::checked(GaugeMatrix u) const {
  if (u.rows() != base_ || u.cols() != base_)
    throw DomainError(errc::bad_field,
                      "matrix must be " + std::to_string(base_) + "x" +
                          std::to_string(base_));
  GaugeMatrix defect = u * u.adjoint() - GaugeMatrix::Identity(base_, base_);
  if (defect.cwiseAbs().maxCoeff() > tol::unitarity)
    throw DomainError(errc::not_unitary, "matrix fails unitarity at " +
                                             std::to_string(
                                                 defect.cwiseAbs().maxCoeff()));
  return u;
}

void GaugeField::set_global(GaugeMatrix u) { global_ = checked(std::move(u)); }

void GaugeField::set_column(int j, GaugeMatrix u) {
  columns_[j] = checked(std::move(u));
}

void GaugeField::set_site(int j, std::int64_t h, GaugeMatrix u) {
  sites_[{j, h}] = checked(std::move(u));
}

const GaugeMatrix* GaugeField::lookup(int j, std::int64_t h) const noexcept {
  auto site = sites_.find({j, h});
  if (site != sites_.end()) return &site->second;
  auto col = columns_.find(j);
  if (col != columns_.end()) return &col->second;
  if (global_) return &*global_;
  return nullptr;
}

bool GaugeField::trivial() const noexcept {
  return !global_ && columns_.empty() && sites_.empty();
}

GaugeField GaugeField::adjoint() const {
  GaugeField out(base_, name_ + "*");
  if (global_) out.global_ = global_->adjoint();
  for (const auto& [j, m] : columns_) out.columns_[j] = m.adjoint();
  for (const auto& [key, m] : sites_) out.sites_[key] = m.adjoint();
  return out;
}

GaugeField compose(const GaugeField& outer, const GaugeField& inner) {
  if (outer.base() != inner.base())
    throw DomainError(errc::base_mismatch, "composing fields across bases");
  int k = outer.base();
  GaugeField out(k, outer.name() + "." + inner.name());
  GaugeMatrix id = GaugeMatrix::Identity(k, k);
  auto level = [&](const GaugeField& f, int j,
                   std::int64_t h) -> GaugeMatrix {
    const GaugeMatrix* m = f.lookup(j, h);
    return m ? *m : id;
  };
  // Under the row convention a digit row-vector picks up the site matrix on
  // the right, so outer-after-inner multiplies as inner * outer.
  if (outer.global() || inner.global()) {
    GaugeMatrix g = (inner.global() ? *inner.global() : id) *
                    (outer.global() ? *outer.global() : id);
    out.set_global(std::move(g));
  }
  std::vector<int> cols;
  for (const auto& [j, m] : outer.columns()) cols.push_back(j);
  for (const auto& [j, m] : inner.columns()) cols.push_back(j);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  for (int j : cols) {
    auto col_level = [&](const GaugeField& f) -> GaugeMatrix {
      auto it = f.columns().find(j);
      if (it != f.columns().end()) return it->second;
      return f.global() ? *f.global() : id;
    };
    out.set_column(j, col_level(inner) * col_level(outer));
  }
  std::vector<std::pair<int, std::int64_t>> keys;
  for (const auto& [key, m] : outer.sites()) keys.push_back(key);
  for (const auto& [key, m] : inner.sites()) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& [j, h] : keys)
    out.set_site(j, h, level(inner, j, h) * level(outer, j, h));
  return out;
}

FockState apply_gauge(const GaugeField& u, const FockState& s) {
  if (u.base() != s.base())
    throw DomainError(errc::base_mismatch, "field base " +
                                               std::to_string(u.base()) +
                                               " on base " +
                                               std::to_string(s.base()) +
                                               " state");
  int k = s.base();
  std::vector<std::pair<NumeralTuple, Amplitude>> out;
  for (const auto& [tuple, amp] : s.terms()) {
    // Expand slot by slot; a site without a matrix keeps its digit.
    std::vector<std::pair<NumeralTuple, Amplitude>> partial{{{}, amp}};
    for (const BasisNumeral& slot : tuple) {
      std::vector<std::pair<std::vector<std::uint32_t>, Amplitude>> digit_sets{
          {slot.digits(), Amplitude(1, 0)}};
      for (int j = slot.low(); j <= slot.high(); ++j) {
        const GaugeMatrix* m = u.lookup(j, slot.label());
        if (!m) continue;
        std::vector<std::pair<std::vector<std::uint32_t>, Amplitude>> next;
        next.reserve(digit_sets.size() * static_cast<std::size_t>(k));
        for (const auto& [digits, c] : digit_sets) {
          std::uint32_t a = digits[static_cast<std::size_t>(j - slot.low())];
          for (int b = 0; b < k; ++b) {
            Amplitude f = (*m)(a, b);
            if (std::abs(f) < 1e-18) continue;
            auto copy = digits;
            copy[static_cast<std::size_t>(j - slot.low())] =
                static_cast<std::uint32_t>(b);
            next.emplace_back(std::move(copy), c * f);
          }
        }
        digit_sets = std::move(next);
      }
      std::vector<std::pair<NumeralTuple, Amplitude>> grown;
      grown.reserve(partial.size() * digit_sets.size());
      for (const auto& [tpl, c0] : partial)
        for (const auto& [digits, c1] : digit_sets) {
          NumeralTuple t = tpl;
          t.emplace_back(slot.base(), slot.negative(), digits, slot.low(),
                         slot.label());
          grown.emplace_back(std::move(t), c0 * c1);
        }
      partial = std::move(grown);
    }
    for (auto& term : partial) out.push_back(std::move(term));
  }
  return FockState::make(s.base(), s.arity(), std::move(out));
}

double relation_probability(Relation rel, const FockState& a,
                            const FockState& b) {
  if (a.base() != b.base())
    throw DomainError(errc::base_mismatch, "relation across bases");
  if (a.arity() != 1 || b.arity() != 1)
    throw DomainError(errc::bad_state, "relation needs arity-1 states");
  double p = 0;
  for (const auto& [ta, ca] : a.terms())
    for (const auto& [tb, cb] : b.terms()) {
      ArithOrdering ord = arith_compare(ta.front(), tb.front());
      bool hit = (rel == Relation::eq && ord == ArithOrdering::equivalent) ||
                 (rel == Relation::lt && ord == ArithOrdering::less) ||
                 (rel == Relation::gt && ord == ArithOrdering::greater);
      if (hit) p += std::norm(ca) * std::norm(cb);
    }
  return p;
}

double relation_in_gauge(Relation rel, const GaugeField& u, const FockState& a,
                         const FockState& b) {
  GaugeField back = u.adjoint();
  return relation_probability(rel, apply_gauge(back, a), apply_gauge(back, b));
}

GaugeMatrix random_unitary(DeterministicRng& rng, int dim) {
  GaugeMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Amplitude(rng.normal(), rng.normal());
  Eigen::HouseholderQR<GaugeMatrix> qr(g);
  GaugeMatrix q = qr.householderQ();
  GaugeMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    Amplitude d = r(c, c);
    double mag = std::abs(d);
    Amplitude phase = mag > 0 ? d / mag : Amplitude(1, 0);
    q.col(c) *= phase;
  }
  return q;
}

std::string to_json_text(const GaugeField& u) {
  Json j;
  j["base"] = u.base();
  j["name"] = u.name();
  if (u.global()) j["global"] = matrix_to_json(*u.global());
  Json sites = Json::array();
  for (const auto& [col, m] : u.columns()) {
    Json site;
    site["j"] = col;
    site["matrix"] = matrix_to_json(m);
    sites.push_back(std::move(site));
  }
  for (const auto& [key, m] : u.sites()) {
    Json site;
    site["j"] = key.first;
    site["h"] = key.second;
    site["matrix"] = matrix_to_json(m);
    sites.push_back(std::move(site));
  }
  j["sites"] = std::move(sites);
  return j.dump(2);
}

GaugeField gauge_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(errc::bad_field, std::string("bad gauge JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("base"))
    throw DomainError(errc::bad_field, "gauge JSON needs a base");
  GaugeField u(j["base"].get<int>(), j.value("name", std::string("g")));
  if (j.contains("global"))
    u.set_global(matrix_from_json(j["global"], u.base()));
  for (const auto& site : j.value("sites", Json::array())) {
    if (!site.contains("j"))
      throw DomainError(errc::bad_field, "gauge site needs j");
    GaugeMatrix m = matrix_from_json(site.at("matrix"), u.base());
    if (site.contains("h"))
      u.set_site(site["j"].get<int>(), site["h"].get<std::int64_t>(),
                 std::move(m));
    else
      u.set_column(site["j"].get<int>(), std::move(m));
  }
  return u;
}

}  // namespace qsn
