#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsn/base_change.hpp"
#include "qsn/complex_pair.hpp"
#include "qsn/error.hpp"
#include "qsn/fock.hpp"
#include "qsn/frames.hpp"
#include "qsn/gauge.hpp"
#include "qsn/numeral.hpp"
#include "qsn/random.hpp"
#include "qsn/sequence.hpp"
#include "selftest.hpp"

namespace {

using Json = nlohmann::ordered_json;

// Flag/config mistakes: exit status 2, as opposed to domain errors (1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " +
                     e.what());
  }
}

// Sequence specs also come in a keyed spelling, e.g. "psiex1:s=3,k=10" for
// "psiex1:10:3". Only keyed argument lists are rewritten; positional specs
// pass through untouched.
std::string normalize_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return spec;
  const std::string family = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (args.find('=') == std::string::npos) return spec;

  std::map<std::string, std::string> keyed;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError("bad keyed spec argument '" + item + "' in '" + spec +
                       "'");
    keyed[item.substr(0, eq)] = item.substr(eq + 1);
  }

  if (family == "psiex1") {
    const auto k = keyed.find("k");
    const auto s = keyed.find("s");
    if (k == keyed.end() || s == keyed.end() || keyed.size() != 2)
      throw UsageError("keyed '" + family +
                       "' spec needs exactly the keys k and s");
    return family + ":" + k->second + ":" + s->second;
  }
  throw UsageError("family '" + family + "' has no keyed spelling");
}

qsn::OpKind parse_op(const std::string& name, int ell, int site) {
  if (name == "add") return qsn::OpKind::add();
  if (name == "sub") return qsn::OpKind::sub();
  if (name == "mul") return qsn::OpKind::mul();
  if (name == "div") return qsn::OpKind::div(ell);
  if (name == "abs") return qsn::OpKind::abs();
  if (name == "succ") return qsn::OpKind::succ(site);
  throw UsageError("unknown op '" + name +
                   "' (expected add|sub|mul|div|abs|succ)");
}

// Horizon parameters shared by every sequence-analysis subcommand.
struct RunConfig {
  int N = 32;
  int L = 16;
  double epsilon = 1e-9;
};

// Wires -N/-L/--epsilon into a subcommand and remembers the option handles
// so config-file values only fill slots the flags left untouched.
struct HorizonFlags {
  CLI::Option* n;
  CLI::Option* l;
  CLI::Option* eps;

  HorizonFlags(CLI::App& cmd, RunConfig& rc) {
    n = cmd.add_option("-N,--horizon", rc.N, "largest sequence index");
    l = cmd.add_option("-L,--depth", rc.L, "deepest digit accuracy");
    eps = cmd.add_option("--epsilon", rc.epsilon, "classification tolerance");
  }

  void fill_from(const Json& j, RunConfig& rc) const {
    if (n->count() == 0 && j.contains("N")) rc.N = j.at("N").get<int>();
    if (l->count() == 0 && j.contains("L")) rc.L = j.at("L").get<int>();
    if (eps->count() == 0 && j.contains("epsilon"))
      rc.epsilon = j.at("epsilon").get<double>();
  }
};

void fill_string(const Json& j, const char* key, const CLI::Option* opt,
                 std::string& slot) {
  if (opt->count() == 0 && j.contains(key))
    slot = j.at(key).get<std::string>();
}

std::string cauchy_text_report(const std::string& spec,
                               const qsn::CauchyReport& r) {
  std::ostringstream out;
  out << "spec " << spec << "\n";
  out << "classification " << qsn::cauchy_class_name(r.classification) << "\n";
  out << "N " << r.horizon << "  L " << r.depth << "  epsilon "
      << round12(r.epsilon) << "\n";
  out << "witness_p";
  for (int p : r.witness_p) out << " " << p;
  out << "\n";
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "qukit string numbers: exact digit arithmetic, gauge and base changes, "
      "Cauchy-sequence analysis, complex pairs and frame fields"};
  app.require_subcommand(1);

  // eval ------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "apply an arithmetic op to numerals");
  struct {
    std::string op;
    int ell = 16;
    int site = 0;
    std::string a;
    std::string b;
    CLI::Option* b_opt;
  } ev;
  eval->add_option("--op", ev.op, "add|sub|mul|div|abs|succ")->required();
  eval->add_option("--ell", ev.ell, "fraction digits kept by div");
  eval->add_option("--site", ev.site, "site stepped by succ");
  eval->add_option("a", ev.a, "left numeral")->required();
  ev.b_opt = eval->add_option("b", ev.b, "right numeral");
  eval->callback([&ev] {
    const qsn::OpKind op = parse_op(ev.op, ev.ell, ev.site);
    const bool have_b = ev.b_opt->count() > 0;
    if (op.binary() && !have_b)
      throw UsageError("op '" + ev.op + "' needs two numerals");
    if (!op.binary() && have_b)
      throw UsageError("op '" + ev.op + "' takes one numeral");
    const qsn::BasisNumeral a = qsn::parse_numeral(ev.a);
    std::optional<qsn::BasisNumeral> b;
    if (have_b) b = qsn::parse_numeral(ev.b);
    std::cout << qsn::to_text(qsn::apply_op(op, a, b ? &*b : nullptr))
              << "\n";
  });

  // convert ---------------------------------------------------------------
  auto* conv = app.add_subcommand("convert", "re-express a numeral in another "
                                             "base, or classify/regroup");
  struct {
    std::string text;
    int from = 0;
    int to = 0;
    bool exact = false;
    int approx_ell = 0;
    bool classify = false;
    int regroup_n = 0;
    CLI::Option* text_opt;
    CLI::Option* from_opt;
    CLI::Option* to_opt;
    CLI::Option* approx_opt;
    CLI::Option* regroup_opt;
  } cv;
  cv.text_opt = conv->add_option("numeral", cv.text, "source numeral");
  cv.from_opt = conv->add_option("--from", cv.from, "expected source base");
  cv.to_opt = conv->add_option("--to", cv.to, "target base");
  conv->add_flag("--exact", cv.exact, "exact re-expression (default)");
  cv.approx_opt = conv->add_option("--approx", cv.approx_ell,
                                   "truncate at this many fraction digits");
  conv->add_flag("--classify", cv.classify,
                 "report the prime-support relation of the two bases");
  cv.regroup_opt = conv->add_option(
      "--regroup", cv.regroup_n, "group digits into blocks of this size");
  conv->callback([&cv] {
    const int modes = (cv.exact ? 1 : 0) + (cv.approx_opt->count() ? 1 : 0) +
                      (cv.classify ? 1 : 0) + (cv.regroup_opt->count() ? 1 : 0);
    if (modes > 1)
      throw UsageError(
          "pick one of --exact, --approx, --classify, --regroup");

    std::optional<qsn::BasisNumeral> a;
    if (cv.text_opt->count()) a = qsn::parse_numeral(cv.text);
    if (a && cv.from_opt->count() && cv.from != a->base())
      throw UsageError("--from disagrees with the numeral's base");

    if (cv.regroup_opt->count()) {
      if (!a) throw UsageError("--regroup needs a numeral");
      std::cout << qsn::to_text(qsn::regroup_digits(*a, cv.regroup_n)) << "\n";
      return;
    }
    if (!cv.to_opt->count()) throw UsageError("--to is required");
    if (cv.classify) {
      const int from = a ? a->base() : cv.from;
      if (from == 0)
        throw UsageError("--classify needs a numeral or --from");
      std::cout << qsn::domain_class_name(qsn::pf_domain_class(from, cv.to))
                << "\n";
      return;
    }
    if (!a) throw UsageError("conversion needs a numeral");
    if (cv.approx_opt->count())
      std::cout << qsn::to_text(qsn::convert_approx(*a, cv.to, cv.approx_ell))
                << "\n";
    else
      std::cout << qsn::to_text(qsn::convert_exact(*a, cv.to)) << "\n";
  });

  // gauge -----------------------------------------------------------------
  auto* gauge = app.add_subcommand(
      "gauge", "build a seeded random digit-basis field and probe it");
  struct {
    int base = 0;
    std::uint64_t seed = 0;
    std::vector<int> sites{0};
    std::string apply;
    std::string left;
    std::string right;
    CLI::Option* apply_opt;
    CLI::Option* left_opt;
    CLI::Option* right_opt;
  } gf;
  gauge->add_option("--base", gf.base, "digit base")->required();
  gauge->add_option("--seed", gf.seed, "unitary draw seed");
  gauge->add_option("--sites", gf.sites, "column sites carrying a random "
                                         "unitary")
      ->delimiter(',');
  gf.apply_opt =
      gauge->add_option("--apply", gf.apply, "numeral to push through the "
                                             "field");
  gf.left_opt = gauge->add_option("--left", gf.left,
                                  "left numeral of a relation probe");
  gf.right_opt = gauge->add_option("--right", gf.right,
                                   "right numeral of a relation probe");
  gauge->callback([&gf] {
    qsn::DeterministicRng rng(gf.seed);
    qsn::GaugeField u(gf.base, "g" + std::to_string(gf.seed));
    for (int j : gf.sites) u.set_column(j, qsn::random_unitary(rng, gf.base));

    Json out;
    out["field"] = Json::parse(qsn::to_json_text(u));
    if (gf.apply_opt->count()) {
      const qsn::FockState s =
          qsn::FockState::basis(qsn::parse_numeral(gf.apply));
      out["state"] = Json::parse(qsn::to_json_text(qsn::apply_gauge(u, s)));
    }
    if (gf.left_opt->count() != gf.right_opt->count())
      throw UsageError("--left and --right go together");
    if (gf.left_opt->count()) {
      const qsn::FockState a =
          qsn::FockState::basis(qsn::parse_numeral(gf.left));
      const qsn::FockState b =
          qsn::FockState::basis(qsn::parse_numeral(gf.right));
      Json rel;
      for (qsn::Relation r :
           {qsn::Relation::eq, qsn::Relation::lt, qsn::Relation::gt}) {
        Json row;
        row["plain"] = round12(qsn::relation_probability(r, a, b));
        row["in_gauge"] = round12(qsn::relation_in_gauge(r, u, a, b));
        rel[qsn::relation_name(r)] = std::move(row);
      }
      out["relations"] = std::move(rel);
    }
    std::cout << out.dump(2) << "\n";
  });

  // cauchy ----------------------------------------------------------------
  auto* cauchy = app.add_subcommand(
      "cauchy", "classify a sequence's convergence at the horizon");
  struct {
    std::string spec;
    std::string format = "json";
    std::string config;
    RunConfig rc;
    CLI::Option* spec_opt;
    CLI::Option* format_opt;
  } cy;
  cy.spec_opt = cauchy->add_option("--spec", cy.spec, "sequence spec");
  HorizonFlags cy_h(*cauchy, cy.rc);
  cy.format_opt =
      cauchy->add_option("--format", cy.format, "json|csv|text")
          ->check(CLI::IsMember({"json", "csv", "text"}));
  cauchy->add_option("--config", cy.config, "JSON file with spec/N/L/epsilon/"
                                            "format");
  cauchy->callback([&cy, &cy_h] {
    if (!cy.config.empty()) {
      const Json j = load_config(cy.config);
      fill_string(j, "spec", cy.spec_opt, cy.spec);
      fill_string(j, "format", cy.format_opt, cy.format);
      cy_h.fill_from(j, cy.rc);
    }
    if (cy.spec.empty()) throw UsageError("--spec (or a config file) is "
                                          "required");
    const std::string spec = normalize_spec(cy.spec);
    const qsn::StateSequence s = qsn::seq_from_spec(spec);
    const qsn::CauchyReport r =
        qsn::cauchy_report(s, cy.rc.N, cy.rc.L, cy.rc.epsilon);
    if (cy.format == "csv")
      std::cout << qsn::to_csv_text(r.lattice);
    else if (cy.format == "text")
      std::cout << cauchy_text_report(spec, r);
    else
      std::cout << qsn::to_json_text(r) << "\n";
  });

  // compare ---------------------------------------------------------------
  auto* compare = app.add_subcommand(
      "compare", "estimate the asymptotic order of two sequences");
  struct {
    std::string left;
    std::string right;
    std::string config;
    RunConfig rc;
    CLI::Option* left_opt;
    CLI::Option* right_opt;
  } cp;
  cp.left_opt = compare->add_option("--left", cp.left, "left sequence spec");
  cp.right_opt =
      compare->add_option("--right", cp.right, "right sequence spec");
  HorizonFlags cp_h(*compare, cp.rc);
  compare->add_option("--config", cp.config,
                      "JSON file with left/right/N/L/epsilon");
  compare->callback([&cp, &cp_h] {
    if (!cp.config.empty()) {
      const Json j = load_config(cp.config);
      fill_string(j, "left", cp.left_opt, cp.left);
      fill_string(j, "right", cp.right_opt, cp.right);
      cp_h.fill_from(j, cp.rc);
    }
    if (cp.left.empty() || cp.right.empty())
      throw UsageError("--left and --right (or a config file) are required");
    const qsn::StateSequence a = qsn::seq_from_spec(normalize_spec(cp.left));
    const qsn::StateSequence b = qsn::seq_from_spec(normalize_spec(cp.right));
    std::cout << qsn::to_json_text(qsn::asymptotic_compare(
                     a, b, cp.rc.N, cp.rc.L, cp.rc.epsilon))
              << "\n";
  });

  // complex ---------------------------------------------------------------
  auto* cmplx = app.add_subcommand("complex", "two-slot complex pairs");
  cmplx->require_subcommand(1);

  auto* carith = cmplx->add_subcommand("arith", "pair arithmetic");
  struct {
    std::string op;
    int ell = 16;
    std::string a;
    std::string b;
  } ca;
  carith->add_option("--op", ca.op, "add|sub|mul|div")->required();
  carith->add_option("--ell", ca.ell, "fraction digits kept by div");
  carith->add_option("a", ca.a, "left pair")->required();
  carith->add_option("b", ca.b, "right pair")->required();
  carith->callback([&ca] {
    const qsn::OpKind op = parse_op(ca.op, ca.ell, 0);
    std::cout << qsn::to_text(qsn::complex_arith(op, qsn::parse_complex(ca.a),
                                                 qsn::parse_complex(ca.b)))
              << "\n";
  });

  auto* ccauchy = cmplx->add_subcommand(
      "cauchy", "classify a pair family built from two component specs");
  struct {
    std::string re;
    std::string im;
    std::string config;
    RunConfig rc;
    CLI::Option* re_opt;
    CLI::Option* im_opt;
  } cc;
  cc.re_opt = ccauchy->add_option("--re", cc.re, "real component spec");
  cc.im_opt = ccauchy->add_option("--im", cc.im, "imaginary component spec");
  HorizonFlags cc_h(*ccauchy, cc.rc);
  ccauchy->add_option("--config", cc.config,
                      "JSON file with re/im/N/L/epsilon");
  ccauchy->callback([&cc, &cc_h] {
    if (!cc.config.empty()) {
      const Json j = load_config(cc.config);
      fill_string(j, "re", cc.re_opt, cc.re);
      fill_string(j, "im", cc.im_opt, cc.im);
      cc_h.fill_from(j, cc.rc);
    }
    if (cc.re.empty() || cc.im.empty())
      throw UsageError("--re and --im (or a config file) are required");
    const qsn::ComplexSequence psi = qsn::ComplexSequence::from_parts(
        qsn::seq_from_spec(normalize_spec(cc.re)),
        qsn::seq_from_spec(normalize_spec(cc.im)));
    std::cout << qsn::to_json_text(qsn::complex_cauchy_report(
                     psi, cc.rc.N, cc.rc.L, cc.rc.epsilon))
              << "\n";
  });

  auto* cequal = cmplx->add_subcommand(
      "equal", "asymptotic equality of two pair families");
  struct {
    std::string re;
    std::string im;
    std::string re2;
    std::string im2;
    RunConfig rc;
  } ce;
  cequal->add_option("--re", ce.re, "first family, real spec")->required();
  cequal->add_option("--im", ce.im, "first family, imaginary spec")
      ->required();
  cequal->add_option("--re2", ce.re2, "second family, real spec")->required();
  cequal->add_option("--im2", ce.im2, "second family, imaginary spec")
      ->required();
  HorizonFlags ce_h(*cequal, ce.rc);
  cequal->callback([&ce] {
    const qsn::ComplexSequence a = qsn::ComplexSequence::from_parts(
        qsn::seq_from_spec(normalize_spec(ce.re)),
        qsn::seq_from_spec(normalize_spec(ce.im)));
    const qsn::ComplexSequence b = qsn::ComplexSequence::from_parts(
        qsn::seq_from_spec(normalize_spec(ce.re2)),
        qsn::seq_from_spec(normalize_spec(ce.im2)));
    std::cout << qsn::to_json_text(qsn::complex_compare_equal(
                     a, b, ce.rc.N, ce.rc.L, ce.rc.epsilon))
              << "\n";
  });

  // frames ----------------------------------------------------------------
  auto* frames = app.add_subcommand(
      "frames", "query an iterated reference-frame field");
  frames->require_subcommand(1);
  struct {
    std::string config;
    std::string observer;
    std::string target;
    std::string frame;
    int depth = 1;
    int stage = 0;
    std::vector<std::string> path;
  } fr;
  frames->add_option("--config", fr.config, "frame-field description file")
      ->required();
  auto field_of = [&fr] {
    std::ifstream in(fr.config);
    if (!in) throw UsageError("cannot read config file '" + fr.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return qsn::field_from_json_text(buf.str());
  };

  auto* fshow = frames->add_subcommand("show", "print the field description");
  fshow->callback(
      [&] { std::cout << qsn::to_json_text(field_of()) << "\n"; });

  auto* fsee = frames->add_subcommand("see", "visibility between two frames");
  fsee->add_option("observer", fr.observer, "observer frame")->required();
  fsee->add_option("target", fr.target, "target frame")->required();
  fsee->callback([&] {
    const qsn::FrameField field = field_of();
    const qsn::VisibilityResult v = field.can_see(
        qsn::parse_frame(fr.observer), qsn::parse_frame(fr.target));
    Json j;
    j["observer"] = fr.observer;
    j["target"] = fr.target;
    j["visible"] = v.visible;
    j["wraps"] = v.wraps;
    std::cout << j.dump(2) << "\n";
  });

  auto* fdesc = frames->add_subcommand("descendants",
                                       "frames reachable within some depth");
  fdesc->add_option("frame", fr.frame, "starting frame")->required();
  fdesc->add_option("--depth", fr.depth, "iteration steps to walk");
  fdesc->callback([&] {
    const qsn::FrameField field = field_of();
    Json j;
    j["frame"] = fr.frame;
    j["depth"] = fr.depth;
    Json list = Json::array();
    for (const qsn::FrameId& d :
         field.descendants(qsn::parse_frame(fr.frame), fr.depth))
      list.push_back(qsn::to_text(d));
    j["descendants"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  });

  auto* fpar = frames->add_subcommand("parents", "frames one step up");
  fpar->add_option("frame", fr.frame, "starting frame")->required();
  fpar->callback([&] {
    const qsn::FrameField field = field_of();
    Json j;
    j["frame"] = fr.frame;
    Json list = Json::array();
    for (const qsn::FrameId& p : field.parents(qsn::parse_frame(fr.frame)))
      list.push_back(qsn::to_text(p));
    j["parents"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  });

  auto* fstage = frames->add_subcommand("stage", "all frames of one stage");
  fstage->add_option("stage", fr.stage, "stage index")->required();
  fstage->callback([&] {
    const qsn::FrameField field = field_of();
    Json j;
    j["stage"] = fr.stage;
    Json list = Json::array();
    for (const qsn::FrameId& f : field.frames_at_stage(fr.stage))
      list.push_back(qsn::to_text(f));
    j["frames"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  });

  auto* fwind = frames->add_subcommand(
      "winding", "completed turns of a cyclic iteration path");
  fwind->add_option("path", fr.path, "frames along the path")
      ->required()
      ->expected(-1);
  fwind->callback([&] {
    const qsn::FrameField field = field_of();
    qsn::IterationPath path;
    for (const std::string& t : fr.path) path.push_back(qsn::parse_frame(t));
    Json j;
    j["path"] = fr.path;
    j["winding"] = field.winding_number(path);
    std::cout << j.dump(2) << "\n";
  });

  // selftest --------------------------------------------------------------
  auto* self = app.add_subcommand("selftest", "run the invariant suites");
  struct {
    std::uint64_t seed = 0;
    int failed = 0;
  } st;
  self->add_option("--seed", st.seed, "suite seed");
  self->callback(
      [&st] { st.failed = qsn::cli::run_selftest(st.seed, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const qsn::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  }
  return st.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
