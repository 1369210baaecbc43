// wittquiver: Ext^1-quivers for reduced enveloping algebras of the Witt
// algebra W(1,1) in characteristic p >= 5.
//
// Subcommands:
//   quiver    compute the Ext^1-quiver at a height with a closed form
//   verify    run named conformance groups over a list of primes
//   ext       one Ext^1 dimension between two labeled modules
//   classify  analyze an explicit character (height, centralizer, reports)
//   dump      print a module's action matrices as JSON
//
// Exit codes: 0 success, 1 conformance failure, 2 usage error,
//             3 cross-engine disagreement.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wq/der1.hpp"
#include "wq/ext1.hpp"
#include "wq/midheight.hpp"
#include "wq/quiver.hpp"
#include "wq/rep.hpp"
#include "wq/verify.hpp"
#include "wq/witt.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConformance = 1;
constexpr int kUsage = 2;
constexpr int kDisagreement = 3;

std::vector<uint32_t> parse_primes(const std::string& s) {
  std::vector<uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw wq::error("not a number: '" + item + "'");
    if (v < 5 || !wq::is_prime(v)) throw wq::error("p must be a prime >= 5, got " + item);
    out.push_back(static_cast<uint32_t>(v));
  }
  if (out.empty()) throw wq::error("no primes given");
  return out;
}

uint32_t parse_one_prime(const std::string& s) {
  auto v = parse_primes(s);
  if (v.size() != 1) throw wq::error("this subcommand takes a single prime");
  return v[0];
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) if (!item.empty()) out.push_back(item);
  return out;
}

wq::Character parse_chi(const wq::GF& f, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw wq::error("--chi is not valid JSON: " + text);
  return wq::Character::from_json(f, j);
}

// One line per difference class, mirroring the clause-by-clause closed forms.
std::string quiver_text(const wq::Quiver& q) {
  std::ostringstream os;
  os << "p=" << q.p << " height=" << q.height << " family=" << q.family
     << " engine=" << q.engine << "\n";
  os << "chi=[";
  for (size_t i = 0; i < q.chi.size(); ++i) os << (i ? "," : "") << q.chi[i];
  os << "]\nnodes:";
  for (const auto& n : q.nodes) os << " " << n;
  os << "\n";
  bool numeric = true;
  for (const auto& n : q.nodes)
    numeric = numeric && !n.empty() && n.find_first_not_of("0123456789") == std::string::npos;
  if (numeric && !q.nodes.empty()) {
    uint32_t n = static_cast<uint32_t>(q.nodes.size());
    for (uint32_t d = 0; d < q.p; ++d) {
      std::ostringstream line;
      bool any = false;
      for (uint32_t mu = 0; mu < n; ++mu) {
        uint32_t lam = (mu + d) % q.p;
        if (lam >= n) continue;
        uint32_t m = q.mult(mu, lam);
        if (m == 0) continue;
        any = true;
        line << "  " << mu << "->" << lam;
        if (m > 1) line << " (x" << m << ")";
      }
      if (any) os << "difference " << d << ":" << line.str() << "\n";
    }
  } else {
    for (const auto& [k, m] : q.edges) {
      os << q.nodes[k.first] << " -> " << q.nodes[k.second];
      if (m > 1) os << " (x" << m << ")";
      os << "\n";
    }
  }
  os << "arrows: " << q.edge_count() << "\n";
  return os.str();
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw wq::error("cannot open output file " + out_path);
  f << text;
}

struct QuiverArgs {
  std::string p_str;
  std::optional<int> height;
  std::string chi_str;
  std::string family = "simple";
  std::string engine = "both";
  std::string format = "text";
  std::string out;
};

int run_quiver(const QuiverArgs& a) {
  uint32_t p = parse_one_prime(a.p_str);
  wq::Witt w(p);
  const wq::GF& f = w.f;

  std::optional<wq::Character> chi;
  if (!a.chi_str.empty()) chi = parse_chi(f, a.chi_str);
  int height = a.height.value_or(chi ? chi->height() : -1);
  if (chi && a.height && chi->height() != *a.height)
    throw wq::error("--chi has height " + std::to_string(chi->height()) +
                    ", which contradicts --height " + std::to_string(*a.height));

  auto family = wq::parse_family(a.family);
  if (!family) throw wq::error("unknown family '" + a.family + "' (verma|simple)");
  auto engine = wq::parse_engine(a.engine);
  if (!engine) throw wq::error("unknown engine '" + a.engine + "' (derivation|cocycle|both)");
  if (*family == wq::Family::verma && height != -1)
    throw wq::error("the verma family lives at chi = 0 (height -1)");

  wq::Quiver q;
  if (height == -1 || height == 0 || height == 1) {
    if (chi && !(*chi == wq::Character::representative(f, height)))
      throw wq::error(
          "at this height the quiver is computed for the standard conjugacy representative; "
          "pass --height instead of a non-representative --chi");
    if (height == -1)
      q = *family == wq::Family::verma ? wq::verma_quiver(p, *engine)
                                       : wq::simple_quiver(p, *engine);
    else if (height == 0)
      q = wq::height0_quiver(p, *engine);
    else
      q = wq::height1_quiver(p, *engine);
  } else if (height == static_cast<int>(p) - 1) {
    wq::Character c = chi ? *chi : wq::Character::representative(f, height);
    wq::TopHeightReport t = wq::classify_height_pm1(w, c);
    if (!t.quiver)
      throw wq::error("no closed-form quiver: " + t.note);
    q = *t.quiver;
  } else {
    throw wq::error("no closed-form quiver at height " + std::to_string(height) +
                    "; use `classify` for the mid-height analysis or `ext` for single pairs");
  }

  if (a.format == "text") write_out(quiver_text(q), a.out);
  else write_out(wq::emit(q, a.format), a.out);
  return kOk;
}

struct VerifyArgs {
  std::string p_str;
  std::string which_str;
  uint32_t cap = wq::Ext1Options{}.cap;
  uint64_t seed = wq::VerifyOptions{}.seed;
  uint32_t trials = 1000;
};

int run_verify_cmd(const VerifyArgs& a) {
  std::vector<uint32_t> primes = parse_primes(a.p_str);
  std::vector<std::string> which = a.which_str.empty() ? std::vector<std::string>{}
                                                       : split_commas(a.which_str);
  wq::VerifyOptions opt;
  opt.cap = a.cap;
  opt.seed = a.seed;
  opt.cocycle_trials = a.trials;
  opt.ad_trials = a.trials;
  auto results = wq::run_verify(primes, which, opt);
  bool all = true;
  bool disagreement = false;
  for (const auto& r : results) {
    all = all && r.pass;
    if (!r.pass && r.detail.find("engines disagree") != std::string::npos) disagreement = true;
    std::cout << (r.pass ? "[ OK ]" : "[FAIL]") << " " << r.group << " p=" << r.p << ": "
              << r.detail << "\n";
  }
  if (all) return kOk;
  return disagreement ? kDisagreement : kConformance;
}

struct ExtArgs {
  std::string p_str;
  std::optional<int> height;
  std::string chi_str;
  std::string source, target;
  uint32_t cap = wq::Ext1Options{}.cap;
};

// Z<k>: baby Verma at chi = 0.  L<k>: simple at heights -1, 0, 1.
// S / L (bare): the induced modules at a middle height.
struct Label {
  char kind;        // 'Z', 'L', 'S', 'M' (M = bare mid-height L)
  uint32_t index = 0;
};

Label parse_label(const std::string& s) {
  if (s == "S") return {'S', 0};
  if (s == "L") return {'M', 0};
  if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'L')) {
    size_t used = 0;
    unsigned long v = std::stoul(s.substr(1), &used);
    if (used == s.size() - 1) return {s[0], static_cast<uint32_t>(v)};
  }
  throw wq::error("unknown module label '" + s +
                  "' (expected Z<k>, L<k>, or S/L at a middle height)");
}

int run_ext(const ExtArgs& a) {
  uint32_t p = parse_one_prime(a.p_str);
  wq::Witt w(p);
  const wq::GF& f = w.f;

  std::optional<wq::Character> chi;
  if (!a.chi_str.empty()) chi = parse_chi(f, a.chi_str);
  int height = a.height.value_or(chi ? chi->height() : -1);
  if (chi && a.height && chi->height() != *a.height)
    throw wq::error("--chi has height " + std::to_string(chi->height()) +
                    ", which contradicts --height " + std::to_string(*a.height));

  Label src = parse_label(a.source), tgt = parse_label(a.target);
  wq::Ext1Options opt;
  opt.cap = a.cap;

  uint32_t dim = 0;
  std::optional<uint32_t> der;
  std::string engines = "cocycle";

  bool mid = height >= 2 && height <= static_cast<int>(p) - 2;
  if (mid) {
    wq::Character c = chi ? *chi : wq::default_midheight_character(f, height);
    auto pick = [&](const Label& l) {
      if (l.kind == 'S') return wq::midheight_S(w, c);
      if (l.kind == 'M') return wq::midheight_L(w, c);
      throw wq::error("at a middle height the labels are S and L");
    };
    wq::Rep<wq::Fp> sm = pick(src);
    wq::Rep<wq::Fp> tm = pick(tgt);
    if (sm.lo != tm.lo)
      throw wq::error("S and L live over different subalgebras; Ext between them is computed "
                      "via the restriction functor, not provided here");
    dim = wq::ext1(sm, tm, opt).dim;
  } else if (height == 1) {
    if (src.kind != 'L' || tgt.kind != 'L')
      throw wq::error("height 1 carries only the simple labels L0..L" + std::to_string(p - 1));
    if (src.index >= p || tgt.index >= p) throw wq::error("label index out of range");
    wq::GFExt e(p);
    wq::Rep<wq::Fq> sm = wq::height1_simple(e, w, f.make(src.index));
    wq::Rep<wq::Fq> tm = wq::height1_simple(e, w, f.make(tgt.index));
    dim = wq::ext1(sm, tm, opt).dim;
  } else if (height == 0) {
    if (src.kind != 'L' || tgt.kind != 'L')
      throw wq::error("height 0 carries only the simple labels L0..L" + std::to_string(p - 2));
    if (src.index + 1 >= p || tgt.index + 1 >= p)
      throw wq::error("label index out of range (height 0 has p-1 simples)");
    wq::Rep<wq::Fp> sm = wq::height0_simple(w, f.make(src.index));
    wq::Rep<wq::Fp> tm = wq::height0_simple(w, f.make(tgt.index));
    dim = wq::ext1(sm, tm, opt).dim;
  } else if (height == -1) {
    if (src.index >= p || tgt.index >= p) throw wq::error("label index out of range");
    auto build = [&](const Label& l) {
      if (l.kind == 'Z') return wq::verma(w, f.make(l.index));
      if (l.kind == 'L') return wq::simple_restricted(w, f.make(l.index));
      throw wq::error("restricted labels are Z<k> and L<k>");
    };
    wq::Rep<wq::Fp> sm = build(src);
    wq::Rep<wq::Fp> tm = build(tgt);
    dim = wq::ext1(sm, tm, opt).dim;
    if (src.kind == 'Z') {
      der = wq::restricted_h1(tm, f.make(src.index));
    } else {
      std::vector<wq::Rep<wq::Fp>> simples;
      for (uint32_t lam = 0; lam < p; ++lam)
        simples.push_back(wq::simple_restricted(w, f.make(lam)));
      der = wq::detail::simple_ext_derivation(simples, p, src.index, tgt.index);
    }
    if (der) {
      if (*der != dim)
        throw wq::engine_mismatch("engines disagree on " + a.source + " -> " + a.target +
                                  ": derivation " + std::to_string(*der) + ", cocycle " +
                                  std::to_string(dim));
      engines = "cocycle, derivation (agree)";
    }
  } else {
    throw wq::error("ext labels are defined for heights -1, 0, 1 and the middle heights");
  }

  std::cout << dim << "\n";
  std::cout << "Ext^1(" << a.source << " -> " << a.target << ") at p=" << p
            << " height=" << height << "  [engines: " << engines << "]\n";
  return kOk;
}

struct ClassifyArgs {
  std::string p_str;
  std::string chi_str;
  uint32_t cap = wq::Ext1Options{}.cap;
};

int run_classify(const ClassifyArgs& a) {
  uint32_t p = parse_one_prime(a.p_str);
  wq::Witt w(p);
  const wq::GF& f = w.f;
  if (a.chi_str.empty()) throw wq::error("classify needs an explicit --chi");
  wq::Character chi = parse_chi(f, a.chi_str);
  int height = chi.height();

  nlohmann::json j;
  j["p"] = p;
  j["chi"] = chi.to_json();
  j["height"] = height;

  auto cz = wq::centralizer(w, chi);
  wq::SubalgebraReport rep = wq::classify_restricted(w, cz);
  nlohmann::json c;
  c["dim"] = cz.size();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& v : cz) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(x.val());
    basis.push_back(row);
  }
  c["basis"] = basis;
  c["class"] = wq::to_string(rep.cls);
  c["bracket_closed"] = rep.bracket_closed;
  c["p_closed"] = rep.p_closed;
  c["abelian"] = rep.abelian;
  if (!rep.detail.empty()) c["detail"] = rep.detail;
  j["centralizer"] = c;

  if (height >= 2 && height <= static_cast<int>(p) - 2) {
    j["midheight"] = wq::analyze_midheight(w, chi, a.cap).to_json();
  } else if (height == static_cast<int>(p) - 1) {
    j["top_height"] = wq::classify_height_pm1(w, chi).to_json();
  } else {
    j["note"] = "closed-form quiver available via the quiver subcommand";
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

struct DumpArgs {
  std::string p_str;
  std::optional<int> height;
  std::string chi_str;
  std::string module;
};

int run_dump(const DumpArgs& a) {
  uint32_t p = parse_one_prime(a.p_str);
  wq::Witt w(p);
  const wq::GF& f = w.f;

  std::optional<wq::Character> chi;
  if (!a.chi_str.empty()) chi = parse_chi(f, a.chi_str);
  int height = a.height.value_or(chi ? chi->height() : -1);
  if (chi && a.height && chi->height() != *a.height)
    throw wq::error("--chi has height " + std::to_string(chi->height()) +
                    ", which contradicts --height " + std::to_string(*a.height));

  Label l = parse_label(a.module);
  bool mid = height >= 2 && height <= static_cast<int>(p) - 2;
  nlohmann::json j;
  if (mid) {
    wq::Character c = chi ? *chi : wq::default_midheight_character(f, height);
    if (l.kind == 'S') j = wq::midheight_S(w, c).to_json();
    else if (l.kind == 'M') j = wq::midheight_L(w, c).to_json();
    else throw wq::error("at a middle height the labels are S and L");
  } else if (height == 1) {
    if (l.kind != 'L' || l.index >= p) throw wq::error("height 1 labels are L0..L" + std::to_string(p - 1));
    wq::GFExt e(p);
    j = wq::height1_simple(e, w, f.make(l.index)).to_json();
  } else if (height == 0) {
    if (l.kind != 'L' || l.index + 1 >= p)
      throw wq::error("height 0 labels are L0..L" + std::to_string(p - 2));
    j = wq::height0_simple(w, f.make(l.index)).to_json();
  } else if (height == -1) {
    if (l.index >= p) throw wq::error("label index out of range");
    if (l.kind == 'Z') j = wq::verma(w, f.make(l.index)).to_json();
    else if (l.kind == 'L') j = wq::simple_restricted(w, f.make(l.index)).to_json();
    else throw wq::error("restricted labels are Z<k> and L<k>");
  } else {
    throw wq::error("dump labels are defined for heights -1, 0, 1 and the middle heights");
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ext^1-quivers for reduced enveloping algebras of the Witt algebra"};
  app.require_subcommand(1);

  QuiverArgs qa;
  auto* sq = app.add_subcommand("quiver", "compute an Ext^1-quiver");
  sq->add_option("--p", qa.p_str, "prime >= 5")->required();
  int q_height = 0;
  auto* q_height_opt = sq->add_option("--height", q_height, "character height (-1 for chi = 0)");
  sq->add_option("--chi", qa.chi_str, "character as a JSON residue array for e_-1..e_{p-2}");
  sq->add_option("--family", qa.family, "verma|simple (default simple)");
  sq->add_option("--engine", qa.engine, "derivation|cocycle|both (default both)");
  sq->add_option("--format", qa.format, "dot|json|text (default text)");
  sq->add_option("--out", qa.out, "output path (default stdout)");

  VerifyArgs va;
  auto* sv = app.add_subcommand("verify", "run conformance groups");
  sv->add_option("--p", va.p_str, "comma-separated primes")->required();
  sv->add_option("--which", va.which_str,
                 "comma-separated groups: verma,simple,h0,h1,mid,pm1,polys,duality,props "
                 "(default all)");
  sv->add_option("--cap", va.cap, "skip cocycle systems larger than this many unknowns");
  sv->add_option("--seed", va.seed, "seed for randomized trials");
  sv->add_option("--trials", va.trials, "randomized trial count (default 1000)");

  ExtArgs ea;
  auto* se = app.add_subcommand("ext", "one Ext^1 dimension between labeled modules");
  se->add_option("--p", ea.p_str, "prime >= 5")->required();
  int e_height = 0;
  auto* e_height_opt = se->add_option("--height", e_height, "character height");
  se->add_option("--chi", ea.chi_str, "character as a JSON residue array");
  se->add_option("--cap", ea.cap, "cocycle system size cap");
  se->add_option("source", ea.source, "source label (Z<k>, L<k>, S, L)")->required();
  se->add_option("target", ea.target, "target label")->required();

  ClassifyArgs ca;
  auto* sc = app.add_subcommand("classify", "analyze an explicit character");
  sc->add_option("--p", ca.p_str, "prime >= 5")->required();
  sc->add_option("--chi", ca.chi_str, "character as a JSON residue array")->required();
  sc->add_option("--cap", ca.cap, "cocycle system size cap");

  DumpArgs da;
  auto* sd = app.add_subcommand("dump", "print a module's matrices as JSON");
  sd->add_option("--p", da.p_str, "prime >= 5")->required();
  int d_height = 0;
  auto* d_height_opt = sd->add_option("--height", d_height, "character height");
  sd->add_option("--chi", da.chi_str, "character as a JSON residue array");
  sd->add_option("--module", da.module, "module label (Z<k>, L<k>, S, L)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sq) {
      if (*q_height_opt) qa.height = q_height;
      return run_quiver(qa);
    }
    if (*sv) return run_verify_cmd(va);
    if (*se) {
      if (*e_height_opt) ea.height = e_height;
      return run_ext(ea);
    }
    if (*sc) return run_classify(ca);
    if (*sd) {
      if (*d_height_opt) da.height = d_height;
      return run_dump(da);
    }
  } catch (const wq::engine_mismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDisagreement;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
