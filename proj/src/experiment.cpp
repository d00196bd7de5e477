#include "cosetlab/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "cosetlab/contracting.hpp"
#include "cosetlab/convergence.hpp"
#include "cosetlab/finite_rep.hpp"
#include "cosetlab/folner.hpp"
#include "cosetlab/gram.hpp"
#include "cosetlab/thinness.hpp"

namespace cosetlab {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Strict config access: every field must be consumed.

class Fields {
 public:
  explicit Fields(const json& j) : j_(j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
  }

  const json* opt(const std::string& name) {
    seen_.insert(name);
    auto it = j_.find(name);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& req(const std::string& name) {
    const json* v = opt(name);
    if (!v) throw ConfigError("missing config field \"" + name + "\"");
    return *v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown config field \"" + it.key() + "\"");
  }

 private:
  const json& j_;
  std::set<std::string> seen_;
};

long as_long(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<long>();
}

std::string as_str(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

// ---------------------------------------------------------------------------
// Selectors.

Group parse_group(const json& j) {
  Fields f(j);
  std::string kind = as_str(f.req("kind"), "group.kind");
  Group g = Group::heis();
  if (kind == "zd") g = Group::int_vec(static_cast<int>(as_long(f.req("d"), "group.d")));
  else if (kind == "heis") g = Group::heis();
  else if (kind == "lampbs") g = Group::lamp_bs(static_cast<int>(as_long(f.req("p"), "group.p")));
  else if (kind == "affq") g = Group::aff_q();
  else if (kind == "sym0") g = Group::fin_perm();
  else if (kind == "cyc") g = Group::cyc(as_long(f.req("m"), "group.m"));
  else throw ConfigError("unknown group kind \"" + kind + "\"");
  f.finish();
  return g;
}

Subgroup parse_subgroup(const json& j, const Group& g) {
  Fields f(j);
  std::string kind = as_str(f.req("kind"), "subgroup.kind");
  Subgroup s;
  if (kind == "trivial") s = Subgroup::trivial();
  else if (kind == "heis-center") s = Subgroup::heis_center();
  else if (kind == "zd-slice")
    s = Subgroup::zd_slice(static_cast<int>(as_long(f.req("j"), "subgroup.j")), g.d);
  else if (kind == "lampbs-base") s = Subgroup::lamp_base();
  else if (kind == "lampbs-normal") s = Subgroup::lamp_normal();
  else if (kind == "symfix") {
    std::vector<long> K;
    for (const auto& x : f.req("K")) K.push_back(as_long(x, "subgroup.K entry"));
    s = Subgroup::sym_fix(std::move(K));
  } else if (kind == "aff-scale") s = Subgroup::aff_scale();
  else if (kind == "full") s = Subgroup::full_group();
  else if (kind == "finite") {
    std::vector<GroupElement> gens;
    for (const auto& x : f.req("generators"))
      gens.push_back(parse_element(as_str(x, "subgroup generator")));
    s = Subgroup::finite(std::move(gens));
  } else {
    throw ConfigError("unknown subgroup kind \"" + kind + "\"");
  }
  f.finish();
  return s;
}

FolnerGen parse_folner(const json& j) {
  Fields f(j);
  std::string kind = as_str(f.req("kind"), "folner.kind");
  FolnerGen gen = FolnerGen::box(1);
  if (kind == "box") {
    bool centered = false;
    if (const json* c = f.opt("centered")) centered = c->get<bool>();
    gen = FolnerGen::box(static_cast<int>(as_long(f.req("d"), "folner.d")), centered);
  } else if (kind == "heis-box") {
    gen = FolnerGen::heis_box();
  } else if (kind == "sym-ball") {
    gen = FolnerGen::sym_ball();
  } else if (kind == "lamp-line") {
    gen = FolnerGen::lamp_line(static_cast<int>(as_long(f.req("p"), "folner.p")));
  } else if (kind == "aff-rect") {
    int p = 2;
    if (const json* pp = f.opt("p")) p = static_cast<int>(as_long(*pp, "folner.p"));
    gen = FolnerGen::semidirect_rect(FolnerGen::aff_trans_box(), FolnerGen::aff_scale_geom(p));
  } else if (kind == "cyc-interval") {
    gen = FolnerGen::cyc_interval(as_long(f.req("m"), "folner.m"));
  } else if (kind == "translated") {
    FolnerGen base = parse_folner(f.req("base"));
    std::vector<GroupElement> tr;
    for (const auto& x : f.req("translations"))
      tr.push_back(parse_element(as_str(x, "translation")));
    gen = FolnerGen::translated(std::move(base), std::move(tr));
  } else {
    throw ConfigError("unknown folner kind \"" + kind + "\"");
  }
  f.finish();
  return gen;
}

PosDefFn parse_phi(const json& j) {
  Fields f(j);
  std::string kind = as_str(f.req("kind"), "phi.kind");
  if (kind == "delta") {
    // bi-H-invariant delta seed: needs the subgroup and its ambient group
    Group g = parse_group(f.req("group"));
    Subgroup h = parse_subgroup(f.req("subgroup"), g);
    f.finish();
    return PosDefFn::delta_at(std::move(h));
  }
  if (kind == "one") {
    Subgroup h = Subgroup::trivial();
    if (const json* sj = f.opt("subgroup")) {
      Group g = parse_group(f.req("group"));
      h = parse_subgroup(*sj, g);
    }
    f.finish();
    return PosDefFn::const_one(std::move(h));
  }
  if (kind == "bochner") {
    std::vector<TorusAtom> atoms;
    for (const auto& aj : f.req("atoms")) {
      Fields af(aj);
      TorusAtom atom;
      for (const auto& t : af.req("theta")) atom.theta.push_back(parse_rat(as_str(t, "theta")));
      atom.weight = parse_rat(as_str(af.req("weight"), "weight"));
      af.finish();
      atoms.push_back(std::move(atom));
    }
    DualAction action = DualAction::None;
    int p = 0;
    if (const json* aj = f.opt("action")) {
      std::string a = as_str(*aj, "phi.action");
      if (a == "none") action = DualAction::None;
      else if (a == "inversion") action = DualAction::Inversion;
      else if (a == "times-p") {
        action = DualAction::TimesP;
        p = static_cast<int>(as_long(f.req("p"), "phi.p"));
      } else throw ConfigError("unknown dual action \"" + a + "\"");
    }
    f.finish();
    return PosDefFn::bochner(std::move(atoms), action, p);
  }
  throw ConfigError("unknown phi kind \"" + kind + "\"");
}

GroupElement sample_element(const Group& g, Rng& rng, long radius) {
  switch (g.tag) {
    case GroupTag::IntVec: {
      std::vector<Int> v;
      for (int i = 0; i < g.d; ++i) v.emplace_back(rng.uniform(-radius, radius));
      return make_int_vec(std::move(v));
    }
    case GroupTag::Heis:
      return make_heis(rng.uniform(-radius, radius), rng.uniform(-radius, radius),
                       rng.uniform(-radius * radius, radius * radius));
    case GroupTag::LampBS: {
      long k = rng.uniform(0, 3);
      Int den = pow_int(Int(g.p), static_cast<unsigned long>(k));
      Rat b(Int(rng.uniform(-radius, radius)), den);
      b.canonicalize();
      return make_lamp_bs(g.p, b, Int(rng.uniform(-2, 2)));
    }
    case GroupTag::AffQ: {
      static const long scales_num[] = {1, 2, 3, 1, 1, -1, -2, 5};
      static const long scales_den[] = {1, 1, 1, 2, 3, 1, 1, 2};
      long i = rng.uniform(0, 7);
      return make_aff_q(Rat(rng.uniform(-radius, radius)),
                        make_rat(scales_num[i], scales_den[i]));
    }
    case GroupTag::FinPerm: {
      long top = std::max<long>(radius, 1);
      std::vector<long> images(top + 1);
      for (long i = 0; i <= top; ++i) images[i] = i;
      for (long i = top; i > 0; --i) std::swap(images[i], images[rng.uniform(0, i)]);
      std::vector<std::pair<long, long>> map;
      for (long i = 0; i <= top; ++i) map.emplace_back(i, images[i]);
      return make_fin_perm(std::move(map));
    }
    case GroupTag::Cyc: return make_cyc(g.m, rng.uniform(0, g.m - 1));
    case GroupTag::Pair: {
      GroupElement x = sample_element(*g.inner, rng, radius);
      GroupElement y = sample_element(*g.inner, rng, radius);
      return make_pair(std::move(x), std::move(y));
    }
  }
  throw UsageError("unknown group tag");
}

// ---------------------------------------------------------------------------
// Output.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> r) {
    if (r.size() != columns.size()) throw UsageError("row width mismatch");
    rows.push_back(std::move(r));
  }
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Emitter {
  std::string out_dir;
  std::string experiment;
  std::string label;
  json resolved;
  std::string format = "csv";
  std::vector<std::string> files;

  void resolve(const std::string& key, json value) { resolved[key] = std::move(value); }

  std::string path(const std::string& ext) const {
    return out_dir + "/" + experiment + "." + ext;
  }

  void write_table(const Table& t) {
    std::filesystem::create_directories(out_dir);
    if (format == "csv") {
      std::ofstream os(path("csv"), std::ios::binary);
      if (!os) throw ConfigError("cannot open output file " + path("csv"));
      os << "# " << kToolVersion << "\n";
      os << "# experiment: " << experiment << " -- " << label << "\n";
      os << "# config: " << resolved.dump() << "\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.columns[i]);
      os << "\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
        os << "\n";
      }
      files.push_back(path("csv"));
    } else {
      json doc;
      doc["meta"] = {{"tool", kToolVersion}, {"experiment", experiment},
                     {"label", label}, {"config", resolved}};
      json rows = json::array();
      for (const auto& r : t.rows) {
        json obj;
        for (std::size_t i = 0; i < r.size(); ++i) obj[t.columns[i]] = r[i];
        rows.push_back(std::move(obj));
      }
      doc["rows"] = std::move(rows);
      std::ofstream os(path("json"), std::ios::binary);
      if (!os) throw ConfigError("cannot open output file " + path("json"));
      os << doc.dump(2) << "\n";
      files.push_back(path("json"));
    }
  }

  void write_json_doc(json payload) {
    std::filesystem::create_directories(out_dir);
    json doc;
    doc["meta"] = {{"tool", kToolVersion}, {"experiment", experiment},
                   {"label", label}, {"config", resolved}};
    doc["report"] = std::move(payload);
    std::ofstream os(path("json"), std::ios::binary);
    if (!os) throw ConfigError("cannot open output file " + path("json"));
    os << doc.dump(2) << "\n";
    files.push_back(path("json"));
  }
};

std::string num(const Rat& q) { return q.get_num().get_str(); }
std::string den(const Rat& q) { return q.get_den().get_str(); }
std::string flt(const Rat& q) { return double_str(q.get_d()); }

// ---------------------------------------------------------------------------
// Common knobs.

struct Common {
  long nmin = 1, nmax = 8;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  std::string scalar_mode = "exact";
};

Common parse_common(Fields& f, Emitter& em, bool wants_range = true) {
  Common c;
  if (const json* v = f.opt("nmin")) c.nmin = as_long(*v, "nmin");
  if (const json* v = f.opt("nmax")) c.nmax = as_long(*v, "nmax");
  else if (wants_range) throw ConfigError("missing config field \"nmax\"");
  if (c.nmin < 1 || c.nmax < c.nmin) throw ConfigError("bad n range");
  if (const json* v = f.opt("seed")) {
    if (!v->is_number_unsigned() && !v->is_number_integer())
      throw ConfigError("seed must be an integer");
    c.seed = v->get<std::uint64_t>();
  }
  if (const json* v = f.opt("budget")) c.budget = static_cast<std::size_t>(as_long(*v, "budget"));
  if (const json* v = f.opt("format")) {
    em.format = as_str(*v, "format");
    if (em.format != "csv" && em.format != "json")
      throw ConfigError("format must be csv or json");
  }
  if (const json* v = f.opt("scalar_mode")) {
    c.scalar_mode = as_str(*v, "scalar_mode");
    if (c.scalar_mode != "exact" && c.scalar_mode != "float")
      throw ConfigError("scalar_mode must be exact or float");
  }
  // the header echoes the fully resolved settings, not just the given ones
  em.resolve("seed", c.seed);
  em.resolve("nmin", c.nmin);
  if (wants_range) em.resolve("nmax", c.nmax);
  em.resolve("budget", c.budget);
  em.resolve("format", em.format);
  em.resolve("scalar_mode", c.scalar_mode);
  return c;
}

// ---------------------------------------------------------------------------
// Experiments.

void run_defect(Fields& f, Emitter& em) {
  em.label = "symmetric-difference ratios of Folner sets under translation";
  Common c = parse_common(f, em);
  FolnerGen gen = parse_folner(f.req("folner"));
  std::string side = "left";
  if (const json* s = f.opt("side")) side = as_str(*s, "side");
  if (side != "left" && side != "right" && side != "both")
    throw ConfigError("side must be left, right or both");
  std::vector<GroupElement> translates;
  for (const auto& t : f.req("translates"))
    translates.push_back(parse_element(as_str(t, "translate")));
  f.finish();

  Table t;
  t.columns = {"generator", "n",          "size",       "translate", "side",
               "defect_num", "defect_den", "defect_float"};
  for (long n = c.nmin; n <= c.nmax; ++n) {
    FiniteSet fn = generate(gen, n, c.budget);
    for (const auto& tr : translates) {
      if (side != "right") {
        Rat d = left_defect(fn, tr);
        t.row({gen.name(), std::to_string(n), std::to_string(fn.size()), encode(tr), "left",
               num(d), den(d), flt(d)});
      }
      if (side != "left") {
        Rat d = right_defect(fn, tr);
        t.row({gen.name(), std::to_string(n), std::to_string(fn.size()), encode(tr), "right",
               num(d), den(d), flt(d)});
      }
    }
  }
  em.write_table(t);
}

void run_adversarial(Fields& f, Emitter& em) {
  em.label = "conjugated right translates breaking the right Folner property";
  Common c = parse_common(f, em);
  FolnerGen gen = parse_folner(f.req("folner"));
  GroupElement tr = parse_element(as_str(f.req("translate"), "translate"));
  long search_budget = 64;
  if (const json* v = f.opt("search_budget")) search_budget = as_long(*v, "search_budget");
  f.finish();
  em.resolve("search_budget", search_budget);

  Table t;
  t.columns = {"n",         "size",      "translate",      "status",
               "conjugator", "ratio_num", "ratio_den",      "left_defect_num",
               "left_defect_den", "left_defect_float"};
  for (long n = c.nmin; n <= c.nmax; ++n) {
    FiniteSet fn = generate(gen, n, c.budget);
    AdversarialResult adv = adversarial_translate(fn, tr, search_budget);
    Rat ld = left_defect(fn, tr);
    t.row({std::to_string(n), std::to_string(fn.size()), encode(tr),
           adv.found ? "ok" : "search-exhausted", adv.found ? encode(adv.s) : "",
           num(adv.ratio), den(adv.ratio), num(ld), den(ld), flt(ld)});
  }
  em.write_table(t);
}

void run_weak_et(Fields& f, Emitter& em) {
  em.label = "weak pairings of ergodic averages against a fixed vector";
  Common c = parse_common(f, em);
  Group g = parse_group(f.req("group"));
  Subgroup h = parse_subgroup(f.req("subgroup"), g);
  FolnerGen gen = parse_folner(f.req("folner"));
  f.finish();

  SparseVector v = SparseVector::delta(identity_key(h, g));
  auto curve = weak_pairing_curve(gen, v, v, h, c.nmax, c.budget);
  Table t;
  t.columns = {"n", "size", "pairing_re_num", "pairing_re_den",
               "pairing_im_num", "pairing_im_den", "pairing_abs_float"};
  for (const auto& pt : curve) {
    if (pt.n < c.nmin) continue;
    t.row({std::to_string(pt.n), std::to_string(pt.set_size), num(pt.pairing.re),
           den(pt.pairing.re), num(pt.pairing.im), den(pt.pairing.im),
           double_str(std::sqrt(pt.pairing.abs_sq().get_d()))});
  }
  em.write_table(t);
}

void run_rset_demo(Fields& f, Emitter& em) {
  em.label = "norm decay of averages over right-Folner quotient boxes";
  Common c = parse_common(f, em);
  f.finish();
  Group g = Group::heis();
  Subgroup h = Subgroup::heis_center();
  GroupElement s = make_heis(1, 0, 0);

  Table t;
  t.columns = {"n",           "size",        "norm_sq_num", "norm_sq_den",
               "norm_sq_float", "defect_num", "defect_den"};
  for (long n = c.nmin; n <= c.nmax; ++n) {
    auto keys = quotient_box_keys(h, g, n);
    FiniteSet lifts = quotient_box_lifts(h, g, n);
    Rat nsq = avg_norm_sq_delta(lifts, h);
    Rat expect(1, (2 * n + 1) * (2 * n + 1));
    expect.canonicalize();
    if (nsq != expect)
      throw InvariantFailure("quotient box norm differs from 1/(2n+1)^2 at n=" +
                             std::to_string(n));
    Rat d = triple_right_defect(keys, s, h);
    t.row({std::to_string(n), std::to_string(lifts.size()), num(nsq), den(nsq), flt(nsq),
           num(d), den(d)});
  }
  em.write_table(t);
}

void run_firm_demo(Fields& f, Emitter& em) {
  em.label = "translate-independent averaged norms along right-Folner sets";
  Common c = parse_common(f, em);
  std::string instance = as_str(f.req("instance"), "instance");
  long count = 100;
  if (const json* v = f.opt("translate_count")) count = as_long(*v, "translate_count");
  long radius = 50;
  if (const json* v = f.opt("translate_radius")) radius = as_long(*v, "translate_radius");
  f.finish();
  em.resolve("translate_count", count);
  em.resolve("translate_radius", radius);

  Group g = Group::heis();
  Subgroup h = Subgroup::heis_center();
  FolnerGen gen = FolnerGen::heis_box();
  FirmBound bound = FirmBound::HeisCenterBox;
  if (instance == "heis-center") {
  } else if (instance == "zd-slice") {
    g = Group::int_vec(2);
    h = Subgroup::zd_slice(2, 2);
    gen = FolnerGen::box(2);
    bound = FirmBound::ZdSliceBox;
  } else if (instance == "cyc-full") {
    g = Group::cyc(12);
    h = Subgroup::full_group();
    gen = FolnerGen::cyc_interval(12);
    bound = FirmBound::FullTrivial;
  } else {
    throw ConfigError("unknown firm-demo instance \"" + instance + "\"");
  }

  Rng rng(c.seed);
  std::vector<GroupElement> translates;
  translates.push_back(identity(g));
  for (long i = 1; i < count; ++i) translates.push_back(sample_element(g, rng, radius));

  auto curve = firm_demo(gen, h, translates, c.nmax, bound, c.budget);
  Table t;
  t.columns = {"n",        "size",      "translates", "max_norm_sq_num", "max_norm_sq_den",
               "min_norm_sq_num", "min_norm_sq_den", "zero_variance"};
  for (const auto& pt : curve) {
    if (pt.n < c.nmin) continue;
    t.row({std::to_string(pt.n), std::to_string(pt.size), std::to_string(count),
           num(pt.max_norm_sq), den(pt.max_norm_sq), num(pt.min_norm_sq),
           den(pt.min_norm_sq), pt.max_norm_sq == pt.min_norm_sq ? "1" : "0"});
  }
  em.write_table(t);
}

void run_flabby(Fields& f, Emitter& em, bool sym) {
  em.label = "unit-norm averages along contracted translates (mean theorem fails)";
  Common c = parse_common(f, em);
  ContractingTriple triple = ContractingTriple::hnn_zp(2);
  FolnerGen gen = FolnerGen::lamp_line(2);
  if (sym) {
    std::vector<long> K;
    for (const auto& x : f.req("K")) K.push_back(as_long(x, "K entry"));
    triple = ContractingTriple::sym(std::move(K));
    gen = FolnerGen::sym_ball();
  } else if (const json* v = f.opt("p")) {
    int p = static_cast<int>(as_long(*v, "p"));
    triple = ContractingTriple::hnn_zp(p);
    gen = FolnerGen::lamp_line(p);
  }
  f.finish();

  auto curve = flabby_demo(triple, gen, c.nmax, c.budget);
  Table t;
  t.columns = {"n",           "size",        "conjugator",  "norm_sq_num", "norm_sq_den",
               "pairing_num", "pairing_den", "distinct_keys"};
  for (const auto& pt : curve) {
    if (pt.n < c.nmin) continue;
    if (pt.norm_sq != 1)
      throw InvariantFailure("contracted average lost norm one at n=" + std::to_string(pt.n));
    t.row({std::to_string(pt.n), std::to_string(pt.size), encode(pt.conjugator),
           num(pt.norm_sq), den(pt.norm_sq), num(pt.weak_pairing), den(pt.weak_pairing),
           std::to_string(pt.distinct_keys)});
  }
  em.write_table(t);
}

void run_thinness(Fields& f, Emitter& em) {
  em.label = "double-coset density bounds for induced averages";
  Common c = parse_common(f, em);
  std::string instance = as_str(f.req("instance"), "instance");
  long count = 8;
  if (const json* v = f.opt("translate_count")) count = as_long(*v, "translate_count");
  long radius = 20;
  if (const json* v = f.opt("translate_radius")) radius = as_long(*v, "translate_radius");
  f.finish();
  em.resolve("translate_count", count);
  em.resolve("translate_radius", radius);

  Group g = Group::int_vec(2);
  Subgroup l = Subgroup::zd_slice(2, 2);
  FolnerGen gen = FolnerGen::box(2);
  if (instance == "zd-slice") {
  } else if (instance == "affq-rect") {
    g = Group::aff_q();
    l = Subgroup::aff_scale();
    gen = FolnerGen::semidirect_rect(FolnerGen::aff_trans_box(), FolnerGen::aff_scale_geom(2));
  } else if (instance == "full-group") {
    l = Subgroup::full_group();
  } else {
    throw ConfigError("unknown thinness instance \"" + instance + "\"");
  }

  Rng rng(c.seed);
  std::vector<GroupElement> translates;
  for (long i = 0; i < count; ++i) translates.push_back(sample_element(g, rng, radius));

  auto curve = induced_firmness_curve(gen, l, translates, c.nmax, c.budget);
  Table t;
  t.columns = {"n",         "size",      "worst_corr_num", "worst_corr_den",
               "bound_num", "bound_den", "bound_float"};
  for (const auto& pt : curve) {
    if (pt.n < c.nmin) continue;
    if (pt.worst_corr > pt.bound)
      throw InvariantFailure("correlation exceeded its certified bound at n=" +
                             std::to_string(pt.n));
    t.row({std::to_string(pt.n), std::to_string(pt.size), num(pt.worst_corr),
           den(pt.worst_corr), num(pt.bound), den(pt.bound), flt(pt.bound)});
  }
  em.write_table(t);
}

void run_gns_window(Fields& f, Emitter& em) {
  em.label = "Gram windows of positive-definite seeds and their compressions";
  Common c = parse_common(f, em, false);
  Group g = parse_group(f.req("group"));
  Subgroup h = parse_subgroup(f.req("subgroup"), g);
  PosDefFn phi = parse_phi(f.req("phi"));
  const json& wj = f.req("window");
  Fields wf(wj);
  std::vector<GroupElement> gens;
  for (const auto& x : wf.req("generators"))
    gens.push_back(parse_element(as_str(x, "window generator")));
  long radius = as_long(wf.req("radius"), "window.radius");
  wf.finish();
  std::vector<GroupElement> elements;
  if (const json* ej = f.opt("elements"))
    for (const auto& x : *ej) elements.push_back(parse_element(as_str(x, "element")));
  f.finish();

  std::vector<CosetKey> window = orbit_window(gens, h, g, static_cast<int>(radius), c.budget);
  GramWindow w = build_gram(phi, window, h, g);
  if (c.scalar_mode == "float") {
    w.exact = false;
    w.mq.clear();
  }
  PsdVerdict psd = psd_check(w);
  json rep;
  rep["phi"] = phi.name();
  rep["window_size"] = w.keys.size();
  rep["exact"] = w.exact;
  json keylist = json::array();
  for (const auto& k : w.keys) keylist.push_back(encode(k));
  rep["window_keys"] = std::move(keylist);
  rep["psd"] = psd.psd;
  if (psd.exact_mode) {
    json pivots = json::array();
    for (const auto& p : psd.pivots) pivots.push_back(rat_str(p));
    rep["pivots"] = std::move(pivots);
  } else {
    rep["min_eigenvalue"] = psd.min_eigenvalue;
  }
  if (!psd.psd) throw InvariantFailure("catalog Gram window is not positive semidefinite");

  GnsBasis basis = gns_quotient(w);
  rep["rank"] = basis.rank;

  json comps = json::array();
  for (const auto& e : elements) {
    CompressedRep cr = compressed_rep(phi, w, e);
    json cj;
    cj["element"] = encode(e);
    cj["exact"] = cr.exact_mode;
    cj["unitary_exact"] = cr.unitary_exact;
    cj["leakage"] = cr.leakage_exact ? rat_str(cr.leakage_q) : double_str(cr.leakage_f);
    json mat = json::array();
    for (const auto& row : cr.a) {
      json r = json::array();
      for (const auto& z : row) {
        r.push_back(json::array({z.real(), z.imag()}));
      }
      mat.push_back(std::move(r));
    }
    cj["matrix"] = std::move(mat);
    comps.push_back(std::move(cj));
  }
  rep["compressed"] = std::move(comps);
  em.write_json_doc(std::move(rep));
}

struct SplitInstance {
  std::string name;
  std::vector<GroupElement> group_gens, h, l;
};

std::vector<GroupElement> cyc_subgroup(long m, long gen) {
  std::vector<GroupElement> out;
  for (long x = 0; x < m; x += gen ? gen : m) {
    out.push_back(make_cyc(m, x));
    if (gen == 0) break;
  }
  return out;
}

std::vector<GroupElement> perm_closure(const std::vector<GroupElement>& gens) {
  return regular_rep(gens).elements;
}

std::vector<SplitInstance> splitting_catalog() {
  std::vector<SplitInstance> out;
  auto cyc_inst = [&](long m, long hgen, long lgen) {
    SplitInstance si;
    si.name = "cyc" + std::to_string(m) + "/h" + std::to_string(hgen) + "/l" +
              std::to_string(lgen);
    si.group_gens = {make_cyc(m, 1)};
    si.h = cyc_subgroup(m, hgen);
    si.l = cyc_subgroup(m, lgen);
    return si;
  };
  // Cyclic testbeds (h/l generated by the given residues; 0 means trivial).
  out.push_back(cyc_inst(4, 0, 1));
  out.push_back(cyc_inst(4, 2, 1));
  out.push_back(cyc_inst(4, 2, 2));
  out.push_back(cyc_inst(6, 0, 2));
  out.push_back(cyc_inst(6, 3, 1));
  out.push_back(cyc_inst(6, 2, 1));
  out.push_back(cyc_inst(8, 4, 2));
  out.push_back(cyc_inst(8, 0, 4));
  out.push_back(cyc_inst(8, 2, 1));
  out.push_back(cyc_inst(12, 6, 2));
  out.push_back(cyc_inst(12, 6, 3));
  out.push_back(cyc_inst(12, 4, 2));
  out.push_back(cyc_inst(12, 0, 3));

  auto p = [](std::initializer_list<std::initializer_list<long>> cycles) {
    std::vector<std::vector<long>> c;
    for (auto& cy : cycles) c.emplace_back(cy);
    return make_perm_cycles(c);
  };
  GroupElement e = make_fin_perm({});

  // Symmetric group testbeds.
  out.push_back({"s3/trivial/a3", {p({{0, 1}}), p({{0, 1, 2}})}, {e}, perm_closure({p({{0, 1, 2}})})});
  out.push_back({"s3/t01/t01", {p({{0, 1}}), p({{0, 1, 2}})}, perm_closure({p({{0, 1}})}),
                 perm_closure({p({{0, 1}})})});
  out.push_back({"s3/trivial/s3", {p({{0, 1}}), p({{0, 1, 2}})}, {e},
                 perm_closure({p({{0, 1}}), p({{0, 1, 2}})})});
  out.push_back({"s4/t01/klein-01-23", {p({{0, 1}}), p({{0, 1, 2, 3}})},
                 perm_closure({p({{0, 1}})}), perm_closure({p({{0, 1}}), p({{2, 3}})})});
  out.push_back({"s4/v4/v4", {p({{0, 1}}), p({{0, 1, 2, 3}})},
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})}),
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})})});
  out.push_back({"s4/trivial/v4", {p({{0, 1}}), p({{0, 1, 2, 3}})}, {e},
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})})});
  out.push_back({"s4/v4/a4", {p({{0, 1}}), p({{0, 1, 2, 3}})},
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})}),
                 perm_closure({p({{0, 1, 2}}), p({{0, 1}, {2, 3}})})});
  out.push_back({"s4/v4/s4", {p({{0, 1}}), p({{0, 1, 2, 3}})},
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})}),
                 perm_closure({p({{0, 1}}), p({{0, 1, 2, 3}})})});
  out.push_back({"a4/v4/a4", {p({{0, 1, 2}}), p({{0, 1}, {2, 3}})},
                 perm_closure({p({{0, 1}, {2, 3}}), p({{0, 2}, {1, 3}})}),
                 perm_closure({p({{0, 1, 2}}), p({{0, 1}, {2, 3}})})});
  out.push_back({"d4/center/d4", {p({{0, 1, 2, 3}}), p({{0, 2}})},
                 perm_closure({p({{0, 2}, {1, 3}})}),
                 perm_closure({p({{0, 1, 2, 3}}), p({{0, 2}})})});
  out.push_back({"s5/a5/s5", {p({{0, 1}}), p({{0, 1, 2, 3, 4}})},
                 perm_closure({p({{0, 1, 2}}), p({{0, 1, 2, 3, 4}})}),
                 perm_closure({p({{0, 1}}), p({{0, 1, 2, 3, 4}})})});

  // Direct product testbed through Pair.
  GroupElement c3 = make_cyc(3, 1);
  GroupElement id3 = make_cyc(3, 0);
  out.push_back({"cyc3xcyc3/diag/full",
                 {make_pair(c3, id3), make_pair(id3, c3)},
                 perm_closure({make_pair(c3, c3)}),
                 perm_closure({make_pair(c3, id3), make_pair(id3, c3)})});
  return out;
}

void run_splitting(Fields& f, Emitter& em) {
  em.label = "exact fixed-space splittings on finite testbeds";
  parse_common(f, em, false);
  f.finish();

  json rows = json::array();
  bool all_ok = true;
  for (const auto& inst : splitting_catalog()) {
    FiniteRep rep = regular_rep(inst.group_gens);
    SplitReport rpt = verify_splitting(rep, inst.h, inst.l);
    json r;
    r["instance"] = inst.name;
    r["order"] = rep.dim();
    r["dim_h"] = rpt.dim_h;
    r["dim_l"] = rpt.dim_l;
    r["dim_cobnd"] = rpt.dim_cobnd;
    r["crossterm"] = rat_str(rpt.max_abs_cross);
    r["pass"] = rpt.dims_ok && rpt.cross_ok;
    all_ok = all_ok && rpt.dims_ok && rpt.cross_ok;
    rows.push_back(std::move(r));
  }
  json rep;
  rep["instances"] = std::move(rows);
  rep["all_pass"] = all_ok;
  em.write_json_doc(std::move(rep));
  if (!all_ok) throw InvariantFailure("a splitting instance failed");
}

void run_transfer(Fields& f, Emitter& em) {
  em.label = "translate transport of Folner averages to fixed windows";
  Common c = parse_common(f, em, false);
  std::string phi_kind = as_str(f.req("phi"), "phi");
  long mmax = 16;
  if (const json* v = f.opt("mmax")) mmax = as_long(*v, "mmax");
  long scan_nmax = 16;
  if (const json* v = f.opt("scan_nmax")) scan_nmax = as_long(*v, "scan_nmax");
  long scan_nmin = std::max<long>(1, scan_nmax / 2);
  if (const json* v = f.opt("scan_nmin")) scan_nmin = as_long(*v, "scan_nmin");
  Rat const_value(0);
  if (phi_kind == "const") const_value = parse_rat(as_str(f.req("value"), "value"));
  f.finish();
  em.resolve("mmax", mmax);
  em.resolve("scan_nmin", scan_nmin);
  em.resolve("scan_nmax", scan_nmax);

  // phi lives on an integer window wide enough for K_m * F_n.
  long w = mmax + 4 * scan_nmax + 8;
  std::map<GroupElement, Rat> table;
  for (long x = -w; x <= w; ++x) {
    Rat v;
    if (phi_kind == "parity") v = Rat((x % 2 + 2) % 2 == 0 ? 1 : 0);
    else if (phi_kind == "delta0") v = Rat(x == 0 ? 1 : 0);
    else if (phi_kind == "const") v = const_value;
    else throw ConfigError("unknown transfer phi \"" + phi_kind + "\"");
    table[make_int_vec({Int(x)})] = v;
  }

  // F_n = [0, 2n).
  FolnerGen gen = FolnerGen::box(1, false, 2);
  Table t;
  t.columns = {"m",         "status",       "chosen_n",  "t_m",       "achieved_num",
               "achieved_den", "beta_num", "beta_den", "target_num", "target_den"};
  for (long m = 1; m <= mmax; ++m) {
    std::vector<GroupElement> km_elems;
    for (long s = 0; s < m; ++s) km_elems.push_back(make_int_vec({Int(s)}));
    FiniteSet km(std::move(km_elems));
    TransferResult res = transfer_search(table, gen, km, m, scan_nmin, scan_nmax, c.budget);
    Rat target = res.beta_hat - Rat(1, m);
    target.canonicalize();
    t.row({std::to_string(m), res.conclusive ? "ok" : "inconclusive",
           std::to_string(res.chosen_n), res.conclusive ? encode(res.t_m) : "",
           num(res.achieved), den(res.achieved), num(res.beta_hat), den(res.beta_hat),
           num(target), den(target)});
  }
  em.write_table(t);
}

void run_rajchman(Fields& f, Emitter& em) {
  em.label = "sup-norm decay of orthonormal averages with square checkpoints";
  Common c = parse_common(f, em, false);
  long m = 4096, count = 512;
  if (const json* v = f.opt("m")) m = as_long(*v, "m");
  if (const json* v = f.opt("count")) count = as_long(*v, "count");
  long nmax = count;
  if (const json* v = f.opt("nmax")) nmax = as_long(*v, "nmax");
  std::string family = "random";
  if (const json* v = f.opt("family")) family = as_str(*v, "family");
  f.finish();
  em.resolve("m", m);
  em.resolve("count", count);
  em.resolve("nmax", nmax);
  em.resolve("family", family);

  OrthonormalFamily fam =
      family == "scaled-basis"
          ? scaled_basis_family(static_cast<std::size_t>(m), static_cast<std::size_t>(count))
          : random_orthonormal_family(static_cast<std::size_t>(m),
                                      static_cast<std::size_t>(count), c.seed);
  RajchmanReport rpt = rajchman_demo(fam, nmax);
  if (!rpt.bridging_ok) throw InvariantFailure("bridging bound failed");

  Table t;
  t.columns = {"n", "square", "sup_avg"};
  for (const auto& pt : rpt.curve)
    t.row({std::to_string(pt.n), pt.square ? "1" : "0", double_str(pt.sup_avg)});
  em.write_table(t);
}

void run_rigid_check(Fields& f, Emitter& em) {
  em.label = "orbit-constancy of scale-invariant seeds on the affine group";
  parse_common(f, em, false);
  std::string table_kind = "delta-at-affscale";
  if (const json* v = f.opt("table")) table_kind = as_str(*v, "table");
  long radius = 6;
  if (const json* v = f.opt("window_radius")) radius = as_long(*v, "window_radius");
  const json* explicit_rows = f.opt("rows");
  f.finish();

  std::vector<std::pair<GroupElement, RatCplx>> table;
  if (explicit_rows) {
    for (const auto& row : *explicit_rows) {
      Fields rf(row);
      GroupElement g = parse_element(as_str(rf.req("elem"), "rows.elem"));
      Rat re = parse_rat(as_str(rf.req("re"), "rows.re"));
      Rat im(0);
      if (const json* iv = rf.opt("im")) im = parse_rat(as_str(*iv, "rows.im"));
      rf.finish();
      table.emplace_back(g, RatCplx(re, im));
    }
  } else {
    static const long scale_num[] = {1, 2, 3, 1, -1};
    static const long scale_den[] = {1, 1, 1, 2, 1};
    for (long b = -radius; b <= radius; ++b)
      for (int i = 0; i < 5; ++i) {
        GroupElement g = make_aff_q(Rat(b), make_rat(scale_num[i], scale_den[i]));
        RatCplx v;
        if (table_kind == "delta-at-affscale") v = RatCplx(Rat(b == 0 ? 1 : 0));
        else if (table_kind == "const-one") v = RatCplx(Rat(1));
        else if (table_kind == "bad") v = RatCplx(Rat(b == 0 ? 1 : (b == 1 ? 0 : 1)));
        else throw ConfigError("unknown rigid table \"" + table_kind + "\"");
        table.emplace_back(g, v);
      }
  }

  RigidReport rpt = rigid_orbit_check(table);
  json rep;
  switch (rpt.verdict) {
    case RigidReport::Verdict::Rigid: rep["verdict"] = "rigid"; break;
    case RigidReport::Verdict::ConstantNotRigid: rep["verdict"] = "constant-not-rigid"; break;
    case RigidReport::Verdict::Counterexample: rep["verdict"] = "counterexample"; break;
  }
  if (rpt.verdict != RigidReport::Verdict::Counterexample)
    rep["off_orbit_value"] = cplx_str(rpt.off_orbit_value);
  if (!rpt.detail.empty()) rep["detail"] = rpt.detail;
  em.write_json_doc(std::move(rep));
}

}  // namespace

RunResult run_experiment(const json& config, const std::string& out_dir) {
  RunResult result;
  Emitter em;
  em.out_dir = out_dir;
  em.resolved = config;
  try {
    Fields f(config);
    em.experiment = as_str(f.req("experiment"), "experiment");
    if (em.experiment == "defect") run_defect(f, em);
    else if (em.experiment == "adversarial-folner") run_adversarial(f, em);
    else if (em.experiment == "weak-et") run_weak_et(f, em);
    else if (em.experiment == "rset-demo") run_rset_demo(f, em);
    else if (em.experiment == "firm-demo") run_firm_demo(f, em);
    else if (em.experiment == "flabby-sym") run_flabby(f, em, true);
    else if (em.experiment == "flabby-hnn") run_flabby(f, em, false);
    else if (em.experiment == "thinness") run_thinness(f, em);
    else if (em.experiment == "gns-window") run_gns_window(f, em);
    else if (em.experiment == "splitting") run_splitting(f, em);
    else if (em.experiment == "transfer") run_transfer(f, em);
    else if (em.experiment == "rajchman") run_rajchman(f, em);
    else if (em.experiment == "rigid-check") run_rigid_check(f, em);
    else throw ConfigError("unknown experiment \"" + em.experiment + "\"");
  } catch (const ConfigError& e) {
    return {kExitConfig, e.what(), {}};
  } catch (const BudgetError& e) {
    return {kExitBudget, e.what(), em.files};
  } catch (const InvariantFailure& e) {
    return {kExitAssertion, e.what(), em.files};
  } catch (const PreconditionError& e) {
    return {kExitConfig, e.what(), em.files};
  } catch (const UsageError& e) {
    return {kExitConfig, e.what(), em.files};
  }
  result.output_files = em.files;
  return result;
}

RunResult run_experiment_file(const std::string& config_path, const std::string& out_dir,
                              const json& overrides) {
  json config;
  {
    std::ifstream is(config_path);
    if (!is) return {kExitConfig, "cannot open config file " + config_path, {}};
    try {
      config = json::parse(is);
    } catch (const json::parse_error& e) {
      return {kExitConfig, std::string("config parse error: ") + e.what(), {}};
    }
  }
  if (!config.is_object()) return {kExitConfig, "config must be a JSON object", {}};
  for (auto it = overrides.begin(); it != overrides.end(); ++it)
    config[it.key()] = it.value();
  return run_experiment(config, out_dir);
}

}  // namespace cosetlab
