#include "cosetlab/group.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace cosetlab {

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string cplx_str(const RatCplx& z) {
  if (z.im == 0) return rat_str(z.re);
  return rat_str(z.re) + (z.im > 0 ? "+" : "") + rat_str(z.im) + "i";
}

std::string double_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw ConfigError("bad rational: " + s);
  if (q.get_den() == 0) throw ConfigError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Group Group::int_vec(int d) {
  if (d < 1) throw ConfigError("IntVec dimension must be positive");
  Group g;
  g.tag = GroupTag::IntVec;
  g.d = d;
  return g;
}

Group Group::heis() {
  Group g;
  g.tag = GroupTag::Heis;
  return g;
}

Group Group::lamp_bs(int p) {
  if (p < 2) throw ConfigError("LampBS prime must be >= 2");
  Group g;
  g.tag = GroupTag::LampBS;
  g.p = p;
  return g;
}

Group Group::aff_q() {
  Group g;
  g.tag = GroupTag::AffQ;
  return g;
}

Group Group::fin_perm() {
  Group g;
  g.tag = GroupTag::FinPerm;
  return g;
}

Group Group::cyc(long m) {
  if (m < 1) throw ConfigError("Cyc modulus must be positive");
  Group g;
  g.tag = GroupTag::Cyc;
  g.m = m;
  return g;
}

Group Group::pair(Group inner) {
  Group g;
  g.tag = GroupTag::Pair;
  g.inner = std::make_shared<const Group>(std::move(inner));
  return g;
}

bool Group::operator==(const Group& o) const {
  if (tag != o.tag || d != o.d || p != o.p || m != o.m) return false;
  if (!inner != !o.inner) return false;
  return !inner || *inner == *o.inner;
}

std::string Group::name() const {
  switch (tag) {
    case GroupTag::IntVec: return "zd[" + std::to_string(d) + "]";
    case GroupTag::Heis: return "heis";
    case GroupTag::LampBS: return "lampbs[p=" + std::to_string(p) + "]";
    case GroupTag::AffQ: return "affq";
    case GroupTag::FinPerm: return "perm";
    case GroupTag::Cyc: return "cyc[m=" + std::to_string(m) + "]";
    case GroupTag::Pair: return "pair<" + inner->name() + ">";
  }
  return "?";
}

long PermData::apply(long x) const {
  for (const auto& [a, b] : map)
    if (a == x) return b;
  return x;
}

std::vector<long> PermData::support() const {
  std::vector<long> s;
  s.reserve(map.size());
  for (const auto& [a, b] : map) s.push_back(a);
  return s;
}

bool GroupElement::same_kind(const GroupElement& o) const {
  if (tag != o.tag) return false;
  switch (tag) {
    case GroupTag::IntVec: return vec.size() == o.vec.size();
    case GroupTag::LampBS: return p == o.p;
    case GroupTag::Cyc: return cm == o.cm;
    case GroupTag::Pair: return px->same_kind(*o.px) && py->same_kind(*o.py);
    default: return true;
  }
}

bool GroupElement::is_identity() const {
  switch (tag) {
    case GroupTag::IntVec:
      return std::all_of(vec.begin(), vec.end(), [](const Int& z) { return z == 0; });
    case GroupTag::Heis: return vec[0] == 0 && vec[1] == 0 && vec[2] == 0;
    case GroupTag::LampBS: return rb == 0 && ia == 0;
    case GroupTag::AffQ: return rb == 0 && ra == 1;
    case GroupTag::FinPerm: return perm.map.empty();
    case GroupTag::Cyc: return cr == 0;
    case GroupTag::Pair: return px->is_identity() && py->is_identity();
  }
  return false;
}

GroupElement identity(const Group& g) {
  switch (g.tag) {
    case GroupTag::IntVec: return make_int_vec(std::vector<Int>(g.d, Int(0)));
    case GroupTag::Heis: return make_heis(0, 0, 0);
    case GroupTag::LampBS: return make_lamp_bs(g.p, Rat(0), Int(0));
    case GroupTag::AffQ: return make_aff_q(Rat(0), Rat(1));
    case GroupTag::FinPerm: return make_fin_perm({});
    case GroupTag::Cyc: return make_cyc(g.m, 0);
    case GroupTag::Pair: return make_pair(identity(*g.inner), identity(*g.inner));
  }
  throw UsageError("unknown group tag");
}

GroupElement make_int_vec(std::vector<Int> coords) {
  GroupElement g;
  g.tag = GroupTag::IntVec;
  g.vec = std::move(coords);
  return g;
}

GroupElement make_heis(Int a, Int b, Int c) {
  GroupElement g;
  g.tag = GroupTag::Heis;
  g.vec = {std::move(a), std::move(b), std::move(c)};
  return g;
}

static bool is_p_power_den(const Int& den, int p) {
  Int d = den;
  while (d > 1) {
    if (d % p != 0) return false;
    d /= p;
  }
  return true;
}

GroupElement make_lamp_bs(int p, Rat b, Int a) {
  if (p < 2) throw UsageError("LampBS prime must be >= 2");
  b.canonicalize();
  if (!is_p_power_den(b.get_den(), p))
    throw UsageError("LampBS entry " + rat_str(b) + " is not in Z[1/" + std::to_string(p) + "]");
  GroupElement g;
  g.tag = GroupTag::LampBS;
  g.p = p;
  g.rb = std::move(b);
  g.ia = std::move(a);
  return g;
}

GroupElement make_aff_q(Rat b, Rat a) {
  a.canonicalize();
  b.canonicalize();
  if (a == 0) throw UsageError("AffQ scale must be nonzero");
  GroupElement g;
  g.tag = GroupTag::AffQ;
  g.rb = std::move(b);
  g.ra = std::move(a);
  return g;
}

GroupElement make_fin_perm(std::vector<std::pair<long, long>> map) {
  // Canonical form: sorted by point, fixed points pruned, bijectivity checked.
  std::vector<std::pair<long, long>> clean;
  clean.reserve(map.size());
  for (auto& [a, b] : map) {
    if (a < 0 || b < 0) throw UsageError("FinPerm points must be nonnegative");
    if (a != b) clean.emplace_back(a, b);
  }
  std::sort(clean.begin(), clean.end());
  for (std::size_t i = 1; i < clean.size(); ++i)
    if (clean[i].first == clean[i - 1].first) throw UsageError("FinPerm maps a point twice");
  std::vector<long> dom, img;
  for (auto& [a, b] : clean) dom.push_back(a), img.push_back(b);
  std::sort(img.begin(), img.end());
  if (dom != img) throw UsageError("FinPerm mapping is not a bijection of its support");
  GroupElement g;
  g.tag = GroupTag::FinPerm;
  g.perm.map = std::move(clean);
  return g;
}

GroupElement make_perm_cycles(const std::vector<std::vector<long>>& cycles) {
  std::vector<std::pair<long, long>> map;
  for (const auto& cyc : cycles) {
    if (cyc.size() < 2) continue;
    for (std::size_t i = 0; i < cyc.size(); ++i)
      map.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  return make_fin_perm(std::move(map));
}

GroupElement make_cyc(long m, long r) {
  if (m < 1) throw UsageError("Cyc modulus must be positive");
  GroupElement g;
  g.tag = GroupTag::Cyc;
  g.cm = m;
  g.cr = ((r % m) + m) % m;
  return g;
}

GroupElement make_pair(GroupElement x, GroupElement y) {
  if (!x.same_kind(y)) throw UsageError("Pair components must live in the same group");
  GroupElement g;
  g.tag = GroupTag::Pair;
  g.px = std::make_shared<const GroupElement>(std::move(x));
  g.py = std::make_shared<const GroupElement>(std::move(y));
  return g;
}

GroupElement multiply(const GroupElement& x, const GroupElement& y) {
  if (!x.same_kind(y)) throw UsageError("multiply: elements of different groups");
  switch (x.tag) {
    case GroupTag::IntVec: {
      std::vector<Int> v(x.vec.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.vec[i] + y.vec[i];
      return make_int_vec(std::move(v));
    }
    case GroupTag::Heis:
      // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
      return make_heis(x.vec[0] + y.vec[0], x.vec[1] + y.vec[1],
                       x.vec[2] + y.vec[2] + x.vec[0] * y.vec[1]);
    case GroupTag::LampBS:
      // (b1,a1)(b2,a2) = (b1 + p^{a1} b2, a1+a2)
      return make_lamp_bs(x.p, x.rb + pow_rat(x.p, x.ia) * y.rb, x.ia + y.ia);
    case GroupTag::AffQ:
      // (b1,a1)(b2,a2) = (b1 + a1 b2, a1 a2)
      return make_aff_q(x.rb + x.ra * y.rb, x.ra * y.ra);
    case GroupTag::FinPerm: {
      // Composition (xy)(k) = x(y(k)), with fixed-point pruning.
      std::vector<std::pair<long, long>> map;
      std::vector<long> pts;
      for (auto& [a, b] : x.perm.map) pts.push_back(a);
      for (auto& [a, b] : y.perm.map) pts.push_back(a);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (long a : pts) map.emplace_back(a, x.perm.apply(y.perm.apply(a)));
      return make_fin_perm(std::move(map));
    }
    case GroupTag::Cyc: return make_cyc(x.cm, x.cr + y.cr);
    case GroupTag::Pair: return make_pair(multiply(*x.px, *y.px), multiply(*x.py, *y.py));
  }
  throw UsageError("unknown group tag");
}

GroupElement inverse(const GroupElement& x) {
  switch (x.tag) {
    case GroupTag::IntVec: {
      std::vector<Int> v(x.vec.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = -x.vec[i];
      return make_int_vec(std::move(v));
    }
    case GroupTag::Heis:
      return make_heis(-x.vec[0], -x.vec[1], -x.vec[2] + x.vec[0] * x.vec[1]);
    case GroupTag::LampBS:
      return make_lamp_bs(x.p, -pow_rat(x.p, -x.ia) * x.rb, -x.ia);
    case GroupTag::AffQ: return make_aff_q(-x.rb / x.ra, 1 / x.ra);
    case GroupTag::FinPerm: {
      std::vector<std::pair<long, long>> map;
      map.reserve(x.perm.map.size());
      for (auto& [a, b] : x.perm.map) map.emplace_back(b, a);
      return make_fin_perm(std::move(map));
    }
    case GroupTag::Cyc: return make_cyc(x.cm, -x.cr);
    case GroupTag::Pair: return make_pair(inverse(*x.px), inverse(*x.py));
  }
  throw UsageError("unknown group tag");
}

GroupElement conjugate(const GroupElement& t, const GroupElement& x) {
  return multiply(multiply(t, x), inverse(t));
}

static int cmp_int(const Int& a, const Int& b) { return mpz_cmp(a.get_mpz_t(), b.get_mpz_t()); }

int cmp(const GroupElement& a, const GroupElement& b) {
  if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
  switch (a.tag) {
    case GroupTag::IntVec: {
      if (a.vec.size() != b.vec.size()) return a.vec.size() < b.vec.size() ? -1 : 1;
      for (std::size_t i = 0; i < a.vec.size(); ++i)
        if (int c = cmp_int(a.vec[i], b.vec[i])) return c;
      return 0;
    }
    case GroupTag::Heis:
      for (int i = 0; i < 3; ++i)
        if (int c = cmp_int(a.vec[i], b.vec[i])) return c;
      return 0;
    case GroupTag::LampBS: {
      if (a.p != b.p) return a.p < b.p ? -1 : 1;
      if (int c = cmp_rat(a.rb, b.rb)) return c;
      return cmp_int(a.ia, b.ia);
    }
    case GroupTag::AffQ: {
      if (int c = cmp_rat(a.rb, b.rb)) return c;
      return cmp_rat(a.ra, b.ra);
    }
    case GroupTag::FinPerm: {
      if (a.perm.map.size() != b.perm.map.size())
        return a.perm.map.size() < b.perm.map.size() ? -1 : 1;
      if (a.perm.map < b.perm.map) return -1;
      return a.perm.map == b.perm.map ? 0 : 1;
    }
    case GroupTag::Cyc: {
      if (a.cm != b.cm) return a.cm < b.cm ? -1 : 1;
      return a.cr < b.cr ? -1 : (a.cr == b.cr ? 0 : 1);
    }
    case GroupTag::Pair: {
      if (int c = cmp(*a.px, *b.px)) return c;
      return cmp(*a.py, *b.py);
    }
  }
  return 0;
}

std::size_t hash_element(const GroupElement& g) {
  std::size_t h = static_cast<std::size_t>(g.tag) * 0x9e3779b97f4a7c15ULL;
  switch (g.tag) {
    case GroupTag::IntVec:
    case GroupTag::Heis:
      for (const Int& z : g.vec) h = hash_combine(h, hash_int(z));
      return h;
    case GroupTag::LampBS:
      return hash_combine(hash_combine(h, hash_rat(g.rb)), hash_int(g.ia));
    case GroupTag::AffQ:
      return hash_combine(hash_combine(h, hash_rat(g.rb)), hash_rat(g.ra));
    case GroupTag::FinPerm:
      for (auto& [a, b] : g.perm.map)
        h = hash_combine(h, hash_combine(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      return h;
    case GroupTag::Cyc:
      return hash_combine(h, hash_combine(static_cast<std::size_t>(g.cm),
                                          static_cast<std::size_t>(g.cr)));
    case GroupTag::Pair:
      return hash_combine(hash_combine(h, hash_element(*g.px)), hash_element(*g.py));
  }
  return h;
}

static std::string perm_cycles_str(const PermData& p) {
  if (p.map.empty()) return "()";
  std::string out;
  std::vector<long> seen;
  for (auto& [start, unused] : p.map) {
    if (std::find(seen.begin(), seen.end(), start) != seen.end()) continue;
    std::string cyc = "(" + std::to_string(start);
    seen.push_back(start);
    for (long x = p.apply(start); x != start; x = p.apply(x)) {
      cyc += " " + std::to_string(x);
      seen.push_back(x);
    }
    out += cyc + ")";
  }
  return out;
}

std::string encode(const GroupElement& g) {
  switch (g.tag) {
    case GroupTag::IntVec: {
      std::string s = "zd:";
      for (std::size_t i = 0; i < g.vec.size(); ++i)
        s += (i ? "," : "") + g.vec[i].get_str();
      return s;
    }
    case GroupTag::Heis:
      return "heis:" + g.vec[0].get_str() + "," + g.vec[1].get_str() + "," + g.vec[2].get_str();
    case GroupTag::LampBS:
      return "lampbs[p=" + std::to_string(g.p) + "]:" + rat_str(g.rb) + "," + g.ia.get_str();
    case GroupTag::AffQ: return "affq:" + rat_str(g.rb) + "," + rat_str(g.ra);
    case GroupTag::FinPerm: return "perm:" + perm_cycles_str(g.perm);
    case GroupTag::Cyc:
      return "cyc[m=" + std::to_string(g.cm) + "]:" + std::to_string(g.cr);
    case GroupTag::Pair: return "pair:{" + encode(*g.px) + "|" + encode(*g.py) + "}";
  }
  throw UsageError("unknown group tag");
}

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

GroupElement parse_element(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("bad element encoding: " + text);
  std::string head = text.substr(0, colon);
  std::string body = text.substr(colon + 1);

  auto param = [&](const std::string& prefix) -> long {
    auto lb = head.find('['), rb_ = head.find(']');
    if (lb == std::string::npos || rb_ == std::string::npos)
      throw ConfigError("missing parameter in: " + text);
    std::string inside = head.substr(lb + 1, rb_ - lb - 1);
    if (inside.rfind(prefix, 0) != 0) throw ConfigError("bad parameter in: " + text);
    return std::stol(inside.substr(prefix.size()));
  };
  std::string kind = head.substr(0, head.find('['));

  if (kind == "zd") {
    std::vector<Int> v;
    for (auto& part : split(body, ',')) v.emplace_back(part);
    return make_int_vec(std::move(v));
  }
  if (kind == "heis") {
    auto parts = split(body, ',');
    if (parts.size() != 3) throw ConfigError("heis wants 3 coordinates: " + text);
    return make_heis(Int(parts[0]), Int(parts[1]), Int(parts[2]));
  }
  if (kind == "lampbs") {
    auto parts = split(body, ',');
    if (parts.size() != 2) throw ConfigError("lampbs wants b,a: " + text);
    return make_lamp_bs(static_cast<int>(param("p=")), parse_rat(parts[0]), Int(parts[1]));
  }
  if (kind == "affq") {
    auto parts = split(body, ',');
    if (parts.size() != 2) throw ConfigError("affq wants b,a: " + text);
    return make_aff_q(parse_rat(parts[0]), parse_rat(parts[1]));
  }
  if (kind == "cyc") {
    return make_cyc(param("m="), std::stol(body));
  }
  if (kind == "perm") {
    std::vector<std::vector<long>> cycles;
    std::size_t i = 0;
    while (i < body.size()) {
      if (body[i] != '(') throw ConfigError("bad permutation encoding: " + text);
      auto close = body.find(')', i);
      if (close == std::string::npos) throw ConfigError("bad permutation encoding: " + text);
      std::string inside = body.substr(i + 1, close - i - 1);
      std::vector<long> cyc;
      std::istringstream iss(inside);
      long x;
      while (iss >> x) cyc.push_back(x);
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
      i = close + 1;
    }
    return make_perm_cycles(cycles);
  }
  if (kind == "pair") {
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw ConfigError("bad pair encoding: " + text);
    std::string inside = body.substr(1, body.size() - 2);
    int depth = 0;
    std::size_t bar = std::string::npos;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      if (inside[i] == '{') ++depth;
      if (inside[i] == '}') --depth;
      if (inside[i] == '|' && depth == 0) {
        bar = i;
        break;
      }
    }
    if (bar == std::string::npos) throw ConfigError("bad pair encoding: " + text);
    return make_pair(parse_element(inside.substr(0, bar)), parse_element(inside.substr(bar + 1)));
  }
  throw ConfigError("unknown element kind: " + text);
}

Group group_of(const GroupElement& g) {
  switch (g.tag) {
    case GroupTag::IntVec: return Group::int_vec(static_cast<int>(g.vec.size()));
    case GroupTag::Heis: return Group::heis();
    case GroupTag::LampBS: return Group::lamp_bs(g.p);
    case GroupTag::AffQ: return Group::aff_q();
    case GroupTag::FinPerm: return Group::fin_perm();
    case GroupTag::Cyc: return Group::cyc(g.cm);
    case GroupTag::Pair: return Group::pair(group_of(*g.px));
  }
  throw UsageError("unknown group tag");
}

}  // namespace cosetlab
