#include "cutblock/io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "cutblock/errors.hpp"

namespace cutblock {

namespace {

struct LineReader {
  std::istream& in;
  const std::string& name;
  long lineno = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  }

  // next significant line, tokenized; false at end of input
  bool next(std::vector<std::string>& toks) {
    std::string s;
    while (std::getline(in, s)) {
      ++lineno;
      if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
      std::istringstream iss(s);
      std::istream_iterator<std::string> b(iss), e;
      toks.assign(b, e);
      if (!toks.empty()) return true;
    }
    return false;
  }

  long to_long(const std::string& tok) const {
    try {
      std::size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size()) fail("not an integer: '" + tok + "'");
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      fail("not an integer: '" + tok + "'");
    }
  }

  // header `word a b [c]`; returns the integers after the keyword
  std::vector<long> header(const std::string& word, std::size_t ints) {
    std::vector<std::string> toks;
    if (!next(toks)) fail("empty input, expected '" + word + "' header");
    if (toks[0] != word)
      fail("expected '" + word + "' header, got '" + toks[0] + "'");
    if (toks.size() != ints + 1)
      fail("'" + word + "' header takes " + std::to_string(ints) + " integers");
    std::vector<long> v;
    for (std::size_t i = 1; i < toks.size(); ++i) v.push_back(to_long(toks[i]));
    return v;
  }

  Elt element(const std::string& tok, unsigned q) const {
    long v = to_long(tok);
    if (v < 0 || v >= long(q))
      fail("element " + tok + " out of range for GF(" + std::to_string(q) + ")");
    return Elt(v);
  }

  Point point(const Geometry& g, const std::vector<std::string>& toks,
              std::size_t from) const {
    Vec v;
    for (std::size_t i = 0; i < unsigned(g.N()) + 1u; ++i)
      v.push_back(element(toks[from + i], g.field().q()));
    try {
      return g.normalize(v);
    } catch (const ZeroVector&) {
      fail("zero vector is not a projective point");
    }
  }
};

GeometryPtr checked_geometry(LineReader& r, long N, long q) {
  if (N < 1) r.fail("need N >= 1");
  try {
    return make_geometry(int(N), unsigned(q));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

void write_row(std::ostream& out, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << long(v[i]);
  }
  out << '\n';
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError(path + ": cannot open for writing");
  return f;
}

}  // namespace

PointSet read_pointset(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  auto hdr = r.header("pg", 2);
  auto g = checked_geometry(r, hdr[0], hdr[1]);
  const std::size_t w = std::size_t(g->N()) + 1;
  std::vector<Point> pts;
  std::vector<std::string> toks;
  while (r.next(toks)) {
    if (toks.size() != w)
      r.fail("expected " + std::to_string(w) + " coordinates, got " +
             std::to_string(toks.size()));
    pts.push_back(r.point(*g, toks, 0));
  }
  return PointSet::of(g, std::move(pts));
}

LineSet read_lineset(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  auto hdr = r.header("lines", 2);
  auto g = checked_geometry(r, hdr[0], hdr[1]);
  const std::size_t w = std::size_t(g->N()) + 1;
  LineSet L{g, {}};
  std::vector<std::string> toks;
  while (r.next(toks)) {
    if (toks.size() != 2 * w)
      r.fail("expected a spanning pair (" + std::to_string(2 * w) +
             " coordinates), got " + std::to_string(toks.size()));
    Point a = r.point(*g, toks, 0);
    Point b = r.point(*g, toks, w);
    if (a == b) r.fail("coincident spanning pair");
    L.lines.push_back(g->span({a, b}));
  }
  return L;
}

GeneratorMatrix read_matrix(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  auto hdr = r.header("mat", 3);
  const long k = hdr[0], n = hdr[1], q = hdr[2];
  if (k < 1 || n < 1) r.fail("need k >= 1 and n >= 1");
  FieldPtr f;
  try {
    f = make_field(unsigned(q));
  } catch (const Error& e) {
    r.fail(e.what());
  }
  std::vector<Vec> rows;
  std::vector<std::string> toks;
  while (r.next(toks)) {
    if (long(rows.size()) == k) r.fail("more than k = " + std::to_string(k) + " rows");
    if (toks.size() != std::size_t(n))
      r.fail("expected " + std::to_string(n) + " entries, got " +
             std::to_string(toks.size()));
    Vec row;
    for (auto& t : toks) row.push_back(r.element(t, f->q()));
    rows.push_back(std::move(row));
  }
  if (long(rows.size()) != k)
    r.fail("expected k = " + std::to_string(k) + " rows, got " +
           std::to_string(rows.size()));
  return GeneratorMatrix(f, std::move(rows));
}

void write_pointset(std::ostream& out, const PointSet& S) {
  out << "pg " << S.g->N() << ' ' << S.g->field().q() << '\n';
  for (auto& p : S.pts) write_row(out, p.coords);
}

void write_lineset(std::ostream& out, const LineSet& L) {
  out << "lines " << L.g->N() << ' ' << L.g->field().q() << '\n';
  for (auto& l : L.lines) {
    if (l.dim() != 1) throw DimensionMismatch("line set contains a non-line");
    std::ostringstream row;  // spanning pair = the two canonical basis rows
    for (std::size_t i = 0; i < 2; ++i) {
      const Vec& v = l.basis()[i];
      for (std::size_t j = 0; j < v.size(); ++j) row << (i + j ? " " : "") << long(v[j]);
    }
    out << row.str() << '\n';
  }
}

void write_matrix(std::ostream& out, const GeneratorMatrix& G) {
  out << "mat " << G.k() << ' ' << G.n() << ' ' << G.field().q() << '\n';
  for (auto& row : G.rows()) write_row(out, row);
}

PointSet read_pointset_file(const std::string& path) {
  auto f = open_in(path);
  return read_pointset(f, path);
}
LineSet read_lineset_file(const std::string& path) {
  auto f = open_in(path);
  return read_lineset(f, path);
}
GeneratorMatrix read_matrix_file(const std::string& path) {
  auto f = open_in(path);
  return read_matrix(f, path);
}
void write_pointset_file(const std::string& path, const PointSet& S) {
  auto f = open_out(path);
  write_pointset(f, S);
}
void write_lineset_file(const std::string& path, const LineSet& L) {
  auto f = open_out(path);
  write_lineset(f, L);
}
void write_matrix_file(const std::string& path, const GeneratorMatrix& G) {
  auto f = open_out(path);
  write_matrix(f, G);
}

std::string sniff_header(const std::string& path) {
  auto f = open_in(path);
  LineReader r{f, path};
  std::vector<std::string> toks;
  if (!r.next(toks)) r.fail("empty input");
  if (toks[0] != "pg" && toks[0] != "lines" && toks[0] != "mat")
    r.fail("unknown header '" + toks[0] + "'");
  return toks[0];
}

// ---------------------------------------------------------------------------

namespace {

const char* kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::kPointSet: return "points";
    case TargetKind::kLineSet: return "lines";
    default: return "subspaces";
  }
}

const char* strategy_name(Strategy s) {
  return s == Strategy::kPureRandom ? "pure" : "repair";
}

[[noreturn]] void bad_json(const std::string& msg) { throw ParseError("json: " + msg); }

template <typename T>
T field_as(const Json& j, const char* key) {
  if (!j.contains(key)) bad_json(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    bad_json(std::string("bad value for key '") + key + "'");
  }
}

Json subspace_json(const Subspace& s) {
  Json rows = Json::array();
  for (auto& v : s.basis()) {
    Json row = Json::array();
    for (auto e : v) row.push_back(long(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json search_config_json(const SearchConfig& c) {
  return Json{{"N", c.N},
              {"q", c.q},
              {"kind", kind_name(c.kind)},
              {"size", c.size},
              {"subspace_dim", c.subspace_dim},
              {"t", c.t},
              {"budget", c.budget},
              {"seed", c.seed},
              {"strategy", strategy_name(c.strategy)},
              {"distinct", c.distinct}};
}

SearchConfig search_config_from_json(const Json& j) {
  SearchConfig c;
  c.N = field_as<int>(j, "N");
  c.q = field_as<unsigned>(j, "q");
  auto kind = field_as<std::string>(j, "kind");
  if (kind == "points")
    c.kind = TargetKind::kPointSet;
  else if (kind == "lines")
    c.kind = TargetKind::kLineSet;
  else if (kind == "subspaces")
    c.kind = TargetKind::kSubspaceSet;
  else
    bad_json("unknown kind '" + kind + "'");
  c.size = field_as<int>(j, "size");
  c.subspace_dim = field_as<int>(j, "subspace_dim");
  c.t = field_as<int>(j, "t");
  c.budget = field_as<u64>(j, "budget");
  c.seed = field_as<u64>(j, "seed");
  auto strat = field_as<std::string>(j, "strategy");
  if (strat == "pure")
    c.strategy = Strategy::kPureRandom;
  else if (strat == "repair")
    c.strategy = Strategy::kRandomWithRepair;
  else
    bad_json("unknown strategy '" + strat + "'");
  c.distinct = field_as<bool>(j, "distinct");
  return c;
}

Json search_report_json(const SearchReport& r) {
  return Json{{"config", search_config_json(r.config)},
              {"success", r.success},
              {"trials", r.trials},
              {"union_size", r.union_size},
              {"reverified", r.reverified}};
}

Json witness_json(const Witness& w) {
  Json j;
  switch (w.kind) {
    case WitnessKind::kHyperplanePair: j["kind"] = "hyperplane_pair"; break;
    case WitnessKind::kThinSubspace: j["kind"] = "thin_subspace"; break;
    case WitnessKind::kLowDimTransversal: j["kind"] = "low_dim_transversal"; break;
    case WitnessKind::kUnsaturatedPoint: j["kind"] = "unsaturated_point"; break;
  }
  if (w.H) j["H"] = subspace_json(*w.H);
  if (w.Hp) j["Hp"] = subspace_json(*w.Hp);
  if (w.pt) {
    Json row = Json::array();
    for (auto e : w.pt->coords) row.push_back(long(e));
    j["point"] = std::move(row);
  }
  return j;
}

Json manifest_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"version", m.version},
              {"params", search_config_json(m.config)},
              {"artifacts", m.artifacts},
              {"results", m.results},
              {"seconds", m.seconds}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command = field_as<std::string>(j, "command");
  m.version = field_as<std::string>(j, "version");
  if (!j.contains("params")) bad_json("missing key 'params'");
  m.config = search_config_from_json(j.at("params"));
  m.artifacts = field_as<std::vector<std::string>>(j, "artifacts");
  m.results = j.contains("results") ? j.at("results") : Json::object();
  m.seconds = j.contains("seconds") ? field_as<double>(j, "seconds") : 0.0;
  return m;
}

void write_manifest_file(const std::string& path, const RunManifest& m) {
  auto f = open_out(path);
  f << manifest_json(m).dump(2) << '\n';
}

RunManifest read_manifest_file(const std::string& path) {
  auto f = open_in(path);
  Json j;
  try {
    f >> j;
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace cutblock
