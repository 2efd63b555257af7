#include <feynsec/errors.hpp>
#include <feynsec/pipeline.hpp>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace feynsec {

namespace {

using json = nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

Rational as_rational(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<std::string> split_labels(const std::string& key) {
  std::vector<std::string> out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw ParseError("empty label in invariant key \"" + key + "\"");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Job parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");
  Job job;
  const json& edges = field(doc, "edges", "graph");
  if (!edges.is_array()) throw ParseError("\"edges\" must be an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string w = "edges[" + std::to_string(k) + "]";
    Edge e;
    e.from = as_int(field(edges[k], "from", w), w + ".from");
    e.to = as_int(field(edges[k], "to", w), w + ".to");
    e.mass2 = edges[k].contains("mass2") ? as_rational(edges[k]["mass2"], w + ".mass2") : Rational(0);
    e.power = edges[k].contains("power") ? as_int(edges[k]["power"], w + ".power") : 1;
    job.graph.edges.push_back(e);
  }
  std::vector<std::string> labels;
  if (doc.contains("external")) {
    const json& ext = doc["external"];
    if (!ext.is_array()) throw ParseError("\"external\" must be an array");
    for (std::size_t k = 0; k < ext.size(); ++k) {
      std::string w = "external[" + std::to_string(k) + "]";
      ExternalLeg leg;
      leg.vertex = as_int(field(ext[k], "vertex", w), w + ".vertex");
      const json& lab = field(ext[k], "label", w);
      if (!lab.is_string()) throw ParseError(w + ".label: expected a string");
      leg.label = lab.get<std::string>();
      labels.push_back(leg.label);
      job.graph.externals.push_back(leg);
    }
  }
  job.kin.set_labels(labels);
  if (doc.contains("invariants")) {
    const json& inv = doc["invariants"];
    if (!inv.is_object()) throw ParseError("\"invariants\" must be an object");
    for (auto it = inv.begin(); it != inv.end(); ++it)
      job.kin.set(split_labels(it.key()), as_rational(it.value(), "invariants[\"" + it.key() + "\"]"));
  }
  job.dim_anchor = doc.contains("dim_anchor") ? as_int(doc["dim_anchor"], "dim_anchor") : 2;
  job.order = doc.contains("order") ? as_int(doc["order"], "order") : 0;
  job.graph.validate();
  return job;
}

Job load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

Decomposition decompose_job(const Job& job, Strategy strategy) {
  Decomposition d;
  d.param = feynman_parametrize(job.graph, job.kin, job.dim_anchor);
  d.general = from_param_integral(d.param);
  check_positivity(d.general);
  GeneralIntegral h = homogenize(d.general);
  auto primary = primary_sectors(h);
  d.primary = static_cast<int>(primary.size());
  DecompOptions opt;
  opt.strategy = strategy;
  for (auto& s : primary)
    for (auto& f : iterate_decomposition(s, opt)) d.sectors.push_back(std::move(f));
  return d;
}

std::vector<SectorPiece> finite_pieces(const Decomposition& d, int order, long* pole_terms) {
  std::vector<SectorPiece> out;
  long poles = 0;
  for (std::size_t k = 0; k < d.sectors.size(); ++k) {
    std::map<int, FiniteIntegrand> per_order;
    for (auto& pt : extract_poles(d.sectors[k], order)) {
      ++poles;
      for (auto& [o, fi] : expand_eps(pt, order)) {
        auto it = per_order.find(o);
        if (it == per_order.end()) per_order.emplace(o, std::move(fi));
        else it->second.merge(fi);
      }
    }
    for (auto& [o, fi] : per_order) out.push_back({static_cast<int>(k), o, std::move(fi)});
  }
  if (pole_terms) *pole_terms = poles;
  return out;
}

PipelineResult run_pipeline(const Job& job, Strategy strategy, const MCConfig& mc) {
  if (job.order < -2 * job.graph.loops())
    throw DomainError("order " + std::to_string(job.order) + " is below the leading pole");
  PipelineResult r;
  r.decomposition = decompose_job(job, strategy);
  r.pieces = finite_pieces(r.decomposition, job.order, &r.pole_terms);

  std::vector<const FiniteIntegrand*> todo;
  std::vector<std::uint64_t> ids;
  std::vector<Contribution> parts;
  for (auto& p : r.pieces) {
    std::string why;
    if (!p.integrand.type_check(&why)) throw InternalError("finite integrand outside class M: " + why);
    parts.push_back({p.order, true, p.integrand.exact, {}});
    if (p.integrand.has_variable_part()) {
      todo.push_back(&p.integrand);
      ids.push_back((static_cast<std::uint64_t>(p.sector) << 16) | static_cast<std::uint64_t>(p.order + 1024));
    }
  }
  auto est = integrate_many(todo, ids, mc);
  r.mc_streams = static_cast<long>(est.size());
  for (auto& e : est) {
    Contribution c;
    c.exact = false;
    c.estimate = e;
    parts.push_back(c);
  }
  // orders of the sampled pieces, in the same order as todo
  std::size_t m = 0;
  for (auto& p : r.pieces)
    if (p.integrand.has_variable_part()) parts[r.pieces.size() + m++].order = p.order;
  r.series = assemble(parts);
  int lo = r.series.empty() ? job.order : std::min(r.series.begin()->first, job.order);
  for (int o = lo; o <= job.order; ++o) r.series[o];
  return r;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string format_series(const EpsSeries& s) {
  std::string out;
  for (auto& [o, c] : s) out += std::to_string(o) + " " + num(c.value) + " " + num(c.err) + "\n";
  return out;
}

std::string format_series_json(const PipelineResult& r) {
  json j = json::object();
  for (auto& [o, c] : r.series) j[std::to_string(o)] = {c.value, c.err};
  j["diagnostics"] = {{"primary_sectors", r.decomposition.primary},
                      {"sectors", r.decomposition.sectors.size()},
                      {"pole_terms", r.pole_terms},
                      {"integrands", r.pieces.size()},
                      {"mc_streams", r.mc_streams},
                      {"positivity_by_sampling", r.decomposition.general.positivity_by_sampling}};
  return j.dump(2) + "\n";
}

}  // namespace feynsec
