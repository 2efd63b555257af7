#include <feynsec/errors.hpp>
#include <feynsec/pipeline.hpp>
#include <feynsec/polylog.hpp>
#include <feynsec/words.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace feynsec;
using json = nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    throw ParseError("malformed number '" + s + "'");
  }
  if (used != s.size()) throw ParseError("malformed number '" + s + "'");
  return v;
}

// "1.5", "1/3", "2+0.5i"
Complex parse_complex(const std::string& s) {
  if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
  if (!s.empty() && s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = body.find_last_of("+-");
    if (cut == std::string::npos || cut == 0) return Complex(0, body.empty() ? 1 : parse_double(body));
    return Complex(parse_double(body.substr(0, cut)), parse_double(body.substr(cut)));
  }
  return parse_double(s);
}

MultiIndex parse_index(const std::string& s) {
  MultiIndex m;
  for (auto& t : split(s, ',')) {
    try {
      m.push_back(std::stoi(t));
    } catch (...) {
      throw ParseError("malformed index '" + t + "'");
    }
  }
  return m;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string show(Complex z) {
  if (z.imag() == 0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

struct Common {
  std::string file;
  int order = 0;
  bool order_set = false;
  long samples = 1000000;
  std::uint64_t seed = 1;
  std::string strategy = "pairdiff";
  std::string format = "text";
};

int run_evaluate(const Common& c, CLI::App* sub) {
  Job job = load_job(c.file);
  if (sub->count("--order")) job.order = c.order;
  MCConfig mc;
  mc.samples = c.samples;
  mc.seed = c.seed;
  auto r = run_pipeline(job, parse_strategy(c.strategy), mc);
  std::cout << (c.format == "json" ? format_series_json(r) : format_series(r.series));
  return 0;
}

int run_decompose(const Common& c) {
  Job job = load_job(c.file);
  auto d = decompose_job(job, parse_strategy(c.strategy));
  if (c.format == "json") {
    json j;
    j["primary_sectors"] = d.primary;
    j["sectors"] = json::array();
    for (auto& s : d.sectors) j["sectors"].push_back({{"integrand", s.to_string()}, {"trail", s.trail}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << d.sectors.size() << " sectors (" << d.primary << " primary)\n";
    for (std::size_t k = 0; k < d.sectors.size(); ++k) std::cout << k + 1 << ": " << d.sectors[k].to_string() << "\n";
  }
  return 0;
}

std::string one_based(const std::vector<int>& S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) s += (k ? "," : "") + std::to_string(S[k] + 1);
  return s + "}";
}

int run_game(const std::string& points, const std::string& strategy, const std::string& policy, std::uint64_t seed,
             const std::string& format) {
  PointSet start = parse_point_set(points);
  PlayOptions opt;
  opt.strategy = parse_strategy(strategy);
  opt.policy = parse_bpolicy(policy);
  opt.seed = seed;
  auto r = play(start, opt);
  if (format == "json") {
    json j;
    j["start"] = start.to_string();
    j["won"] = r.won;
    j["moves"] = r.moves;
    j["transcript"] = json::array();
    for (auto& e : r.transcript) {
      std::vector<int> S;
      for (int v : e.move.S) S.push_back(v + 1);
      j["transcript"].push_back({{"before", e.before.to_string()},
                                 {"S", S},
                                 {"i", e.move.i + 1},
                                 {"after", apply_move(e.before, e.move).to_string()},
                                 {"measure_before", e.measure_before},
                                 {"measure_after", e.measure_after}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    long k = 0;
    for (auto& e : r.transcript)
      std::cout << "move " << ++k << ": " << e.before.to_string() << " S=" << one_based(e.move.S) << " i=" << e.move.i + 1
                << " -> " << apply_move(e.before, e.move).to_string() << " measure " << e.measure_before << " -> "
                << e.measure_after << "\n";
    std::cout << (r.won ? "won" : "not won") << " after " << r.moves << " move" << (r.moves == 1 ? "" : "s") << "\n";
  }
  return 0;
}

int run_words(const std::vector<std::string>& args, const std::string& format) {
  if (args.empty()) throw ParseError("words: missing operation");
  const std::string& op = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) throw ParseError("words " + op + ": expected " + std::to_string(n) + " argument(s)");
  };
  Alphabet a;
  a.set_pairing(free_commutative_pairing());
  std::string out;
  json j;
  auto lin = [&](const LinComb& x) {
    out = a.format(x);
    j["result"] = out;
  };
  if (op == "shuffle" || op == "qshuffle") {
    need(2);
    Word u = a.parse(args[1]), v = a.parse(args[2]);
    lin(op == "shuffle" ? shuffle(u, v) : quasi_shuffle(u, v, a));
  } else if (op == "coproduct") {
    need(1);
    out = a.format(coproduct(a.parse(args[1])));
    j["result"] = out;
  } else if (op == "antipode" || op == "qantipode") {
    need(1);
    Word w = a.parse(args[1]);
    lin(op == "antipode" ? antipode_shuffle(w) : antipode_quasi(w, a));
  } else if (op == "counit") {
    need(1);
    Rational c = counit(word(a.parse(args[1])));
    out = c.get_str();
    j["result"] = out;
  } else if (op == "lyndon") {
    need(2);
    std::vector<Letter> order;
    for (char ch : args[1]) order.push_back(a.intern(std::string(1, ch)));
    int len = static_cast<int>(parse_index(args[2]).at(0));
    std::vector<std::string> ws;
    for (auto& w : lyndon_words(order, len)) ws.push_back(a.format(w));
    for (std::size_t k = 0; k < ws.size(); ++k) out += (k ? ", " : "") + ws[k];
    j["result"] = ws;
  } else {
    throw ParseError("words: unknown operation '" + op + "'");
  }
  if (format == "json") std::cout << j.dump() << "\n";
  else std::cout << out << "\n";
  return 0;
}

int run_polylog(const std::vector<std::string>& args, const std::string& format) {
  if (args.empty()) throw ParseError("polylog: missing function");
  const std::string& f = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) throw ParseError("polylog " + f + ": expected " + std::to_string(n) + " argument(s)");
  };
  Complex value;
  double err = 0;
  std::string exact;
  if (f == "li") {
    need(2);
    std::vector<Complex> x;
    for (auto& t : split(args[2], ',')) x.push_back(parse_complex(t));
    auto r = li_series(parse_index(args[1]), x);
    value = r.value;
    err = r.err;
  } else if (f == "li2") {
    need(1);
    value = li2_numeric(parse_complex(args[1]));
    err = 1e-15 * std::abs(value);
  } else if (f == "g") {
    need(2);
    std::vector<Complex> z;
    for (auto& t : split(args[1], ',')) z.push_back(parse_complex(t));
    value = g_func(z, parse_complex(args[2]));
    err = 1e-14 * std::abs(value);
  } else if (f == "z") {
    need(3);
    MultiIndex m = parse_index(args[2]);
    auto xs = split(args[3], ',');
    if (args[1] == "inf") {
      std::vector<Complex> x;
      for (auto& t : xs) x.push_back(parse_complex(t));
      auto r = li_series(m, x);
      value = r.value;
      err = r.err;
    } else {
      std::vector<Rational> x;
      for (auto& t : xs) x.push_back(parse_rational(t));
      Rational z = zsum(parse_index(args[1]).at(0), m, x);
      exact = z.get_str();
      value = to_double(z);
    }
  } else if (f == "h") {
    need(2);
    value = hpl(parse_index(args[1]), parse_complex(args[2]).real());
    err = 1e-14 * std::abs(value);
  } else if (f == "s") {
    need(3);
    value = nielsen(parse_index(args[1]).at(0), parse_index(args[2]).at(0), parse_complex(args[3]).real());
    err = 1e-14 * std::abs(value);
  } else {
    throw ParseError("polylog: unknown function '" + f + "'");
  }
  if (format == "json") {
    json j;
    j["value"] = {value.real(), value.imag()};
    j["error"] = err;
    if (!exact.empty()) j["exact"] = exact;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << show(value) << " " << num(err);
    if (!exact.empty()) std::cout << " " << exact;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sector decomposition of Feynman integrals, polyhedra games, words and polylogarithms"};
  app.require_subcommand(1);
  Common c;
  std::string format = "text";

  auto* ev = app.add_subcommand("evaluate", "Laurent coefficients of a graph file by sector decomposition");
  ev->add_option("file", c.file, "graph file (JSON)")->required();
  ev->add_option("--order", c.order, "highest eps order (default: the file's)");
  ev->add_option("--samples", c.samples, "Monte Carlo samples per integrand")->check(CLI::Range(2L, 1L << 40));
  ev->add_option("--seed", c.seed, "master seed");
  ev->add_option("--strategy", c.strategy, "pairdiff | fullspread");
  ev->add_option("--format", c.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* de = app.add_subcommand("decompose", "print the final sectors");
  de->add_option("file", c.file, "graph file (JSON)")->required();
  de->add_option("--strategy", c.strategy, "pairdiff | fullspread");
  de->add_option("--format", c.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string points, policy = "random";
  std::uint64_t game_seed = 1;
  auto* ga = app.add_subcommand("game", "play Hironaka's polyhedra game");
  ga->add_option("points", points, "point set, e.g. \"{(2,0),(0,2)}\"")->required();
  ga->add_option("--strategy", c.strategy, "pairdiff | fullspread");
  ga->add_option("--policy", policy, "player B: random | max | min");
  ga->add_option("--seed", game_seed, "seed for the random policy");
  ga->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> word_args;
  auto* wo = app.add_subcommand("words", "shuffle | qshuffle | coproduct | antipode | qantipode | counit | lyndon");
  wo->add_option("args", word_args, "operation and words")->required();
  wo->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> poly_args;
  auto* po = app.add_subcommand("polylog", "li M X | li2 X | g Z Y | z N|inf M X | h M X | s N P X");
  po->add_option("args", poly_args, "function and arguments")->required();
  po->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ev) return run_evaluate(c, ev);
    if (*de) return run_decompose(c);
    if (*ga) return run_game(points, c.strategy, policy, game_seed, format);
    if (*wo) return run_words(word_args, format);
    if (*po) return run_polylog(poly_args, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::Internal);
  }
  return 0;
}
