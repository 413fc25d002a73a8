#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mtea/problems.hpp"

namespace mtea::problems {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view raw = text.substr(0, end);
    lines.push_back({number++, trim(raw)});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_number(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

double number_or_throw(std::string_view tok, std::size_t line, const char* what) {
  if (auto v = to_number(tok)) return *v;
  throw ParseError(line, std::string("non-numeric ") + what + " '" + std::string(tok) + "'");
}

// --- TSPLIB family -------------------------------------------------------------

struct HeaderValue {
  std::string value;
  std::size_t line;
};

struct TsplibDocument {
  std::map<std::string, HeaderValue> header;
  struct Coord {
    long long id;
    double x, y;
    std::size_t line;
  };
  std::vector<Coord> coords;
  bool has_coords = false;
  std::vector<double> weights;
  std::size_t weights_line = 0;
  bool has_weights = false;
  struct Demand {
    long long id;
    double demand;
    std::size_t line;
  };
  std::vector<Demand> demands;
  bool has_demands = false;
  std::vector<long long> depots;
  bool has_depots = false;
  std::vector<long long> tour;
  bool has_tour = false;
  std::size_t last_line = 0;

  const HeaderValue* find(const std::string& key) const {
    auto it = header.find(key);
    return it == header.end() ? nullptr : &it->second;
  }
};

enum class Section { Header, Coords, Weights, Demands, Depots, Tour, Skip };

std::optional<Section> section_keyword(std::string_view line) {
  std::string key = upper(trim(line));
  if (!key.empty() && key.back() == ':') key = upper(trim(std::string_view(key).substr(0, key.size() - 1)));
  if (key == "NODE_COORD_SECTION") return Section::Coords;
  if (key == "EDGE_WEIGHT_SECTION") return Section::Weights;
  if (key == "DEMAND_SECTION") return Section::Demands;
  if (key == "DEPOT_SECTION") return Section::Depots;
  if (key == "TOUR_SECTION") return Section::Tour;
  if (key == "DISPLAY_DATA_SECTION" || key == "FIXED_EDGES_SECTION") return Section::Skip;
  return std::nullopt;
}

TsplibDocument read_tsplib(std::string_view text) {
  TsplibDocument doc;
  Section section = Section::Header;
  bool depots_done = false;
  bool tour_done = false;
  for (const Line& line : split_lines(text)) {
    doc.last_line = line.number;
    if (line.text.empty()) continue;
    if (upper(line.text) == "EOF") break;
    if (auto s = section_keyword(line.text)) {
      section = *s;
      switch (section) {
        case Section::Coords:
          doc.has_coords = true;
          break;
        case Section::Weights:
          doc.has_weights = true;
          doc.weights_line = line.number;
          break;
        case Section::Demands:
          doc.has_demands = true;
          break;
        case Section::Depots:
          doc.has_depots = true;
          break;
        case Section::Tour:
          doc.has_tour = true;
          break;
        default:
          break;
      }
      continue;
    }
    const bool starts_alpha = std::isalpha(static_cast<unsigned char>(line.text.front())) != 0;
    const auto colon = line.text.find(':');
    if (starts_alpha && colon != std::string_view::npos) {
      const std::string key = upper(trim(line.text.substr(0, colon)));
      const bool key_ok = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      });
      if (!key_ok) throw ParseError(line.number, "malformed header line");
      doc.header[key] = {std::string(trim(line.text.substr(colon + 1))), line.number};
      section = Section::Header;
      continue;
    }
    const auto toks = tokens(line.text);
    switch (section) {
      case Section::Header:
        throw ParseError(line.number, "malformed header line '" + std::string(line.text) + "'");
      case Section::Coords: {
        if (toks.size() != 3) throw ParseError(line.number, "expected 'id x y'");
        auto id = to_integer(toks[0]);
        if (!id) throw ParseError(line.number, "non-numeric node id '" + std::string(toks[0]) + "'");
        doc.coords.push_back({*id, number_or_throw(toks[1], line.number, "coordinate"),
                              number_or_throw(toks[2], line.number, "coordinate"), line.number});
        break;
      }
      case Section::Weights:
        for (auto t : toks) doc.weights.push_back(number_or_throw(t, line.number, "edge weight"));
        break;
      case Section::Demands: {
        if (toks.size() != 2) throw ParseError(line.number, "expected 'id demand'");
        auto id = to_integer(toks[0]);
        if (!id) throw ParseError(line.number, "non-numeric node id '" + std::string(toks[0]) + "'");
        doc.demands.push_back({*id, number_or_throw(toks[1], line.number, "demand"), line.number});
        break;
      }
      case Section::Depots:
        for (auto t : toks) {
          auto id = to_integer(t);
          if (!id) throw ParseError(line.number, "non-numeric depot id '" + std::string(t) + "'");
          if (*id == -1) depots_done = true;
          if (!depots_done) doc.depots.push_back(*id);
        }
        break;
      case Section::Tour:
        for (auto t : toks) {
          auto id = to_integer(t);
          if (!id) throw ParseError(line.number, "non-numeric tour entry '" + std::string(t) + "'");
          if (*id == -1) tour_done = true;
          if (!tour_done) doc.tour.push_back(*id);
        }
        break;
      case Section::Skip:
        break;
    }
  }
  return doc;
}

int header_dimension(const TsplibDocument& doc) {
  const HeaderValue* dim = doc.find("DIMENSION");
  if (!dim) throw ParseError(0, "missing DIMENSION");
  auto n = to_integer(dim->value);
  if (!n || *n < 1) throw ParseError(dim->line, "malformed DIMENSION '" + dim->value + "'");
  return static_cast<int>(*n);
}

std::string header_string(const TsplibDocument& doc, const std::string& key) {
  const HeaderValue* v = doc.find(key);
  return v ? v->value : std::string();
}

// nint rounding of TSPLIB EUC_2D.
double euc_2d(double dx, double dy) { return std::floor(std::sqrt(dx * dx + dy * dy) + 0.5); }

/// Distance matrix over `n` nodes with TSPLIB ids 1..n.
SquareMatrix read_distances(const TsplibDocument& doc, int n) {
  std::string type = upper(header_string(doc, "EDGE_WEIGHT_TYPE"));
  if (type.empty()) type = doc.has_weights ? "EXPLICIT" : "EUC_2D";
  SquareMatrix d(n);
  if (type == "EUC_2D") {
    if (!doc.has_coords) throw ParseError(0, "missing NODE_COORD_SECTION");
    std::vector<const TsplibDocument::Coord*> by_id(static_cast<std::size_t>(n) + 1, nullptr);
    for (const auto& c : doc.coords) {
      if (c.id < 1 || c.id > n) throw ParseError(c.line, "node id out of range");
      if (by_id[c.id]) throw ParseError(c.line, "duplicate node id");
      by_id[c.id] = &c;
    }
    for (int id = 1; id <= n; ++id)
      if (!by_id[id]) throw ParseError(doc.last_line, "NODE_COORD_SECTION lacks node " + std::to_string(id));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d(i, j) = i == j ? 0.0 : euc_2d(by_id[i + 1]->x - by_id[j + 1]->x, by_id[i + 1]->y - by_id[j + 1]->y);
    return d;
  }
  if (type == "EXPLICIT") {
    const std::string format = upper(header_string(doc, "EDGE_WEIGHT_FORMAT"));
    if (!format.empty() && format != "FULL_MATRIX")
      throw ParseError(doc.find("EDGE_WEIGHT_FORMAT")->line, "unsupported EDGE_WEIGHT_FORMAT " + format);
    if (!doc.has_weights) throw ParseError(0, "missing EDGE_WEIGHT_SECTION");
    const auto need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (doc.weights.size() != need)
      throw ParseError(doc.weights_line, "EDGE_WEIGHT_SECTION holds " + std::to_string(doc.weights.size()) +
                                             " values, expected " + std::to_string(need));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = doc.weights[static_cast<std::size_t>(i) * n + j];
    for (int i = 0; i < n; ++i) {
      if (d(i, i) != 0.0) throw ParseError(doc.weights_line, "non-zero diagonal in explicit matrix");
      for (int j = i + 1; j < n; ++j)
        if (d(i, j) != d(j, i) || d(i, j) < 0.0)
          throw ParseError(doc.weights_line, "explicit matrix is not symmetric and non-negative");
    }
    return d;
  }
  const HeaderValue* v = doc.find("EDGE_WEIGHT_TYPE");
  throw ParseError(v ? v->line : 0, "unsupported EDGE_WEIGHT_TYPE " + type);
}

void check_type(const TsplibDocument& doc, const std::string& expected) {
  const HeaderValue* t = doc.find("TYPE");
  if (t && upper(t->value) != expected)
    throw ParseError(t->line, "expected TYPE " + expected + ", found " + t->value);
}

// --- plain matrix formats ---------------------------------------------------

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> all_tokens(const std::vector<Line>& lines, std::size_t from) {
  std::vector<Token> out;
  for (std::size_t i = from; i < lines.size(); ++i)
    for (auto t : tokens(lines[i].text)) out.push_back({t, lines[i].number});
  return out;
}

SquareMatrix read_square(const std::vector<Token>& toks, std::size_t& pos, int n, std::size_t last_line,
                         const char* what) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (pos >= toks.size())
        throw ParseError(last_line, std::string(what) + " matrix truncated: expected " +
                                        std::to_string(static_cast<long long>(n) * n) + " values");
      m(i, j) = number_or_throw(toks[pos].text, toks[pos].line, "matrix entry");
      ++pos;
    }
  return m;
}

int read_order(const std::vector<Token>& toks, std::size_t& pos, std::size_t last_line) {
  if (pos >= toks.size()) throw ParseError(last_line, "missing problem size");
  auto n = to_integer(toks[pos].text);
  if (!n || *n < 1) throw ParseError(toks[pos].line, "malformed problem size '" + std::string(toks[pos].text) + "'");
  ++pos;
  return static_cast<int>(*n);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

ProblemInstance parse_tsplib(std::string_view text) {
  const TsplibDocument doc = read_tsplib(text);
  check_type(doc, "TSP");
  const int n = header_dimension(doc);
  ProblemInstance inst;
  inst.kind = ProblemKind::TSP;
  inst.name = header_string(doc, "NAME");
  inst.dimension = n;
  inst.dist = read_distances(doc, n);
  return inst;
}

ProblemInstance parse_cvrp(std::string_view text) {
  const TsplibDocument doc = read_tsplib(text);
  check_type(doc, "CVRP");
  const int nodes = header_dimension(doc);
  if (nodes < 2) throw ParseError(doc.find("DIMENSION")->line, "CVRP needs a depot and a customer");
  const HeaderValue* cap = doc.find("CAPACITY");
  if (!cap) throw ParseError(0, "missing CAPACITY");
  const auto capacity = to_number(cap->value);
  if (!capacity || *capacity <= 0.0) throw ParseError(cap->line, "malformed CAPACITY '" + cap->value + "'");
  if (!doc.has_demands) throw ParseError(0, "missing DEMAND_SECTION");
  if (!doc.has_depots || doc.depots.empty()) throw ParseError(0, "depot not identified (DEPOT_SECTION)");
  if (doc.depots.size() > 1) throw ParseError(0, "multiple depots are not supported");
  const long long depot = doc.depots.front();
  if (depot < 1 || depot > nodes) throw ParseError(0, "depot id out of range");

  const SquareMatrix full = read_distances(doc, nodes);

  // depot -> 0, remaining ids ascending -> 1..D
  std::vector<int> index_of(static_cast<std::size_t>(nodes) + 1, 0);
  std::vector<int> id_of{static_cast<int>(depot)};
  for (int id = 1; id <= nodes; ++id) {
    if (id == depot) continue;
    index_of[id] = static_cast<int>(id_of.size());
    id_of.push_back(id);
  }

  ProblemInstance inst;
  inst.kind = ProblemKind::CVRP;
  inst.name = header_string(doc, "NAME");
  inst.dimension = nodes - 1;
  inst.capacity = *capacity;
  inst.dist = SquareMatrix(nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j) inst.dist(i, j) = full(id_of[i] - 1, id_of[j] - 1);

  inst.demands.assign(static_cast<std::size_t>(inst.dimension), -1.0);
  for (const auto& d : doc.demands) {
    if (d.id < 1 || d.id > nodes) throw ParseError(d.line, "demand for unknown node");
    if (d.demand < 0.0) throw ParseError(d.line, "negative demand");
    if (d.id == depot) continue;
    if (d.demand > inst.capacity)
      throw ParseError(d.line, "demand " + shortest(d.demand) + " of node " + std::to_string(d.id) +
                                   " exceeds capacity " + shortest(inst.capacity) + " (infeasible instance)");
    inst.demands[index_of[d.id] - 1] = d.demand;
  }
  for (int c = 0; c < inst.dimension; ++c)
    if (inst.demands[c] < 0.0) throw ParseError(0, "missing demand for node " + std::to_string(id_of[c + 1]));
  return inst;
}

ProblemInstance parse_qaplib(std::string_view text) {
  const auto lines = split_lines(text);
  const auto toks = all_tokens(lines, 0);
  const std::size_t last = lines.empty() ? 0 : lines.back().number;
  std::size_t pos = 0;
  const int n = read_order(toks, pos, last);
  ProblemInstance inst;
  inst.kind = ProblemKind::QAP;
  inst.dimension = n;
  inst.flow = read_square(toks, pos, n, last, "flow");
  inst.dist = read_square(toks, pos, n, last, "distance");
  if (pos != toks.size())
    throw ParseError(toks[pos].line, "unexpected trailing data: expected exactly 2*n^2 matrix values");
  return inst;
}

ProblemInstance parse_lolib(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && lines[first].text.empty()) ++first;
  ProblemInstance inst;
  inst.kind = ProblemKind::LOP;
  // A first line that is not a lone integer is the instance name.
  if (first < lines.size()) {
    const auto toks = tokens(lines[first].text);
    if (toks.size() != 1 || !to_integer(toks[0])) {
      inst.name = std::string(lines[first].text);
      ++first;
    }
  }
  const auto toks = all_tokens(lines, first);
  const std::size_t last = lines.empty() ? 0 : lines.back().number;
  std::size_t pos = 0;
  const int n = read_order(toks, pos, last);
  inst.dimension = n;
  inst.weight = read_square(toks, pos, n, last, "weight");
  if (pos != toks.size())
    throw ParseError(toks[pos].line, "unexpected trailing data: expected exactly n^2 matrix values");
  return inst;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  ProblemInstance inst;
  if (ext == ".tsp") {
    inst = parse_tsplib(text);
  } else if (ext == ".vrp") {
    inst = parse_cvrp(text);
  } else if (ext == ".dat") {
    inst = parse_qaplib(text);
  } else if (text.find("_SECTION") != std::string::npos) {
    const TsplibDocument doc = read_tsplib(text);
    inst = upper(header_string(doc, "TYPE")) == "CVRP" ? parse_cvrp(text) : parse_tsplib(text);
  } else {
    inst = parse_lolib(text);
  }
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

TourFile parse_tour(std::string_view text) {
  const TsplibDocument doc = read_tsplib(text);
  if (!doc.has_tour) throw ParseError(0, "missing TOUR_SECTION");
  TourFile out;
  out.name = header_string(doc, "NAME");
  if (const HeaderValue* opt = doc.find("OPTIMUM")) {
    auto v = to_number(opt->value);
    if (!v) throw ParseError(opt->line, "malformed OPTIMUM '" + opt->value + "'");
    out.optimum = *v;
  }
  std::vector<int> order(doc.tour.begin(), doc.tour.end());
  if (!Permutation::is_valid(order)) throw ParseError(0, "TOUR_SECTION is not a permutation of 1..n");
  if (doc.find("DIMENSION") && header_dimension(doc) != static_cast<int>(order.size()))
    throw ParseError(doc.find("DIMENSION")->line, "tour length differs from DIMENSION");
  out.tour = Permutation::unchecked(std::move(order));
  return out;
}

TourFile load_tour(const std::filesystem::path& path) { return parse_tour(read_file(path)); }

std::string format_tsplib_explicit(const ProblemInstance& tsp) {
  if (tsp.kind != ProblemKind::TSP) throw ContractViolation("format_tsplib_explicit needs a TSP instance");
  std::string out;
  out += "NAME : " + tsp.name + "\nTYPE : TSP\nDIMENSION : " + std::to_string(tsp.dimension) +
         "\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  for (int i = 0; i < tsp.dimension; ++i) {
    for (int j = 0; j < tsp.dimension; ++j) {
      if (j) out += ' ';
      out += shortest(tsp.dist(i, j));
    }
    out += '\n';
  }
  out += "EOF\n";
  return out;
}

std::string format_tour(const std::string& name, const Permutation& tour, std::optional<double> optimum) {
  std::string out = "NAME : " + name + "\nTYPE : TOUR\nDIMENSION : " + std::to_string(tour.size()) + "\n";
  if (optimum) out += "OPTIMUM : " + shortest(*optimum) + "\n";
  out += "TOUR_SECTION\n";
  for (int c : tour) out += std::to_string(c) + "\n";
  out += "-1\nEOF\n";
  return out;
}

}  // namespace mtea::problems
