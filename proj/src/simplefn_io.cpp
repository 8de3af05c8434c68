#include "usco/simplefn_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace usco {

namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  return std::stod(s);
}

std::string interval_to_text(const Interval& iv) {
  return "[" + format_double(iv.lo) + "," + format_double(iv.hi) + "]";
}

Interval interval_from_text(const std::string& text) {
  if (text.size() < 3 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("bad interval: " + text);
  std::string inner = text.substr(1, text.size() - 2);
  auto comma = inner.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bad interval: " + text);
  return Interval{parse_double(inner.substr(0, comma)), parse_double(inner.substr(comma + 1))};
}

std::vector<Interval> stage_intervals(const ClosedSet& set) {
  const std::vector<Box>* boxes = set.boxes();
  if (boxes == nullptr)
    throw std::invalid_argument("write_simplefn: stages must be 1-d box unions");
  std::vector<Interval> out;
  for (const Box& b : *boxes) {
    if (b.dim() != 1)
      throw std::invalid_argument("write_simplefn: stages must be 1-d box unions");
    out.push_back(b.sides()[0]);
  }
  return out;
}

}  // namespace

std::string point_to_text(const Point& p) {
  std::string out = "(";
  bool first = true;
  for (const auto& e : p.entries()) {
    if (!first) out += ",";
    out += std::to_string(e.first) + ":" + format_double(e.second);
    first = false;
  }
  out += ")";
  return out;
}

Point point_from_text(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("bad point: " + text);
  std::string inner = text.substr(1, text.size() - 2);
  std::vector<Point::Entry> entries;
  std::istringstream is(inner);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad point entry: " + item);
    entries.emplace_back(std::stoll(item.substr(0, colon)), parse_double(item.substr(colon + 1)));
  }
  return Point::sparse(std::move(entries));
}

void write_simplefn(std::ostream& os, const SimpleFunction& f, std::int64_t piece_limit,
                    int stage_horizon) {
  std::int64_t count = piece_limit;
  if (f.piece_count()) count = std::min(count, *f.piece_count());
  os << "simplefn 1\n";
  os << "name " << (f.name().empty() ? "unnamed" : f.name()) << "\n";
  os << "horizon " << stage_horizon << "\n";
  os << "anchor " << point_to_text(f.anchor()) << "\n";
  os << "pieces " << count << "\n";
  for (std::int64_t g = 0; g < count; ++g) {
    const Piece& piece = f.piece(g);
    os << "piece " << (piece.label.empty() ? std::to_string(g) : piece.label) << "\n";
    os << "value " << point_to_text(piece.value) << "\n";
    for (int n = 1; n <= stage_horizon; ++n) {
      os << "stage " << n;
      for (const Interval& iv : stage_intervals(piece.stage(n))) os << " " << interval_to_text(iv);
      os << "\n";
    }
  }
  os << "end\n";
}

namespace {

struct StoredPiece {
  std::string label;
  Point value;
  std::vector<std::vector<Interval>> stages;  // index n-1
};

}  // namespace

SimpleFunction read_simplefn(std::istream& is) {
  std::string word;
  int version = 0;
  if (!(is >> word >> version) || word != "simplefn" || version != 1)
    throw std::invalid_argument("read_simplefn: not a simplefn v1 stream");

  std::string name;
  int horizon = 0;
  std::string anchor_text;
  std::int64_t count = 0;
  auto pieces = std::make_shared<std::vector<StoredPiece>>();

  while (is >> word) {
    if (word == "name") {
      is >> name;
    } else if (word == "horizon") {
      is >> horizon;
    } else if (word == "anchor") {
      is >> anchor_text;
    } else if (word == "pieces") {
      is >> count;
    } else if (word == "piece") {
      StoredPiece p;
      is >> p.label;
      pieces->push_back(std::move(p));
    } else if (word == "value") {
      std::string text;
      is >> text;
      if (pieces->empty()) throw std::invalid_argument("read_simplefn: value before piece");
      pieces->back().value = point_from_text(text);
    } else if (word == "stage") {
      int n = 0;
      is >> n;
      if (pieces->empty() || n < 1) throw std::invalid_argument("read_simplefn: bad stage record");
      std::string rest;
      std::getline(is, rest);
      std::istringstream line(rest);
      std::vector<Interval> ivs;
      std::string tok;
      while (line >> tok) ivs.push_back(interval_from_text(tok));
      auto& st = pieces->back().stages;
      if (static_cast<int>(st.size()) < n) st.resize(static_cast<std::size_t>(n));
      st[static_cast<std::size_t>(n - 1)] = std::move(ivs);
    } else if (word == "end") {
      break;
    } else {
      throw std::invalid_argument("read_simplefn: unknown record " + word);
    }
  }
  if (horizon < 1 || pieces->empty() || count != static_cast<std::int64_t>(pieces->size()))
    throw std::invalid_argument("read_simplefn: inconsistent header");

  const int H = horizon;
  auto stage_set = [pieces, H](std::int64_t g, int n) {
    int idx = std::min(n, H) - 1;
    const auto& st = (*pieces)[static_cast<std::size_t>(g)].stages;
    if (idx >= static_cast<int>(st.size())) return ClosedSet::empty();
    return ClosedSet::interval_union(st[static_cast<std::size_t>(idx)]);
  };

  SimpleFunction::Config config;
  config.name = name;
  config.piece_count = count;
  config.anchor = point_from_text(anchor_text);
  config.piece = [pieces, stage_set, H](std::int64_t g) {
    if (g < 0 || g >= static_cast<std::int64_t>(pieces->size()))
      throw std::out_of_range("read_simplefn: piece index");
    const StoredPiece& sp = (*pieces)[static_cast<std::size_t>(g)];
    Piece piece;
    piece.label = sp.label;
    piece.value = sp.value;
    piece.stage = [stage_set, g](int n) { return stage_set(g, n); };
    // Stages are frozen at the stored horizon, so the full piece is the
    // horizon stage.
    piece.member = [stage_set, g, H](const Point& x) { return stage_set(g, H).contains(x); };
    return piece;
  };
  config.locate = [pieces, stage_set](const Box& region, int n) {
    std::vector<std::int64_t> out;
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(pieces->size()); ++g) {
      ClosedSet st = stage_set(g, n);
      const std::vector<Box>* boxes = st.boxes();
      if (boxes == nullptr) continue;
      for (const Box& b : *boxes) {
        if (b.intersects(region)) {
          out.push_back(g);
          break;
        }
      }
    }
    return out;
  };
  return SimpleFunction(std::move(config));
}

}  // namespace usco
