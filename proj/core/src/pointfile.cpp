#include "esph/pointfile.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "esph/errors.hpp"

namespace esph {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

bool parse_count(const std::string& tok, int& out) {
  if (tok.empty() || tok.size() > 9) return false;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
  }
  out = std::stoi(tok);
  return true;
}

}  // namespace

PointSet parse_points(std::istream& in) {
  PointSet ps;
  int expected = -1;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokens_of(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (expected < 0) {
      if (toks.size() != 2 || !parse_count(toks[0], ps.dim) || !parse_count(toks[1], expected)) {
        throw ParseError(line_no, "expected header \"d n\"");
      }
      if (ps.dim < 1) throw ParseError(line_no, "dimension must be positive");
      ps.points.reserve(static_cast<std::size_t>(expected));
      continue;
    }
    if (static_cast<int>(ps.points.size()) == expected) {
      throw ParseError(line_no, "more than " + std::to_string(expected) + " points");
    }
    if (static_cast<int>(toks.size()) != ps.dim) {
      throw ParseError(line_no, "expected " + std::to_string(ps.dim) + " coordinates");
    }
    VectorD p;
    for (const auto& tok : toks) {
      auto v = parse_scalar(tok);
      if (!v) throw ParseError(line_no, "bad coordinate \"" + tok + "\"");
      p.push_back(std::move(*v));
    }
    ps.points.push_back(std::move(p));
  }
  if (expected < 0) throw ParseError(line_no + 1, "missing header");
  if (static_cast<int>(ps.points.size()) != expected) {
    throw ParseError(line_no + 1, "expected " + std::to_string(expected) + " points, found " +
                                      std::to_string(ps.points.size()));
  }
  return ps;
}

PointSet read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_points(in);
}

void write_points(std::ostream& out, std::span<const VectorD> points, int dim) {
  out << dim << ' ' << points.size() << '\n';
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) out << ' ';
      out << to_string(p[i]);
    }
    out << '\n';
  }
}

}  // namespace esph
