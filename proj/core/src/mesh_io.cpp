#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hpasm/errors.hpp"
#include "hpasm/mesh.hpp"

namespace hpasm {

namespace {

int parse_degree(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw MeshFormatError(line, "expected an integer degree, got '" + tok + "'");
  }
  if (used != tok.size()) throw MeshFormatError(line, "expected an integer degree, got '" + tok + "'");
  return value;
}

double parse_real(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw MeshFormatError(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw MeshFormatError(line, "expected a number, got '" + tok + "'");
  return value;
}

}  // namespace

RectMesh read_mesh(std::istream& in) {
  std::vector<RectCell> cells;
  int dim = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    int line_dim = 0;
    if (tok.size() == 3) line_dim = 1;
    else if (tok.size() == 6) line_dim = 2;
    else throw MeshFormatError(line_no, "expected 3 (1D) or 6 (2D) fields, got " + std::to_string(tok.size()));
    if (dim == 0) dim = line_dim;
    if (dim != line_dim) throw MeshFormatError(line_no, "mixed 1D and 2D cell lines");

    RectCell c;
    if (dim == 1) {
      c.origin[0] = parse_real(tok[0], line_no);
      c.sides[0] = parse_real(tok[1], line_no);
      c.degrees[0] = parse_degree(tok[2], line_no);
    } else {
      c.origin = {parse_real(tok[0], line_no), parse_real(tok[1], line_no)};
      c.sides = {parse_real(tok[2], line_no), parse_real(tok[3], line_no)};
      c.degrees = {parse_degree(tok[4], line_no), parse_degree(tok[5], line_no)};
    }
    cells.push_back(c);
  }
  if (cells.empty()) throw EmptyMesh();
  return build_mesh(std::move(cells), dim);
}

RectMesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const RectMesh& mesh) {
  char buf[64];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& c : mesh.cells()) {
    if (mesh.dim() == 1) {
      out << real(c.origin[0]) << ' ' << real(c.sides[0]) << ' ' << c.degrees[0] << '\n';
    } else {
      out << real(c.origin[0]) << ' ' << real(c.origin[1]) << ' ' << real(c.sides[0]) << ' '
          << real(c.sides[1]) << ' ' << c.degrees[0] << ' ' << c.degrees[1] << '\n';
    }
  }
}

}  // namespace hpasm
