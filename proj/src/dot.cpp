#include "wcolim/dot.hpp"

#include <sstream>

namespace wcolim {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string category_dot(const FinCat& c, const std::string& title, const std::vector<char>& marked) {
  std::ostringstream os;
  os << "digraph " << quoted(title) << " {\n";
  for (ObjId o = 0; o < c.num_objects(); ++o) os << "  o" << o << " [label=" << quoted(c.object_name(o)) << "];\n";
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    os << "  o" << c.dom(f) << " -> o" << c.cod(f) << " [label=" << quoted(c.arrow_name(f));
    if (f < static_cast<int>(marked.size()) && marked[f]) os << ", style=bold";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string shape_dot(const TwoCat& k, const std::string& title) { return category_dot(k.one(), title); }

std::string hom_slice_dot(const TwoCat& k, ObjId a, ObjId b, const std::string& title) {
  const FinCat& one = k.one();
  std::ostringstream os;
  os << "digraph " << quoted(title) << " {\n";
  for (ArrowId f : one.hom(a, b)) os << "  f" << f << " [label=" << quoted(one.arrow_name(f)) << "];\n";
  for (ArrowId f : one.hom(a, b))
    for (CellId c : k.cells_from(f))
      if (!k.is_identity_cell(c))
        os << "  f" << f << " -> f" << k.tgt(c) << " [label=" << quoted(k.cell_name(c)) << "];\n";
  os << "}\n";
  return os.str();
}

std::string dot_file_stem(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                      ch == '.' || ch == '-';
    out += keep ? ch : '_';
  }
  return out.empty() ? "_" : out;
}

}  // namespace wcolim
