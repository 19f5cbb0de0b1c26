#include "wcolim/document.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace wcolim {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- positions

/// Iterator over the text that remembers the last character the lexer read.
class TrackingIter {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIter() = default;
  TrackingIter(const char* p, const char** last) : p_(p), last_(last) {}
  reference operator*() const {
    *last_ = p_;
    return *p_;
  }
  TrackingIter& operator++() {
    ++p_;
    return *this;
  }
  TrackingIter operator++(int) {
    TrackingIter t = *this;
    ++p_;
    return t;
  }
  bool operator==(const TrackingIter& o) const { return p_ == o.p_; }

 private:
  const char* p_ = nullptr;
  const char** last_ = nullptr;
};

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i)
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  return {line, static_cast<int>(offset - line_start) + 1};
}

std::string escape_pointer_token(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

/// Builds the DOM and records an offset per JSON pointer: the key for
/// object members, the value for array elements.
class PositionSax {
 public:
  PositionSax(std::string_view text, const char** last) : text_(text), last_(last) {}

  json root;
  std::map<std::string, std::size_t> offsets;

  bool null() { return scalar(nullptr); }
  bool boolean(bool v) { return scalar(v); }
  bool number_integer(json::number_integer_t v) { return scalar(v); }
  bool number_unsigned(json::number_unsigned_t v) { return scalar(v); }
  bool number_float(json::number_float_t v, const std::string&) { return scalar(v); }
  bool string(json::string_t& v) { return scalar(v); }
  bool binary(json::binary_t& v) { return scalar(json::binary(v)); }
  bool start_object(std::size_t) {
    stack_.push_back(place(json::object()));
    return true;
  }
  bool key(json::string_t& k) {
    const json& top = *stack_.back();
    path_.push_back(k);
    if (top.contains(k)) fail("duplicate key '" + k + "'");
    mark();
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    leave();
    return true;
  }
  bool start_array(std::size_t) {
    stack_.push_back(place(json::array()));
    return true;
  }
  bool end_array() { return end_object(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    std::string what = ex.what();
    // drop the library's "[json.exception...] parse error at line L, column C: " prefix
    if (auto p = what.find(": "); p != std::string::npos && what.rfind("[json.exception", 0) == 0)
      what = what.substr(p + 2);
    const auto [l, c] = line_column(text_, position == 0 ? 0 : position - 1);
    throw SpecError("syntax error: " + what, l, c, pointer());
  }

  std::string pointer() const {
    std::string p;
    for (const auto& t : path_) p += "/" + escape_pointer_token(t);
    return p;
  }

 private:
  std::string_view text_;
  const char** last_;
  std::vector<json*> stack_;
  std::vector<std::string> path_;

  std::size_t here() const { return *last_ ? static_cast<std::size_t>(*last_ - text_.data()) : 0; }
  void mark() { offsets[pointer()] = here(); }
  [[noreturn]] void fail(const std::string& msg) {
    const auto [l, c] = line_column(text_, here());
    throw SpecError(msg, l, c, pointer());
  }
  json* place(json v) {
    if (stack_.empty()) {
      root = std::move(v);
      mark();
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      path_.push_back(std::to_string(top.size()));
      mark();
      top.push_back(std::move(v));
      return &top.back();
    }
    return &(top[path_.back()] = std::move(v));
  }
  void leave() {
    if (!stack_.empty()) path_.pop_back();
  }
  bool scalar(json v) {
    place(std::move(v));
    leave();
    return true;
  }
};

// ---------------------------------------------------------------- reading

class Reader {
 public:
  Reader(std::string_view text, std::map<std::string, std::size_t> offsets)
      : text_(text), offsets_(std::move(offsets)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::string p = ptr;
    while (true) {
      if (auto it = offsets_.find(p); it != offsets_.end()) {
        const auto [l, c] = line_column(text_, it->second);
        throw SpecError(msg, l, c, ptr);
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw SpecError(msg, 0, 0, ptr);
  }

  void keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed,
            std::initializer_list<const char*> required = {}) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    for (const auto& [k, v] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail(ptr + "/" + escape_pointer_token(k), "unknown field '" + k + "'");
    }
    for (const char* r : required)
      if (!obj.contains(r)) fail(ptr, std::string("missing field '") + r + "'");
  }

  const std::string& str(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get_ref<const std::string&>();
  }

  const json& array(const json& obj, const std::string& ptr, const char* key) const {
    static const json empty = json::array();
    if (!obj.contains(key)) return empty;
    const json& v = obj.at(key);
    if (!v.is_array()) fail(ptr + "/" + key, "expected an array");
    return v;
  }

  const json& object(const json& obj, const std::string& ptr, const char* key) const {
    static const json empty = json::object();
    if (!obj.contains(key)) return empty;
    const json& v = obj.at(key);
    if (!v.is_object()) fail(ptr + "/" + key, "expected an object");
    return v;
  }

  /// [a, b, c] of strings
  std::array<std::string, 3> triple(const json& v, const std::string& ptr) const {
    if (!v.is_array() || v.size() != 3) fail(ptr, "expected a triple [first, then, composite]");
    return {str(v[0], ptr + "/0"), str(v[1], ptr + "/1"), str(v[2], ptr + "/2")};
  }

 private:
  std::string_view text_;
  std::map<std::string, std::size_t> offsets_;
};

std::string member(const std::string& ptr, const std::string& key) { return ptr + "/" + escape_pointer_token(key); }

using NameIndex = std::map<std::string, int>;

int lookup(const Reader& rd, const NameIndex& names, const std::string& name, const std::string& ptr,
           const std::string& what) {
  auto it = names.find(name);
  if (it == names.end()) rd.fail(ptr, "unknown " + what + " '" + name + "'");
  return it->second;
}

/// Objects, arrows and composition triples under the given arrow key.
FinCat read_category_tables(const Reader& rd, const json& v, const std::string& ptr, const char* arrows_key,
                            const std::string& kind) {
  const json& objs = rd.array(v, ptr, "objects");
  FinCatBuilder b;
  NameIndex obj, arr;
  std::vector<FinCat::Ends> ends;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string p = ptr + "/objects/" + std::to_string(i);
    const std::string& name = rd.str(objs[i], p);
    if (name.empty()) rd.fail(p, "empty object name");
    if (obj.count(name)) rd.fail(p, "duplicate object '" + name + "'");
    const ObjId o = b.object(name);
    obj[name] = o;
    arr["1_" + name] = b.identity(o);
    ends.push_back({o, o});
  }
  // identities are named 1_<object> unless renamed here
  std::vector<std::string> id_names;
  for (std::size_t i = 0; i < objs.size(); ++i) id_names.push_back("1_" + objs[i].get<std::string>());
  const json& ids = rd.object(v, ptr, "identities");
  for (const auto& [o, n] : ids.items()) {
    const std::string p = member(ptr + "/identities", o);
    const ObjId a = lookup(rd, obj, o, p, "object");
    const std::string& name = rd.str(n, p);
    if (name.empty()) rd.fail(p, "empty identity name");
    arr.erase(id_names[a]);
    id_names[a] = name;
  }
  for (std::size_t i = 0; i < id_names.size(); ++i) {
    const std::string p = ids.empty() ? ptr + "/objects/" + std::to_string(i) : ptr + "/identities";
    if (arr.count(id_names[i]) && arr.at(id_names[i]) != b.identity(static_cast<ObjId>(i)))
      rd.fail(p, "duplicate identity name '" + id_names[i] + "'");
    arr[id_names[i]] = b.identity(static_cast<ObjId>(i));
  }
  const json& arrows = rd.array(v, ptr, arrows_key);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string p = ptr + "/" + arrows_key + "/" + std::to_string(i);
    rd.keys(arrows[i], p, {"name", "dom", "cod"}, {"name", "dom", "cod"});
    const std::string& name = rd.str(arrows[i]["name"], p + "/name");
    if (name.empty()) rd.fail(p + "/name", "empty " + kind + " name");
    if (arr.count(name)) rd.fail(p + "/name", "duplicate " + kind + " '" + name + "'");
    const ObjId d = lookup(rd, obj, rd.str(arrows[i]["dom"], p + "/dom"), p + "/dom", "object");
    const ObjId c = lookup(rd, obj, rd.str(arrows[i]["cod"], p + "/cod"), p + "/cod", "object");
    arr[name] = b.arrow(d, c, name);
    ends.push_back({d, c});
  }
  // identities come first, one per object
  auto is_id = [&](ArrowId f) { return f < static_cast<int>(obj.size()); };
  const json& comp = rd.array(v, ptr, "compose");
  std::set<std::pair<ArrowId, ArrowId>> seen;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string p = ptr + "/compose/" + std::to_string(i);
    const auto t = rd.triple(comp[i], p);
    const ArrowId f = lookup(rd, arr, t[0], p + "/0", kind);
    const ArrowId g = lookup(rd, arr, t[1], p + "/1", kind);
    const ArrowId h = lookup(rd, arr, t[2], p + "/2", kind);
    if (is_id(f) || is_id(g)) rd.fail(p, "composites with identities follow the unit laws and are not listed");
    if (ends[f].cod != ends[g].dom) rd.fail(p, t[0] + " and " + t[1] + " are not composable");
    if (ends[h].dom != ends[f].dom || ends[h].cod != ends[g].cod)
      rd.fail(p + "/2", t[2] + " does not have the endpoints of " + t[0] + " then " + t[1]);
    if (!seen.insert({f, g}).second) rd.fail(p, "composite of " + t[0] + " then " + t[1] + " given twice");
    b.compose(f, g, h);
  }
  try {
    FinCat c = b.build();
    std::vector<std::string> names;
    for (ArrowId f = 0; f < c.num_arrows(); ++f) names.push_back(c.arrow_name(f));
    for (std::size_t i = 0; i < id_names.size(); ++i) names[i] = id_names[i];
    c.set_arrow_names(std::move(names));
    return c;
  } catch (const StructureError& e) {
    rd.fail(ptr + "/compose", e.what());
  }
}

CatPtr read_category(const Reader& rd, const json& v, const std::string& ptr, const std::string& name) {
  rd.keys(v, ptr, {"objects", "identities", "arrows", "compose"}, {"objects"});
  FinCat c = read_category_tables(rd, v, ptr, "arrows", "arrow");
  const ValidationReport r = validate_category(c);
  if (!r.ok()) rd.fail(ptr, "category '" + name + "' is invalid: " + r.summary());
  return share(std::move(c));
}

TwoCatPtr read_shape(const Reader& rd, const json& v, const std::string& ptr, const std::string& name) {
  rd.keys(v, ptr, {"objects", "identities", "one_cells", "compose", "two_cells", "vcompose", "hcompose"},
          {"objects"});
  FinCat one = read_category_tables(rd, v, ptr, "one_cells", "1-cell");
  {
    const ValidationReport r = validate_category(one);
    if (!r.ok()) rd.fail(ptr, "shape '" + name + "' has invalid 1-cells: " + r.summary());
  }
  TwoCatBuilder b(one);
  NameIndex one_cells, cells;
  std::vector<TwoCat::CellEnds> ends;
  for (ArrowId f = 0; f < one.num_arrows(); ++f) {
    one_cells[one.arrow_name(f)] = f;
    cells["1_" + one.arrow_name(f)] = b.id2(f);
    ends.push_back({f, f});
  }
  const json& tc = rd.array(v, ptr, "two_cells");
  for (std::size_t i = 0; i < tc.size(); ++i) {
    const std::string p = ptr + "/two_cells/" + std::to_string(i);
    rd.keys(tc[i], p, {"name", "src", "tgt"}, {"name", "src", "tgt"});
    const std::string& cname = rd.str(tc[i]["name"], p + "/name");
    if (cname.empty()) rd.fail(p + "/name", "empty 2-cell name");
    if (cells.count(cname)) rd.fail(p + "/name", "duplicate 2-cell '" + cname + "'");
    const ArrowId s = lookup(rd, one_cells, rd.str(tc[i]["src"], p + "/src"), p + "/src", "1-cell");
    const ArrowId t = lookup(rd, one_cells, rd.str(tc[i]["tgt"], p + "/tgt"), p + "/tgt", "1-cell");
    if (one.dom(s) != one.dom(t) || one.cod(s) != one.cod(t)) rd.fail(p, "2-cell between non-parallel 1-cells");
    cells[cname] = b.cell(s, t, cname);
    ends.push_back({s, t});
  }
  auto is_id = [&](CellId a) { return a < one.num_arrows(); };
  auto is_unit = [&](CellId a) { return is_id(a) && one.is_identity(ends[a].src); };

  const json& vc = rd.array(v, ptr, "vcompose");
  std::set<std::pair<CellId, CellId>> seen;
  for (std::size_t i = 0; i < vc.size(); ++i) {
    const std::string p = ptr + "/vcompose/" + std::to_string(i);
    const auto t = rd.triple(vc[i], p);
    const CellId a = lookup(rd, cells, t[0], p + "/0", "2-cell");
    const CellId c = lookup(rd, cells, t[1], p + "/1", "2-cell");
    const CellId r = lookup(rd, cells, t[2], p + "/2", "2-cell");
    if (is_id(a) || is_id(c)) rd.fail(p, "vertical composites with identities are not listed");
    if (ends[a].tgt != ends[c].src) rd.fail(p, t[0] + " then " + t[1] + " is not vertically composable");
    if (ends[r].src != ends[a].src || ends[r].tgt != ends[c].tgt)
      rd.fail(p + "/2", t[2] + " does not have the boundary of " + t[0] + " then " + t[1]);
    if (!seen.insert({a, c}).second) rd.fail(p, "vertical composite given twice");
    b.vcompose(a, c, r);
  }
  const json& hc = rd.array(v, ptr, "hcompose");
  seen.clear();
  for (std::size_t i = 0; i < hc.size(); ++i) {
    const std::string p = ptr + "/hcompose/" + std::to_string(i);
    const auto t = rd.triple(hc[i], p);
    const CellId a = lookup(rd, cells, t[0], p + "/0", "2-cell");
    const CellId c = lookup(rd, cells, t[1], p + "/1", "2-cell");
    const CellId r = lookup(rd, cells, t[2], p + "/2", "2-cell");
    if (is_unit(a) || is_unit(c) || (is_id(a) && is_id(c)))
      rd.fail(p, "horizontal composites of identities are determined and not listed");
    if (one.cod(ends[a].src) != one.dom(ends[c].src))
      rd.fail(p, t[0] + " and " + t[1] + " are not horizontally composable");
    if (ends[r].src != one.compose(ends[a].src, ends[c].src) || ends[r].tgt != one.compose(ends[a].tgt, ends[c].tgt))
      rd.fail(p + "/2", t[2] + " does not have the boundary of " + t[0] + " * " + t[1]);
    if (!seen.insert({a, c}).second) rd.fail(p, "horizontal composite given twice");
    b.hcompose(a, c, r);
  }
  TwoCat k;
  try {
    k = b.build();
  } catch (const StructureError& e) {
    rd.fail(ptr, e.what());
  }
  const ValidationReport r = validate_two_category(k);
  if (!r.ok()) rd.fail(ptr, "shape '" + name + "' is invalid: " + r.summary());
  return share(std::move(k));
}

NameIndex object_names(const FinCat& c) {
  NameIndex m;
  for (ObjId o = 0; o < c.num_objects(); ++o) m[c.object_name(o)] = o;
  return m;
}

NameIndex arrow_names(const FinCat& c) {
  NameIndex m;
  for (ArrowId f = 0; f < c.num_arrows(); ++f) m[c.arrow_name(f)] = f;
  return m;
}

Functor read_functor_map(const Reader& rd, const json& v, const std::string& ptr, const CatPtr& src,
                         const CatPtr& tgt) {
  rd.keys(v, ptr, {"objects", "arrows"}, {"objects"});
  const NameIndex so = object_names(*src), sa = arrow_names(*src);
  const NameIndex to = object_names(*tgt), ta = arrow_names(*tgt);
  Functor f{src, tgt, std::vector<ObjId>(src->num_objects(), -1), std::vector<ArrowId>(src->num_arrows(), -1)};
  const json& objs = rd.object(v, ptr, "objects");
  for (const auto& [k, val] : objs.items()) {
    const std::string p = member(ptr + "/objects", k);
    f.obj_map[lookup(rd, so, k, p, "source object")] = lookup(rd, to, rd.str(val, p), p, "target object");
  }
  for (ObjId o = 0; o < src->num_objects(); ++o)
    if (f.obj_map[o] < 0) rd.fail(ptr + "/objects", "object " + src->object_name(o) + " is not mapped");
  const json& arrs = rd.object(v, ptr, "arrows");
  for (const auto& [k, val] : arrs.items()) {
    const std::string p = member(ptr + "/arrows", k);
    const ArrowId a = lookup(rd, sa, k, p, "source arrow");
    if (src->is_identity(a)) rd.fail(p, "identities are mapped to identities and are not listed");
    f.arr_map[a] = lookup(rd, ta, rd.str(val, p), p, "target arrow");
  }
  for (ArrowId a = 0; a < src->num_arrows(); ++a) {
    if (src->is_identity(a))
      f.arr_map[a] = tgt->identity(f.obj_map[src->dom(a)]);
    else if (f.arr_map[a] < 0)
      rd.fail(ptr + "/arrows", "arrow " + src->arrow_name(a) + " is not mapped");
  }
  const ValidationReport r = validate_functor(f);
  if (!r.ok()) rd.fail(ptr, "not a functor: " + r.summary());
  return f;
}

std::vector<ArrowId> read_components(const Reader& rd, const json& v, const std::string& ptr, const Functor& s) {
  if (!v.is_object()) rd.fail(ptr, "expected an object of components");
  const NameIndex so = object_names(*s.source), ta = arrow_names(*s.target);
  std::vector<ArrowId> comps(s.source->num_objects(), -1);
  for (const auto& [k, val] : v.items()) {
    const std::string p = member(ptr, k);
    comps[lookup(rd, so, k, p, "object")] = lookup(rd, ta, rd.str(val, p), p, "arrow");
  }
  for (ObjId o = 0; o < s.source->num_objects(); ++o)
    if (comps[o] < 0) rd.fail(ptr, "no component at " + s.source->object_name(o));
  return comps;
}

FunctorBlock read_pseudo_functor(const Reader& rd, const json& v, const std::string& ptr, const std::string& name,
                                 const SpecDocument& doc) {
  rd.keys(v, ptr, {"shape", "variance", "values", "transitions", "cells", "compositors"},
          {"shape", "variance", "values"});
  FunctorBlock out;
  out.shape = rd.str(v["shape"], ptr + "/shape");
  auto sit = doc.shapes.find(out.shape);
  if (sit == doc.shapes.end()) rd.fail(ptr + "/shape", "unknown shape '" + out.shape + "'");
  const TwoCatPtr& kp = sit->second;
  const TwoCat& k = *kp;
  const FinCat& one = k.one();
  const std::string& var = rd.str(v["variance"], ptr + "/variance");
  if (var != "covariant" && var != "contravariant")
    rd.fail(ptr + "/variance", "variance must be covariant or contravariant");
  const Variance variance = var == "covariant" ? Variance::covariant : Variance::contravariant;

  const NameIndex objs = object_names(one);
  const json& vals = rd.object(v, ptr, "values");
  out.values.assign(k.num_objects(), {});
  std::vector<CatPtr> values(k.num_objects());
  for (const auto& [o, cat] : vals.items()) {
    const std::string p = member(ptr + "/values", o);
    const ObjId a = lookup(rd, objs, o, p, "shape object");
    out.values[a] = rd.str(cat, p);
    auto cit = doc.categories.find(out.values[a]);
    if (cit == doc.categories.end()) rd.fail(p, "unknown category '" + out.values[a] + "'");
    values[a] = cit->second;
  }
  for (ObjId a = 0; a < k.num_objects(); ++a)
    if (!values[a]) rd.fail(ptr + "/values", "no value at " + one.object_name(a));

  const NameIndex one_cells = arrow_names(one);
  std::vector<Functor> transitions(one.num_arrows());
  std::vector<char> given(one.num_arrows(), 0);
  const json& tr = rd.object(v, ptr, "transitions");
  for (const auto& [f, m] : tr.items()) {
    const std::string p = member(ptr + "/transitions", f);
    const ArrowId c = lookup(rd, one_cells, f, p, "1-cell");
    if (one.is_identity(c)) rd.fail(p, "identity 1-cells act as identities and are not listed");
    const ObjId from = variance == Variance::covariant ? one.dom(c) : one.cod(c);
    const ObjId to = variance == Variance::covariant ? one.cod(c) : one.dom(c);
    transitions[c] = read_functor_map(rd, m, p, values[from], values[to]);
    given[c] = 1;
  }
  for (ArrowId c = 0; c < one.num_arrows(); ++c) {
    if (one.is_identity(c))
      transitions[c] = identity_functor(values[one.dom(c)]);
    else if (!given[c])
      rd.fail(ptr + "/transitions", "no transition for 1-cell " + one.arrow_name(c));
  }

  std::vector<NatTransf> cells(k.num_two_cells());
  std::vector<char> cgiven(k.num_two_cells(), 0);
  NameIndex cell_names;
  for (CellId a = 0; a < k.num_two_cells(); ++a) cell_names[k.cell_name(a)] = a;
  const json& cv = rd.object(v, ptr, "cells");
  for (const auto& [c, comps] : cv.items()) {
    const std::string p = member(ptr + "/cells", c);
    const CellId a = lookup(rd, cell_names, c, p, "2-cell");
    if (k.is_identity_cell(a)) rd.fail(p, "identity 2-cells act as identities and are not listed");
    const Functor& s = transitions[k.src(a)];
    cells[a] = NatTransf{s, transitions[k.tgt(a)], read_components(rd, comps, p, s)};
    cgiven[a] = 1;
  }
  for (CellId a = 0; a < k.num_two_cells(); ++a) {
    if (k.is_identity_cell(a))
      cells[a] = identity_nat(transitions[k.src(a)]);
    else if (!cgiven[a])
      rd.fail(ptr + "/cells", "no image for 2-cell " + k.cell_name(a));
  }

  PseudoFunctor e = strict_pseudo_functor(variance, kp, values, transitions, cells);
  if (v.contains("compositors")) {
    const json& cs = rd.array(v, ptr, "compositors");
    std::set<std::pair<ArrowId, ArrowId>> seen;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = ptr + "/compositors/" + std::to_string(i);
      rd.keys(cs[i], p, {"first", "then", "components"}, {"first", "then", "components"});
      const ArrowId f = lookup(rd, one_cells, rd.str(cs[i]["first"], p + "/first"), p + "/first", "1-cell");
      const ArrowId g = lookup(rd, one_cells, rd.str(cs[i]["then"], p + "/then"), p + "/then", "1-cell");
      if (one.is_identity(f) || one.is_identity(g))
        rd.fail(p, "compositors with an identity leg are identities and are not listed");
      if (one.cod(f) != one.dom(g)) rd.fail(p, "1-cells are not composable");
      if (!seen.insert({f, g}).second) rd.fail(p, "compositor given twice");
      const Functor s = compositor_source(e, f, g);
      NatTransf& slot = e.compositors.at({f, g});
      slot = NatTransf{s, transitions[one.compose(f, g)], read_components(rd, cs[i]["components"], p + "/components", s)};
    }
    for (const auto& [fg, c] : e.compositors)
      if (!one.is_identity(fg.first) && !one.is_identity(fg.second) && !seen.count(fg))
        rd.fail(ptr + "/compositors",
                "no compositor for " + one.arrow_name(fg.first) + " then " + one.arrow_name(fg.second) +
                    " (omit the field entirely for a strict functor)");
  }
  const ValidationReport r = validate_pseudo_functor(e);
  if (!r.ok()) rd.fail(ptr, "pseudo-functor '" + name + "' is invalid: " + r.summary());
  out.functor = share(std::move(e));
  return out;
}

struct JobShape {
  const char* command;
  std::vector<const char*> required;
  std::vector<const char*> optional;
};

const std::vector<JobShape>& job_shapes() {
  static const std::vector<JobShape> shapes{
      {"validate", {}, {"block"}},
      {"pscolim", {"instance"}, {}},
      {"localize", {"instance"}, {}},
      {"verify-main", {"instance", "target"}, {}},
      {"bicolim", {"instance"}, {}},
      {"verify-bicolim", {"instance", "target"}, {}},
      {"compare", {"instance"}, {}},
      {"yoneda", {"functor", "object"}, {}},
      {"example-idempotent", {}, {}},
      {"export-dot", {"block"}, {}},
  };
  return shapes;
}

JobSpec read_job(const Reader& rd, const json& v, const std::string& ptr, const SpecDocument& doc) {
  if (!v.is_object()) rd.fail(ptr, "expected a job object");
  if (!v.contains("run")) rd.fail(ptr, "missing field 'run'");
  JobSpec job;
  job.command = rd.str(v["run"], ptr + "/run");
  const JobShape* shape = nullptr;
  for (const auto& s : job_shapes())
    if (job.command == s.command) shape = &s;
  if (!shape) rd.fail(ptr + "/run", "unknown command '" + job.command + "'");
  for (const auto& [k, val] : v.items()) {
    const std::string p = member(ptr, k);
    if (k == "run") continue;
    if (k == "budget") {
      if (!val.is_number_unsigned() || val.get<std::uint64_t>() == 0) rd.fail(p, "budget must be a positive integer");
      job.budget = val.get<std::uint64_t>();
      continue;
    }
    bool known = false;
    for (const char* a : shape->required) known = known || k == a;
    for (const char* a : shape->optional) known = known || k == a;
    if (!known) rd.fail(p, "unknown field '" + k + "' for " + job.command);
    job.args[k] = rd.str(val, p);
  }
  for (const char* a : shape->required)
    if (!job.args.count(a)) rd.fail(ptr, std::string("missing field '") + a + "' for " + job.command);

  auto arg_ptr = [&](const char* k) { return ptr + "/" + k; };
  if (auto it = job.args.find("instance"); it != job.args.end() && !doc.instances.count(it->second))
    rd.fail(arg_ptr("instance"), "unknown instance '" + it->second + "'");
  if (auto it = job.args.find("target"); it != job.args.end() && !doc.categories.count(it->second))
    rd.fail(arg_ptr("target"), "unknown category '" + it->second + "'");
  if (auto it = job.args.find("block"); it != job.args.end() && !doc.has_block(it->second))
    rd.fail(arg_ptr("block"), "unknown block '" + it->second + "'");
  if (auto it = job.args.find("functor"); it != job.args.end()) {
    auto fit = doc.functors.find(it->second);
    if (fit == doc.functors.end()) rd.fail(arg_ptr("functor"), "unknown functor '" + it->second + "'");
    if (fit->second.functor->variance != Variance::covariant)
      rd.fail(arg_ptr("functor"), "functor '" + it->second + "' must be covariant");
    const TwoCat& k = *fit->second.functor->shape;
    if (!object_names(k.one()).count(job.args.at("object")))
      rd.fail(arg_ptr("object"), "unknown shape object '" + job.args.at("object") + "'");
  }
  return job;
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; });
}

// ---------------------------------------------------------------- writing

void require_unique(const std::vector<std::string>& names, const std::string& what) {
  std::set<std::string> s;
  for (const auto& n : names)
    if (!s.insert(n).second) throw StructureError("duplicate " + what + " name '" + n + "'");
}

json category_tables(const FinCat& c, const char* arrows_key) {
  json out = json::object();
  std::vector<std::string> on, an;
  json objs = json::array();
  for (ObjId o = 0; o < c.num_objects(); ++o) {
    objs.push_back(c.object_name(o));
    on.push_back(c.object_name(o));
  }
  out["objects"] = objs;
  json arrows = json::array();
  json ids = json::object();
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    an.push_back(c.arrow_name(f));
    if (c.is_identity(f)) {
      if (c.arrow_name(f) != "1_" + c.object_name(c.dom(f))) ids[c.object_name(c.dom(f))] = c.arrow_name(f);
      continue;
    }
    arrows.push_back({{"name", c.arrow_name(f)}, {"dom", c.object_name(c.dom(f))}, {"cod", c.object_name(c.cod(f))}});
  }
  require_unique(on, "object");
  require_unique(an, "arrow");
  if (!ids.empty()) out["identities"] = ids;
  if (!arrows.empty()) out[arrows_key] = arrows;
  json comp = json::array();
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    for (ArrowId g : c.out(c.cod(f)))
      if (!c.is_identity(g)) comp.push_back({c.arrow_name(f), c.arrow_name(g), c.arrow_name(c.compose(f, g))});
  }
  if (!comp.empty()) out["compose"] = comp;
  return out;
}

json shape_json(const TwoCat& k) {
  json out = category_tables(k.one(), "one_cells");
  std::vector<std::string> cn;
  json cells = json::array();
  for (CellId a = 0; a < k.num_two_cells(); ++a) {
    cn.push_back(k.cell_name(a));
    if (k.is_identity_cell(a)) {
      if (k.cell_name(a) != "1_" + k.one_cell_name(k.src(a)))
        throw StructureError("identity 2-cell " + k.cell_name(a) + " is not named 1_" + k.one_cell_name(k.src(a)));
      continue;
    }
    cells.push_back({{"name", k.cell_name(a)}, {"src", k.one_cell_name(k.src(a))}, {"tgt", k.one_cell_name(k.tgt(a))}});
  }
  require_unique(cn, "2-cell");
  if (!cells.empty()) out["two_cells"] = cells;
  json vc = json::array(), hc = json::array();
  const FinCat& one = k.one();
  auto is_unit = [&](CellId a) { return k.is_identity_cell(a) && one.is_identity(k.src(a)); };
  for (CellId a = 0; a < k.num_two_cells(); ++a) {
    if (k.is_identity_cell(a)) continue;
    for (CellId b : k.cells_from(k.tgt(a)))
      if (!k.is_identity_cell(b)) vc.push_back({k.cell_name(a), k.cell_name(b), k.cell_name(k.vcompose(a, b))});
  }
  for (CellId a = 0; a < k.num_two_cells(); ++a) {
    if (is_unit(a)) continue;
    for (CellId b : k.cells_out_of(one.cod(k.src(a)))) {
      if (is_unit(b) || (k.is_identity_cell(a) && k.is_identity_cell(b))) continue;
      hc.push_back({k.cell_name(a), k.cell_name(b), k.cell_name(k.hcompose(a, b))});
    }
  }
  if (!vc.empty()) out["vcompose"] = vc;
  if (!hc.empty()) out["hcompose"] = hc;
  return out;
}

json functor_map_json(const Functor& f) {
  json objs = json::object(), arrs = json::object();
  for (ObjId o = 0; o < f.source->num_objects(); ++o) objs[f.source->object_name(o)] = f.target->object_name(f.obj(o));
  for (ArrowId a = 0; a < f.source->num_arrows(); ++a)
    if (!f.source->is_identity(a)) arrs[f.source->arrow_name(a)] = f.target->arrow_name(f.arr(a));
  json out{{"objects", objs}};
  if (!arrs.empty()) out["arrows"] = arrs;
  return out;
}

json components_json(const NatTransf& t) {
  json out = json::object();
  for (ObjId o = 0; o < t.source.source->num_objects(); ++o)
    out[t.source.source->object_name(o)] = t.source.target->arrow_name(t[o]);
  return out;
}

json functor_json(const FunctorBlock& b) {
  const PseudoFunctor& e = *b.functor;
  const TwoCat& k = *e.shape;
  const FinCat& one = k.one();
  json out{{"shape", b.shape}, {"variance", e.variance == Variance::covariant ? "covariant" : "contravariant"}};
  json values = json::object();
  for (ObjId a = 0; a < k.num_objects(); ++a) values[one.object_name(a)] = b.values[a];
  out["values"] = values;
  json tr = json::object();
  for (ArrowId f = 0; f < one.num_arrows(); ++f)
    if (!one.is_identity(f)) tr[one.arrow_name(f)] = functor_map_json(e.transition(f));
  if (!tr.empty()) out["transitions"] = tr;
  json cells = json::object();
  for (CellId a = 0; a < k.num_two_cells(); ++a)
    if (!k.is_identity_cell(a)) cells[k.cell_name(a)] = components_json(e.cell(a));
  if (!cells.empty()) out["cells"] = cells;
  if (!e.is_strict()) {
    json cs = json::array();
    for (const auto& [fg, c] : e.compositors)
      if (!one.is_identity(fg.first) && !one.is_identity(fg.second))
        cs.push_back({{"first", one.arrow_name(fg.first)}, {"then", one.arrow_name(fg.second)},
                      {"components", components_json(c)}});
    out["compositors"] = cs;
  }
  return out;
}

void claim_name(const SpecDocument& doc, const std::string& name) {
  if (name.empty()) throw StructureError("empty block name");
  if (doc.has_block(name)) throw StructureError("duplicate block name '" + name + "'");
}

}  // namespace

bool SpecDocument::has_block(const std::string& name) const {
  return categories.count(name) || shapes.count(name) || functors.count(name) || instances.count(name);
}

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : job_shapes()) v.push_back(s.command);
    return v;
  }();
  return names;
}

SpecDocument parse_spec(std::string_view text) {
  if (blank(text)) throw SpecError("no blocks", 1, 1, "");
  const char* last = nullptr;
  PositionSax sax(text, &last);
  TrackingIter first(text.data(), &last), end(text.data() + text.size(), &last);
  json::sax_parse(first, end, &sax);
  const Reader rd(text, sax.offsets);
  const json& root = sax.root;

  rd.keys(root, "", {"version", "categories", "shapes", "functors", "instances", "jobs"});
  SpecDocument doc;
  const json& cats = rd.object(root, "", "categories");
  const json& shapes = rd.object(root, "", "shapes");
  const json& functors = rd.object(root, "", "functors");
  const json& instances = rd.object(root, "", "instances");
  if (cats.empty() && shapes.empty() && functors.empty() && instances.empty()) rd.fail("", "no blocks");
  if (!root.contains("version")) rd.fail("", "missing field 'version'");
  doc.version = rd.str(root["version"], "/version");
  if (doc.version != kSpecVersion) rd.fail("/version", "unsupported version '" + doc.version + "'");

  auto claim = [&](const std::string& name, const std::string& ptr) {
    if (name.empty()) rd.fail(ptr, "empty block name");
    if (doc.has_block(name)) rd.fail(ptr, "block name '" + name + "' is already used");
  };
  for (const auto& [name, v] : cats.items()) {
    const std::string p = member("/categories", name);
    claim(name, p);
    doc.categories[name] = read_category(rd, v, p, name);
  }
  for (const auto& [name, v] : shapes.items()) {
    const std::string p = member("/shapes", name);
    claim(name, p);
    doc.shapes[name] = read_shape(rd, v, p, name);
  }
  for (const auto& [name, v] : functors.items()) {
    const std::string p = member("/functors", name);
    claim(name, p);
    doc.functors[name] = read_pseudo_functor(rd, v, p, name, doc);
  }
  for (const auto& [name, v] : instances.items()) {
    const std::string p = member("/instances", name);
    claim(name, p);
    rd.keys(v, p, {"e", "w"}, {"e", "w"});
    InstanceBlock ib{rd.str(v["e"], p + "/e"), rd.str(v["w"], p + "/w")};
    auto e = doc.functors.find(ib.e);
    auto w = doc.functors.find(ib.w);
    if (e == doc.functors.end()) rd.fail(p + "/e", "unknown functor '" + ib.e + "'");
    if (w == doc.functors.end()) rd.fail(p + "/w", "unknown functor '" + ib.w + "'");
    if (e->second.functor->variance != Variance::covariant) rd.fail(p + "/e", "'" + ib.e + "' is not covariant");
    if (w->second.functor->variance != Variance::contravariant)
      rd.fail(p + "/w", "'" + ib.w + "' is not contravariant");
    if (e->second.shape != w->second.shape) rd.fail(p, "'" + ib.e + "' and '" + ib.w + "' have different shapes");
    doc.instances[name] = ib;
  }
  const json& jobs = rd.array(root, "", "jobs");
  for (std::size_t i = 0; i < jobs.size(); ++i) doc.jobs.push_back(read_job(rd, jobs[i], "/jobs/" + std::to_string(i), doc));
  return doc;
}

json to_json(const SpecDocument& doc) {
  json out{{"version", doc.version}};
  json cats = json::object(), shapes = json::object(), functors = json::object(), instances = json::object();
  for (const auto& [n, c] : doc.categories) cats[n] = category_tables(*c, "arrows");
  for (const auto& [n, k] : doc.shapes) shapes[n] = shape_json(*k);
  for (const auto& [n, f] : doc.functors) functors[n] = functor_json(f);
  for (const auto& [n, i] : doc.instances) instances[n] = {{"e", i.e}, {"w", i.w}};
  if (!cats.empty()) out["categories"] = cats;
  if (!shapes.empty()) out["shapes"] = shapes;
  if (!functors.empty()) out["functors"] = functors;
  if (!instances.empty()) out["instances"] = instances;
  json jobs = json::array();
  for (const JobSpec& j : doc.jobs) {
    json o{{"run", j.command}};
    for (const auto& [k, v] : j.args) o[k] = v;
    if (j.budget) o["budget"] = *j.budget;
    jobs.push_back(o);
  }
  out["jobs"] = jobs;
  return out;
}

namespace {

void pretty(const json& v, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (v.is_object() && !v.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [k, val] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      pretty(val, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (v.is_array() && !v.empty() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty(v[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else if (v.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].dump();
    out += "]";
  } else {
    out += v.dump();
  }
}

}  // namespace

std::string pretty_json(const json& v) {
  std::string out;
  pretty(v, 0, out);
  return out + "\n";
}

std::string serialize_spec(const SpecDocument& doc) { return pretty_json(to_json(doc)); }

void add_category(SpecDocument& doc, const std::string& name, const CatPtr& c) {
  claim_name(doc, name);
  const ValidationReport r = validate_category(*c);
  if (!r.ok()) throw StructureError("category '" + name + "' is invalid: " + r.summary());
  category_tables(*c, "arrows");  // name checks
  doc.categories[name] = c;
}

void add_shape(SpecDocument& doc, const std::string& name, const TwoCatPtr& k) {
  claim_name(doc, name);
  const ValidationReport r = validate_two_category(*k);
  if (!r.ok()) throw StructureError("shape '" + name + "' is invalid: " + r.summary());
  shape_json(*k);
  doc.shapes[name] = k;
}

void add_functor(SpecDocument& doc, const std::string& name, const std::string& shape, const PseudoFunctorPtr& f) {
  claim_name(doc, name);
  auto it = doc.shapes.find(shape);
  if (it == doc.shapes.end()) throw StructureError("unknown shape '" + shape + "'");
  if (!(*it->second == *f->shape)) throw StructureError("functor '" + name + "' is not over shape '" + shape + "'");
  const ValidationReport r = validate_pseudo_functor(*f);
  if (!r.ok()) throw StructureError("pseudo-functor '" + name + "' is invalid: " + r.summary());
  FunctorBlock b{shape, {}, f};
  for (ObjId a = 0; a < f->shape->num_objects(); ++a) {
    const CatPtr& v = f->value(a);
    std::string found;
    for (const auto& [n, c] : doc.categories)
      if (same_named_category(*c, *v)) {
        found = n;
        break;
      }
    if (found.empty()) {
      found = name + "_" + f->shape->object_name(a);
      add_category(doc, found, v);
    }
    b.values.push_back(found);
  }
  functor_json(b);
  doc.functors[name] = std::move(b);
}

void add_instance(SpecDocument& doc, const std::string& name, const std::string& e, const std::string& w) {
  claim_name(doc, name);
  auto ei = doc.functors.find(e);
  auto wi = doc.functors.find(w);
  if (ei == doc.functors.end() || wi == doc.functors.end()) throw StructureError("unknown functor in instance " + name);
  if (ei->second.functor->variance != Variance::covariant || wi->second.functor->variance != Variance::contravariant ||
      ei->second.shape != wi->second.shape)
    throw StructureError("instance " + name + " needs a covariant and a contravariant functor on one shape");
  doc.instances[name] = {e, w};
}

bool same_named_category(const FinCat& a, const FinCat& b) {
  if (!(a == b)) return false;
  for (ObjId o = 0; o < a.num_objects(); ++o)
    if (a.object_name(o) != b.object_name(o)) return false;
  for (ArrowId f = 0; f < a.num_arrows(); ++f)
    if (a.arrow_name(f) != b.arrow_name(f)) return false;
  return true;
}

bool same_pseudo_functor(const PseudoFunctor& a, const PseudoFunctor& b) {
  if (a.variance != b.variance || !(*a.shape == *b.shape) || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!(*a.values[i] == *b.values[i])) return false;
  for (std::size_t f = 0; f < a.transitions.size(); ++f)
    if (a.transitions[f].obj_map != b.transitions[f].obj_map || a.transitions[f].arr_map != b.transitions[f].arr_map)
      return false;
  for (std::size_t c = 0; c < a.cells.size(); ++c)
    if (a.cells[c].components != b.cells[c].components) return false;
  if (a.compositors.size() != b.compositors.size()) return false;
  for (const auto& [fg, c] : a.compositors) {
    auto it = b.compositors.find(fg);
    if (it == b.compositors.end() || it->second.components != c.components) return false;
  }
  return true;
}

}  // namespace wcolim
