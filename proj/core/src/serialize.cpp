#include "octa/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "octa/errors.hpp"

namespace octa {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::string parse_pos_part(int n, int v) { return v == n + 1 ? "0+" : std::to_string(v); }

int pos_part_from_string(int n, const std::string& s) {
  if (s == "0+") return n + 1;
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ContractError("bad position component: " + s);
  }
  if (used != s.size() || v < 0 || v > n + 1) throw ContractError("bad position component: " + s);
  return v;
}

std::string pos_key(int n, Position p) {
  return parse_pos_part(n, p.b) + "/" + parse_pos_part(n, p.a);
}

Position pos_from_key(int n, const std::string& key) {
  size_t slash = key.find('/');
  if (slash == std::string::npos) throw ContractError("bad position key: " + key);
  int b = pos_part_from_string(n, key.substr(0, slash));
  int a = pos_part_from_string(n, key.substr(slash + 1));
  return Position{a, b};
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ContractError("matrix at " + where + " has wrong row count");
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ContractError("matrix at " + where + " has wrong column count");
    for (int c = 0; c < cols; ++c) m.at(r, c) = row[static_cast<size_t>(c)].get<Int>();
  }
  return m;
}

}  // namespace

std::string diagram_to_json(const PeriodicDiagram& d) {
  ordered out;
  out["p"] = d.ctx.p;
  out["m"] = d.ctx.m;
  out["n"] = d.n;

  // std::map-backed json sorts keys lexicographically: canonical emission.
  json objects = json::object();
  for (int a = 0; a <= d.n; ++a)
    for (int b = a + 1; b <= d.n + 1; ++b) {
      if (a == 0 && b == d.n + 1) continue;
      json exps = json::array();
      for (int e : d.triangle_object(a, b).exponent_list()) exps.push_back(e);
      objects[pos_key(d.n, {a, b})] = std::move(exps);
    }
  out["objects"] = std::move(objects);

  json maps = json::object();
  for (int a = 0; a <= d.n; ++a)
    for (int b = a + 1; b <= d.n; ++b)
      maps[pos_key(d.n, {a, b}) + "->" + pos_key(d.n, {a, b + 1})] =
          matrix_to_json(d.right[static_cast<size_t>(a)][static_cast<size_t>(b)].rep.mat);
  for (int a = 0; a <= d.n - 1; ++a)
    for (int b = a + 2; b <= d.n + 1; ++b) {
      if (a == 0 && b == d.n + 1) continue;
      maps[pos_key(d.n, {a, b}) + "->" + pos_key(d.n, {a + 1, b})] =
          matrix_to_json(d.up[static_cast<size_t>(a)][static_cast<size_t>(b)].rep.mat);
    }
  out["maps"] = std::move(maps);
  return out.dump(2) + "\n";
}

PeriodicDiagram diagram_from_json(const std::string& text) try {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("diagram file is not valid JSON: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("m") || !j.contains("n") || !j.contains("objects") ||
      !j.contains("maps"))
    throw ContractError("diagram file must contain p, m, n, objects, maps");
  Context ctx(j["p"].get<Int>(), j["m"].get<int>());
  int n = j["n"].get<int>();
  if (n < 1) throw ContractError("diagram file: n must be >= 1");

  PeriodicDiagram d = PeriodicDiagram::empty(ctx, n);
  for (auto it = j["objects"].begin(); it != j["objects"].end(); ++it) {
    Position p = pos_from_key(n, it.key());
    if (!in_triangle(n, p)) throw ContractError("object position out of triangle: " + it.key());
    std::vector<int> exps;
    for (const auto& e : it.value()) exps.push_back(e.get<int>());
    d.objects[static_cast<size_t>(p.a)][static_cast<size_t>(p.b)] =
        FpObject::from_exponents(ctx, exps);
  }

  for (auto it = j["maps"].begin(); it != j["maps"].end(); ++it) {
    const std::string& key = it.key();
    size_t arrow_at = key.find("->");
    if (arrow_at == std::string::npos) throw ContractError("bad map key: " + key);
    Position from = pos_from_key(n, key.substr(0, arrow_at));
    Position to = pos_from_key(n, key.substr(arrow_at + 2));
    if (!in_triangle(n, from) || !in_triangle(n, to))
      throw ContractError("map endpoints out of triangle: " + key);
    const FpObject& src = d.triangle_object(from.a, from.b);
    const FpObject& tgt = d.triangle_object(to.a, to.b);
    IntMatrix m = matrix_from_json(it.value(), src.summands(), tgt.summands(), key);
    StableMorphism s;
    try {
      s = canonical_form(EMorphism::make(ctx, src, tgt, std::move(m)));
    } catch (const ContractError& e) {
      throw ContractError("map at " + key + ": " + e.what());
    }
    if (to.a == from.a && to.b == from.b + 1)
      d.right[static_cast<size_t>(from.a)][static_cast<size_t>(from.b)] = s;
    else if (to.a == from.a + 1 && to.b == from.b)
      d.up[static_cast<size_t>(from.a)][static_cast<size_t>(from.b)] = s;
    else
      throw ContractError("map key is not a unit step: " + key);
  }

  // Derive the rightmost-column verticals when a file omits them.
  for (int i = 1; i <= n - 1; ++i) {
    StableMorphism& slot = d.up[static_cast<size_t>(i)][static_cast<size_t>(n + 1)];
    if (slot.rep.mat.rows == 0 && slot.rep.mat.cols == 0 &&
        d.triangle_object(i, n + 1).summands() > 0)
      slot = shift_morphism(d.right[0][static_cast<size_t>(i)]);
  }
  // Zero maps adjacent to the zero positions keep their defaults; fix shapes.
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      StableMorphism& slot = d.right[static_cast<size_t>(a)][static_cast<size_t>(b)];
      const FpObject& src = d.triangle_object(a, b);
      const FpObject& tgt = d.triangle_object(a, b + 1);
      if ((src.is_zero_object() || tgt.is_zero_object()) &&
          !(slot.src() == src && slot.tgt() == tgt))
        slot = stable_zero(ctx, src, tgt);
    }
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n + 1; ++b) {
      StableMorphism& slot = d.up[static_cast<size_t>(a)][static_cast<size_t>(b)];
      const FpObject& src = d.triangle_object(a, b);
      const FpObject& tgt = d.triangle_object(a + 1, b);
      if ((src.is_zero_object() || tgt.is_zero_object()) &&
          !(slot.src() == src && slot.tgt() == tgt))
        slot = stable_zero(ctx, src, tgt);
    }

  if (auto err = d.validate_structure()) throw ContractError("invalid diagram: " + *err);
  return d;
} catch (const json::exception& e) {
  throw ContractError(std::string("malformed diagram file: ") + e.what());
}

PeriodicDiagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return diagram_from_json(ss.str());
}

void save_diagram_file(const PeriodicDiagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write file: " + path);
  out << diagram_to_json(d);
}

int Report::exit_code() const {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& e : entries) {
    if (e.status == "fail") any_fail = true;
    if (e.status == "inconclusive") any_inconclusive = true;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 3;
  return 0;
}

std::string Report::to_json() const {
  ordered out;
  out["checks"] = ordered::array();
  for (const auto& e : entries) {
    ordered entry;
    entry["name"] = e.name;
    entry["status"] = e.status;
    if (!e.detail.empty()) entry["detail"] = e.detail;
    entry["time_ms"] = e.time_ms;
    if (!e.payload.empty()) entry["payload"] = e.payload;
    out["checks"].push_back(std::move(entry));
  }
  out["exit_code"] = exit_code();
  return out.dump(2) + "\n";
}

std::string iso_to_json_lines(const DiagramIso& iso) {
  ordered out = ordered::object();
  for (int a = 0; a <= iso.n; ++a)
    for (int b = a + 1; b <= iso.n; ++b) {
      std::string key = (b == iso.n + 1 ? "0+" : std::to_string(b)) + "/" + std::to_string(a);
      out[key] = matrix_to_json(iso.at(a, b).rep.mat);
    }
  return out.dump();
}

}  // namespace octa
