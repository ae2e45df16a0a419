#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace btio {

using namespace bt;

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string need_string(const Json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  try {
    return parse_rational(need_string(j, "rational"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("bad rational: ") + e.what());
  }
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from(v));
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace

Json load(const std::string& file_or_inline) {
  auto b = file_or_inline.find_first_not_of(" \t\n");
  std::string text;
  if (b != std::string::npos && std::string("{[\"").find(file_or_inline[b]) != std::string::npos) {
    text = file_or_inline;
  } else {
    std::ifstream in(file_or_inline);
    if (!in) throw SchemaError("cannot read " + file_or_inline);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

FieldConfigPtr field_from(const Json& j) {
  long p = 5, prec = 12, e = 1;
  if (j.is_string()) {
    std::vector<long> parts;
    std::istringstream is(j.get<std::string>());
    std::string item;
    while (std::getline(is, item, ',')) {
      try {
        parts.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw SchemaError("field must be \"p,precision[,ramification]\"");
      }
    }
    if (parts.size() < 2 || parts.size() > 3) throw SchemaError("field must be \"p,precision[,ramification]\"");
    p = parts[0];
    prec = parts[1];
    if (parts.size() == 3) e = parts[2];
  } else if (j.is_object()) {
    auto num = [&](const char* key, long dflt) {
      if (!j.contains(key)) return dflt;
      if (!j.at(key).is_number_integer()) throw SchemaError(std::string("field.") + key + " must be an integer");
      return j.at(key).get<long>();
    };
    p = num("p", p);
    prec = num("precision", prec);
    e = num("ramification", e);
  } else {
    throw SchemaError("field must be an object or \"p,precision[,ramification]\"");
  }
  if (p < 0 || prec < 1 || e < 1 || e > 2) throw SchemaError("field parameters out of range");
  try {
    return make_field(static_cast<std::uint32_t>(p), static_cast<int>(prec), static_cast<int>(e));
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(ex.what());
  }
}

Json to_json(const FieldConfigPtr& cfg) {
  return Json{{"p", cfg->residue_char}, {"precision", cfg->precision}, {"ramification", cfg->ramification}};
}

FormPtr form_from(const Json& j) {
  std::string type = need_string(need(j, "type"), "form.type");
  std::string aut = j.contains("automorphism") ? need_string(j.at("automorphism"), "form.automorphism") : "trivial";
  try {
    return RelativeForm::build(RootSystem::build(type), aut);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json form_to_json(const RelativeForm& form) {
  bool trivial = true;
  for (std::size_t i = 0; i < form.permutation().size(); ++i)
    if (form.permutation()[i] != static_cast<int>(i)) trivial = false;
  return Json{{"type", form.base().label()}, {"automorphism", trivial ? "trivial" : "swap"}};
}

ApartmentPoint point_from(const FormPtr& form, const Json& j) {
  try {
    if (j.is_array()) return ApartmentPoint::from_coroot_coords(form, rationals_from(j));
    if (j.is_object() && j.contains("pairings"))
      return ApartmentPoint::from_simple_pairings(form, rationals_from(j.at("pairings")));
    return ApartmentPoint::from_coroot_coords(form, rationals_from(need(j, "coroot_coords")));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const ApartmentPoint& x) { return Json{{"pairings", rationals_json(x.simple_pairings)}}; }

ConcaveFn concave_from(const FormPtr& form, const Json& j) {
  try {
    if (j.is_object()) {
      std::string kind = need_string(need(j, "kind"), "concave.kind");
      if (kind == "zero") return standard_concave(form, ConcaveKind::zero);
      if (kind == "moy_prasad") return standard_concave(form, ConcaveKind::moy_prasad, rational_from(need(j, "r")));
      if (kind != "custom") throw SchemaError("unknown concave kind " + kind);
      return concave_from(form, need(j, "values"));
    }
    if (!j.is_array()) throw SchemaError("concave function must be an object or a list of entries");
    std::map<std::string, RTilde> values;
    for (const auto& entry : j) {
      std::string root = need_string(need(entry, "root"), "concave root");
      std::string value = need_string(need(entry, "value"), "concave value");
      bool plus = entry.contains("plus") && entry.at("plus").is_boolean() && entry.at("plus").get<bool>();
      RTilde v = value == "inf" ? RTilde::infinity() : RTilde(parse_rational(value), plus);
      values[root] = v;
    }
    auto f = standard_concave(form, ConcaveKind::custom, 0, values);
    if (!is_concave(f)) throw SchemaError("function is not concave");
    return f;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const ConcaveFn& f) {
  Json out = Json::array();
  auto entry = [](const std::string& root, const RTilde& v) {
    if (v.is_infinite()) return Json{{"root", root}, {"value", "inf"}, {"plus", false}};
    return Json{{"root", root}, {"value", to_string(v.value())}, {"plus", v.plus()}};
  };
  const auto& form = *f.form();
  for (std::size_t r = 0; r < form.roots().size(); ++r) out.push_back(entry(form.root_name(form.roots()[r]), f[r]));
  out.push_back(entry("0", f.at_zero()));
  return out;
}

FieldElem series_from(const FieldConfigPtr& cfg, const Json& j) {
  if (j.is_number_integer()) return FieldElem::from_int(cfg, j.get<long>());
  try {
    return FieldElem::parse(cfg, need_string(j, "series"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("bad series literal: ") + e.what());
  }
}

Json to_json(const FieldElem& x) { return x.str(); }

Json to_json(const RootParam& p) {
  if (const auto* u = std::get_if<FieldElem>(&p)) return to_json(*u);
  const auto& h = std::get<H0Elem>(p);
  return Json{{"u", to_json(h.u)}, {"v", to_json(h.v)}};
}

RootParam param_from(const GroupModel& model, const Json& j) {
  if (model.is_split()) return series_from(model.field(), j);
  H0Elem h{series_from(model.field(), need(j, "u")), series_from(model.field(), need(j, "v"))};
  if (!satisfies_h0(h)) throw SchemaError("(u, v) is not in H0: N(u) != Tr(v)");
  return h;
}

Matrix matrix_from(const GroupModel& model, const Json& j) {
  std::size_t n = static_cast<std::size_t>(model.size());
  if (!j.is_array() || j.size() != n) throw SchemaError("matrix must have " + std::to_string(n) + " rows");
  std::vector<std::vector<FieldElem>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw SchemaError("matrix rows must have " + std::to_string(n) + " entries");
    rows.emplace_back();
    for (const auto& e : row) rows.back().push_back(series_from(model.field(), e));
  }
  Matrix m = matrix_from_rows(model.field(), rows);
  bool ok = false;
  try {
    ok = model.in_group(m);
  } catch (const PrecisionError&) {
  }
  if (!ok) throw SchemaError("matrix is not an element of " + model.label());
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

BigCellPoint cell_point_from(const GroupModel& model, const Json& j) {
  std::size_t np = model.form()->reduced_positive_roots().size();
  std::size_t rank = static_cast<std::size_t>(model.form()->rank());
  BigCellPoint p;
  auto params = [&](const char* key) {
    const Json& a = need(j, key);
    if (!a.is_array() || a.size() != np)
      throw SchemaError(std::string(key) + " must list " + std::to_string(np) + " root parameters");
    std::vector<RootParam> out;
    for (const auto& e : a) out.push_back(param_from(model, e));
    return out;
  };
  p.u_minus = params("u_minus");
  p.u_plus = params("u_plus");
  const Json& t = need(j, "t_bar");
  if (!t.is_array() || t.size() != rank) throw SchemaError("t_bar must list " + std::to_string(rank) + " entries");
  for (const auto& e : t) p.t_bar.push_back(series_from(model.field(), e));
  return p;
}

Json to_json(const BigCellPoint& p) {
  Json um = Json::array(), t = Json::array(), up = Json::array();
  for (const auto& x : p.u_minus) um.push_back(to_json(x));
  for (const auto& x : p.t_bar) t.push_back(to_json(x));
  for (const auto& x : p.u_plus) up.push_back(to_json(x));
  return Json{{"u_minus", um}, {"t_bar", t}, {"u_plus", up}};
}

EmbeddedPoint embedded_from(const GroupModel& model, const Json& j) {
  EmbeddedPoint p = identity_embedded_point(model);
  if (!j.is_object()) throw SchemaError("embedded point must be an object");
  if (j.contains("g1")) p.g1 = matrix_from(model, j.at("g1"));
  p.omega = cell_point_from(model, need(j, "omega"));
  if (j.contains("g2")) p.g2 = matrix_from(model, j.at("g2"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw SchemaError("seed must be a non-negative integer");
    p.seed = j.at("seed").get<std::uint64_t>();
  }
  return p;
}

Json to_json(const EmbeddedPoint& p) {
  return Json{{"g1", to_json(p.g1)}, {"omega", to_json(p.omega)}, {"g2", to_json(p.g2)}, {"seed", p.seed}};
}

Json to_json(const ReductiveDatum& d) {
  Json roots = Json::array(), coroots = Json::array(), simple = Json::array();
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    roots.push_back(Json{{"name", d.names[i]}, {"coords", d.roots[i]}});
    coroots.push_back(d.coroots[i]);
  }
  for (const auto& s : d.simple_roots) simple.push_back(s);
  return Json{{"rank", d.rank}, {"roots", roots}, {"coroots", coroots}, {"simple_roots", simple}};
}

Json to_json(const ToroidalData& d) {
  Json faces = Json::array();
  for (const auto& f : d.faces)
    faces.push_back(Json{{"tight", f.tight},
                         {"rays", f.rays},
                         {"dimension", f.dimension},
                         {"zero_coordinates", f.zero_coordinates},
                         {"orbit_dimension", f.orbit_dimension}});
  return Json{{"rank", d.rank},
              {"ambient_cone", d.ambient.rows},
              {"cone", d.cone.rows},
              {"faces", faces},
              {"contained", d.contained},
              {"strictly_contained", d.strictly_contained}};
}

Json valuation_json(const std::optional<Rational>& v) { return v ? Json(to_string(*v)) : Json("inf"); }

}  // namespace btio
