// btw: batch front end for the bt library.
//
//   btw describe    --form '{"type":"A2"}' --point '["0","0"]' --concave '{"kind":"zero"}'
//   btw normal-form --type PGL2 point.json
//   btw orbit       --type PU3 point.json
//   btw verify      theta-split extension ...
//
// Exit codes: 0 ok, 1 property failure, 2 schema error, 3 inconclusive
// (including a normal form that lands on the boundary).

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bt/integraltools.hpp"
#include "json_io.hpp"

using namespace bt;
using btio::Json;
using btio::SchemaError;

namespace {

enum Exit { kOk = 0, kFailure = 1, kSchema = 2, kInconclusive = 3 };

struct Options {
  std::string type, form, point, concave, field, input;
  std::uint64_t seed = 0;
  bool json = false;
  int budget = 40;
  int samples = 100;
  std::vector<std::string> suites;
};

GroupModel model_from(const Options& o) {
  if (o.type.empty()) throw SchemaError("--type is required (PGL2, PGL3, PGL4, PU3)");
  bool pu3 = o.type == "PU3";
  FieldConfigPtr cfg = o.field.empty() ? make_field(5, 12, pu3 ? 2 : 1) : btio::field_from(o.field.find_first_of("{") == std::string::npos ? Json(o.field) : btio::load(o.field));
  try {
    if (pu3) return GroupModel::pu3(cfg);
    if (o.type == "PGL2") return GroupModel::pgl(2, cfg);
    if (o.type == "PGL3") return GroupModel::pgl(3, cfg);
    if (o.type == "PGL4") return GroupModel::pgl(4, cfg);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown --type " + o.type);
}

FormPtr form_from(const Options& o) {
  if (!o.form.empty()) return btio::form_from(btio::load(o.form));
  return model_from(o).form();
}

ApartmentPoint point_from(const FormPtr& form, const Options& o) {
  return o.point.empty() ? ApartmentPoint::base(form) : btio::point_from(form, btio::load(o.point));
}

ConcaveFn concave_from(const FormPtr& form, const Options& o) {
  return o.concave.empty() ? standard_concave(form, ConcaveKind::zero) : btio::concave_from(form, btio::load(o.concave));
}

Json header(const std::string& command, const Options& o) { return Json{{"command", command}, {"seed", o.seed}}; }

void emit(const Json& report, const Options& o) {
  if (o.json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.items())
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

std::vector<std::string> root_names(const RelativeForm& form, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(form.root_name(form.roots()[i]));
  return out;
}

int run_describe(const Options& o) {
  FormPtr form = form_from(o);
  ApartmentPoint x = point_from(form, o);
  ConcaveFn f = concave_from(form, o);
  Json r = header("describe", o);
  r["form"] = btio::form_to_json(*form);
  r["point"] = btio::to_json(x);
  r["concave"] = btio::to_json(f);
  PhiXF pxf = phi_xf(x, f);
  r["phi_xf"] = root_names(*form, pxf.roots);
  r["delta_xf"] = root_names(*form, pxf.simple);
  r["picard_rank"] = picard_rank(*form);
  if (special_fiber_is_unipotent(f)) {
    r["status"] = "unipotent";
    r["message"] = "f(0) > 0: the special fiber is unipotent";
  } else {
    ReductiveDatum d = reductive_quotient_datum(x, f);
    r["status"] = "ok";
    r["reductive_datum"] = btio::to_json(d);
    r["root_datum_axioms"] = check_root_datum(d);
    ToroidalData t = toroidal_data(x, f);
    r["toroidal"] = btio::to_json(t);
    r["face_count"] = t.faces.size();
  }
  emit(r, o);
  return kOk;
}

int run_normal_form(const Options& o) {
  GroupModel model = model_from(o);
  EmbeddedPoint p = btio::embedded_from(model, btio::load(o.input));
  if (o.seed) p.seed = o.seed;
  ApartmentPoint x = point_from(model.form(), o);
  ConcaveFn f = concave_from(model.form(), o);
  NormalFormResult res = normal_form(model, p);
  Json r = header("normal-form", o);
  r["seed"] = p.seed;
  r["group"] = model.label();
  r["retries"] = res.retries;
  switch (res.status) {
    case NFStatus::ok:
      r["status"] = "in-cell";
      r["point"] = btio::to_json(*res.point);
      r["in_omega_bar"] = membership(*res.point, x, f, CellKind::omega_bar);
      emit(r, o);
      return kOk;
    case NFStatus::boundary:
      r["status"] = "boundary";
      if (res.failed_root) {
        const auto& form = *model.form();
        r["failed_root"] = form.root_name(form.roots()[form.reduced_positive_roots().at(*res.failed_root)]);
      }
      if (res.failed_eps) r["d_a"] = btio::to_json(*res.failed_eps);
      r["message"] = res.message;
      emit(r, o);
      return kInconclusive;
    case NFStatus::not_factorizable:
      break;
  }
  r["status"] = "inconclusive";
  r["vanishing_minor"] = res.vanishing_minor;
  r["message"] = res.message;
  emit(r, o);
  return kInconclusive;
}

int run_orbit(const Options& o) {
  GroupModel model = model_from(o);
  EmbeddedPoint p = btio::embedded_from(model, btio::load(o.input));
  if (o.seed) p.seed = o.seed;
  ApartmentPoint x = point_from(model.form(), o);
  ConcaveFn f = concave_from(model.form(), o);
  OrbitInvariant inv = orbit_invariant(model, p, x, f, o.budget);
  Json r = header("orbit", o);
  r["seed"] = p.seed;
  r["group"] = model.label();
  if (!inv.ok) {
    r["status"] = "inconclusive";
    r["message"] = inv.message;
    emit(r, o);
    return kInconclusive;
  }
  Json values = Json::array();
  for (const auto& v : inv.values) values.push_back(btio::valuation_json(v));
  r["status"] = "ok";
  r["invariant"] = values;
  emit(r, o);
  return kOk;
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> run_suite(const std::string& suite, const Options& o) {
  std::vector<Check> out;
  if (suite == "theta-split") {
    for (int n = 2; n <= 4; ++n)
      out.push_back({"theta-split n=" + std::to_string(n), theta_identity_split(n), "exact over Q(u, u', s)"});
  } else if (suite == "theta-su3") {
    out.push_back({"theta-su3", theta_identity_su3(), "exact over the ramified quadratic function field"});
  } else if (suite == "congruence") {
    for (int n = 1; n <= 3; ++n) {
      bool ok = congruence_fiber_iso_check(n) && generic_round_trip(congruence_presentation(n));
      out.push_back({"congruence n=" + std::to_string(n), ok, congruence_presentation(n).str()});
    }
    bool rejects = false;
    std::string why;
    try {
      congruence_fiber_iso_check(0);
    } catch (const std::invalid_argument& e) {
      rejects = true;
      why = e.what();
    }
    out.push_back({"congruence n=0 rejected", rejects, why});
  } else if (suite == "extension") {
    auto cfg = make_field(5, 12);
    auto v = extension_test(pgl2_action_jet_map(), pgl2_identity_triple(cfg), 4);
    out.push_back({"PGL2 action integral to level 4", v.integral, v.witness});
    auto ring = make_ring({"T", "pi"}, 5);
    RatFunc w(Poly::parse(ring, "T"), Poly::parse(ring, "pi"));
    auto bad = extension_test({w}, {"T"}, {FieldElem(cfg)}, 2);
    out.push_back({"T -> T/pi fails at level 2", !bad.integral, bad.witness});
  } else if (suite == "compatibility") {
    Options d = o;
    if (d.type.empty()) d.type = "PGL2";
    GroupModel model = model_from(d);
    ApartmentPoint x = point_from(model.form(), d);
    ConcaveFn g = standard_concave(model.form(), ConcaveKind::zero);
    ConcaveFn f = standard_concave(model.form(), ConcaveKind::moy_prasad, Rational(1, 2));
    auto rep = dilatation_compatibility_check(model, x, f, g, o.samples, o.seed);
    out.push_back({"dilatation " + model.label() + " g=0 f=1/2", rep.ok(),
                   std::to_string(rep.agreements) + "/" + std::to_string(rep.samples) + " agree, " +
                       std::to_string(rep.in_f) + " in G_f" +
                       (rep.first_disagreement.empty() ? "" : "; " + rep.first_disagreement)});
  } else {
    throw SchemaError("unknown suite " + suite +
                      " (theta-split, theta-su3, congruence, extension, compatibility, all)");
  }
  return out;
}

int run_verify(const Options& o) {
  std::vector<std::string> suites = o.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all"))
    suites = {"theta-split", "theta-su3", "congruence", "extension", "compatibility"};
  std::vector<Check> checks;
  for (const auto& s : suites)
    for (auto& c : run_suite(s, o)) checks.push_back(std::move(c));
  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  if (o.json) {
    Json r = header("verify", o);
    Json rows = Json::array();
    for (const auto& c : checks) rows.push_back(Json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    r["results"] = rows;
    r["status"] = all ? "pass" : "fail";
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << "seed: " << o.seed << "\n";
    for (const auto& c : checks)
      std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                << "\n";
  }
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concave-function group schemes: big cells, normal forms, special fibers"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--type", o.type, "Group model: PGL2, PGL3, PGL4, PU3");
    sub->add_option("--form", o.form, "Form descriptor JSON (file or inline)");
    sub->add_option("--point", o.point, "Apartment point: coroot coordinates JSON (file or inline)");
    sub->add_option("--concave", o.concave, "Concave function JSON (file or inline)");
    sub->add_option("--field", o.field, "p,precision[,ramification] or field JSON");
    sub->add_option("--seed", o.seed, "Seed for all randomness");
    sub->add_flag("--json", o.json, "Emit JSON");
  };
  auto* describe = app.add_subcommand("describe", "Reductive quotient datum, toroidal cones and Picard rank");
  common(describe);
  auto* nf = app.add_subcommand("normal-form", "Big-cell normal form of an embedded point");
  common(nf);
  nf->add_option("input", o.input, "EmbeddedPoint JSON (file or inline)")->required();
  auto* orbit = app.add_subcommand("orbit", "Orbit invariant of an embedded point");
  common(orbit);
  orbit->add_option("input", o.input, "EmbeddedPoint JSON (file or inline)")->required();
  orbit->add_option("--budget", o.budget, "Parahoric translates to try");
  auto* verify = app.add_subcommand("verify", "Run property suites");
  common(verify);
  verify->add_option("suites", o.suites, "theta-split, theta-su3, congruence, extension, compatibility, all");
  verify->add_option("--samples", o.samples, "Samples for the compatibility check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }
  try {
    if (*describe) return run_describe(o);
    if (*nf) return run_normal_form(o);
    if (*orbit) return run_orbit(o);
    return run_verify(o);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const PrecisionError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
