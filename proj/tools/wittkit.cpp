// wittkit: command-line front end. Every command parses its inputs, calls
// the library and serializes the result; exit status 0 on success, 1 on a
// property failure, 2 on a parse or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "wittkit/wittkit.hpp"

using namespace wittkit;
using json = nlohmann::json;

namespace {

struct Config {
  std::string output = "json";
  std::uint64_t seed = 0;
  int samples = 500;
};

struct Report {
  json inputs = json::object();
  json results = json::object();
  json failures = json::array();
};

BaseField parse_base(const std::string& text) {
  Field F = Field::parse(text);
  return F.base();
}

json witt_json(const WittClass& x) { return x.to_string(); }

/// Splits "(T),(T-1)" at top-level commas.
std::vector<std::string> split_support(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
  return out;
}

std::vector<Place> parse_support(const Field& F, const std::string& text) {
  std::vector<Place> out;
  for (const auto& s : split_support(text)) out.push_back(Place::parse(F, s));
  return out;
}

json contraction_json(const ContractionClass& c) {
  json j = {{"place", c.place}, {"a_present", c.a_present}, {"torsion", witt_json(c.torsion_component.value)}};
  if (c.a_present) j["a_component"] = c.a_component;
  j["trivial"] = c.is_trivial();
  return j;
}

// ---- commands ------------------------------------------------------------------

void witt_table(Report& r, const std::string& field) {
  BaseField K = parse_base(field);
  const auto& R = FiniteWittRing::get(K);
  r.inputs["field"] = field;
  json elems = json::array(), add = json::array(), mul = json::array();
  for (int a = 0; a < R.size(); ++a) {
    elems.push_back(witt_json(R.element(a)));
    json ra = json::array(), rm = json::array();
    for (int b = 0; b < R.size(); ++b) {
      ra.push_back(R.add(a, b));
      rm.push_back(R.mul(a, b));
    }
    add.push_back(ra);
    mul.push_back(rm);
  }
  r.results = {{"field", K.name()}, {"size", R.size()},    {"elements", elems}, {"addition", add},
               {"multiplication", mul}, {"zero", R.zero()}, {"one", R.one()},    {"units", R.units()}};
}

void classify_cmd(Report& r, const std::string& text) {
  DiagonalForm q = parse_form(text);
  r.inputs["form"] = text;
  r.results["field"] = q.field.name();
  if (q.field.is_function_field()) {
    WittClass x = WittClass::of(q);
    r.results["class"] = witt_json(x);
    r.results["is_zero"] = x.is_zero();
    return;
  }
  const BaseField& K = q.field.base();
  FormInvariants fi = invariants(q);
  WittDecomposition wd = witt_decompose(q);
  json hasse = json::object();
  for (const auto& [p, e] : fi.hasse) hasse[p == 0 ? std::string("inf") : p.get_str()] = e;
  r.results["dim"] = fi.dim;
  r.results["det"] = K.format(fi.det);
  r.results["signed_discriminant"] = K.format(fi.signed_disc);
  r.results["hasse"] = hasse;
  if (fi.signature) r.results["signature"] = *fi.signature;
  r.results["isotropic"] = is_isotropic(q);
  r.results["witt_index"] = wd.witt_index;
  r.results["canonical"] = format(wd.kernel);
  r.results["is_zero"] = wd.kernel.dim() == 0;
}

void unit_decompose_cmd(Report& r, const std::string& text) {
  WittClass x = WittClass::of(parse_form(text));
  r.inputs["form"] = text;
  UnitDecomposition d = unit_decompose(x);
  r.results = {{"sign", d.sign},
               {"square_class", elem::format(x.field(), d.square_class)},
               {"nilpotent_part", witt_json(d.nilpotent_part)}};
}

void pushout_cmd(Report& r, const std::string& field) {
  PushoutReport p = verify_pushout_square(parse_base(field));
  r.inputs["field"] = field;
  r.results = {{"field", p.field},
               {"witt_size", p.witt_size},
               {"units", p.units},
               {"square_classes", p.square_classes},
               {"one_plus_nil", p.one_plus_nil},
               {"intersection", p.intersection},
               {"quotient", p.quotient()},
               {"generated", p.generated},
               {"amalgamated", p.amalgamated}};
  if (!p.ok()) r.failures.push_back({{"property", "pushout"}, {"field", p.field}});
}

void residue_cmd(Report& r, const std::string& at, const std::string& text) {
  WittClass x = WittClass::of(parse_form(text));
  Place v = Place::parse(x.field(), at);
  r.inputs["form"] = text;
  r.inputs["at"] = at;
  WittClass s = second_residue(v, x);
  r.results["place"] = v.name();
  r.results["second_residue"] = witt_json(s);
  r.results["unramified"] = s.is_zero();
  if (s.is_zero()) r.results["specialization"] = witt_json(first_residue(v, x));
  if (is_unit(x) && v.degree() == 1 && x.field().is_function_field())
    r.results["contraction"] = contraction_json(contraction_classify(v, x));
}

void milnor_cmd(Report& r, const Config& cfg, const std::string& field, const std::string& support) {
  BaseField K = parse_base(field);
  Field F = Field::rational_functions(K);
  std::vector<Poly> pis;
  for (const auto& v : parse_support(F, support)) {
    if (v.kind() != Place::Kind::Polynomial) throw DomainError("milnor-check support must be finite places");
    pis.push_back(v.pi());
  }
  r.inputs["field"] = field;
  r.inputs["support"] = support;
  MilnorReport m = milnor_sequence_check(K, pis, cfg.samples, cfg.seed);
  r.results = {{"field", m.field},
               {"support", m.support},
               {"round_trips", m.round_trips},
               {"kernel_samples", m.kernel_samples},
               {"surjective", m.surjective},
               {"middle_exact", m.middle_exact}};
  for (const auto& f : m.failures) r.failures.push_back({{"property", "milnor"}, {"counterexample", f}});
}

struct GerstenArgs {
  std::string base, scheme = "P1", sheaf = "GWx", support, check = "all";
  std::vector<std::string> probes;
  int level = 1;
};

void gersten_cmd(Report& r, const GerstenArgs& a) {
  BaseField K = parse_base(a.base);
  Field F = Field::rational_functions(K);
  Scheme scheme = parse_scheme(a.scheme);
  Sheaf sheaf = parse_sheaf(a.sheaf);
  if (a.check != "all" && a.check != "d2" && a.check != "h0" && a.check != "h1" && a.check != "diagram")
    throw ParseError("--check must be all, d2, h0, h1 or diagram");
  std::vector<Place> support = parse_support(F, a.support);
  r.inputs = {{"base", a.base},   {"scheme", a.scheme}, {"sheaf", a.sheaf},
              {"support", a.support}, {"check", a.check}, {"level", a.level}};
  GerstenComplexData c = build_complex(K, scheme, sheaf, support, a.level);
  json terms = json::array();
  for (const auto& t : c.degree1) {
    json j = {{"point", t.point}, {"group", t.group}, {"a_present", t.a_present}};
    if (t.order) j["order"] = *t.order;
    terms.push_back(j);
  }
  r.results["field"] = c.field.name();
  r.results["degree0"] = c.degree0;
  r.results["terms"] = terms;
  auto want = [&](const char* what) { return a.check == "all" || a.check == what; };
  if (want("d2")) {
    DSquaredReport d = check_d_squared(c);
    r.results["d2"] = {{"pass", d.ok}, {"note", d.note}, {"composites_checked", d.composites_checked}};
    if (!d.ok) r.failures.push_back({{"property", "d2"}, {"note", d.note}});
  }
  if (want("h0")) {
    std::vector<std::string> probes = a.probes;
    if (probes.empty()) probes = {"<1> over " + F.name(), "<T> over " + F.name()};
    json h0 = json::array();
    for (const auto& p : probes) h0.push_back({{"element", p}, {"in_h0", in_h0(c, WittClass::of(parse_form(p)))}});
    r.results["h0_probe"] = h0;
  }
  bool computable = K.has_finite_witt() || K.kind() == BaseKind::Real;
  if (want("h1") && scheme == Scheme::ProjectiveLine) {
    if (!computable) {
      if (a.check == "h1") throw UnsupportedError("H^1 enumeration needs a finite Witt ring or R, got " + K.name());
      r.results["h1"] = nullptr;
    } else {
      H1Report h = h1_p1(K, sheaf);
      json by = json::array();
      for (const auto& s : h.by_support) by.push_back(s.cokernel);
      json h1 = {{"cardinality", h.cardinality}, {"stabilized", h.stabilized}, {"by_support_size", by}};
      if (sheaf == Sheaf::GWUnits) {
        h1["structure"] = sphere_cohomology(K, 1, 1, 1).description;
        h1["pic2_image"] = h.pic2_image;
        h1["nq_cardinality"] = h.nq_cardinality;
        h1["two_way_consistent"] = h.two_way_consistent;
        h1["o_minus_1_nontrivial"] = h.o_minus_1_nontrivial;
        h1["o_minus_2_trivial"] = h.o_minus_2_trivial;
        if (!h.two_way_consistent) r.failures.push_back({{"property", "h1_two_way"}, {"field", h.field}});
      }
      if (h.structural_a) h1["structural_a"] = *h.structural_a;
      if (h.structural_s) h1["structural_s"] = *h.structural_s;
      r.results["h1"] = h1;
      if (!h.stabilized) r.failures.push_back({{"property", "h1_stabilized"}, {"by_support_size", by}});
    }
  }
  if (want("diagram") && scheme == Scheme::ProjectiveLine && computable) {
    std::vector<Scalar> points;
    for (const auto& v : c.support)
      if (v.kind() == Place::Kind::Polynomial && v.degree() == 1) points.push_back(K.neg(v.pi().coeff(0)));
    DiagramReport d = exact_diagram_check(K, points);
    r.results["diagram"] = {{"row0_exact", d.row0_exact},         {"row1_exact", d.row1_exact},
                            {"left_square", d.left_square},       {"right_square", d.right_square},
                            {"d_squared", d.d_squared},           {"elements_checked", d.elements_checked}};
    for (const auto& f : d.failures) r.failures.push_back({{"property", "diagram"}, {"counterexample", f}});
  }
}

void p1_fibrations_cmd(Report& r, const std::string& field) {
  BaseField K = parse_base(field);
  r.inputs["field"] = field;
  json classes = json::array();
  for (const auto& c : p1_fibration_classes(K))
    classes.push_back({{"class", c.label()},
                       {"a_component", c.a_component},
                       {"torsion", witt_json(c.torsion)},
                       {"transition", witt_json(c.transition)}});
  r.results = {{"field", K.name()}, {"count", classes.size()}, {"classes", classes}};
}

void sphere_cmd(Report& r, const std::string& field, int i, int p, int q) {
  BaseField K = parse_base(field);
  r.inputs = {{"field", field}, {"i", i}, {"p", p}, {"q", q}};
  GroupDescriptor g = sphere_cohomology(K, i, p, q);
  r.results["group"] = g.description;
  r.results["order"] = g.order ? json(*g.order) : json(nullptr);
  r.results["trivial"] = g.trivial();
}

void orientation_cmd(Report& r, const std::string& field, long n) {
  BaseField K = parse_base(field);
  r.inputs = {{"field", field}, {"n", n}};
  OrientationCharacter ch = orientation_character(n, K);
  Orientability o = is_orientable_ST(n, K);
  r.results = {{"character", ch.to_string()}, {"exponent", ch.exponent}, {"orientable", o.orientable}, {"reason", o.reason}};
}

void bezout_cmd(Report& r, const std::string& map, const std::string& field) {
  Field F = Field::parse(field);
  const BaseField& K = F.base();
  r.inputs = {{"map", map}, {"field", field}};
  BezoutResult b = bezout_form(parse_map(F, map));
  json m = json::array();
  for (const auto& row : b.matrix) {
    json jr = json::array();
    for (const auto& e : row) jr.push_back(e.format(K));
    m.push_back(jr);
  }
  r.results = {{"matrix", m}, {"diagonal_form", format(b.diagonal)}, {"gw_class", b.gw.to_string()}, {"rank", b.gw.rank()}};
}

void clutch_cmd(Report& r, const std::string& base, const std::string& u_text) {
  BaseField K = parse_base(base);
  Field k(K);
  Scalar u = u_text.empty() ? K.nonresidue() : parse_element(k, u_text).c;
  r.inputs = {{"base", base}, {"u", u_text.empty() ? K.format(u) : u_text}};
  RationalMapP1 f = t_family(K, u);
  GWClass g = bezout_form(f).gw;
  ClutchingClass c = clutching_class(g);
  r.results = {{"u", K.format(u)},
               {"gw_class", g.to_string()},
               {"b", witt_json(c.b)},
               {"s_present", c.s_present},
               {"trivial", c.trivial}};
  if (c.contraction) r.results["contraction"] = contraction_json(*c.contraction);
}

void axioms_cmd(Report& r, const Config& cfg, const std::string& field, const std::string& scenario) {
  BaseField K = parse_base(field);
  std::vector<AxiomScenario> all = {AxiomScenario::A1, AxiomScenario::A2, AxiomScenario::A3i, AxiomScenario::A3ii};
  std::vector<AxiomScenario> run;
  for (auto s : all)
    if (scenario == "all" || scenario == to_string(s)) run.push_back(s);
  if (run.empty()) throw ParseError("unknown scenario: " + scenario);
  r.inputs = {{"field", field}, {"scenario", scenario}};
  json out = json::array();
  for (auto s : run) {
    AxiomReport a = axiom_check(s, K, cfg.samples, cfg.seed);
    out.push_back({{"scenario", a.scenario},
                   {"field", a.field},
                   {"description", a.description},
                   {"samples", a.samples},
                   {"failures", a.failures},
                   {"pass", a.ok()}});
    for (const auto& ce : a.counterexamples)
      r.failures.push_back({{"property", a.scenario}, {"counterexample", ce}});
  }
  r.results["scenarios"] = out;
}

// ---- output --------------------------------------------------------------------

void print_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittkit: Witt rings, residues and Gersten complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--output", cfg.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "seed for sampled checks (WITTKIT_SEED overrides)");
  app.add_option("--samples", cfg.samples, "samples for sampled checks")->check(CLI::PositiveNumber);

  std::string field, form, at, support, map, u, scenario = "all";
  int i = 1, p = 1, q = 1;
  long n = 1;
  GerstenArgs g;
  std::function<void(Report&)> run;

  auto* wt = app.add_subcommand("witt-table", "addition and multiplication tables of a finite Witt ring");
  wt->add_option("field", field)->required();
  wt->callback([&] { run = [&](Report& r) { witt_table(r, field); }; });

  auto* cl = app.add_subcommand("classify", "invariants and canonical representative of a form");
  cl->add_option("form", form, "e.g. \"<1,-1> over Q\"")->required();
  cl->callback([&] { run = [&](Report& r) { classify_cmd(r, form); }; });

  auto* ud = app.add_subcommand("unit-decompose", "sign * <u> * (1 + nilpotent) of a Witt unit");
  ud->add_option("form", form)->required();
  ud->callback([&] { run = [&](Report& r) { unit_decompose_cmd(r, form); }; });

  auto* po = app.add_subcommand("pushout-check", "pushout square of units for a finite Witt ring");
  po->add_option("field", field)->required();
  po->callback([&] { run = [&](Report& r) { pushout_cmd(r, field); }; });

  auto* re = app.add_subcommand("residue", "residues of a class at a place");
  re->add_option("--at", at, "place, e.g. \"(T-1)\", \"inf\" or a prime")->required();
  re->add_option("form", form)->required();
  re->callback([&] { run = [&](Report& r) { residue_cmd(r, at, form); }; });

  auto* mi = app.add_subcommand("milnor-check", "sampled check of the Milnor residue sequence");
  mi->add_option("field", field)->required();
  mi->add_option("--support", support, "e.g. \"(T),(T-1)\"")->required();
  mi->callback([&] { run = [&](Report& r) { milnor_cmd(r, cfg, field, support); }; });

  auto* ge = app.add_subcommand("gersten", "Gersten complex on a curve: terms, d^2, H^0 probes, H^1");
  ge->add_option("--base", g.base)->required();
  ge->add_option("--scheme", g.scheme, "DVR, A1 or P1");
  ge->add_option("--sheaf", g.sheaf, "GWx, Gm/2, 1+Itor, NQ or Wtor");
  ge->add_option("--support", g.support);
  ge->add_option("--check", g.check, "all, d2, h0, h1 or diagram");
  ge->add_option("--probe", g.probes, "generic-point element to test for H^0");
  ge->add_option("--level", g.level, "torsion level");
  ge->callback([&] { run = [&](Report& r) { gersten_cmd(r, g); }; });

  auto* pf = app.add_subcommand("p1-fibrations", "classes of H^1(P^1, GW^x)");
  pf->add_option("field", field)->required();
  pf->callback([&] { run = [&](Report& r) { p1_fibrations_cmd(r, field); }; });

  auto* sc = app.add_subcommand("sphere-cohomology", "H^i(S^p ^ G_m^q, GW^x)");
  sc->add_option("field", field)->required();
  sc->add_option("--i", i);
  sc->add_option("--p", p);
  sc->add_option("--q", q);
  sc->callback([&] { run = [&](Report& r) { sphere_cmd(r, field, i, p, q); }; });

  auto* orient = app.add_subcommand("orientation", "orientation character of the tangent bundle of P^n");
  orient->add_option("field", field)->required();
  orient->add_option("--n", n);
  orient->callback([&] { run = [&](Report& r) { orientation_cmd(r, field, n); }; });

  auto* bz = app.add_subcommand("bezout", "Bezout form of a rational map A / B");
  bz->add_option("map", map, "e.g. \"X^3-2X / X^2-1\"")->required();
  bz->add_option("--field", field)->required();
  bz->callback([&] { run = [&](Report& r) { bezout_cmd(r, map, field); }; });

  auto* ct = app.add_subcommand("clutch", "clutching class of the T-family (X^3-(T+u)X)/(X^2-T)");
  ct->add_option("--base", field)->required();
  ct->add_option("--u", u, "constant; defaults to the canonical nonsquare");
  ct->callback([&] { run = [&](Report& r) { clutch_cmd(r, field, u); }; });

  auto* ax = app.add_subcommand("axioms", "sampled checks of the residue axioms");
  ax->add_option("field", field)->required();
  ax->add_option("--scenario", scenario, "A1, A2, A3i, A3ii or all");
  ax->callback([&] { run = [&](Report& r) { axioms_cmd(r, cfg, field, scenario); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (const char* env = std::getenv("WITTKIT_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: WITTKIT_SEED is not an unsigned integer: " << env << "\n";
      return 2;
    }
  }

  Report r;
  std::string command = app.get_subcommands().front()->get_name();
  auto t0 = std::chrono::steady_clock::now();
  try {
    run(r);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  r.inputs["samples"] = cfg.samples;
  r.inputs["seed"] = cfg.seed;
  json out = {{"command", command},
              {"inputs", r.inputs},
              {"results", r.results},
              {"property_failures", r.failures},
              {"timing", {{"elapsed_ms", ms}}}};
  if (cfg.output == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    print_text(out, "", std::cout);
  }
  return r.failures.empty() ? 0 : 1;
}
