#include "ahom/cli/cli.hpp"

#include "ahom/acceptance/acceptance.hpp"
#include "ahom/cft/cft.hpp"
#include "ahom/core/errors.hpp"
#include "ahom/homology/homology.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

namespace ahom {

namespace {

using Json = nlohmann::ordered_json;

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return to_i64(x);
  return x.str();
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(integer_json(v(i)));
  return out;
}

Json group_json(const AbelianGroup& g) {
  Json inv = Json::array();
  for (const auto& d : g.torsion_invariants()) inv.push_back(integer_json(d));
  return Json{{"invariants", inv}, {"free_rank", g.free_rank()}};
}

Json report_json(const CheckReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(group_json(t));
  return Json{{"check", r.check},
              {"config", r.config},
              {"exact", r.ok},
              {"witness", r.witness.empty() ? Json() : Json(r.witness)},
              {"terms", terms}};
}

Json report_json(const ReciprocityReport& r) {
  Json out{{"check", r.check},
           {"config", r.config},
           {"exact", r.ok()},
           {"witness", r.kernel_witness.empty() ? Json() : Json(r.kernel_witness)},
           {"source", group_json(r.source)},
           {"target", group_json(r.target)},
           {"injective", r.injective},
           {"surjective", r.surjective},
           {"degree_compatible", r.degree_compatible},
           {"cokernel", r.cokernel}};
  if (r.oracle_checked) out["oracle_isomorphism"] = r.oracle_isomorphism;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) return out;
    start = at + 1;
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

Integer parse_integer(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  const std::size_t digits = s.rfind('-', 0) == 0 ? 1 : 0;
  if (s.size() == digits || !std::all_of(s.begin() + static_cast<long>(digits), s.end(), ::isdigit))
    throw std::invalid_argument("malformed " + what + " '" + text + "'");
  return Integer(s);
}

std::pair<std::string, std::string> split_pair(const std::string& s, const std::string& flag) {
  const auto parts = split(s, '|');
  if (parts.size() != 2) throw std::invalid_argument(flag + " '" + s + "' must have the form 'A|B'");
  return {parts[0], parts[1]};
}

std::vector<Integer> parse_rational_primes(const std::string& s) {
  std::vector<Integer> out;
  if (trim(s).empty()) return out;
  for (const auto& t : split(s, ',')) {
    const Integer p = parse_integer(t, "prime");
    if (!is_prime(p)) throw std::invalid_argument("'" + trim(t) + "' is not a prime");
    out.push_back(p);
  }
  return out;
}

// "sel" or "sel^n", comma separated.
ZeroCycle parse_cycle(const NumberField& k, const std::string& s) {
  ZeroCycle out;
  if (trim(s).empty()) return out;
  for (const auto& t : split(s, ',')) {
    const auto caret = t.find('^');
    const long n = caret == std::string::npos ? 1 : to_i64(parse_integer(t.substr(caret + 1), "exponent"));
    out.emplace_back(k.prime(trim(t.substr(0, caret))), n);
  }
  return normalize(std::move(out));
}

Json labels(const std::vector<PrimeIdeal>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.label());
  return out;
}

struct Options {
  std::string field = "Q";
  std::string sigma;
  std::uint64_t q = 0;
  std::string places;
  std::string remove;
  std::string modulus;
  int deg_bound = 2;
  long height_bound = 300;
  long prime_bound = 50;
  bool bounds_given = false;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string cycle;

  bool function_field() const { return q != 0; }
  NumberField number_field() const { return NumberField::parse(field); }
  std::vector<Place> ff_places(const std::string& s) const { return parse_places(*function_field_constants(q), s); }
  ArithScheme scheme() const {
    if (function_field()) return FFCurve{q, ff_places(sigma)};
    NumberField k = number_field();
    return NumberRing{k, Modulus::parse(k, sigma)};
  }
  OracleBounds bounds() const { return {deg_bound, height_bound, prime_bound}; }
};

struct Outcome {
  Json body;
  bool ok = true;
};

Outcome single(const CheckReport& r) { return {report_json(r), r.ok}; }
Outcome single(const ReciprocityReport& r) { return {report_json(r), r.ok()}; }

Outcome batch(std::vector<Json> reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const Json& a, const Json& b) {
    return a["check"].get<std::string>() < b["check"].get<std::string>();
  });
  bool ok = true;
  for (const auto& r : reports) ok = ok && r["exact"].get<bool>();
  return {Json{{"exact", ok}, {"reports", reports}}, ok};
}

// ---------------------------------------------------------------------------

Outcome homology_command(const Options& o, bool degree_one) {
  const ArithScheme x = o.scheme();
  const HomologyResult h = homology(x);
  Json out{{"scheme", describe(x)}};
  out.update(group_json(degree_one ? h.h1 : h.h0));
  return {out};
}

Outcome rayclass_command(const Options& o) {
  const NumberField k = o.number_field();
  const RayClassGroup rc = ray_class_group(k, Modulus::parse(k, o.sigma));
  Json gens = Json::array();
  for (const auto& p : rc.modulus().primes()) gens.push_back("residue generator at " + p.label());
  for (const auto& p : rc.class_primes()) gens.push_back(p.label());
  Json out{{"field", k.spec()}, {"modulus", rc.modulus().to_string()}};
  out.update(group_json(rc.group()));
  out["generators"] = gens;
  return {out};
}

Outcome classgroup_command(const Options& o) {
  const NumberField k = o.number_field();
  const ClassGroup& cl = cached_class_group(k);
  Json out{{"field", k.spec()}};
  out.update(group_json(cl.group));
  out["generators"] = labels(cl.generators);
  return {out};
}

Outcome units_command(const Options& o) {
  const NumberField k = o.number_field();
  const UnitGroup& u = cached_unit_group(k);
  Json fundamental = Json::array();
  for (const auto& e : u.fundamental_units) fundamental.push_back(k.to_string(e));
  Json out{{"field", k.spec()},
           {"torsion_order", u.torsion_order},
           {"torsion_generator", k.to_string(u.torsion_generator)},
           {"fundamental_units", fundamental}};
  out.update(group_json(u.group()));
  return {out};
}

Outcome residue_units_command(const Options& o) {
  const NumberField k = o.number_field();
  const ResidueUnitGroup r = residue_units(k, Modulus::parse(k, o.sigma));
  Json factors = Json::array();
  for (std::size_t i = 0; i < r.modulus.size(); ++i) {
    const PrimeIdeal& p = r.modulus.primes()[i];
    factors.push_back({{"prime", p.label()},
                       {"order", integer_json(r.orders[i])},
                       {"generator", k.to_string(k.from_integral(k.lift_residue(r.generators[i], p)))}});
  }
  Json out{{"field", k.spec()}, {"modulus", r.modulus.to_string()}, {"factors", factors}};
  out.update(group_json(r.group));
  return {out};
}

Json element_json(const AbelianGroup& g, const IntVector& x) {
  return Json{{"coordinates", vector_json(g.reduce(x))},
              {"order", integer_json(g.element_order(x))},
              {"group", group_json(g)}};
}

Outcome cycle_class_command(const Options& o) {
  const NumberField k = o.number_field();
  const RayClassGroup rc = ray_class_group(k, Modulus::parse(k, o.sigma));
  const ZeroCycle c = parse_cycle(k, o.cycle);
  Json out{{"field", k.spec()}, {"modulus", rc.modulus().to_string()}, {"cycle", to_string(c)}};
  out["class"] = element_json(rc.group(), class_of_cycle(rc, c));
  return {out};
}

Outcome oracle_command(const Options& o) {
  const NumberField k = o.number_field();
  const OracleResult r = oracle_h0(k, Modulus::parse(k, o.sigma), o.bounds());
  Json out{{"field", k.spec()},
           {"sigma", o.sigma},
           {"bounds", {{"degree", o.deg_bound}, {"height", o.height_bound}, {"primes", o.prime_bound}}},
           {"group", group_json(r.group)},
           {"target", group_json(r.target)},
           {"injective", r.injective},
           {"surjective", r.surjective},
           {"stable", r.stable()},
           {"curves_used", r.curves_used},
           {"relations_used", r.relations_used},
           {"generators", labels(r.generators)}};
  return {out};
}

Integer required_modulus(const Options& o) {
  if (o.modulus.empty()) throw std::invalid_argument("--modulus is required");
  return parse_integer(o.modulus, "modulus");
}

Outcome rec_command(const Options& o) {
  const TameGaloisQ g(required_modulus(o));
  const ZeroCycle c = parse_cycle(NumberField(), o.cycle);
  Json out{{"modulus", g.modulus().str()}, {"cycle", to_string(c)}};
  out["frobenius"] = element_json(g.group(), rec_q(g, c));
  return {out};
}

Outcome verify_mv_cover(const Options& o) {
  const NumberField k = o.number_field();
  const auto [a, b] = split_pair(o.sigma, "--sigma");
  return single(check_mv_open_cover(k, Modulus::parse(k, a), Modulus::parse(k, b)));
}

Outcome verify_mv_base(const Options& o) {
  const NumberField k = o.number_field();
  const auto [a, b] = split_pair(o.remove, "--remove");
  return single(check_mv_second_variable(NumberRing{k, Modulus::parse(k, o.sigma)}, parse_rational_primes(a),
                                         parse_rational_primes(b)));
}

const std::string& ff_removed(const Options& o) { return o.places.empty() ? o.remove : o.places; }

Outcome verify_gysin(const Options& o) {
  if (o.function_field()) return single(check_gysin(FFCurve{o.q, o.ff_places(o.sigma)}, o.ff_places(ff_removed(o))));
  const NumberField k = o.number_field();
  return single(check_gysin(NumberRing{k, Modulus::parse(k, o.sigma)}, Modulus::parse(k, o.remove)));
}

Outcome verify_dense_open(const Options& o) {
  if (o.function_field())
    return single(check_dense_open_surjectivity(FFCurve{o.q, o.ff_places(o.sigma)}, o.ff_places(ff_removed(o))));
  const NumberField k = o.number_field();
  return single(check_dense_open_surjectivity(NumberRing{k, Modulus::parse(k, o.sigma)}, Modulus::parse(k, o.remove)));
}

Outcome verify_norm(const Options& o) {
  const NumberField q;
  return single(check_norm_composition(o.number_field(), Modulus::parse(q, o.sigma)));
}

Outcome verify_cft(const Options& o) {
  const auto oracle = o.bounds_given ? std::optional<OracleBounds>(o.bounds()) : std::nullopt;
  if (!o.modulus.empty()) return single(verify_tameclassfield_q(required_modulus(o), oracle));
  std::vector<Json> reports;
  for (long m = 1; m <= 200; ++m)
    if (is_squarefree(Integer(m))) reports.push_back(report_json(verify_tameclassfield_q(Integer(m), oracle)));
  return batch(std::move(reports));
}

Outcome verify_ff_rec0_command(const Options& o) {
  if (!o.function_field()) throw std::invalid_argument("ff-rec0 needs --q");
  return single(verify_ff_rec0(o.q, o.ff_places(o.sigma)));
}

// Seeded configurations of every check, as in the acceptance suite.
Outcome verify_all(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Json> reports;
  for (const auto& spec : random_check_fields()) {
    const NumberField k = NumberField::parse(spec);
    for (int i = 0; i < 20; ++i) {
      const Modulus a = random_modulus(k, rng, 30, 3), b = random_modulus(k, rng, 30, 3);
      reports.push_back(report_json(check_mv_open_cover(k, a, b)));
    }
    for (int i = 0; i < 20; ++i) {
      const NumberRing x{k, random_modulus(k, rng, 30, 3)};
      const auto a = random_rational_primes(rng, 2), b = random_rational_primes(rng, 2);
      reports.push_back(report_json(check_mv_second_variable(x, a, b)));
    }
    for (int i = 0; i < 4; ++i) {
      const NumberRing x{k, random_modulus(k, rng, 30, 2)};
      reports.push_back(report_json(check_dense_open_surjectivity(x, random_modulus(k, rng, 50, 2))));
      Modulus d;
      while (d.empty()) d = random_modulus(k, rng, 50, 2) - x.sigma;
      reports.push_back(report_json(check_gysin(x, d)));
    }
  }
  const NumberField q;
  for (long m = 1; m <= 200; ++m)
    if (is_squarefree(Integer(m))) reports.push_back(report_json(verify_tameclassfield_q(Integer(m))));
  for (const auto& [qq, sigma] : std::vector<std::pair<std::uint64_t, std::string>>{
           {2, "inf"}, {3, "t,inf"}, {5, "t,inf"}, {3, "t,t+2,inf"}, {4, "t"}, {5, ""}}) {
    const auto places = parse_places(*function_field_constants(qq), sigma);
    reports.push_back(report_json(verify_ff_rec0(qq, places)));
    reports.push_back(report_json(check_gysin(FFCurve{qq, places}, parse_places(*function_field_constants(qq), "t+1"))));
  }
  reports.push_back(report_json(check_norm_composition(NumberField::parse("x^2+1"), Modulus::parse(q, "5"))));
  reports.push_back(report_json(check_norm_composition(NumberField::parse("x^2+5"), Modulus())));
  return batch(std::move(reports));
}

Outcome selftest_command(const Options& o) {
  Json criteria = Json::array();
  bool ok = true;
  for (const auto& r : run_acceptance(o.seed)) {
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    ok = ok && r.passed;
  }
  return {Json{{"passed", ok}, {"criteria", criteria}}, ok};
}

void print_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (key == "schema" || key == "command") continue;
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        print_text(item, out, indent + "  ");
        out << indent << "  --\n";
      }
    } else if (value.is_string()) {
      out << indent << key << ": " << value.get<std::string>() << "\n";
    } else {
      out << indent << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic homology of number rings and curves over finite fields"};
  app.name("ahom");
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::function<Outcome(const Options&)>> actions;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", o.seed, "Seed for randomized selections");
  };
  auto field = [&](CLI::App* sub) { sub->add_option("--field", o.field, "Q or a monic polynomial in x"); };
  auto sigma = [&](CLI::App* sub, const std::string& help) { sub->add_option("--sigma", o.sigma, help); };
  auto curve = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "Constant field size; selects P^1 over F_q")->check(CLI::PositiveNumber);
  };
  auto bounds = [&](CLI::App* sub) {
    for (auto* opt : {sub->add_option("--deg-bound", o.deg_bound, "Curve degree bound"),
                      sub->add_option("--height-bound", o.height_bound, "Coefficient height bound"),
                      sub->add_option("--prime-bound", o.prime_bound, "Generator prime bound")})
      opt->check(CLI::PositiveNumber)->each([&](const std::string&) { o.bounds_given = true; });
  };
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                     std::function<Outcome(const Options&)> action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    actions[sub] = std::move(action);
    return sub;
  };

  const std::string removed_primes = "Removed primes: comma-separated selectors, or places with --q";
  auto* h0 = command(&app, "h0", "h_0 of Spec O_k minus sigma, or of P^1 over F_q minus sigma",
                     [](const Options& x) { return homology_command(x, false); });
  auto* h1 = command(&app, "h1", "h_1 of the same schemes", [](const Options& x) { return homology_command(x, true); });
  for (auto* sub : {h0, h1}) {
    field(sub);
    sigma(sub, "Removed primes (selectors) or places (with --q)");
    curve(sub);
  }
  auto* rayclass = command(&app, "rayclass", "Ray class group C_m(k)", rayclass_command);
  auto* classgroup = command(&app, "classgroup", "Ideal class group", classgroup_command);
  auto* units = command(&app, "units", "Unit group", units_command);
  auto* residue = command(&app, "residue-units", "(O/m)^x with generators", residue_units_command);
  auto* cycle = command(&app, "cycle-class", "Ray class of a zero-cycle", cycle_class_command);
  auto* oracle = command(&app, "oracle", "h_0 from curves of bounded degree and height", oracle_command);
  for (auto* sub : {rayclass, classgroup, units, residue, cycle, oracle}) field(sub);
  for (auto* sub : {rayclass, residue, cycle, oracle}) sigma(sub, "Modulus: comma-separated prime selectors");
  bounds(oracle);
  cycle->add_option("cycle", o.cycle, "Zero-cycle, e.g. '3,13^-1' or '5:1^2'")->required();

  auto* rec = command(&app, "rec", "Frobenius of a zero-cycle in (Z/m)^x / {+-1}", rec_command);
  rec->add_option("--modulus", o.modulus, "m")->required();
  rec->add_option("cycle", o.cycle, "Zero-cycle of rational primes, e.g. '2,11^-1'")->required();

  command(&app, "selftest", "Full acceptance suite", selftest_command);

  CLI::App* verify = app.add_subcommand("verify", "Exactness and reciprocity checks");
  verify->require_subcommand(1);
  auto* mv_cover = command(verify, "mv-cover", "Mayer-Vietoris for an open cover", verify_mv_cover);
  field(mv_cover);
  sigma(mv_cover, "The two removed sets as 'S1|S2'");
  auto* mv_base = command(verify, "mv-base", "Mayer-Vietoris in the second variable", verify_mv_base);
  field(mv_base);
  sigma(mv_base, "Removed primes of X");
  mv_base->add_option("--remove", o.remove, "Rational primes omitted by U and V as 'A|B'");
  auto* gysin = command(verify, "gysin", "Gysin sequence for removing D", verify_gysin);
  auto* dense = command(verify, "dense-open", "Surjectivity of h_0 from a dense open", verify_dense_open);
  for (auto* sub : {gysin, dense}) {
    field(sub);
    curve(sub);
    sigma(sub, "Removed primes or places of X");
    sub->add_option("--remove", o.remove, removed_primes);
    sub->add_option("--places", o.places, "Removed places (with --q)");
  }
  auto* norm = command(verify, "norm", "f_* f^* = deg f on C_m(Q)", verify_norm);
  field(norm);
  sigma(norm, "Rational primes of the modulus");
  auto* cft = command(verify, "cft", "Reciprocity over Q; all squarefree m <= 200 without --modulus", verify_cft);
  cft->add_option("--modulus", o.modulus, "Squarefree m");
  bounds(cft);
  auto* ff = command(verify, "ff-rec0", "Degree-zero reciprocity over F_q(t)", verify_ff_rec0_command);
  curve(ff);
  sigma(ff, "Removed places, e.g. 't,inf'");
  command(verify, "all", "Seeded configurations of every check", verify_all);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUnsupported;
  }

  std::string name;
  Outcome result;
  try {
    for (auto& [sub, action] : actions) {
      if (!sub->parsed()) continue;
      name = sub->get_name();
      result = action(o);
    }
  } catch (const VerificationError& e) {
    err << "ahom " << name << ": " << e.what() << "\nwitness: " << e.witness() << "\n";
    return kExitVerificationFailed;
  } catch (const UnsupportedError& e) {
    err << "ahom " << name << ": unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "ahom " << name << ": " << e.what() << "\n";
    return kExitUnsupported;
  }

  Json doc{{"schema", "1"}, {"command", name}};
  doc.update(result.body);
  if (o.format == "text")
    print_text(doc, out);
  else
    out << doc.dump() << "\n";
  return result.ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace ahom
