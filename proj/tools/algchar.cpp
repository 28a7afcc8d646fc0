// algchar: command-line front end. Every command prints one JSON document
// (or an aligned table) and exits nonzero when an invariant fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "algchar/errors.hpp"
#include "algchar/experiments.hpp"

using namespace algchar;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3, kInternal = 4 };

struct Common {
  std::string algebra = "ut";
  std::size_t n = 3;
  unsigned q = 2;
  std::string lambda;
  unsigned threads = 1;
  std::string cache_dir;
  std::uint64_t guard_bytes = std::uint64_t(1) << 31;
  std::string format = "json";
  bool timing = false;
  bool slow = false;
};

struct Resolved {
  Algebra alg;
  std::size_t ut_n = 0;  // n when the algebra is u_n(q), for e*(i,j) notation
  Json description;
};

Resolved resolve_algebra(const Common& c) {
  Resolved r;
  if (c.algebra == "ut") {
    r.alg = make_ut(c.n, Field::of_order(c.q));
    r.ut_n = c.n;
    r.description = {{"family", "ut"}, {"n", c.n}, {"q", c.q}};
  } else if (std::filesystem::exists(c.algebra)) {
    r.alg = load_algebra(c.algebra);
    r.description = {{"file", std::filesystem::path(c.algebra).filename().string()}};
  } else {
    std::string name = c.algebra;
    if (name == "ut5") name = "ut5(" + std::to_string(c.q) + ")";
    r.alg = algebra_by_name(name);
    r.description = {{"name", name}};
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(u(\d+)\(\d+\))"))) r.ut_n = std::stoul(m[1]);
  }
  r.description["fingerprint"] = algebra_fingerprint(r.alg);
  return r;
}

Vec resolve_lambda(const Common& c, const Resolved& r) {
  if (c.lambda.empty()) throw DomainError("--lambda is required for this command");
  return parse_functional(r.alg, c.lambda, r.ut_n);
}

std::optional<Cache> resolve_cache(const Common& c) {
  if (!c.cache_dir.empty()) return Cache(c.cache_dir);
  if (auto root = Cache::root_from_environment()) return Cache(*root);
  return std::nullopt;
}

PartitionOptions partition_options(const Common& c) {
  PartitionOptions po;
  po.guard_bytes = c.guard_bytes;
  return po;
}

void print_table(const Json& j, std::ostream& out, const std::string& prefix = "") {
  std::vector<std::pair<std::string, std::string>> rows;
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& v, const std::string& path) {
    if (v.is_object() && !v.empty()) {
      for (auto it = v.begin(); it != v.end(); ++it) walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else {
      std::string s = v.is_string() ? v.get<std::string>() : v.dump();
      if (s.size() > 100) s = s.substr(0, 97) + "...";
      rows.emplace_back(path, s);
    }
  };
  walk(j, prefix);
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
}

int emit(const Common& c, const std::string& command, const Json& input, Json result, bool ok, double seconds) {
  Json doc{{"schema", kResultSchema},
           {"tool_version", kToolVersion},
           {"command", command},
           {"input", input},
           {"result", std::move(result)},
           {"ok", ok}};
  if (c.timing) doc["wall_seconds"] = seconds;
  if (c.format == "table")
    print_table(doc, std::cout);
  else
    std::cout << doc.dump(2) << "\n";
  return ok ? kOk : kViolation;
}

Json degree_json(const ClassFunction& f) {
  return Json{{"degree", f.degree().to_string()}, {"norm", inner(f, f).to_string()}, {"terms", f.terms().size()}};
}

ClassFunction named_character(const std::string& kind, const Group& g, const Vec& lam, const std::string& poly) {
  const Algebra& alg = g.algebra();
  if (kind == "theta") return theta_fun(alg, lam);
  if (kind == "kirillov") return kirillov(g, lam);
  if (kind == "super") return supercharacter(g, lam);
  if (kind == "xi") return xi_character(g, lam);
  if (kind == "regular") return regular_character(alg);
  if (kind == "poly-kirillov") {
    PolyBijection F = identity_map(alg);
    if (poly == "exp") {
      F = exp_map(alg);
    } else if (!poly.empty()) {
      std::vector<Elem> higher;
      std::stringstream ss(poly);
      for (std::string item; std::getline(ss, item, ',');) higher.push_back(alg.field().from_integer(std::stoll(item)));
      F = poly_bijection(alg.field(), higher, alg.nilpotency_index());
    }
    return twist(kirillov(g, lam), F);
  }
  throw DomainError("unknown character kind " + kind);
}

Json count_cached(const Common& c, const Resolved& r, const Vec& lam, const std::string& kind) {
  Group g(r.alg);
  auto cache = resolve_cache(c);
  const std::string key =
      fingerprint(Json{{"algebra", algebra_fingerprint(r.alg)}, {"lambda", lam}, {"op", "count-" + kind}});
  if (cache)
    if (auto hit = cache->load("count", key)) return *hit;
  PartitionOptions po = partition_options(c);
  std::optional<PartitionCheckpoint> resume;
  if (cache && kind != "by-degree") {
    if (auto cp = cache->load("checkpoint", key)) {
      resume = checkpoint_from_json(*cp);
      po.resume = &*resume;
    }
    po.checkpoint_every = 64;
    const Cache store = *cache;
    po.on_checkpoint = [store, key](const PartitionCheckpoint& cp) { store.store("checkpoint", key, checkpoint_to_json(cp)); };
  }
  ConstituentCount cc = kind == "super" ? count_constituents_super(g, lam, po)
                        : kind == "xi"  ? count_constituents_xi(g, lam, po)
                                        : count_by_degree(g, lam);
  Json out = count_to_json(cc, r.ut_n);
  if (cache) {
    cache->store("count", key, out);
    cache->erase("checkpoint", key);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character computations for algebra groups 1 + n over finite fields"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub, bool needs_lambda) {
    sub->add_option("--algebra", c.algebra, "ut, a fixture name (q8, ut5, ut6c, u4(2), ...) or an algebra JSON file")
        ->capture_default_str();
    sub->add_option("--n", c.n, "matrix size for --algebra ut")->capture_default_str();
    sub->add_option("--q", c.q, "field order")->capture_default_str();
    if (needs_lambda) sub->add_option("--lambda", c.lambda, "functional, e.g. \"e*(1,3)+2e*(2,3)\" or \"[0,1,0]\"");
    sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
    sub->add_option("--cache-dir", c.cache_dir, "cache root (default: $ALGCHAR_CACHE)");
    sub->add_option("--guard-bytes", c.guard_bytes, "memory budget for orbit partitions")->capture_default_str();
    sub->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    sub->add_flag("--timing", c.timing, "include wall time (breaks byte-identical output)");
  };

  std::string out_path;
  auto* cmd_algebra = app.add_subcommand("algebra", "build, validate and inspect an algebra");
  add_common(cmd_algebra, false);
  cmd_algebra->add_option("--out", out_path, "write the algebra spec JSON here");

  auto* cmd_chain = app.add_subcommand("chain", "stabilizer chains l, s and the sizes attached to lambda");
  add_common(cmd_chain, true);

  std::string orbit_kind = "coadjoint";
  bool enumerate = false;
  auto* cmd_orbit = app.add_subcommand("orbit", "an orbit of lambda in n*");
  add_common(cmd_orbit, true);
  cmd_orbit->add_option("--kind", orbit_kind)->check(CLI::IsMember({"coadjoint", "left", "right", "two_sided"}));
  cmd_orbit->add_flag("--enumerate", enumerate, "list the elements");

  std::string char_kind, poly;
  auto* cmd_char = app.add_subcommand("char", "a character or class function in the theta basis");
  add_common(cmd_char, true);
  cmd_char->add_option("kind", char_kind)->required()->check(CLI::IsMember({"theta", "kirillov", "super", "xi", "poly-kirillov"}));
  cmd_char->add_option("--poly", poly, "a_2,a_3,... for F(X) = 1+X+a_2X^2+..., or exp");

  std::string count_kind;
  auto* cmd_count = app.add_subcommand("count", "constituent counts");
  add_common(cmd_count, true);
  cmd_count->add_option("kind", count_kind)->required()->check(CLI::IsMember({"super", "xi", "by-degree"}));

  std::string oracle_op, of = "super";
  auto* cmd_oracle = app.add_subcommand("oracle", "Irr(G) and decompositions against it");
  add_common(cmd_oracle, true);
  cmd_oracle->add_option("op", oracle_op)->required()->check(CLI::IsMember({"irr", "decompose", "is-character"}));
  cmd_oracle->add_option("--of", of, "theta, kirillov, super, xi, poly-kirillov or regular")->capture_default_str();
  cmd_oracle->add_option("--poly", poly, "coefficients for --of poly-kirillov");

  std::string suite;
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite (or all)");
  add_common(cmd_verify, false);
  cmd_verify->add_option("suite", suite)->required();
  cmd_verify->add_flag("--slow", c.slow, "include the slower members");

  std::string experiment;
  auto* cmd_reproduce = app.add_subcommand("reproduce", "reproduce a worked example");
  add_common(cmd_reproduce, false);
  cmd_reproduce->add_option("id", experiment)->required()->check(CLI::IsMember(experiment_ids()));

  auto* cmd_partition = app.add_subcommand("partition-xi", "the Xi-cells of n*");
  add_common(cmd_partition, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the message
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  // Only the subcommand name and its own arguments describe the request.
  auto input_of = [&](const CLI::App* sub) {
    Json in = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_name() == "--help" || opt->count() == 0) continue;
      const std::string name = opt->get_name();
      if (name == "--threads" || name == "--cache-dir" || name == "--format" || name == "--timing") continue;
      in[name] = opt->as<std::string>();
    }
    return in;
  };

  try {
    if (*cmd_algebra) {
      Resolved r = resolve_algebra(c);
      Json spec = algebra_to_json(r.alg);
      if (!out_path.empty()) std::ofstream(out_path) << spec.dump(2) << "\n";
      Json powers = Json::array();
      for (std::size_t k = 1; k <= r.alg.nilpotency_index(); ++k) powers.push_back(power_ideal(r.alg, k).space().dim());
      Json result{{"algebra", r.description},
                  {"dim", r.alg.dim()},
                  {"field", field_to_json(r.alg.field())},
                  {"nilpotency_index", r.alg.nilpotency_index()},
                  {"power_dims", powers},
                  {"center_dim", center(r.alg).dim()},
                  {"spec", spec}};
      return emit(c, "algebra", input_of(cmd_algebra), result, true, elapsed());
    }
    if (*cmd_chain) {
      Resolved r = resolve_algebra(c);
      Vec lam = resolve_lambda(c, r);
      ChainResult ch = chain(r.alg, lam);
      Json l = Json::array(), s = Json::array();
      for (const auto& v : ch.l_chain) l.push_back(v.basis_vectors());
      for (const auto& v : ch.s_chain) s.push_back(v.basis_vectors());
      Json result{{"algebra", r.description},
                  {"lambda", format_functional(lam, r.ut_n)},
                  {"depth", ch.depth},
                  {"l_chain_bases", l},
                  {"s_chain_bases", s},
                  {"sizes", sizes_to_json(lambda_sizes(r.alg, lam), r.alg.field().q())},
                  {"fully_ramified", is_fully_ramified(r.alg, lam)},
                  {"exp_criterion", exp_criterion(r.alg, lam)}};
      return emit(c, "chain", input_of(cmd_chain), result, true, elapsed());
    }
    if (*cmd_orbit) {
      Resolved r = resolve_algebra(c);
      Vec lam = resolve_lambda(c, r);
      Group g(r.alg);
      const OrbitKind kind = orbit_kind == "left"       ? OrbitKind::left
                             : orbit_kind == "right"    ? OrbitKind::right
                             : orbit_kind == "two_sided" ? OrbitKind::two_sided
                                                         : OrbitKind::coadjoint;
      OrbitReport o = orbit(g, lam, kind, enumerate);
      Json result{{"algebra", r.description},
                  {"lambda", format_functional(lam, r.ut_n)},
                  {"kind", orbit_kind_name(kind)},
                  {"size", o.size},
                  {"log_q_size", o.exponent},
                  {"representative", format_functional(o.representative, r.ut_n)}};
      if (enumerate) {
        Json els = Json::array();
        for (const auto& v : o.elements) els.push_back(format_functional(v, r.ut_n));
        result["elements"] = els;
      }
      return emit(c, "orbit", input_of(cmd_orbit), result, true, elapsed());
    }
    if (*cmd_char) {
      Resolved r = resolve_algebra(c);
      Vec lam = resolve_lambda(c, r);
      Group g(r.alg);
      ClassFunction f = named_character(char_kind, g, lam, poly);
      Json result = degree_json(f);
      result["algebra"] = r.description;
      result["lambda"] = format_functional(lam, r.ut_n);
      result["kind"] = char_kind;
      result["class_function"] = class_function_to_json(f);
      return emit(c, "char " + char_kind, input_of(cmd_char), result, true, elapsed());
    }
    if (*cmd_count) {
      Resolved r = resolve_algebra(c);
      Vec lam = resolve_lambda(c, r);
      Json result = count_cached(c, r, lam, count_kind);
      result["algebra"] = r.description;
      return emit(c, "count " + count_kind, input_of(cmd_count), result, true, elapsed());
    }
    if (*cmd_oracle) {
      Resolved r = resolve_algebra(c);
      Group g(r.alg);
      IrrSet irr = all_irreducibles(g);
      if (oracle_op == "irr") {
        Json result = irrset_to_json(irr);
        result["algebra_description"] = r.description;
        mpz_class squares = 0;
        for (const auto& x : irr.chars) squares += mpz_class(static_cast<unsigned long>(x.degree)) * x.degree;
        const bool ok = squares == mpz_class(static_cast<unsigned long>(g.order())) && irr.size() == irr.class_count;
        return emit(c, "oracle irr", input_of(cmd_oracle), result, ok, elapsed());
      }
      Vec lam = of == "regular" ? Vec(r.alg.dim(), 0) : resolve_lambda(c, r);
      ClassFunction f = named_character(of, g, lam, poly);
      Decomposition dec = decompose(f, irr);
      Json mult = Json::array();
      for (std::size_t i = 0; i < irr.size(); ++i)
        if (!dec.multiplicities[i].is_zero())
          mult.push_back(Json{{"index", i}, {"degree", irr.chars[i].degree}, {"multiplicity", dec.multiplicities[i].to_string()}});
      Json result{{"algebra", r.description},
                  {"of", of},
                  {"in_span", dec.in_span},
                  {"constituents", mult},
                  {"is_character", is_character(f, irr)},
                  {"is_irreducible", is_irreducible(f, irr)}};
      if (of != "regular") result["lambda"] = format_functional(lam, r.ut_n);
      return emit(c, "oracle " + oracle_op, input_of(cmd_oracle), result, true, elapsed());
    }
    if (*cmd_verify) {
      SuiteOptions so;
      so.threads = c.threads;
      so.slow = c.slow;
      so.cache = resolve_cache(c);
      so.partition = partition_options(c);
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      Json result = Json::object();
      bool ok = true;
      for (const auto& name : names) {
        SuiteResult sr = run_suite(name, so);
        ok = ok && sr.ok;
        result[name] = Json{{"ok", sr.ok}, {"checks", sr.checks}, {"failures", sr.failures}, {"details", sr.details}};
      }
      return emit(c, "verify " + suite, input_of(cmd_verify), result, ok, elapsed());
    }
    if (*cmd_reproduce) {
      SuiteOptions so;
      so.threads = c.threads;
      so.cache = resolve_cache(c);
      so.partition = partition_options(c);
      ExperimentParams params;
      if (cmd_reproduce->get_option("--n")->count()) params.n = c.n;
      if (cmd_reproduce->get_option("--q")->count()) params.q = c.q;
      ExperimentResult e = run_experiment(experiment, params, so);
      Json result{{"id", e.id}, {"failures", e.failures}, {"report", e.report}};
      return emit(c, "reproduce " + experiment, input_of(cmd_reproduce), result, e.ok, elapsed());
    }
    if (*cmd_partition) {
      Resolved r = resolve_algebra(c);
      Group g(r.alg);
      std::vector<XiCell> cells = xi_partition(g);
      Json list = Json::array();
      std::uint64_t covered = 0;
      for (const auto& cell : cells) {
        covered += cell.set.keys.size();
        list.push_back(Json{{"representative", format_functional(cell.representative, r.ut_n)},
                            {"size", cell.set.keys.size()},
                            {"s_bar_dim", cell.set.s_bar.dim()},
                            {"l_bar_dim", cell.set.l_bar.dim()}});
      }
      const bool ok = covered == g.order();
      Json result{{"algebra", r.description}, {"cells", list}, {"cell_count", cells.size()}, {"covered", covered}};
      return emit(c, "partition-xi", input_of(cmd_partition), result, ok, elapsed());
    }
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "resource limit: " << e.what();
    if (e.partial_lower_bound()) std::cerr << " (found at least " << e.partial_lower_bound() << " before stopping)";
    std::cerr << "\n";
    return kResource;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
