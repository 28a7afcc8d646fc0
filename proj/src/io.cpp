#include "algchar/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "algchar/errors.hpp"

namespace algchar {

namespace {

const char* kSchemaHint = " (see schemas/algebra.schema.json)";

[[noreturn]] void invalid(const std::string& pointer, const std::string& what) {
  throw ValidationError("algebra spec " + pointer + ": " + what + kSchemaHint);
}

unsigned get_unsigned(const Json& j, const std::string& pointer) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    invalid(pointer, "expected a nonnegative integer");
  return j.get<unsigned>();
}

const Json& member(const Json& obj, const char* key, const std::string& pointer) {
  if (!obj.is_object()) invalid(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(pointer + "/" + key, "missing");
  return *it;
}

Vec read_vector(const Json& j, std::size_t len, unsigned q, const std::string& pointer) {
  if (!j.is_array() || j.size() != len) invalid(pointer, "expected an array of length " + std::to_string(len));
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) {
    unsigned x = get_unsigned(j[i], pointer + "/" + std::to_string(i));
    if (x >= q) invalid(pointer + "/" + std::to_string(i), "field element out of range");
    v[i] = static_cast<Elem>(x);
  }
  return v;
}

}  // namespace

Json field_to_json(const Field& f) {
  return Json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.spec().modulus}};
}

Field field_from_json(const Json& j) {
  unsigned p = get_unsigned(member(j, "p", "/field"), "/field/p");
  if (!is_prime(p)) invalid("/field/p", "not a prime");
  unsigned e = 1;
  if (j.contains("e")) e = get_unsigned(j["e"], "/field/e");
  try {
    if (j.contains("modulus")) {
      const Json& m = j["modulus"];
      if (!m.is_array()) invalid("/field/modulus", "expected an array");
      std::vector<unsigned> mod;
      for (std::size_t i = 0; i < m.size(); ++i) mod.push_back(get_unsigned(m[i], "/field/modulus/" + std::to_string(i)));
      if (mod.size() != e + 1) invalid("/field/modulus", "length must be e+1");
      return Field::with_modulus(p, mod);
    }
    unsigned q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    return Field::of_order(q);
  } catch (const DomainError& err) {
    invalid("/field", err.what());
  }
}

Json algebra_to_json(const Algebra& alg) {
  Json constants = Json::array();
  for (const auto& sc : alg.constants()) constants.push_back(Json::array({sc.i, sc.j, sc.product}));
  return Json{{"schema", kAlgebraSchema},
              {"field", field_to_json(alg.field())},
              {"dim", alg.dim()},
              {"names", alg.names()},
              {"constants", constants}};
}

Algebra algebra_from_json(const Json& j) {
  if (!j.is_object()) invalid("", "expected an object");
  if (j.contains("schema") && j["schema"] != kAlgebraSchema)
    invalid("/schema", "unsupported schema " + j["schema"].dump());
  Field f = field_from_json(member(j, "field", ""));
  const std::size_t d = get_unsigned(member(j, "dim", ""), "/dim");
  std::vector<std::string> names;
  if (j.contains("names")) {
    const Json& n = j["names"];
    if (!n.is_array() || n.size() != d) invalid("/names", "expected " + std::to_string(d) + " strings");
    for (std::size_t i = 0; i < d; ++i) {
      if (!n[i].is_string()) invalid("/names/" + std::to_string(i), "expected a string");
      names.push_back(n[i].get<std::string>());
    }
  }
  const Json& cs = member(j, "constants", "");
  if (!cs.is_array()) invalid("/constants", "expected an array");
  std::vector<StructureConstant> constants;
  for (std::size_t t = 0; t < cs.size(); ++t) {
    const std::string ptr = "/constants/" + std::to_string(t);
    const Json& c = cs[t];
    if (!c.is_array() || c.size() != 3) invalid(ptr, "expected [i, j, product]");
    StructureConstant sc;
    sc.i = get_unsigned(c[0], ptr + "/0");
    sc.j = get_unsigned(c[1], ptr + "/1");
    if (sc.i >= d || sc.j >= d) invalid(ptr, "basis index out of range");
    sc.product = read_vector(c[2], d, f.q(), ptr + "/2");
    constants.push_back(std::move(sc));
  }
  return Algebra::from_constants(f, std::move(names), constants);
}

Algebra load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra spec " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("algebra spec " + path.string() + " is not valid JSON: " + e.what());
  }
  return algebra_from_json(j);
}

Json cyclo_to_json(const Cyclo& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs()) coeffs.push_back(x.get_str());
  return Json::array({c.p(), coeffs});
}

Cyclo cyclo_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_array())
    throw ValidationError("cyclotomic number must be [p, [coefficients]]");
  const unsigned p = j[0].get<unsigned>();
  if (!is_prime(p) || j[1].size() != p - 1) throw ValidationError("cyclotomic number has a bad conductor or length");
  std::vector<mpq_class> c(p);
  for (unsigned i = 0; i + 1 < p; ++i) {
    try {
      c[i] = mpq_class(j[1][i].get<std::string>());
    } catch (const std::exception&) {
      throw ValidationError("cyclotomic coefficient " + j[1][i].dump() + " is not a rational number");
    }
    c[i].canonicalize();
  }
  return Cyclo::from_power_basis(p, std::move(c));
}

Json class_function_to_json(const ClassFunction& f) {
  Json terms = Json::array();
  for (const auto& [k, c] : f.terms()) terms.push_back(Json{{"lambda", f.functional(k)}, {"c", cyclo_to_json(c)}});
  return Json{{"algebra", algebra_fingerprint(f.algebra())}, {"basis", "theta"}, {"terms", terms}};
}

ClassFunction class_function_from_json(const Algebra& alg, const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ValidationError("class function must be an object with a terms array");
  if (j.contains("algebra") && j["algebra"] != algebra_fingerprint(alg))
    throw ValidationError("class function belongs to a different algebra");
  ClassFunction f(alg);
  for (std::size_t t = 0; t < j["terms"].size(); ++t) {
    const Json& term = j["terms"][t];
    Vec v = read_vector(term.at("lambda"), alg.dim(), alg.field().q(), "/terms/" + std::to_string(t) + "/lambda");
    f.add(v, cyclo_from_json(term.at("c")));
  }
  return f;
}

Json irrset_to_json(const IrrSet& irr) {
  Json chars = Json::array();
  for (const auto& c : irr.chars) {
    Json basis = Json::array();
    for (const auto& b : c.inducing_subalgebra.basis_vectors()) basis.push_back(b);
    chars.push_back(Json{{"degree", c.degree},
                         {"induced_from", c.induced ? Json{{"subalgebra_basis", basis}, {"functional", c.inducing_functional}} : Json(nullptr)},
                         {"character", class_function_to_json(c.chi)}});
  }
  Json hist = Json::object();
  for (const auto& [d, n] : irr.degree_histogram()) hist[std::to_string(d)] = n;
  return Json{{"algebra", algebra_fingerprint(irr.algebra)},
              {"count", irr.size()},
              {"class_count", irr.class_count},
              {"degrees", hist},
              {"characters", chars}};
}

std::string fingerprint(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string algebra_fingerprint(const Algebra& alg) {
  Json j = algebra_to_json(alg);
  j.erase("names");  // names do not change the algebra
  return fingerprint(j);
}

std::string power_string(unsigned q, std::size_t e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), q, e);
  return v.get_str();
}

Json sizes_to_json(const LambdaSizes& z, unsigned q) {
  auto sz = [&](std::size_t e) { return Json{{"log_q", e}, {"value", power_string(q, e)}}; };
  return Json{{"dims", {{"n", z.dim},
                        {"l", z.dim_l},
                        {"s", z.dim_s},
                        {"l_bar", z.dim_l_bar},
                        {"s_bar", z.dim_s_bar},
                        {"l_chain", z.l_chain_dims},
                        {"s_chain", z.s_chain_dims},
                        {"chain_depth", z.chain_depth}}},
              {"coadjoint_orbit", sz(z.coadjoint)},
              {"left_orbit", sz(z.left)},
              {"right_orbit", sz(z.right)},
              {"two_sided_orbit", sz(z.two_sided)},
              {"left_right_intersection", sz(z.intersection)},
              {"psi_degree_squared", sz(z.coadjoint)},
              {"chi_degree", sz(z.chi_degree)},
              {"xi_degree", sz(z.xi_degree)},
              {"xi_set", sz(z.xi_set)}};
}

Json count_to_json(const ConstituentCount& c, std::size_t ut_n) {
  Json witness = Json::object();
  for (const auto& [s, n] : c.witness) witness[std::to_string(s)] = n;
  Json j{{"lambda", format_functional(c.lambda, ut_n)},
         {"total", c.total},
         {"method", c.method},
         {"orbit_sizes", witness},
         {"set_size", c.set_size}};
  if (c.by_degree) {
    Json h = Json::object();
    for (const auto& [d, n] : *c.by_degree) h[std::to_string(d)] = n;
    j["by_degree"] = h;
  }
  return j;
}

Json checkpoint_to_json(const PartitionCheckpoint& c) {
  return Json{{"next_index", c.next_index},
              {"visited", c.visited},
              {"representatives", c.representatives},
              {"sizes", c.sizes}};
}

PartitionCheckpoint checkpoint_from_json(const Json& j) {
  PartitionCheckpoint c;
  try {
    c.next_index = j.at("next_index").get<std::uint64_t>();
    c.visited = j.at("visited").get<std::vector<std::uint64_t>>();
    c.representatives = j.at("representatives").get<std::vector<std::uint64_t>>();
    c.sizes = j.at("sizes").get<std::vector<std::uint64_t>>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed partition checkpoint: ") + e.what());
  }
  return c;
}

std::optional<std::filesystem::path> Cache::root_from_environment() {
  const char* v = std::getenv("ALGCHAR_CACHE");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::filesystem::path Cache::path_of(const std::string& kind, const std::string& key) const {
  return root_ / kind / (key + ".json");
}

std::optional<Json> Cache::load(const std::string& kind, const std::string& key) const {
  std::ifstream in(path_of(kind, key));
  if (!in) return std::nullopt;
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error&) {
    return std::nullopt;  // a damaged entry is treated as a miss
  }
}

void Cache::store(const std::string& kind, const std::string& key, const Json& value) const {
  const auto target = path_of(kind, key);
  std::filesystem::create_directories(target.parent_path());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    out << value.dump() << '\n';
  }
  std::filesystem::rename(tmp, target);
}

void Cache::erase(const std::string& kind, const std::string& key) const {
  std::error_code ec;
  std::filesystem::remove(path_of(kind, key), ec);
}

}  // namespace algchar
