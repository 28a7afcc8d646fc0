#include "algchar/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <regex>
#include <set>
#include <thread>

#include "algchar/errors.hpp"

namespace algchar {

// ---------------------------------------------------------------- fixtures

Algebra q8_algebra() {
  Field f = Field::prime(2);
  const Vec c{0, 0, 1};
  return Algebra::from_constants(f, {"A", "B", "C"}, {{0, 0, c}, {0, 1, c}, {1, 1, c}});
}

Ut5Example ut5_example(unsigned q) {
  Field f = Field::of_order(q);
  if (f.p() == 2) throw DomainError("the u_5 example needs odd characteristic");
  Algebra u = make_ut(5, f);
  const std::size_t d = u.dim();
  auto eq = [&](std::vector<std::pair<std::pair<int, int>, Elem>> terms) {
    Vec row(d, 0);
    for (auto [pos, c] : terms) row[ut_index(5, pos.first, pos.second)] = c;
    return row;
  };
  const Elem minus_one = f.neg(1);
  Vec a_eq = eq({{{1, 2}, 1}, {{4, 5}, minus_one}});
  Vec b_eq = eq({{{2, 3}, 1}, {{3, 4}, 1}});
  Subalgebra n = subalgebra_from_equations(u, Matrix::from_rows({a_eq, b_eq}, d));
  Subalgebra h = subalgebra_from_equations(u, Matrix::from_rows({a_eq, eq({{{2, 3}, 1}}), eq({{{3, 4}, 1}})}, d));
  Vec lam(d, 0);
  lam[ut_index(5, 1, 3)] = 1;
  lam[ut_index(5, 2, 4)] = 1;
  lam[ut_index(5, 3, 5)] = 1;
  return Ut5Example{n.algebra(), relative_subspace(n.space(), h.space()), restrict_functional(n.space(), lam)};
}

Algebra ut6_constrained() {
  Field f = Field::prime(2);
  Algebra u = make_ut(6, f);
  Vec row(u.dim(), 0);
  row[ut_index(6, 1, 2)] = 1;
  row[ut_index(6, 5, 6)] = 1;
  return subalgebra_from_equations(u, Matrix::from_rows({row}, u.dim())).algebra();
}

Algebra algebra_by_name(const std::string& name) {
  static const std::regex ut(R"(u(\d+)\((\d+)\))"), ut5(R"(ut5\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, ut)) return make_ut(std::stoul(m[1]), Field::of_order(std::stoul(m[2])));
  if (std::regex_match(name, m, ut5)) return ut5_example(std::stoul(m[1])).n;
  if (name == "q8") return q8_algebra();
  if (name == "ut6c") return ut6_constrained();
  throw ValidationError("unknown algebra name " + name + " (expected u<n>(<q>), q8, ut5(<q>) or ut6c)");
}

// ---------------------------------------------------------------- helpers

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::optional<mpq_class> rational_ratio(const ClassFunction& a, const ClassFunction& b) {
  if (b.is_zero()) return std::nullopt;
  auto num = inner(a, b).to_rational();
  auto den = inner(b, b).to_rational();
  if (!num || !den) return std::nullopt;
  mpq_class c = *num / *den;
  if (!(b.scaled(c) == a)) return std::nullopt;
  return c;
}

namespace {

std::string ratio_text(const mpq_class& c) { return c.get_str(); }

// Collects pass/fail results from worker threads.
class Log {
 public:
  void check(bool ok, const std::string& what) {
    std::lock_guard<std::mutex> lock(m_);
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  template <class F>
  void check_lazy(bool ok, F&& describe) {
    if (ok) {
      std::lock_guard<std::mutex> lock(m_);
      ++checks_;
    } else {
      check(false, describe());
    }
  }
  void fill(SuiteResult& r) {
    std::lock_guard<std::mutex> lock(m_);
    std::sort(failures_.begin(), failures_.end());
    r.checks += checks_;
    r.ok = r.ok && failures_.empty();
    const std::size_t keep = std::min<std::size_t>(failures_.size(), 20);
    r.failures.insert(r.failures.end(), failures_.begin(), failures_.begin() + keep);
    if (failures_.size() > keep) r.failures.push_back("... " + std::to_string(failures_.size() - keep) + " more");
  }

 private:
  std::mutex m_;
  std::uint64_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::uint64_t dual_size(const Algebra& alg) { return checked_pow(alg.field().q(), alg.dim()); }
Vec functional_at(const Algebra& alg, std::uint64_t key) { return unpack_key(key, alg.dim(), alg.field().q()); }

std::string at(const std::string& alg, const Vec& lam) { return alg + " lambda=" + vec_to_string(lam); }

Cyclo rat(const Algebra& alg, const mpq_class& v) { return Cyclo::rational(alg.field().p(), v); }

std::uint64_t intersection_by_enumeration(const Algebra& alg, const Vec& lam) {
  AffineSet left = left_orbit_affine(alg, lam), right = right_orbit_affine(alg, lam);
  std::uint64_t n = 0;
  left.for_each([&](const Vec& v) { n += right.contains(v); });
  return n;
}

std::vector<NamedAlgebra> named(const std::vector<std::string>& names) {
  std::vector<NamedAlgebra> out;
  for (const auto& n : names) out.push_back({n, algebra_by_name(n)});
  return out;
}

// Functionals to visit: all of n* when small, otherwise one per coadjoint orbit.
std::vector<Vec> functionals_to_visit(const Group& g, std::uint64_t exhaustive_limit = 4096) {
  const Algebra& alg = g.algebra();
  std::vector<Vec> out;
  if (dual_size(alg) <= exhaustive_limit) {
    for (std::uint64_t k = 0; k < dual_size(alg); ++k) out.push_back(functional_at(alg, k));
  } else {
    const OrbitPartition* part = g.dual_orbits();
    if (!part) throw CapacityError("n* too large to visit");
    for (std::size_t k = 0; k < part->count(); ++k) out.push_back(part->representative(k));
  }
  return out;
}

// ---------------------------------------------------------------- suites

void suite_orthonormality(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  for (const auto& [name, alg] : named({"u3(2)", "u4(2)", "u3(3)"})) {
    Group g(alg);
    const std::uint64_t n = dual_size(alg);
    const OrbitPartition* coadj = g.dual_orbits();
    OrbitPartition two = two_sided_partition(g);
    std::vector<ClassFunction> psi(n), chi(n);
    std::vector<std::uint64_t> inter(n);
    parallel_for(n, o.threads, [&](std::size_t k) {
      Vec lam = functional_at(alg, k);
      psi[k] = kirillov(g, lam);
      chi[k] = supercharacter(g, lam);
      inter[k] = intersection_by_enumeration(alg, lam);
    });
    const Cyclo zero(alg.field().p()), one = rat(alg, 1);
    parallel_for(n, o.threads, [&](std::size_t a) {
      Vec la = functional_at(alg, a);
      for (std::uint64_t b = 0; b < n; ++b) {
        Vec lb = functional_at(alg, b);
        bool same_orbit = coadj->orbit_id(la) == coadj->orbit_id(lb);
        Cyclo ip = inner(psi[a], psi[b]);
        log.check_lazy(ip == (same_orbit ? one : zero), [&] {
          return name + " <psi,psi> " + vec_to_string(la) + " " + vec_to_string(lb) + " = " + ip.to_string();
        });
        bool same_two = two.orbit_id(la) == two.orbit_id(lb);
        Cyclo ic = inner(chi[a], chi[b]);
        log.check_lazy(ic == (same_two ? rat(alg, mpq_class(static_cast<unsigned long>(inter[a]))) : zero), [&] {
          return name + " <chi,chi> " + vec_to_string(la) + " " + vec_to_string(lb) + " = " + ic.to_string();
        });
      }
    });
    r.details[name] = {{"functionals", n}, {"coadjoint_orbits", coadj->count()}, {"two_sided_orbits", two.count()}};
  }
  log.fill(r);
}

void suite_regular(SuiteResult& r, const SuiteOptions&) {
  Log log;
  for (const auto& [name, alg] : named({"u3(2)", "u4(2)", "u3(3)"})) {
    Group g(alg);
    ClassFunction rho = regular_character(alg);
    const Cyclo one = rat(alg, 1);
    for (std::uint64_t k = 0; k < dual_size(alg); ++k)
      log.check(inner(rho, theta_fun(alg, functional_at(alg, k))) == one, name + " <rho, theta> != 1");
    ClassFunction by_psi(alg), by_chi(alg);
    const OrbitPartition* coadj = g.dual_orbits();
    for (std::size_t k = 0; k < coadj->count(); ++k) {
      ClassFunction psi = kirillov(g, coadj->representative(k));
      by_psi += psi.scaled(psi.degree());
    }
    OrbitPartition two = two_sided_partition(g);
    for (std::size_t k = 0; k < two.count(); ++k) {
      Vec lam = two.representative(k);
      const std::uint64_t left = left_orbit_affine(alg, lam).size();
      by_chi += supercharacter(g, lam).scaled(mpq_class(static_cast<unsigned long>(two.sizes[k]),
                                                         static_cast<unsigned long>(left)));
    }
    log.check(by_psi == rho, name + " sum psi(1) psi != rho");
    log.check(by_chi == rho, name + " sum |GlG|/|Gl| chi != rho");
  }
  log.fill(r);
}

void suite_stabilizers(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  std::vector<std::string> names{"u4(2)", "u4(4)"};
  for (const auto& [name, alg] : named(names)) {
    Group g(alg);
    const Field& f = alg.field();
    const std::uint64_t n = dual_size(alg);
    std::vector<Vec> elems(n);
    std::vector<Matrix> left(n);
    for (std::uint64_t k = 0; k < n; ++k) {
      elems[k] = functional_at(alg, k);  // same indexing for n and n*
      left[k] = g.action_matrix(elems[k], Action::left);
    }
    parallel_for(n, o.threads, [&](std::size_t k) {
      const Vec lam = functional_at(alg, k);
      const Subspace l = left_stabilizer_algebra(alg, lam), s = s_algebra(alg, lam);
      const AffineSet right = right_orbit_affine(alg, lam);
      bool l_ok = true, s_ok = true;
      for (std::uint64_t j = 0; j < n; ++j) {
        Vec moved = vec_mat(f, lam, left[j]);
        l_ok &= (moved == lam) == l.contains(elems[j]);
        s_ok &= right.contains(moved) == s.contains(elems[j]);
      }
      log.check(l_ok, at(name, lam) + ": L differs from {g : g lambda = lambda}");
      log.check(s_ok, at(name, lam) + ": S differs from {g : g lambda in lambda G}");
      const std::uint64_t ratio = checked_pow(f.q(), s.dim() - l.dim());
      const std::uint64_t inter = intersection_by_enumeration(alg, lam);
      log.check(ratio == inter, at(name, lam) + ": |S|/|L| != |G lambda cap lambda G|");
      ClassFunction chi = supercharacter(g, lam);
      log.check(inner(chi, chi) == rat(alg, mpq_class(static_cast<unsigned long>(inter))),
                at(name, lam) + ": <chi,chi> != |G lambda cap lambda G|");
    });
    r.details[name] = {{"functionals", n}};
  }
  log.fill(r);
}

void suite_xi_structure(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  for (const auto& [name, alg] : named({"u3(2)", "u4(2)", "u3(3)"})) {
    Group g(alg);
    const std::uint64_t n = dual_size(alg);
    parallel_for(n, o.threads, [&](std::size_t k) {
      const Vec lam = functional_at(alg, k);
      XiSet xs = xi_set(g, lam);
      ChainResult c = chain(alg, lam);
      log.check(xs.keys.size() == xi_set_size(alg, c), at(name, lam) + ": |Xi| differs from |G|^2/(|Lbar||Sbar|)");
      Subalgebra lbar(alg, c.l_bar());
      ClassFunction theta = theta_fun(lbar.algebra(), restrict_functional(c.l_bar(), lam));
      log.check(xi_character(g, xs) == induce_pointwise(theta, lbar, g),
                at(name, lam) + ": xi formula differs from pointwise induction");
    });
    std::vector<XiCell> cells = xi_partition(g);
    std::uint64_t covered = 0;
    ClassFunction rho(alg);
    for (const auto& cell : cells) {
      covered += cell.set.keys.size();
      ClassFunction xi = xi_character(g, cell.set);
      for (auto key : cell.set.keys)
        log.check(xi_character(g, functional_at(alg, key)) == xi, at(name, functional_at(alg, key)) + ": xi not constant on its cell");
      rho += xi.scaled(mpq_class(static_cast<unsigned long>(n / checked_pow(alg.field().q(), cell.set.s_bar.dim()))));
    }
    log.check(covered == n, name + ": Xi cells do not cover n*");
    log.check(rho == regular_character(alg), name + ": sum |G|/|Sbar| xi != rho");
    r.details[name] = {{"cells", cells.size()}};
  }
  log.fill(r);
}

void check_irrset(Log& log, const std::string& name, const Group& g, const IrrSet& irr) {
  const Algebra& alg = g.algebra();
  const unsigned q = alg.field().q();
  const Cyclo zero(alg.field().p()), one = rat(alg, 1);
  mpz_class squares = 0;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    const auto& a = irr.chars[i];
    std::uint64_t d = a.degree;
    while (d % q == 0) d /= q;
    log.check(d == 1, name + ": degree " + std::to_string(a.degree) + " is not a power of q");
    log.check(a.chi.degree() == rat(alg, mpq_class(static_cast<unsigned long>(a.degree))), name + ": stored degree mismatch");
    squares += mpz_class(static_cast<unsigned long>(a.degree)) * a.degree;
    for (std::size_t j = i; j < irr.size(); ++j)
      log.check(inner(a.chi, irr.chars[j].chi) == (i == j ? one : zero), name + ": Irr not orthonormal");
    log.check(is_class_function(a.chi, g), name + ": member is not a class function");
  }
  log.check(squares == mpz_class(static_cast<unsigned long>(g.order())), name + ": sum chi(1)^2 != |G|");
  log.check(irr.size() == conjugacy_classes(g).count(), name + ": |Irr| != class count");
  Decomposition reg = decompose(regular_character(alg), irr);
  bool reg_ok = reg.in_span;
  for (std::size_t i = 0; i < irr.size(); ++i)
    reg_ok &= reg.multiplicities[i] == rat(alg, mpq_class(static_cast<unsigned long>(irr.chars[i].degree)));
  log.check(reg_ok, name + ": rho does not decompose with multiplicities chi(1)");
}

void suite_oracle(SuiteResult& r, const SuiteOptions&) {
  Log log;
  std::vector<std::string> names{"u3(2)", "q8", "u4(2)", "u3(3)", "u4(3)", "ut5(3)"};
  for (const auto& [name, alg] : named(names)) {
    Group g(alg);
    IrrSet irr = all_irreducibles(g);
    check_irrset(log, name, g, irr);
    std::vector<std::uint64_t> degrees;
    for (const auto& c : irr.chars) degrees.push_back(c.degree);
    if (name == "u3(2)" || name == "q8")
      log.check(degrees == std::vector<std::uint64_t>{1, 1, 1, 1, 2}, name + ": degrees are not {1,1,1,1,2}");
    // distinct Kirillov functions = class count, distinct supercharacters = superclass count
    std::set<std::string> psis, chis;
    for (const auto& lam : functionals_to_visit(g, 1u << 14)) {
      psis.insert(class_function_to_json(kirillov(g, lam)).dump());
    }
    if (dual_size(alg) <= (1u << 14))
      for (std::uint64_t k = 0; k < dual_size(alg); ++k) chis.insert(class_function_to_json(supercharacter(g, functional_at(alg, k))).dump());
    log.check(psis.size() == irr.class_count, name + ": distinct psi != class count");
    if (!chis.empty()) log.check(chis.size() == superclasses(g).count(), name + ": distinct chi != superclass count");
    Json hist = Json::object();
    for (const auto& [d, c] : irr.degree_histogram()) hist[std::to_string(d)] = c;
    r.details[name] = {{"irreducibles", irr.size()}, {"degrees", hist}, {"subalgebras_scanned", irr.subalgebras_scanned}};
  }
  log.fill(r);
}

void suite_counts(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  std::vector<std::string> names{"u4(2)", "u3(3)", "q8"};
  if (o.slow) names.push_back("u4(3)");
  for (const auto& [name, alg] : named(names)) {
    Group g(alg);
    IrrSet irr = all_irreducibles(g);
    const std::uint64_t n = dual_size(alg);
    parallel_for(n, o.threads, [&](std::size_t k) {
      const Vec lam = functional_at(alg, k);
      std::vector<std::size_t> cs = decompose(supercharacter(g, lam), irr).constituents();
      ConstituentCount c1 = count_constituents_super(g, lam);
      log.check(c1.total == cs.size(), at(name, lam) + ": super count " + std::to_string(c1.total) + " vs oracle " +
                                           std::to_string(cs.size()));
      ConstituentCount cx = count_constituents_xi(g, lam);
      std::size_t xs = decompose(xi_character(g, lam), irr).constituents().size();
      log.check(cx.total == xs, at(name, lam) + ": xi count differs from oracle");
      std::map<std::uint64_t, std::uint64_t> expected;
      for (auto i : cs) ++expected[irr.chars[i].degree];
      ConstituentCount cd = count_by_degree(g, lam);
      std::map<std::uint64_t, std::uint64_t> got;
      for (const auto& [d, m] : *cd.by_degree)
        if (m) got[d] = m;
      log.check(got == expected, at(name, lam) + ": degree histogram differs from oracle");
      log.check(cd.total == c1.total, at(name, lam) + ": by-degree total differs from orbit count");
    });
  }
  log.fill(r);
}

struct IrrMemo {
  std::mutex m;
  std::map<std::string, std::shared_ptr<const IrrSet>> by_fp;
  std::shared_ptr<const IrrSet> get(const Algebra& alg) {
    const std::string fp = algebra_fingerprint(alg);
    {
      std::lock_guard<std::mutex> lock(m);
      auto it = by_fp.find(fp);
      if (it != by_fp.end()) return it->second;
    }
    auto irr = std::make_shared<const IrrSet>(all_irreducibles(Group(alg)));
    return put(irr);
  }
  std::shared_ptr<const IrrSet> put(std::shared_ptr<const IrrSet> irr) {
    const std::string fp = algebra_fingerprint(irr->algebra);
    std::lock_guard<std::mutex> lock(m);
    return by_fp.emplace(fp, std::move(irr)).first->second;
  }
};

void suite_xi_bijection(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  for (const auto& [name, alg] : named({"u3(2)", "u4(2)", "u3(3)", "q8", "ut5(3)"})) {
    Group g(alg);
    IrrMemo memo;
    const IrrSet& irr = *memo.put(std::make_shared<const IrrSet>(all_irreducibles(g)));
    std::vector<Vec> lams = functionals_to_visit(g);
    IrrProvider provider = [&memo](const Group& h) { return memo.get(h.algebra()); };
    parallel_for(lams.size(), o.threads, [&](std::size_t k) {
      XiBijection b = xi_bijection_check(g, lams[k], irr, provider);
      log.check_lazy(b.ok(), [&] {
        return at(name, lams[k]) + ": induction from Sbar is not a bijection onto Irr(G, xi) (" +
               std::to_string(b.sbar_constituents) + " vs " + std::to_string(b.g_constituents) + ")";
      });
    });
    r.details[name] = {{"functionals_checked", lams.size()}};
  }
  log.fill(r);
}

void suite_span(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  for (const auto& [name, alg] : named({"u4(2)", "u3(3)"})) {
    Group g(alg);
    IrrSet irr = all_irreducibles(g);
    std::vector<std::pair<std::string, PolyBijection>> maps{
        {"identity", identity_map(alg)},
        {"1+X+X^2", poly_bijection(alg.field(), {1}, alg.nilpotency_index())},
        {"Exp", exp_map(alg)}};
    std::uint64_t linear = 0;
    std::mutex lm;
    parallel_for(dual_size(alg), o.threads, [&](std::size_t k) {
      const Vec lam = functional_at(alg, k);
      for (const auto& [fname, F] : maps) {
        SpanCheck sc = xi_span_check(g, lam, F, irr);
        log.check(sc.residual.is_zero(), at(name, lam) + " F=" + fname + ": residual " + sc.residual.to_string());
        log.check(sc.linear_vanishing, at(name, lam) + " F=" + fname + ": a linear character orthogonal to chi meets psi^F");
        std::lock_guard<std::mutex> lock(lm);
        linear += sc.linear_checked;
      }
    });
    r.details[name] = {{"linear_character_checks", linear}};
  }
  log.fill(r);
}

bool exp_kirillov_equals_irr(const Group& g, const IrrSet& irr, unsigned threads) {
  const Algebra& alg = g.algebra();
  PolyBijection F = exp_map(alg);
  std::vector<Vec> lams = functionals_to_visit(g, 1u << 12);
  std::vector<std::string> found(lams.size());
  parallel_for(lams.size(), threads, [&](std::size_t k) { found[k] = class_function_to_json(twist(kirillov(g, lams[k]), F)).dump(); });
  std::set<std::string> a(found.begin(), found.end()), b;
  for (const auto& c : irr.chars) b.insert(class_function_to_json(c.chi).dump());
  return a == b;
}

void suite_exp_irreducibles(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  std::vector<std::string> names{"u3(3)"};
  if (o.slow) names.push_back("u4(3)");
  for (const auto& [name, alg] : named(names)) {
    Group g(alg);
    IrrSet irr = all_irreducibles(g);
    log.check(exp_kirillov_equals_irr(g, irr, o.threads), name + ": {psi^Exp} != Irr(G)");
    std::size_t crit = 0;
    for (std::uint64_t k = 0; k < dual_size(alg); ++k) crit += exp_criterion(alg, functional_at(alg, k));
    log.check(crit == dual_size(alg), name + ": exp criterion fails for some lambda although n^p = 0");
    r.details[name] = {{"irreducibles", irr.size()}};
  }
  log.fill(r);
}

void suite_examples(SuiteResult& r, const SuiteOptions& o) {
  for (const char* id : {"q8", "ut5-odd"}) {
    ExperimentResult e = run_experiment(id, {}, o);
    ++r.checks;
    r.ok = r.ok && e.ok;
    for (const auto& f : e.failures) r.failures.push_back(std::string(id) + ": " + f);
    r.details[id] = e.report;
  }
}

void suite_ut13(SuiteResult& r, const SuiteOptions& o) {
  ExperimentResult e = run_experiment("ut13-98", {}, o);
  ++r.checks;
  r.ok = e.ok;
  r.failures = e.failures;
  r.details = e.report;
}

void suite_inflation(SuiteResult& r, const SuiteOptions& o) {
  Log log;
  Algebra alg = make_ut(4, Field::prime(2));
  Group g(alg);
  Quotient q = quotient(alg, power_ideal(alg, 3));
  const std::uint64_t n = dual_size(q.algebra);
  parallel_for(n, o.threads, [&](std::size_t k) {
    const Vec mu = functional_at(q.algebra, k);
    InflationCheck c = inflation_check(g, q, mu);
    const std::string w = "u4(2)/n^3 mu=" + vec_to_string(mu);
    log.check(c.kirillov, w + ": psi does not commute with inflation");
    log.check(c.exp_kirillov, w + ": psi^Exp does not commute with inflation");
    log.check(c.supercharacter, w + ": chi does not commute with inflation");
    log.check(c.xi, w + ": xi does not commute with inflation");
    log.check(c.l_bar_preimage, w + ": Lbar is not the preimage");
    log.check(c.s_bar_preimage, w + ": Sbar is not the preimage");
  });
  r.details["quotient_functionals"] = n;
  log.fill(r);
}

// ---------------------------------------------------------------- experiments

void fail(ExperimentResult& e, bool ok, const std::string& what) {
  if (!ok) {
    e.ok = false;
    e.failures.push_back(what);
  }
}

ExperimentResult exp_q8(const SuiteOptions&) {
  ExperimentResult e;
  e.id = "q8";
  Algebra alg = q8_algebra();
  Group g(alg);
  IrrSet irr = all_irreducibles(g);
  const Vec lam{0, 0, 1};
  ClassFunction psi = kirillov(g, lam), chi = supercharacter(g, lam), xi = xi_character(g, lam);
  std::vector<std::uint64_t> degrees;
  for (const auto& c : irr.chars) degrees.push_back(c.degree);
  auto xi_psi = rational_ratio(xi, psi);
  const bool psi_irr = irr.find(psi) >= 0;
  const bool psi_wi = is_well_induced(g, psi);
  bool all_kirillov = true, integer_valued = true;
  for (const auto& c : irr.chars) {
    Vec lead = c.chi.functional(c.chi.terms().begin()->first);
    all_kirillov &= kirillov(g, lead) == c.chi;
    for (const auto& v : pointwise_table(c.chi)) {
      auto r = v.to_rational();
      integer_valued &= r && r->get_den() == 1;
    }
  }
  std::vector<std::string> relations;
  if (xi == chi) relations.push_back("xi = chi");
  if (xi_psi) relations.push_back("xi = " + ratio_text(*xi_psi) + "*psi");
  e.report = {{"algebra", algebra_to_json(alg)},
              {"lambda", "C*"},
              {"degrees", degrees},
              {"relations", relations},
              {"psi_irreducible", psi_irr},
              {"psi_degree", psi.degree().to_string()},
              {"psi_well_induced", psi_wi},
              {"chi_fully_ramified", is_fully_ramified(alg, lam)},
              {"all_irreducibles_kirillov", all_kirillov},
              {"all_irreducibles_integer_valued", integer_valued}};
  fail(e, degrees == std::vector<std::uint64_t>{1, 1, 1, 1, 2}, "degrees are not {1,1,1,1,2}");
  fail(e, xi == chi, "xi != chi");
  fail(e, xi_psi && *xi_psi == 2, "xi != 2 psi");
  fail(e, psi_irr, "psi is not irreducible");
  fail(e, !psi_wi, "psi is well-induced");
  fail(e, is_fully_ramified(alg, lam), "chi is not fully ramified");
  fail(e, all_kirillov && integer_valued, "some irreducible is not an integer-valued Kirillov function");
  ConstituentCount cx = count_constituents_xi(g, lam);
  fail(e, cx.total == 1, "xi constituent count is not 1");
  e.report["xi_constituents"] = cx.total;
  return e;
}

ExperimentResult exp_ut5(const ExperimentParams& p, const SuiteOptions&) {
  ExperimentResult e;
  e.id = "ut5-odd";
  const unsigned q = p.q ? p.q : 3;
  Ut5Example ex = ut5_example(q);
  Group g(ex.n);
  ClassFunction chi = supercharacter(g, ex.lambda), xi = xi_character(g, ex.lambda), psi = kirillov(g, ex.lambda);
  WellInduced wi = well_induced(g, ex.h, restrict_functional(ex.h, ex.lambda));
  auto xi_psi = rational_ratio(xi, psi);
  const bool fr = is_fully_ramified(ex.n, ex.lambda);
  const std::string chi_deg = chi.degree().to_string(), psi_deg = wi.character.degree().to_string();
  std::string summary = (xi_psi ? "xi = " + ratio_text(*xi_psi) + "*psi" : std::string("xi is not a multiple of psi")) +
                        ", psi " + (wi.irreducible ? "irreducible" : "reducible") + " of degree " + psi_deg + ", chi " +
                        (fr ? "fully ramified" : "not fully ramified") + " of degree " + chi_deg;
  e.report = {{"q", q},
              {"dim_n", ex.n.dim()},
              {"dim_h", ex.h.dim()},
              {"summary", summary},
              {"xi_equals_chi", xi == chi},
              {"induced_equals_psi", wi.character == psi},
              {"sizes", sizes_to_json(lambda_sizes(ex.n, ex.lambda), q)}};
  const mpq_class qq(q);
  fail(e, fr, "chi is not fully ramified");
  fail(e, chi.degree() == rat(ex.n, qq * qq), "chi(1) != q^2");
  fail(e, xi == chi, "xi != chi");
  fail(e, wi.irreducible && wi.character.degree() == rat(ex.n, qq), "Ind_H theta is not irreducible of degree q");
  fail(e, wi.character == psi, "Ind_H theta != psi");
  fail(e, xi_psi && *xi_psi == qq, "xi != q psi");
  return e;
}

ExperimentResult exp_ut13(const SuiteOptions& o) {
  ExperimentResult e;
  e.id = "ut13-98";
  Algebra alg = make_ut(13, Field::prime(2));
  Group g(alg);
  const std::string text = "e*(1,5)+e*(2,6)+e*(3,10)+e*(4,11)+e*(5,7)+e*(6,8)+e*(7,9)+e*(8,12)+e*(9,13)";
  const Vec lam = parse_functional(alg, text, 13);
  LambdaSizes z = lambda_sizes(alg, lam);

  const std::string key = fingerprint(Json{{"algebra", algebra_fingerprint(alg)}, {"lambda", lam}, {"op", "count-super"}});
  std::optional<Json> cached;
  if (o.cache) cached = o.cache->load("count", key);
  Json count;
  if (cached) {
    count = *cached;
  } else {
    PartitionOptions po = o.partition;
    std::optional<PartitionCheckpoint> resume;
    if (o.cache) {
      if (auto cp = o.cache->load("checkpoint", key)) resume = checkpoint_from_json(*cp);
      if (resume) po.resume = &*resume;
      if (!po.checkpoint_every) po.checkpoint_every = 16;
      const Cache cache = *o.cache;
      po.on_checkpoint = [cache, key](const PartitionCheckpoint& c) { cache.store("checkpoint", key, checkpoint_to_json(c)); };
    }
    count = count_to_json(count_constituents_super(g, lam, po), 13);
    if (o.cache) {
      o.cache->store("count", key, count);
      o.cache->erase("checkpoint", key);
    }
  }
  const std::uint64_t total = count["total"].get<std::uint64_t>();
  const std::uint64_t set_size = count["set_size"].get<std::uint64_t>();
  // |G l|^2 = |G l G| |G l cap l G| forces the exponents to satisfy 2 left = two_sided + intersection.
  const bool reference_consistent = 2 * z.left == 39 + 16;
  Json flags = Json::array();
  if (!reference_consistent)
    flags.push_back("reference |GlG| = 2^39 and |O| = |Gl cap lG| = 2^16 violate |Gl|^2 = |GlG| |Gl cap lG| with |Gl| = 2^" +
                    std::to_string(z.left));
  if (z.two_sided != 39) flags.push_back("computed |GlG| = 2^" + std::to_string(z.two_sided) + " disagrees with the reference 2^39");
  if (z.intersection != 16)
    flags.push_back("computed |O| = |Gl cap lG| = 2^" + std::to_string(z.intersection) +
                    " disagrees with the reference 2^16");
  e.report = {{"lambda", text},
              {"count", count},
              {"sizes", sizes_to_json(z, 2)},
              {"reference", {{"count", 98}, {"set_size", 65536}, {"two_sided_log2", 39}}},
              {"flags", flags}};
  fail(e, total == 98, "constituent count " + std::to_string(total) + " != 98");
  fail(e, set_size == 65536, "|O| = " + std::to_string(set_size) + " != 65536");
  fail(e, 2 * z.left == z.two_sided + z.intersection, "computed sizes violate |Gl|^2 = |GlG| |Gl cap lG|");
  return e;
}

// Rank of rational vectors given as sparse maps.
std::size_t rational_rank(std::vector<std::map<std::uint64_t, mpq_class>> rows) {
  std::size_t rank = 0;
  std::vector<std::pair<std::uint64_t, std::map<std::uint64_t, mpq_class>>> basis;  // pivot -> row
  for (auto& row : rows) {
    for (const auto& [piv, b] : basis) {
      auto it = row.find(piv);
      if (it == row.end()) continue;
      const mpq_class factor = it->second / b.at(piv);
      for (const auto& [k, v] : b) {
        mpq_class& x = row[k];
        x -= factor * v;
        if (x == 0) row.erase(k);
      }
    }
    if (row.empty()) continue;
    basis.emplace_back(row.begin()->first, row);
    ++rank;
  }
  return rank;
}

ExperimentResult exp_ut6(const SuiteOptions& o) {
  ExperimentResult e;
  e.id = "ut6-tensor";
  Algebra alg = ut6_constrained();
  Group g(alg);
  std::vector<XiCell> cells = xi_partition(g);
  std::vector<std::uint32_t> cell_of(dual_size(alg));
  std::vector<ClassFunction> xis(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (auto k : cells[c].set.keys) cell_of[k] = static_cast<std::uint32_t>(c);
    xis[c] = xi_character(g, cells[c].set);
  }
  // A class function lies in span{xi} iff its coefficients are constant on every cell.
  auto residual = [&](const ClassFunction& f) {
    std::map<std::uint32_t, mpq_class> sum;
    for (const auto& [k, c] : f.terms()) sum[cell_of[k]] += *c.to_rational();
    std::map<std::uint64_t, mpq_class> r;
    for (const auto& [cell, s] : sum) {
      const mpq_class mean = s / mpq_class(static_cast<unsigned long>(cells[cell].set.keys.size()));
      for (auto k : cells[cell].set.keys) {
        mpq_class v = f.coefficient_at(k).to_rational().value() - mean;
        if (v != 0) r[k] = v;
      }
    }
    return r;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a; b < cells.size(); ++b)
      if (cells[a].set.keys.size() * cells[b].set.keys.size() <= 4096) pairs.emplace_back(a, b);
  const std::size_t max_pairs = 20000;
  if (pairs.size() > max_pairs) pairs.resize(max_pairs);
  std::vector<std::map<std::uint64_t, mpq_class>> res(pairs.size());
  parallel_for(pairs.size(), o.threads, [&](std::size_t i) { res[i] = residual(tensor(xis[pairs[i].first], xis[pairs[i].second])); });
  std::vector<std::map<std::uint64_t, mpq_class>> outside;
  Json examples = Json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (res[i].empty()) continue;
    if (examples.size() < 5)
      examples.push_back({vec_to_string(cells[pairs[i].first].representative), vec_to_string(cells[pairs[i].second].representative)});
    if (outside.size() < 64) outside.push_back(res[i]);
  }
  std::size_t outside_count = 0;
  for (const auto& r : res) outside_count += !r.empty();
  e.report = {{"dim", alg.dim()},
              {"xi_cells", cells.size()},
              {"pairs_checked", pairs.size()},
              {"pairs_outside_span", outside_count},
              {"rank_deficiency_first_64", rational_rank(outside)},
              {"example_pairs", examples},
              {"closed_under_tensor_on_checked_pairs", outside_count == 0}};
  return e;
}

ExperimentResult exp_exponential_irreducibles(const ExperimentParams& p, const SuiteOptions& o) {
  ExperimentResult e;
  e.id = "sangroniz-u3q3";
  const std::size_t n = p.n ? p.n : 3;
  const unsigned q = p.q ? p.q : 3;
  Algebra alg = make_ut(n, Field::of_order(q));
  Group g(alg);
  IrrSet irr = all_irreducibles(g);
  const bool equal = exp_kirillov_equals_irr(g, irr, o.threads);
  Json hist = Json::object();
  for (const auto& [d, c] : irr.degree_histogram()) hist[std::to_string(d)] = c;
  e.report = {{"n", n},
              {"q", q},
              {"n_below_2p", n < 2 * alg.field().p()},
              {"irreducibles", irr.size()},
              {"degrees", hist},
              {"exp_kirillov_equals_irr", equal}};
  fail(e, equal, "{psi^Exp} != Irr(G)");
  return e;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"orthonormality", "regular",  "stabilizers", "xi-structure",    "oracle",   "counts",
          "xi-bijection",   "span",     "exp-irreducibles", "examples", "ut13", "inflation"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteResult r;
  r.name = name;
  if (name == "orthonormality") suite_orthonormality(r, opts);
  else if (name == "regular") suite_regular(r, opts);
  else if (name == "stabilizers") suite_stabilizers(r, opts);
  else if (name == "xi-structure") suite_xi_structure(r, opts);
  else if (name == "oracle") suite_oracle(r, opts);
  else if (name == "counts") suite_counts(r, opts);
  else if (name == "xi-bijection") suite_xi_bijection(r, opts);
  else if (name == "span") suite_span(r, opts);
  else if (name == "exp-irreducibles") suite_exp_irreducibles(r, opts);
  else if (name == "examples") suite_examples(r, opts);
  else if (name == "ut13") suite_ut13(r, opts);
  else if (name == "inflation") suite_inflation(r, opts);
  else throw DomainError("unknown suite " + name);
  return r;
}

std::vector<std::string> experiment_ids() { return {"q8", "ut5-odd", "ut13-98", "ut6-tensor", "sangroniz-u3q3"}; }

ExperimentResult run_experiment(const std::string& id, const ExperimentParams& params, const SuiteOptions& opts) {
  if (id == "q8") return exp_q8(opts);
  if (id == "ut5-odd") return exp_ut5(params, opts);
  if (id == "ut13-98") return exp_ut13(opts);
  if (id == "ut6-tensor") return exp_ut6(opts);
  if (id == "sangroniz-u3q3") return exp_exponential_irreducibles(params, opts);
  throw DomainError("unknown experiment " + id);
}

}  // namespace algchar
