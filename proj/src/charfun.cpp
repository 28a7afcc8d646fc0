#include "algchar/charfun.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "algchar/errors.hpp"
#include "algchar/fourier.hpp"

namespace algchar {

ClassFunction::ClassFunction(Algebra alg) : alg_(std::move(alg)) {
  if (!pow_fits(alg_.field().q(), alg_.dim(), std::uint64_t(1) << 62))
    throw CapacityError("class functions need q^dim below 2^62 for packed keys");
}

std::uint64_t ClassFunction::key_of(const Vec& nu) const {
  if (nu.size() != alg_.dim()) throw DomainError("functional has wrong length for this class function");
  return pack_key(nu, alg_.field().q());
}

Cyclo ClassFunction::coefficient(const Vec& nu) const { return coefficient_at(key_of(nu)); }

Cyclo ClassFunction::coefficient_at(std::uint64_t key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Cyclo(p()) : it->second;
}

void ClassFunction::add_at(std::uint64_t key, const Cyclo& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void ClassFunction::set_at(std::uint64_t key, const Cyclo& c) {
  if (c.is_zero())
    terms_.erase(key);
  else
    terms_[key] = c;
}

Cyclo ClassFunction::degree() const {
  Cyclo s(p());
  for (const auto& [k, c] : terms_) s += c;
  return s;
}

bool ClassFunction::has_rational_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_rational(); });
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  if (!(alg_ == o.alg_)) throw DomainError("class functions live on different algebras");
  for (const auto& [k, c] : o.terms_) add_at(k, c);
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  if (!(alg_ == o.alg_)) throw DomainError("class functions live on different algebras");
  for (const auto& [k, c] : o.terms_) add_at(k, -c);
  return *this;
}

ClassFunction ClassFunction::scaled(const mpq_class& s) const {
  ClassFunction r(alg_);
  if (s == 0) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

ClassFunction ClassFunction::scaled(const Cyclo& s) const {
  ClassFunction r(alg_);
  for (const auto& [k, c] : terms_) r.set_at(k, c * s);
  return r;
}

ClassFunction theta_fun(const Algebra& alg, const Vec& lambda) {
  ClassFunction f(alg);
  f.add(lambda, Cyclo::rational(alg.field().p(), 1));
  return f;
}

ClassFunction regular_character(const Algebra& alg) {
  ClassFunction f(alg);
  const std::uint64_t n = checked_pow(alg.field().q(), alg.dim());
  const Cyclo one = Cyclo::rational(alg.field().p(), 1);
  for (std::uint64_t k = 0; k < n; ++k) f.add_at(k, one);
  return f;
}

namespace {

mpq_class inverse_power(unsigned q, std::size_t e) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), q, e);
  return mpq_class(mpz_class(1), den);
}

std::size_t exact_log(std::uint64_t n, unsigned q) {
  std::size_t e = 0;
  while (n > 1) {
    if (n % q) throw InternalError("size " + std::to_string(n) + " is not a power of q");
    n /= q;
    ++e;
  }
  return e;
}

// Keys of the coadjoint orbit through the functional with this key.
std::vector<std::uint64_t> coadjoint_orbit_keys(const Group& g, std::uint64_t key) {
  const unsigned q = g.field().q();
  if (const OrbitPartition* part = g.dual_orbits()) return (*g.dual_orbit_members())[part->orbit_of[key]];
  std::vector<Vec> pts =
      orbit_points(g.field(), unpack_key(key, g.dim(), q), g.generator_matrices(Action::coadjoint));
  std::vector<std::uint64_t> keys;
  keys.reserve(pts.size());
  for (const auto& v : pts) keys.push_back(pack_key(v, q));
  return keys;
}

}  // namespace

ClassFunction kirillov(const Group& g, const Vec& lambda) {
  const Algebra& alg = g.algebra();
  ClassFunction f(alg);
  std::vector<std::uint64_t> keys = coadjoint_orbit_keys(g, f.key_of(lambda));
  std::size_t e = exact_log(keys.size(), g.field().q());
  if (e % 2) throw InternalError("coadjoint orbit with odd exponent");
  Cyclo c = Cyclo::rational(g.field().p(), inverse_power(g.field().q(), e / 2));
  for (auto k : keys) f.add_at(k, c);
  return f;
}

ClassFunction supercharacter(const Group& g, const Vec& lambda) {
  const Algebra& alg = g.algebra();
  ClassFunction f(alg);
  OrbitReport two = orbit(g, lambda, OrbitKind::two_sided, true);
  const std::size_t left_exp = alg.dim() - left_stabilizer_algebra(alg, lambda).dim();
  // |G lambda| / |G lambda G| = q^(left_exp - two.exponent)
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), g.field().q(), left_exp);
  mpz_ui_pow_ui(den.get_mpz_t(), g.field().q(), two.exponent);
  mpq_class coef(num, den);
  coef.canonicalize();
  Cyclo c = Cyclo::rational(g.field().p(), coef);
  for (const auto& v : two.elements) f.add(v, c);
  return f;
}

bool XiSet::contains(std::uint64_t key) const { return std::binary_search(keys.begin(), keys.end(), key); }

std::uint64_t xi_set_size(const Algebra& alg, const ChainResult& c) {
  const std::size_t exp = 2 * alg.dim() - c.l_bar().dim() - c.s_bar().dim();
  return checked_pow(alg.field().q(), exp);
}

XiSet xi_set(const Group& g, const Vec& lambda, std::uint64_t max_points) {
  const Algebra& alg = g.algebra();
  const unsigned q = g.field().q();
  ChainResult c = chain(alg, lambda);
  XiSet xs;
  xs.lambda = lambda;
  xs.l_bar = c.l_bar();
  xs.s_bar = c.s_bar();
  const std::uint64_t expected = xi_set_size(alg, c);
  if (expected > max_points)
    throw CapacityError("Xi set has " + std::to_string(expected) + " points, above the guard of " +
                        std::to_string(max_points));
  AffineSet seeds = right_orbit_affine(alg, lambda, c.s_bar());
  std::unordered_set<std::uint64_t> seen;
  seeds.for_each([&](const Vec& v) {
    std::uint64_t key = pack_key(v, q);
    if (seen.count(key)) return;
    std::vector<std::uint64_t> orb = coadjoint_orbit_keys(g, key);
    for (auto k : orb) seen.insert(k);
    xs.orbit_representatives.push_back(unpack_key(orb.front(), alg.dim(), q));
    xs.orbit_sizes.push_back(orb.size());
  });
  xs.keys.assign(seen.begin(), seen.end());
  std::sort(xs.keys.begin(), xs.keys.end());
  // order the orbit decomposition by representative
  std::vector<std::size_t> order(xs.orbit_representatives.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs.orbit_representatives[a] < xs.orbit_representatives[b]; });
  std::vector<Vec> reps;
  std::vector<std::uint64_t> sizes;
  for (auto i : order) {
    reps.push_back(xs.orbit_representatives[i]);
    sizes.push_back(xs.orbit_sizes[i]);
  }
  xs.orbit_representatives = std::move(reps);
  xs.orbit_sizes = std::move(sizes);
  if (xs.keys.size() != expected)
    throw InternalError("Xi set has " + std::to_string(xs.keys.size()) + " points but |G|^2/(|L||S|) = " +
                        std::to_string(expected));
  return xs;
}

ClassFunction xi_character(const Group& g, const XiSet& xs) {
  ClassFunction f(g.algebra());
  Cyclo c = Cyclo::rational(g.field().p(), inverse_power(g.field().q(), g.dim() - xs.s_bar.dim()));
  for (auto k : xs.keys) f.add_at(k, c);
  return f;
}

ClassFunction xi_character(const Group& g, const Vec& lambda) { return xi_character(g, xi_set(g, lambda)); }

Cyclo inner(const ClassFunction& f, const ClassFunction& g) {
  if (!(f.algebra() == g.algebra())) throw DomainError("inner product of class functions on different algebras");
  Cyclo s(f.p());
  const bool f_smaller = f.support_size() <= g.support_size();
  const ClassFunction& a = f_smaller ? f : g;
  const ClassFunction& b = f_smaller ? g : f;
  for (const auto& [k, c] : a.terms()) {
    auto it = b.terms().find(k);
    if (it == b.terms().end()) continue;
    s += f_smaller ? c * it->second.conj() : it->second * c.conj();
  }
  return s;
}

Cyclo evaluate(const ClassFunction& f, const Vec& x) {
  const Field& fld = f.algebra().field();
  const unsigned p = fld.p();
  if (x.size() != f.algebra().dim()) throw DomainError("group element has wrong length");
  std::vector<Cyclo> bucket(p, Cyclo(p));
  for (const auto& [k, c] : f.terms()) {
    Vec nu = f.functional(k);
    Elem t = fld.trace(vec_dot(fld, nu, x));
    bucket[t] += c;
  }
  Cyclo out(p);
  for (unsigned t = 0; t < p; ++t) {
    if (bucket[t].is_zero()) continue;
    out += t == 0 ? bucket[t] : bucket[t] * Cyclo::root_power(p, t);
  }
  return out;
}

ClassFunction tensor(const ClassFunction& f, const ClassFunction& g) {
  if (!(f.algebra() == g.algebra())) throw DomainError("tensor of class functions on different algebras");
  const Field& fld = f.algebra().field();
  ClassFunction out(f.algebra());
  for (const auto& [ka, ca] : f.terms()) {
    Vec a = f.functional(ka);
    for (const auto& [kb, cb] : g.terms()) out.add(vec_add(fld, a, g.functional(kb)), ca * cb);
  }
  return out;
}

std::vector<Cyclo> pointwise_table(const ClassFunction& f) {
  const Algebra& alg = f.algebra();
  if (!pow_fits(alg.field().q(), alg.dim(), kFourierLimit))
    throw CapacityError("pointwise tables are limited to q^d <= 2^20");
  std::vector<Cyclo> dense(checked_pow(alg.field().q(), alg.dim()), Cyclo(f.p()));
  for (const auto& [k, c] : f.terms()) dense[k] = c;
  return fourier_values(alg.field(), alg.dim(), dense);
}

ClassFunction from_pointwise_table(const Algebra& alg, const std::vector<Cyclo>& values) {
  std::vector<Cyclo> coeffs = fourier_coefficients(alg.field(), alg.dim(), values);
  ClassFunction f(alg);
  for (std::uint64_t k = 0; k < coeffs.size(); ++k) f.set_at(k, coeffs[k]);
  return f;
}

ClassFunction restrict_to(const ClassFunction& f, const Subalgebra& h) {
  if (!(f.algebra() == h.parent())) throw DomainError("restriction to a subalgebra of a different algebra");
  ClassFunction out(h.algebra());
  for (const auto& [k, c] : f.terms()) out.add(restrict_functional(h.space(), f.functional(k)), c);
  return out;
}

ClassFunction induce(const ClassFunction& f, const Subalgebra& h, const Group& g) {
  if (!(h.parent() == g.algebra())) throw DomainError("induction target does not contain the subalgebra");
  if (!(f.algebra() == h.algebra())) throw DomainError("induced function must live on the subalgebra");
  const unsigned q = g.field().q();
  std::unordered_map<std::uint64_t, Cyclo> fan;
  for (const auto& [k, c] : f.terms()) {
    AffineSet lifts = lift_functional(h.space(), f.functional(k));
    lifts.for_each([&](const Vec& nu) {
      auto [it, inserted] = fan.try_emplace(pack_key(nu, q), c);
      if (!inserted) it->second += c;
    });
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(fan.size());
  for (const auto& kv : fan) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  ClassFunction out(g.algebra());
  std::unordered_set<std::uint64_t> done;
  for (auto key : keys) {
    if (done.count(key)) continue;
    std::vector<std::uint64_t> orb = coadjoint_orbit_keys(g, key);
    Cyclo sum(f.p());
    for (auto k : orb) {
      done.insert(k);
      auto it = fan.find(k);
      if (it != fan.end()) sum += it->second;
    }
    if (sum.is_zero()) continue;
    sum *= mpq_class(1, static_cast<unsigned long>(orb.size()));
    for (auto k : orb) out.set_at(k, sum);
  }
  return out;
}

ClassFunction induce_pointwise(const ClassFunction& f, const Subalgebra& h, const Group& g) {
  const Algebra& alg = g.algebra();
  const unsigned q = g.field().q();
  const std::uint64_t n = g.order();
  if (!pow_fits(q, 2 * alg.dim(), std::uint64_t(1) << 28))
    throw CapacityError("pointwise induction is limited to |G|^2 <= 2^28");
  std::vector<Cyclo> sub = pointwise_table(f);
  std::vector<Matrix> conj;
  conj.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) conj.push_back(g.action_matrix(unpack_key(k, alg.dim(), q), Action::conjugation));
  const unsigned p = g.field().p();
  std::vector<Cyclo> values(n, Cyclo(p));
  const mpq_class scale(1, static_cast<unsigned long>(checked_pow(q, h.dim())));
  for (std::uint64_t k = 0; k < n; ++k) {
    Vec x = unpack_key(k, alg.dim(), q);
    Cyclo acc(p);
    for (const Matrix& m : conj) {
      Vec y = vec_mat(g.field(), x, m);
      if (!h.space().contains(y)) continue;
      acc += sub[pack_key(h.local(y), q)];
    }
    values[k] = acc * scale;
  }
  return from_pointwise_table(alg, values);
}

ClassFunction inflate(const ClassFunction& f, const Quotient& qt, const Algebra& parent) {
  if (!(f.algebra() == qt.algebra)) throw DomainError("inflated function must live on the quotient algebra");
  ClassFunction out(parent);
  for (const auto& [k, c] : f.terms()) out.add(mat_vec(parent.field(), qt.projection, f.functional(k)), c);
  return out;
}

bool is_class_function(const ClassFunction& f, const Group& g) {
  std::unordered_set<std::uint64_t> done;
  for (const auto& [k, c] : f.terms()) {
    if (done.count(k)) continue;
    for (auto m : coadjoint_orbit_keys(g, k)) {
      done.insert(m);
      if (!(f.coefficient_at(m) == c)) return false;
    }
  }
  return true;
}

namespace {

// Truncated power series over F_q: coefficient k of the product, k < depth.
std::vector<Elem> series_mul(const Field& f, const std::vector<Elem>& x, const std::vector<Elem>& y) {
  std::vector<Elem> r(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; i + j < x.size(); ++j)
      if (y[j]) r[i + j] = f.add(r[i + j], f.mul(x[i], y[j]));
  }
  return r;
}

Vec apply_series(const Algebra& alg, const std::vector<Elem>& c, const Vec& x) {
  const Field& f = alg.field();
  Vec out(alg.dim(), 0);
  Vec pw = x;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (k > 1) pw = alg.mul(pw, x);
    if (vec_is_zero(pw)) break;
    if (c[k]) vec_axpy(f, out, c[k], pw);
  }
  return out;
}

}  // namespace

Vec PolyBijection::forward(const Algebra& alg, const Vec& x) const { return apply_series(alg, a, x); }
Vec PolyBijection::inverse(const Algebra& alg, const Vec& y) const { return apply_series(alg, b, y); }

bool PolyBijection::is_identity() const {
  for (std::size_t k = 2; k < a.size(); ++k)
    if (a[k]) return false;
  return true;
}

PolyBijection poly_bijection(const Field& f, const std::vector<Elem>& higher, std::size_t depth) {
  PolyBijection F;
  F.field = f;
  F.depth = std::max<std::size_t>(depth, 2);
  const std::size_t n = F.depth;
  F.a.assign(n, 0);
  F.a[0] = 1;
  F.a[1] = 1;
  for (std::size_t k = 0; k < higher.size() && k + 2 < n; ++k) {
    if (higher[k] >= f.q()) throw DomainError("polynomial coefficient outside F_q");
    F.a[k + 2] = higher[k];
  }
  // Solve G = Y - sum_{k>=2} a_k G^k one degree at a time.
  std::vector<Elem> g(n, 0);
  g[1] = 1;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::vector<Elem> next(n, 0);
    next[1] = 1;
    std::vector<Elem> pw = g;
    for (std::size_t k = 2; k < n; ++k) {
      pw = series_mul(f, pw, g);
      if (!F.a[k]) continue;
      for (std::size_t t = 0; t < n; ++t) next[t] = f.sub(next[t], f.mul(F.a[k], pw[t]));
    }
    g = std::move(next);
  }
  F.b = std::move(g);
  return F;
}

PolyBijection poly_bijection_checked(const Field& f, const std::vector<Elem>& all, std::size_t depth) {
  if (all.size() < 2 || all[0] != 1 || all[1] != 1)
    throw DomainError("only bijections F(X) = 1 + X + sum_{k>=2} a_k X^k are supported");
  return poly_bijection(f, std::vector<Elem>(all.begin() + 2, all.end()), depth);
}

PolyBijection exp_map(const Algebra& alg) {
  const Field& f = alg.field();
  std::vector<Elem> higher;
  Elem fact = 1;
  for (unsigned k = 2; k < f.p(); ++k) {
    fact = f.mul(fact, f.from_integer(k));
    higher.push_back(f.inv(fact));
  }
  return poly_bijection(f, higher, alg.nilpotency_index());
}

PolyBijection identity_map(const Algebra& alg) { return poly_bijection(alg.field(), {}, alg.nilpotency_index()); }

ClassFunction twist(const ClassFunction& f, const PolyBijection& F) {
  const Algebra& alg = f.algebra();
  if (!(F.field == alg.field())) throw DomainError("polynomial bijection over a different field");
  if (F.depth < alg.nilpotency_index()) throw DomainError("polynomial bijection truncated below the nilpotency index");
  if (F.is_identity()) return f;
  const unsigned q = alg.field().q();
  std::vector<Cyclo> values = pointwise_table(f);
  std::vector<Cyclo> pulled(values.size(), Cyclo(f.p()));
  for (std::uint64_t k = 0; k < values.size(); ++k) {
    Vec y = unpack_key(k, alg.dim(), q);
    pulled[k] = values[pack_key(F.inverse(alg, y), q)];
  }
  return from_pointwise_table(alg, pulled);
}

}  // namespace algchar
