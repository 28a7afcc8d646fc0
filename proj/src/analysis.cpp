#include "algchar/analysis.hpp"

#include <algorithm>
#include <set>

#include "algchar/errors.hpp"

namespace algchar {

LambdaSizes lambda_sizes(const Algebra& alg, const Vec& lambda) {
  LambdaSizes z;
  const std::size_t d = alg.dim();
  ChainResult c = chain(alg, lambda);
  z.dim = d;
  z.dim_l = c.l1().dim();
  z.dim_s = c.s1().dim();
  z.dim_l_bar = c.l_bar().dim();
  z.dim_s_bar = c.s_bar().dim();
  z.chain_depth = c.depth;
  for (const auto& v : c.l_chain) z.l_chain_dims.push_back(v.dim());
  for (const auto& v : c.s_chain) z.s_chain_dims.push_back(v.dim());
  z.coadjoint = d - radical_alternating(alg, lambda).dim();
  z.left = left_orbit_affine(alg, lambda).dim();
  z.right = d - z.dim_l;
  z.intersection = z.dim_s - z.dim_l;
  // |G lambda G| |G lambda cap lambda G| = |G lambda| |lambda G|
  z.two_sided = z.left + z.right - z.intersection;
  z.chi_degree = d - z.dim_l;
  z.xi_degree = d - z.dim_l_bar;
  z.xi_set = 2 * d - z.dim_l_bar - z.dim_s_bar;
  return z;
}

namespace {

// Coadjoint orbits of 1 + s on mu + Ann(l), with mu = lambda restricted to s.
ConstituentCount count_on(const Group& g, const Vec& lambda, const Subspace& s, const Subspace& l,
                          const char* method, const PartitionOptions& opts) {
  const Algebra& alg = g.algebra();
  Subalgebra sub(alg, s);
  Group gs(sub.algebra());
  AffineSet set(restrict_functional(s, lambda), relative_subspace(s, l).annihilator());
  PartitionOptions o = opts;
  o.keep_membership = false;
  OrbitPartition part = partition_orbits(set, gs.generator_matrices(Action::coadjoint), o);
  ConstituentCount out;
  out.lambda = lambda;
  out.total = part.count();
  out.method = method;
  out.witness = part.size_histogram();
  out.set_size = set.size();
  return out;
}

Vec functional_on_quotient(const Field& f, const Quotient& q, const Vec& lambda) {
  Vec out(q.algebra.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vec unit(out.size(), 0);
    unit[i] = 1;
    out[i] = vec_dot(f, lambda, q.lift(unit));
  }
  return out;
}

Subspace image_in_quotient(const Quotient& q, const Subspace& v) {
  std::vector<Vec> imgs;
  for (const auto& b : v.basis_vectors()) imgs.push_back(q.project(b));
  return Subspace::span(q.algebra.field(), q.algebra.dim(), imgs);
}

}  // namespace

ConstituentCount count_constituents_super(const Group& g, const Vec& lambda, const PartitionOptions& opts) {
  const Algebra& alg = g.algebra();
  return count_on(g, lambda, s_algebra(alg, lambda), left_stabilizer_algebra(alg, lambda),
                  "coadjoint S-orbits on lambda G restricted to s", opts);
}

ConstituentCount count_constituents_xi(const Group& g, const Vec& lambda, const PartitionOptions& opts) {
  ChainResult c = chain(g.algebra(), lambda);
  return count_on(g, lambda, c.s_bar(), c.l_bar(), "coadjoint S-bar-orbits on mu S-bar", opts);
}

ConstituentCount count_by_degree(const Group& g, const Vec& lambda, const OracleOptions& opts) {
  const Algebra& alg = g.algebra();
  const Field& f = alg.field();
  const unsigned q = f.q();
  const Subspace l = left_stabilizer_algebra(alg, lambda);
  const Subspace s = s_algebra(alg, lambda);
  const Subspace k = l.intersect(kernel_of(alg, lambda));
  const std::uint64_t index = checked_pow(q, alg.dim() - s.dim());  // |G : S|

  Subalgebra big_s(alg, s);
  const Algebra& sa = big_s.algebra();
  const Vec lam_s = restrict_functional(s, lambda);
  const Subspace l_rel = relative_subspace(s, l);

  // Irr(S/K) filtered by: the restriction to L/K is psi(1) theta_lambda.
  Quotient qk = quotient(sa, Subalgebra(sa, relative_subspace(s, k)));
  IrrSet irr_k = all_irreducibles(Group(qk.algebra), opts);
  const Vec lam_q = functional_on_quotient(f, qk, lam_s);
  Subalgebra lk(qk.algebra, image_in_quotient(qk, l_rel));
  const Vec target = restrict_functional(lk.space(), lam_q);

  std::map<std::uint64_t, std::uint64_t> hist;
  // psi(1)^2 <= |S : L| since L/K acts by scalars.
  for (std::size_t e = 0; 2 * e <= s.dim() - l.dim(); ++e) hist[index * checked_pow(q, e)] = 0;
  for (const auto& chi : irr_k.chars) {
    Cyclo c = restrict_to(chi.chi, lk).coefficient(target);
    if (c == Cyclo::rational(f.p(), mpq_class(static_cast<unsigned long>(chi.degree)))) ++hist[index * chi.degree];
  }

  ConstituentCount out;
  out.lambda = lambda;
  out.method = "Irr(S/K) with central character theta_lambda on L/K";
  if (kernel_of(alg, lambda).contains(product_space(alg, s, s))) {
    Subalgebra l_in_s(sa, l_rel);
    if (!l_in_s.is_ideal()) throw InternalError("lambda kills s^2 but l is not an ideal of s");
    IrrSet irr_l = all_irreducibles(Group(quotient(sa, l_in_s).algebra), opts);
    std::map<std::uint64_t, std::uint64_t> alt;
    for (const auto& [deg, n] : hist) alt[deg] = 0;
    for (const auto& chi : irr_l.chars) ++alt[index * chi.degree];
    if (alt != hist) throw InternalError("degree counts through S/L and S/K disagree");
    out.method += "; confirmed by Irr(S/L)";
  }
  for (const auto& [deg, n] : hist) out.total += n;
  out.by_degree = std::move(hist);
  return out;
}

bool is_fully_ramified(const Algebra& alg, const Vec& lambda) { return s_algebra(alg, lambda).dim() == alg.dim(); }

WellInduced well_induced(const Group& g, const Subspace& h, const Vec& mu) {
  const Algebra& alg = g.algebra();
  const Field& f = alg.field();
  if (mu.size() != h.dim()) throw DomainError("functional length does not match the subalgebra dimension");
  Subalgebra sub(alg, h);
  if (!sub.is_subalgebra()) throw DomainError("inducing subspace is not multiplicatively closed");
  for (const auto& b : relative_subspace(h, product_space(alg, h, h)).basis_vectors())
    if (vec_dot(f, mu, b) != 0) throw DomainError("functional does not vanish on h^2, so theta_mu is not linear");
  WellInduced out;
  out.character = induce(theta_fun(sub.algebra(), mu), sub, g);
  out.norm = inner(out.character, out.character);
  out.irreducible = out.norm == Cyclo::rational(f.p(), 1);
  if (out.irreducible) {
    Vec lam = out.character.functional(out.character.terms().begin()->first);
    if (kirillov(g, lam) == out.character) out.kirillov_lambda = lam;
  }
  return out;
}

bool is_well_induced(const Group& g, const ClassFunction& target) {
  const Algebra& alg = g.algebra();
  const unsigned q = alg.field().q();
  auto deg = target.degree().to_rational();
  if (!deg || deg->get_den() != 1 || *deg < 1) return false;
  std::uint64_t d = deg->get_num().get_ui();
  std::size_t m = 0;
  while (d % q == 0) d /= q, ++m;
  if (d != 1 || m > alg.dim()) return false;
  bool found = false;
  for_each_subalgebra_by_codim(alg, m, [&](const Subspace& h) {
    if (alg.dim() - h.dim() != m) return true;
    Subspace linear = relative_subspace(h, product_space(alg, h, h)).annihilator();
    linear.for_each_vector([&](const Vec& mu) {
      if (!found && well_induced(g, h, mu).character == target) found = true;
    });
    return !found;
  });
  return found;
}

bool exp_criterion(const Algebra& alg, const Vec& lambda) {
  ChainResult c = chain(alg, lambda);
  Subspace power = power_ideal(Subalgebra(alg, c.s_bar()), alg.field().p()).space();
  return c.l_bar().intersect(kernel_of(alg, lambda)).contains(power);
}

std::vector<XiCell> xi_partition(const Group& g) {
  const Algebra& alg = g.algebra();
  const unsigned q = alg.field().q();
  if (!pow_fits(q, alg.dim(), std::uint64_t(1) << 22))
    throw CapacityError("Xi partition enumerates n*; q^d exceeds 2^22");
  const std::uint64_t n = checked_pow(q, alg.dim());
  std::vector<bool> covered(n, false);
  std::vector<XiCell> cells;
  for (std::uint64_t key = 0; key < n; ++key) {
    if (covered[key]) continue;
    Vec lam = unpack_key(key, alg.dim(), q);
    XiCell cell{lam, xi_set(g, lam)};
    for (auto k : cell.set.keys) {
      if (covered[k])
        throw InternalError("Xi sets of " + vec_to_string(lam) + " and an earlier cell overlap at " +
                            vec_to_string(unpack_key(k, alg.dim(), q)));
      covered[k] = true;
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

SpanCheck xi_span_check(const Group& g, const Vec& lambda, const PolyBijection& F, const IrrSet& irr) {
  ClassFunction psi = twist(kirillov(g, lambda), F);
  SpanCheck out;
  out.xi_constituents = decompose(xi_character(g, lambda), irr).constituents();
  ClassFunction residual = psi;
  for (auto i : out.xi_constituents) residual -= irr.chars[i].chi.scaled(inner(psi, irr.chars[i].chi));
  out.residual = inner(residual, residual);

  ClassFunction chi = supercharacter(g, lambda);
  for (const auto& eta : irr.chars) {
    if (eta.degree != 1 || !inner(chi, eta.chi).is_zero()) continue;
    ++out.linear_checked;
    if (!inner(psi, eta.chi).is_zero()) out.linear_vanishing = false;
  }
  return out;
}

XiBijection xi_bijection_check(const Group& g, const Vec& lambda, const IrrSet& irr, const IrrProvider& irr_of) {
  const Algebra& alg = g.algebra();
  ChainResult c = chain(alg, lambda);
  Subalgebra sbar(alg, c.s_bar());
  Group gs(sbar.algebra());
  Subalgebra lbar(sbar.algebra(), relative_subspace(c.s_bar(), c.l_bar()));
  Vec mu = restrict_functional(lbar.space(), restrict_functional(c.s_bar(), lambda));
  ClassFunction ind = induce(theta_fun(lbar.algebra(), mu), lbar, gs);
  std::shared_ptr<const IrrSet> held = irr_of ? irr_of(gs) : std::make_shared<const IrrSet>(all_irreducibles(gs));
  const IrrSet& irr_s = *held;

  XiBijection out;
  std::vector<std::size_t> local = decompose(ind, irr_s).constituents();
  std::vector<std::size_t> expected = decompose(xi_character(g, lambda), irr).constituents();
  out.sbar_constituents = local.size();
  out.g_constituents = expected.size();
  std::set<long> images;
  const Cyclo one = Cyclo::rational(alg.field().p(), 1);
  for (auto i : local) {
    ClassFunction up = induce(irr_s.chars[i].chi, sbar, g);
    if (!(inner(up, up) == one)) out.norms_one = false;
    long idx = irr.find(up);
    if (idx < 0) out.exhausts = false;
    if (!images.insert(idx).second) out.distinct = false;
  }
  if (images != std::set<long>(expected.begin(), expected.end())) out.exhausts = false;
  return out;
}

Subspace preimage(const Quotient& q, const Subspace& v) {
  std::vector<Vec> lifts;
  for (const auto& b : v.basis_vectors()) lifts.push_back(q.lift(b));
  const Subspace& ideal = q.ideal.space();
  return ideal.sum(Subspace::span(ideal.field(), ideal.ambient_dim(), lifts));
}

InflationCheck inflation_check(const Group& g, const Quotient& q, const Vec& mu) {
  const Algebra& alg = g.algebra();
  const Algebra& qa = q.algebra;
  Group gq(qa);
  const Vec lambda = mat_vec(alg.field(), q.projection, mu);
  InflationCheck out;
  ClassFunction psi_q = kirillov(gq, mu);
  ClassFunction psi = kirillov(g, lambda);
  out.kirillov = inflate(psi_q, q, alg) == psi;
  out.exp_kirillov = inflate(twist(psi_q, exp_map(qa)), q, alg) == twist(psi, exp_map(alg));
  out.supercharacter = inflate(supercharacter(gq, mu), q, alg) == supercharacter(g, lambda);
  out.xi = inflate(xi_character(gq, mu), q, alg) == xi_character(g, lambda);
  ChainResult cq = chain(qa, mu), c = chain(alg, lambda);
  out.l_bar_preimage = preimage(q, cq.l_bar()) == c.l_bar();
  out.s_bar_preimage = preimage(q, cq.s_bar()) == c.s_bar();
  return out;
}

}  // namespace algchar
