#include "algchar/oracle.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "algchar/chartable.hpp"
#include "algchar/errors.hpp"

namespace algchar {

std::map<std::uint64_t, std::uint64_t> IrrSet::degree_histogram() const {
  std::map<std::uint64_t, std::uint64_t> h;
  for (const auto& c : chars) ++h[c.degree];
  return h;
}

long IrrSet::find(const ClassFunction& f) const {
  for (std::size_t i = 0; i < chars.size(); ++i)
    if (chars[i].chi == f) return static_cast<long>(i);
  return -1;
}

namespace {

using Signature = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

// Some irreducibles are not induced from any theta_mu; the quaternion group is
// the smallest case. Inducing characters of algebra subgroups exist, but they
// need not be linear.
// Those are taken from the class-algebra table, which must also contain
// every character the scan produced.
void complete_from_class_algebra(const Group& g, IrrSet& out) {
  ClassAlgebraTable table = class_algebra_table(g);
  for (auto& chi : table.characters) {
    if (out.find(chi) >= 0) continue;
    IrrCharacter ic;
    ic.degree = std::stoull(chi.degree().to_string());
    ic.chi = std::move(chi);
    ic.induced = false;
    out.chars.push_back(std::move(ic));
  }
  // every scanned character matched exactly when the sizes agree
  if (out.chars.size() != table.characters.size())
    throw InternalError("induced characters missing from the class-algebra table");
}

}  // namespace

IrrSet all_irreducibles(const Group& g, const OracleOptions& opts) {
  const Algebra& alg = g.algebra();
  const Field& f = alg.field();
  const unsigned q = f.q();
  const std::size_t d = alg.dim();
  const OrbitPartition* part = g.dual_orbits();
  if (!part) throw CapacityError("oracle needs the full coadjoint partition; q^d exceeds 2^22");
  const auto& members = *g.dual_orbit_members();
  const std::uint64_t order = g.order();

  // Degrees q^m of irreducibles satisfy q^m <= max supercharacter degree and q^2m <= [G:Z].
  std::size_t max_codim = 0;
  for (std::size_t k = 0; k < part->count(); ++k) {
    Vec lam = part->representative(k);
    max_codim = std::max(max_codim, d - left_stabilizer_algebra(alg, lam).dim());
  }
  max_codim = std::min(max_codim, (d - center(alg).dim()) / 2);

  IrrSet out;
  out.algebra = alg;
  out.class_count = conjugacy_classes(g).count();

  std::set<Signature> seen;
  std::vector<std::pair<Signature, IrrCharacter>> found;
  unsigned __int128 degree_square_sum = 0;

  for_each_subalgebra_by_codim(alg, max_codim, [&](const Subspace& h) {
    if (++out.subalgebras_scanned > opts.max_subalgebras)
      throw CapacityError("oracle visited more than " + std::to_string(opts.max_subalgebras) + " subalgebras",
                          static_cast<std::uint64_t>(found.size()));
    const std::size_t m = d - h.dim();
    const std::uint64_t degree = checked_pow(q, m);
    Subspace h2_local = relative_subspace(h, product_space(alg, h, h));
    Subspace linear = h2_local.annihilator();
    Subspace ann_h = h.annihilator();
    std::vector<Vec> ann_basis = ann_h.basis_vectors();
    linear.for_each_vector([&](const Vec& mu) {
      AffineSet lifts = lift_functional(h, mu);
      Signature counts;
      counts.reserve(std::size_t(degree));
      lifts.for_each([&](const Vec& nu) { counts.emplace_back(part->orbit_of[pack_key(nu, q)], 1); });
      std::sort(counts.begin(), counts.end());
      Signature sig;
      for (const auto& [id, c] : counts) {
        if (!sig.empty() && sig.back().first == id)
          ++sig.back().second;
        else
          sig.emplace_back(id, 1);
      }
      // norm = sum n_O^2 / |O|; compare q^d * norm with q^d exactly
      unsigned __int128 scaled = 0;
      for (const auto& [id, n] : sig) scaled += (unsigned __int128)n * n * (order / part->sizes[id]);
      if (scaled != order) return;
      if (!seen.insert(sig).second) return;
      IrrCharacter ic;
      ic.degree = degree;
      ic.inducing_subalgebra = h;
      ic.inducing_functional = mu;
      degree_square_sum += (unsigned __int128)degree * degree;
      found.emplace_back(std::move(sig), std::move(ic));
    });
    return degree_square_sum < order;
  });

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.degree != b.second.degree) return a.second.degree < b.second.degree;
    return a.first < b.first;
  });
  for (auto& [sig, ic] : found) {
    ClassFunction chi(alg);
    for (const auto& [id, n] : sig) {
      Cyclo c = Cyclo::rational(f.p(), mpq_class(static_cast<unsigned long>(n), static_cast<unsigned long>(part->sizes[id])));
      for (auto key : members[id]) chi.set_at(key, c);
    }
    ic.chi = std::move(chi);
    out.chars.push_back(std::move(ic));
  }
  if (out.chars.size() < out.class_count) complete_from_class_algebra(g, out);

  mpz_class squares = 0;
  for (const auto& c : out.chars) squares += mpz_class(static_cast<unsigned long>(c.degree)) * c.degree;
  if (squares != mpz_class(static_cast<unsigned long>(order)) || out.chars.size() != out.class_count)
    throw InternalError("oracle certification failed: found " + std::to_string(out.chars.size()) +
                        " irreducibles (class count " + std::to_string(out.class_count) + ") with sum of squared degrees " +
                        squares.get_str() + " against |G| = " + std::to_string(order));
  std::stable_sort(out.chars.begin(), out.chars.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  return out;
}

std::vector<std::size_t> Decomposition::constituents() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    if (!multiplicities[i].is_zero()) out.push_back(i);
  return out;
}

Decomposition decompose(const ClassFunction& f, const IrrSet& irr) {
  if (!(f.algebra() == irr.algebra)) throw DomainError("decomposition against characters of a different algebra");
  Decomposition dec;
  ClassFunction rebuilt(f.algebra());
  for (const auto& c : irr.chars) {
    Cyclo m = inner(f, c.chi);
    if (!m.is_zero()) rebuilt += c.chi.scaled(m);
    dec.multiplicities.push_back(std::move(m));
  }
  dec.in_span = rebuilt == f;
  return dec;
}

bool is_character(const ClassFunction& f, const IrrSet& irr) {
  if (f.is_zero()) return false;
  Decomposition dec = decompose(f, irr);
  if (!dec.in_span) return false;
  for (const auto& m : dec.multiplicities) {
    auto r = m.to_rational();
    if (!r || r->get_den() != 1 || *r < 0) return false;
  }
  return true;
}

bool is_irreducible(const ClassFunction& f, const IrrSet& irr) { return irr.find(f) >= 0; }

}  // namespace algchar
