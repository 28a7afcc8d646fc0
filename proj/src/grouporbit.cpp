#include "algchar/grouporbit.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "algchar/errors.hpp"

namespace algchar {

const char* action_name(Action a) {
  switch (a) {
    case Action::coadjoint: return "coadjoint";
    case Action::left: return "left";
    case Action::right: return "right";
    case Action::conjugation: return "conjugation";
    case Action::left_mult: return "left-multiplication";
    case Action::right_mult: return "right-multiplication";
  }
  return "?";
}

const char* orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::coadjoint: return "coadjoint";
    case OrbitKind::left: return "left";
    case OrbitKind::right: return "right";
    case OrbitKind::two_sided: return "two_sided";
  }
  return "?";
}

Group::Group(Algebra alg) : alg_(std::move(alg)), cache_(std::make_shared<Cache>()) {}

Vec Group::mul(const Vec& x, const Vec& y) const {
  Vec r = alg_.mul(x, y);
  const Field& f = field();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(r[i], f.add(x[i], y[i]));
  return r;
}

Vec Group::inv(const Vec& x) const {
  const Field& f = field();
  Vec neg = vec_scale(f, f.neg(1), x);
  Vec term = neg;
  Vec acc = neg;
  for (std::size_t k = 1; k < alg_.nilpotency_index() + 1; ++k) {
    term = alg_.mul(term, neg);
    if (vec_is_zero(term)) break;
    acc = vec_add(f, acc, term);
  }
  return acc;
}

Matrix Group::action_matrix(const Vec& g, Action a) const {
  const Field& f = field();
  const std::size_t d = dim();
  if (g.size() != d) throw DomainError("group element has wrong length");
  Vec y = (a == Action::coadjoint || a == Action::left || a == Action::right || a == Action::conjugation)
              ? inv(g)
              : Vec();
  Matrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec b = unit_vector(d, j);
    Vec img;
    switch (a) {
      case Action::coadjoint:
      case Action::conjugation: {
        Vec gb = vec_add(f, b, alg_.mul(g, b));
        img = vec_add(f, gb, alg_.mul(gb, y));
        break;
      }
      case Action::left: img = vec_add(f, b, alg_.mul(y, b)); break;
      case Action::right: img = vec_add(f, b, alg_.mul(b, y)); break;
      case Action::left_mult: img = vec_add(f, b, alg_.mul(g, b)); break;
      case Action::right_mult: img = vec_add(f, b, alg_.mul(b, g)); break;
    }
    // Dual actions put the image in column j, actions on n put it in row j.
    if (a == Action::coadjoint || a == Action::left || a == Action::right) {
      for (std::size_t k = 0; k < d; ++k) m(k, j) = img[k];
    } else {
      m.set_row(j, img);
    }
  }
  return m;
}

std::vector<Vec> Group::generator_elements(const Subspace& h) const {
  std::vector<Subspace> powers{h};
  while (powers.back().dim() > 0) powers.push_back(product_space(alg_, powers.back(), h));
  if (powers.size() > 1 && !h.contains(powers[1])) powers.resize(1);  // not closed: plain RREF basis
  // deepest power first, each extended by RREF vectors of the next one up
  std::vector<Vec> basis;
  Subspace covered = Subspace::zero(field(), dim());
  for (auto it = powers.rbegin(); it != powers.rend(); ++it)
    for (const Vec& b : it->basis_vectors())
      if (!covered.contains(b)) {
        covered = covered.sum(Subspace::span(field(), dim(), {b}));
        basis.push_back(b);
      }
  std::vector<Vec> out;
  for (const Vec& b : basis)
    for (unsigned t = 1; t < field().q(); ++t) out.push_back(vec_scale(field(), static_cast<Elem>(t), b));
  return out;
}

std::vector<Matrix> Group::generator_matrices(Action a, const Subspace& h) const {
  std::vector<Matrix> out;
  for (const Vec& g : generator_elements(h)) out.push_back(action_matrix(g, a));
  return out;
}

const std::vector<Matrix>& Group::generator_matrices(Action a) const {
  auto k = static_cast<std::size_t>(a);
  std::call_once(cache_->once[k], [&] {
    cache_->gens[k] = generator_matrices(a, Subspace::full(field(), dim()));
  });
  return cache_->gens[k];
}

const OrbitPartition* Group::dual_orbits() const {
  std::call_once(cache_->dual_once, [&] {
    if (!pow_fits(field().q(), dim(), std::uint64_t(1) << 22)) return;
    auto part = std::make_shared<const OrbitPartition>(coadjoint_partition(*this));
    cache_->dual_members.assign(part->count(), {});
    for (std::size_t k = 0; k < part->count(); ++k) cache_->dual_members[k].reserve(part->sizes[k]);
    for (std::uint64_t i = 0; i < part->orbit_of.size(); ++i) cache_->dual_members[part->orbit_of[i]].push_back(i);
    cache_->dual = std::move(part);
  });
  return cache_->dual.get();
}

const std::vector<std::vector<std::uint64_t>>* Group::dual_orbit_members() const {
  return dual_orbits() ? &cache_->dual_members : nullptr;
}

std::vector<AffineMap> restrict_maps(const AffineSet& set, const std::vector<Matrix>& maps) {
  const Field& f = set.field();
  const Subspace& dirs = set.directions();
  const std::size_t k = set.dim();
  std::vector<AffineMap> out;
  out.reserve(maps.size());
  for (const Matrix& m : maps) {
    if (m.rows() != set.ambient_dim() || m.cols() != set.ambient_dim())
      throw DomainError("action matrix does not match the ambient dimension of the point set");
    AffineMap am;
    Vec image = vec_mat(f, set.base(), m);
    if (!set.contains(image))
      throw DomainError("point set is not closed under the action: " + vec_to_string(set.base()) + " maps to " +
                        vec_to_string(image));
    am.shift = set.local_coords(image);
    am.a = Matrix(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      Vec dm = vec_mat(f, dirs.basis_vector(r), m);
      if (!dirs.contains(dm)) {
        Vec pt = vec_add(f, set.base(), dirs.basis_vector(r));
        throw DomainError("point set is not closed under the action: " + vec_to_string(pt) + " maps to " +
                          vec_to_string(vec_mat(f, pt, m)));
      }
      for (std::size_t i = 0; i < k; ++i) am.a(r, i) = dm[dirs.pivots()[i]];
    }
    out.push_back(std::move(am));
  }
  return out;
}

namespace {

// Applies affine maps to local indices.
class IndexStepper {
 public:
  IndexStepper(const Field& f, std::size_t k, const std::vector<AffineMap>& maps) : f_(f), k_(k), maps_(maps) {
    if (f.q() == 2) {
      chunks_ = (k + 7) / 8;
      tables_.resize(maps.size());
      shifts_.resize(maps.size());
      for (std::size_t g = 0; g < maps.size(); ++g) {
        shifts_[g] = pack_key(maps[g].shift, 2);
        // row_bits[b] is the image of the basis index with only bit b set
        std::vector<std::uint64_t> row_bits(k);
        for (std::size_t b = 0; b < k; ++b) row_bits[b] = pack_key(maps[g].a.row_vec(k - 1 - b), 2);
        auto& t = tables_[g];
        t.assign(chunks_ * 256, 0);
        for (std::size_t c = 0; c < chunks_; ++c)
          for (unsigned byte = 1; byte < 256; ++byte) {
            std::uint64_t v = 0;
            for (unsigned bit = 0; bit < 8; ++bit) {
              std::size_t b = c * 8 + bit;
              if ((byte >> bit & 1) && b < k) v ^= row_bits[b];
            }
            t[c * 256 + byte] = v;
          }
      }
    }
  }

  std::uint64_t apply(std::size_t g, std::uint64_t idx) const {
    if (f_.q() == 2) {
      std::uint64_t v = shifts_[g];
      const auto& t = tables_[g];
      for (std::size_t c = 0; c < chunks_; ++c) v ^= t[c * 256 + ((idx >> (8 * c)) & 0xff)];
      return v;
    }
    Vec c = unpack_key(idx, k_, f_.q());
    const AffineMap& m = maps_[g];
    Vec out = m.shift;
    for (std::size_t r = 0; r < k_; ++r) {
      if (!c[r]) continue;
      for (std::size_t i = 0; i < k_; ++i) {
        Elem a = m.a(r, i);
        if (a) out[i] = f_.add(out[i], f_.mul(c[r], a));
      }
    }
    return pack_key(out, f_.q());
  }

  std::size_t map_count() const { return maps_.size(); }

 private:
  const Field& f_;
  std::size_t k_;
  const std::vector<AffineMap>& maps_;
  std::size_t chunks_ = 0;
  std::vector<std::vector<std::uint64_t>> tables_;
  std::vector<std::uint64_t> shifts_;
};

}  // namespace

OrbitPartition partition_orbits(const AffineSet& set, const std::vector<Matrix>& maps, const PartitionOptions& opts) {
  OrbitPartition part;
  part.set = set;
  const Field& f = set.field();
  const std::size_t k = set.dim();
  if (!pow_fits(f.q(), k, std::uint64_t(1) << 40))
    throw CapacityError("orbit partition: the point set has more than 2^40 points");
  const std::uint64_t n = checked_pow(f.q(), k);
  std::uint64_t bytes = n / 8 + 8;
  if (opts.keep_membership) bytes += n * sizeof(std::uint32_t);
  if (bytes > opts.guard_bytes)
    throw CapacityError("orbit partition needs about " + std::to_string(bytes) + " bytes for " + std::to_string(n) +
                        " points, above the guard of " + std::to_string(opts.guard_bytes) + " bytes");
  if (opts.keep_membership && opts.resume)
    throw DomainError("resuming a checkpoint is only supported for count-only partitions");

  std::vector<AffineMap> local = restrict_maps(set, maps);
  IndexStepper step(f, k, local);

  std::vector<std::uint64_t> visited((n + 63) / 64, 0);
  std::uint64_t start = 0;
  if (opts.resume) {
    if (opts.resume->visited.size() != visited.size()) throw DomainError("checkpoint does not match the point set");
    visited = opts.resume->visited;
    part.representatives = opts.resume->representatives;
    part.sizes = opts.resume->sizes;
    start = opts.resume->next_index;
  }
  if (opts.keep_membership) part.orbit_of.assign(n, 0);
  auto seen = [&](std::uint64_t i) { return (visited[i >> 6] >> (i & 63)) & 1; };
  auto mark = [&](std::uint64_t i) { visited[i >> 6] |= std::uint64_t(1) << (i & 63); };

  std::vector<std::uint64_t> queue;
  std::size_t since_checkpoint = 0;
  for (std::uint64_t idx = start; idx < n; ++idx) {
    if (seen(idx)) continue;
    const auto id = static_cast<std::uint32_t>(part.representatives.size());
    queue.clear();
    queue.push_back(idx);
    mark(idx);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint64_t cur = queue[head];
      if (opts.keep_membership) part.orbit_of[cur] = id;
      for (std::size_t g = 0; g < step.map_count(); ++g) {
        std::uint64_t nxt = step.apply(g, cur);
        if (!seen(nxt)) {
          mark(nxt);
          queue.push_back(nxt);
        }
      }
    }
    part.representatives.push_back(idx);
    part.sizes.push_back(queue.size());
    if (opts.checkpoint_every && opts.on_checkpoint && ++since_checkpoint == opts.checkpoint_every) {
      since_checkpoint = 0;
      opts.on_checkpoint(PartitionCheckpoint{idx + 1, visited, part.representatives, part.sizes});
    }
  }
  return part;
}

std::uint32_t OrbitPartition::orbit_id(const Vec& v) const {
  if (orbit_of.empty()) throw DomainError("partition was computed without membership");
  return orbit_of[set.index_of(v)];
}

std::map<std::uint64_t, std::uint64_t> OrbitPartition::size_histogram() const {
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto s : sizes) ++h[s];
  return h;
}

std::vector<Vec> OrbitPartition::members(std::size_t k) const {
  if (orbit_of.empty()) throw DomainError("partition was computed without membership");
  std::vector<Vec> out;
  for (std::uint64_t i = representatives.at(k); i < orbit_of.size(); ++i)
    if (orbit_of[i] == k) out.push_back(set.point_at(i));
  return out;
}

std::vector<Vec> orbit_points(const Field& f, const Vec& start, const std::vector<Matrix>& maps,
                              std::uint64_t max_points) {
  std::unordered_set<Vec, VecHash> seen;
  std::vector<Vec> queue{start};
  seen.insert(start);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Matrix& m : maps) {
      Vec nxt = vec_mat(f, queue[head], m);
      if (seen.insert(nxt).second) {
        if (seen.size() > max_points)
          throw CapacityError("orbit exceeds " + std::to_string(max_points) + " points", seen.size() - 1);
        queue.push_back(std::move(nxt));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

namespace {

std::size_t log_q(std::uint64_t n, unsigned q) {
  std::size_t e = 0;
  while (n > 1) {
    if (n % q) throw InternalError("orbit size " + std::to_string(n) + " is not a power of q");
    n /= q;
    ++e;
  }
  return e;
}

}  // namespace

OrbitReport orbit(const Group& g, const Vec& lambda, OrbitKind kind, bool enumerate, std::uint64_t max_points) {
  OrbitReport rep;
  rep.kind = kind;
  const Field& f = g.field();
  if (kind == OrbitKind::left || kind == OrbitKind::right) {
    AffineSet s = kind == OrbitKind::left ? left_orbit_affine(g.algebra(), lambda)
                                          : right_orbit_affine(g.algebra(), lambda);
    rep.size = s.size();
    rep.representative = s.point_at(0);
    rep.exponent = s.dim();
    if (enumerate) {
      if (rep.size > max_points) throw CapacityError("orbit enumeration exceeds the point guard");
      s.for_each([&](const Vec& v) { rep.elements.push_back(v); });
    }
    return rep;
  }
  std::vector<Matrix> maps;
  if (kind == OrbitKind::coadjoint) {
    maps = g.generator_matrices(Action::coadjoint);
  } else {
    maps = g.generator_matrices(Action::left);
    const auto& r = g.generator_matrices(Action::right);
    maps.insert(maps.end(), r.begin(), r.end());
  }
  std::vector<Vec> pts = orbit_points(f, lambda, maps, max_points);
  rep.size = pts.size();
  rep.representative = pts.front();
  rep.exponent = log_q(rep.size, f.q());
  if (enumerate) rep.elements = std::move(pts);
  return rep;
}

OrbitPartition coadjoint_partition(const Group& g, const PartitionOptions& opts) {
  return partition_orbits(AffineSet::whole(g.field(), g.dim()), g.generator_matrices(Action::coadjoint), opts);
}

OrbitPartition two_sided_partition(const Group& g, const PartitionOptions& opts) {
  std::vector<Matrix> maps = g.generator_matrices(Action::left);
  const auto& r = g.generator_matrices(Action::right);
  maps.insert(maps.end(), r.begin(), r.end());
  return partition_orbits(AffineSet::whole(g.field(), g.dim()), maps, opts);
}

OrbitPartition conjugacy_classes(const Group& g, const PartitionOptions& opts) {
  return partition_orbits(AffineSet::whole(g.field(), g.dim()), g.generator_matrices(Action::conjugation), opts);
}

OrbitPartition superclasses(const Group& g, const PartitionOptions& opts) {
  std::vector<Matrix> maps = g.generator_matrices(Action::left_mult);
  const auto& r = g.generator_matrices(Action::right_mult);
  maps.insert(maps.end(), r.begin(), r.end());
  return partition_orbits(AffineSet::whole(g.field(), g.dim()), maps, opts);
}

std::uint64_t generated_subgroup_order(const Group& g, const Subspace& h, std::uint64_t max_points) {
  std::vector<Vec> gens = g.generator_elements(h);
  std::unordered_set<Vec, VecHash> seen;
  std::vector<Vec> queue{g.identity()};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Vec& s : gens) {
      Vec nxt = g.mul(queue[head], s);
      if (seen.insert(nxt).second) {
        if (seen.size() > max_points)
          throw CapacityError("generated subgroup exceeds " + std::to_string(max_points) + " elements",
                              seen.size() - 1);
        queue.push_back(std::move(nxt));
      }
    }
  }
  return seen.size();
}

}  // namespace algchar
