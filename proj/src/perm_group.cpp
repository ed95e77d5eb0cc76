#include "saut/perm_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "saut/common.hpp"

namespace saut {

namespace {

int smallest_moved_point(const Permutation& p) {
  for (int x = 0; x < p.degree(); ++x)
    if (p[x] != x) return x;
  return -1;
}

// Incremental Schreier-Sims.  A generator stored at level j fixes the bases
// of all earlier levels, so the generating set of the stabilizer G_i is the
// union of the generators of levels i and deeper.
struct ChainBuilder {
  int degree;
  std::vector<ChainLevel> levels;

  std::vector<Permutation> cumulative_gens(std::size_t li) const {
    std::vector<Permutation> out;
    for (std::size_t l = li; l < levels.size(); ++l)
      out.insert(out.end(), levels[l].gens.begin(), levels[l].gens.end());
    return out;
  }

  void update_orbit(std::size_t li) {
    ChainLevel& L = levels[li];
    const std::vector<Permutation> gens = cumulative_gens(li);
    L.orbit.assign(1, L.base);
    L.orbit_pos.assign(degree, -1);
    L.orbit_pos[L.base] = 0;
    L.transversal.assign(1, Permutation::identity(degree));
    for (std::size_t t = 0; t < L.orbit.size(); ++t) {
      for (const Permutation& g : gens) {
        const int y = g[L.orbit[t]];
        if (L.orbit_pos[y] < 0) {
          L.orbit_pos[y] = static_cast<int>(L.orbit.size());
          L.orbit.push_back(y);
          L.transversal.push_back(compose(L.transversal[t], g));
        }
      }
    }
  }

  // Strips g through levels li.. and returns the residue with the level it
  // got stuck at (levels.size() when it passed every level).
  std::pair<Permutation, std::size_t> strip(std::size_t li, Permutation g) const {
    for (std::size_t l = li; l < levels.size(); ++l) {
      if (g.is_identity()) return {std::move(g), l};
      const ChainLevel& L = levels[l];
      const int pos = L.orbit_pos[g[L.base]];
      if (pos < 0) return {std::move(g), l};
      g = compose(g, L.transversal[pos].inverse());
    }
    return {std::move(g), levels.size()};
  }

  // Ensures level li is complete: its orbit reflects the cumulative
  // generators and every Schreier generator lies in the group below.
  void complete(std::size_t li) {
    update_orbit(li);
    bool changed = true;
    while (changed) {
      changed = false;
      const ChainLevel& L = levels[li];
      const std::vector<Permutation> gens = cumulative_gens(li);
      for (std::size_t t = 0; t < L.orbit.size() && !changed; ++t) {
        for (const Permutation& s : gens) {
          const Permutation ts = compose(L.transversal[t], s);
          const int pos = L.orbit_pos[ts[L.base]];
          Permutation sg = compose(ts, L.transversal[pos].inverse());
          if (sg.is_identity()) continue;
          auto [residue, j] = strip(li + 1, std::move(sg));
          if (residue.is_identity()) continue;
          if (j == levels.size()) {
            ChainLevel nl;
            nl.base = smallest_moved_point(residue);
            levels.push_back(std::move(nl));
          }
          levels[j].gens.push_back(std::move(residue));
          for (std::size_t l = j; l > li; --l) complete(l);
          update_orbit(li);
          changed = true;
          break;
        }
      }
    }
  }

  void build(const std::vector<Permutation>& input) {
    std::vector<Permutation> gens;
    for (const Permutation& g : input)
      if (!g.is_identity()) gens.push_back(g);
    if (gens.empty()) return;
    int base = degree;
    for (const Permutation& g : gens) base = std::min(base, smallest_moved_point(g));
    ChainLevel L0;
    L0.base = base;
    levels.push_back(std::move(L0));
    levels[0].gens = std::move(gens);
    complete(0);
  }
};

}  // namespace

unsigned long long StabChain::order() const {
  unsigned __int128 o = 1;
  for (const ChainLevel& L : levels) {
    o *= L.orbit.size();
    if (o > static_cast<unsigned __int128>(~0ULL)) throw capacity_error("group order exceeds 64 bits");
  }
  return static_cast<unsigned long long>(o);
}

bool StabChain::contains(const Permutation& p) const {
  if (p.degree() != degree) return false;
  Permutation g = p;
  for (const ChainLevel& L : levels) {
    if (g.is_identity()) return true;
    const int pos = L.orbit_pos[g[L.base]];
    if (pos < 0) return false;
    g = compose(g, L.transversal[pos].inverse());
  }
  return g.is_identity();
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  for (const Permutation& g : gens_)
    if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
}

void PermGroup::build_chain() const {
  if (chain_) return;
  ChainBuilder b{degree_, {}};
  b.build(gens_);
  auto chain = std::make_shared<StabChain>();
  chain->degree = degree_;
  chain->levels = std::move(b.levels);
  chain_ = std::move(chain);
}

const StabChain& PermGroup::chain() const {
  build_chain();
  return *chain_;
}

unsigned long long PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  return chain().contains(p);
}

std::vector<Permutation> PermGroup::elements(unsigned long long bound) const {
  if (order() > bound) throw capacity_error("group too large to enumerate");
  ElementIndexer idx(*this);
  std::vector<Permutation> out;
  out.reserve(idx.size());
  for (unsigned long long i = 0; i < idx.size(); ++i) out.push_back(idx.element(i));
  std::sort(out.begin(), out.end());
  return out;
}

PermGroup symmetric_group(int m) {
  std::vector<Permutation> gens;
  if (m >= 2) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    std::swap(im[0], im[1]);
    gens.push_back(Permutation::from_images(im));
  }
  if (m >= 3) {
    std::vector<int> im(m);
    for (int i = 0; i < m; ++i) im[i] = (i + 1) % m;
    gens.push_back(Permutation::from_images(im));
  }
  return PermGroup(m, std::move(gens));
}

PermGroup alternating_group(int m) {
  std::vector<Permutation> gens;
  if (m >= 3) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    im[0] = 1;
    im[1] = 2;
    im[2] = 0;
    gens.push_back(Permutation::from_images(im));
  }
  if (m >= 4) {
    std::vector<int> im(m);
    if (m % 2 == 1) {
      for (int i = 0; i < m; ++i) im[i] = (i + 1) % m;
    } else {
      im[0] = 0;
      for (int i = 1; i < m; ++i) im[i] = (i % (m - 1)) + 1;
    }
    gens.push_back(Permutation::from_images(im));
  }
  return PermGroup(m, std::move(gens));
}

ElementIndexer::ElementIndexer(const PermGroup& group)
    : chain_(&group.chain()), degree_(group.degree()) {
  size_ = chain_->order();
}

Permutation ElementIndexer::element(unsigned long long index) const {
  if (index >= size_) throw std::invalid_argument("element index out of range");
  // Factorization g = h * u with u the top-level transversal element and h
  // from the deeper levels, so transversals compose deepest first.  Level 0
  // holds the least significant digit; within a level the digit follows
  // orbit BFS order.
  std::vector<std::size_t> digit(chain_->levels.size());
  for (std::size_t l = 0; l < chain_->levels.size(); ++l) {
    const unsigned long long w = chain_->levels[l].orbit.size();
    digit[l] = static_cast<std::size_t>(index % w);
    index /= w;
  }
  Permutation e = Permutation::identity(degree_);
  for (std::size_t l = chain_->levels.size(); l-- > 0;)
    e = compose(e, chain_->levels[l].transversal[digit[l]]);
  return e;
}

std::vector<Permutation> even_subgroup_generators(const std::vector<Permutation>& gens, int degree) {
  std::vector<Permutation> evens, odds;
  for (const Permutation& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    (parity(g) == Parity::even ? evens : odds).push_back(g);
  }
  if (odds.empty()) return evens;
  // Schreier generators of the parity kernel, transversal {id, t}.
  const Permutation& t = odds.front();
  const Permutation ti = t.inverse();
  std::vector<Permutation> out;
  auto add = [&](Permutation p) {
    if (!p.is_identity() && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  for (const Permutation& g : evens) {
    add(g);
    add(compose(compose(t, g), ti));
  }
  for (const Permutation& g : odds) {
    add(compose(g, ti));
    add(compose(t, g));
  }
  return out;
}

namespace {

// Orbit of `start` under `gens` with transversal perms, BFS in generator
// order.
struct OrbitData {
  std::vector<int> points;
  std::vector<Permutation> transversal;
  std::vector<int> pos;  // point -> index or -1
};

OrbitData orbit_with_transversal(int degree, const std::vector<Permutation>& gens, int start) {
  OrbitData o;
  o.pos.assign(degree, -1);
  o.points.push_back(start);
  o.pos[start] = 0;
  o.transversal.push_back(Permutation::identity(degree));
  for (std::size_t t = 0; t < o.points.size(); ++t) {
    for (const Permutation& g : gens) {
      const int y = g[o.points[t]];
      if (o.pos[y] < 0) {
        o.pos[y] = static_cast<int>(o.points.size());
        o.points.push_back(y);
        o.transversal.push_back(compose(o.transversal[t], g));
      }
    }
  }
  return o;
}

std::vector<Permutation> stabilizer_schreier_gens(const OrbitData& o, const std::vector<Permutation>& gens) {
  std::vector<Permutation> out;
  for (std::size_t t = 0; t < o.points.size(); ++t)
    for (const Permutation& g : gens) {
      Permutation sg = compose(o.transversal[t], g);
      sg = compose(sg, o.transversal[o.pos[sg[o.points[0]]]].inverse());
      if (!sg.is_identity()) out.push_back(std::move(sg));
    }
  return out;
}

// Points of `candidates` fixed by every permutation in `stab`.
std::vector<int> fixed_points_in(const std::vector<int>& candidates, const std::vector<Permutation>& stab) {
  std::vector<int> out;
  for (int x : candidates) {
    bool fixed = true;
    for (const Permutation& s : stab)
      if (s[x] != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

}  // namespace

PermGroup centralizer_in_alternating(int m, const std::vector<Permutation>& centralized) {
  std::vector<Permutation> gens;
  for (const Permutation& g : centralized) {
    if (g.degree() != m) throw std::invalid_argument("centralized element degree mismatch");
    if (!g.is_identity()) gens.push_back(g);
  }

  // Orbits of the centralized group in ascending base-point order.
  std::vector<int> assigned(m, 0);
  struct OrbitInfo {
    OrbitData data;
    std::vector<Permutation> stab_gens;
  };
  std::vector<OrbitInfo> orbits;
  for (int x = 0; x < m; ++x) {
    if (assigned[x]) continue;
    OrbitInfo info;
    info.data = orbit_with_transversal(m, gens, x);
    for (int y : info.data.points) assigned[y] = 1;
    info.stab_gens = stabilizer_schreier_gens(info.data, gens);
    orbits.push_back(std::move(info));
  }

  std::vector<Permutation> cgens;

  // Within-orbit centralizing elements: one per fixed point of the base
  // stabilizer, mapping x = base^u to delta^u.
  for (const OrbitInfo& info : orbits) {
    const int base = info.data.points[0];
    for (int delta : fixed_points_in(info.data.points, info.stab_gens)) {
      if (delta == base) continue;
      std::vector<int> im(m);
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t t = 0; t < info.data.points.size(); ++t)
        im[info.data.points[t]] = info.data.transversal[t][delta];
      cgens.push_back(Permutation::from_images(std::move(im)));
    }
  }

  // Orbit-swapping isomorphisms between orbits with the same induced
  // action; the map sends base^u to delta^u for a fixed point delta of the
  // first orbit's stabilizer inside the second.
  std::vector<int> type_of(orbits.size(), -1);
  int next_type = 0;
  for (std::size_t a = 0; a < orbits.size(); ++a) {
    if (type_of[a] >= 0) continue;
    type_of[a] = next_type;
    for (std::size_t b = a + 1; b < orbits.size(); ++b) {
      if (type_of[b] >= 0) continue;
      if (orbits[b].data.points.size() != orbits[a].data.points.size()) continue;
      std::vector<int> fixed = fixed_points_in(orbits[b].data.points, orbits[a].stab_gens);
      if (fixed.empty()) continue;
      type_of[b] = next_type;
      const int delta = fixed.front();
      std::vector<int> im(m);
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t t = 0; t < orbits[a].data.points.size(); ++t) {
        const int x = orbits[a].data.points[t];
        const int y = orbits[a].data.transversal[t][delta];
        im[x] = y;
        im[y] = x;
      }
      cgens.push_back(Permutation::from_images(std::move(im)));
    }
    ++next_type;
  }

  return PermGroup(m, even_subgroup_generators(cgens, m));
}

namespace {

// Element table for a small group: closure, indices, multiplication by
// element index, BFS factorization over the given generators.
struct ElementTable {
  std::vector<Permutation> elems;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  std::vector<int> gen_idx;
  std::vector<std::pair<int, int>> bfs;  // (parent element, generator) per element; root (-1,-1)
  std::vector<std::vector<int>> mult;    // optional; filled on build

  int index_of(const Permutation& p) const {
    auto it = buckets.find(p.hash());
    if (it == buckets.end()) return -1;
    for (int i : it->second)
      if (elems[i] == p) return i;
    return -1;
  }

  static ElementTable build(const std::vector<Permutation>& gens, int degree, std::size_t cap) {
    ElementTable t;
    auto add = [&](const Permutation& p, int parent, int gen) -> int {
      int found = t.index_of(p);
      if (found >= 0) return -1;
      t.elems.push_back(p);
      const int id = static_cast<int>(t.elems.size()) - 1;
      t.buckets[p.hash()].push_back(id);
      t.bfs.emplace_back(parent, gen);
      return id;
    };
    add(Permutation::identity(degree), -1, -1);
    for (std::size_t head = 0; head < t.elems.size(); ++head) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Permutation next = compose(t.elems[head], gens[gi]);
        add(next, static_cast<int>(head), static_cast<int>(gi));
        if (t.elems.size() > cap) throw capacity_error("element table too large");
      }
    }
    for (const Permutation& g : gens) t.gen_idx.push_back(t.index_of(g));
    t.mult.assign(t.elems.size(), std::vector<int>(gens.size(), -1));
    for (std::size_t e = 0; e < t.elems.size(); ++e)
      for (std::size_t gi = 0; gi < gens.size(); ++gi)
        t.mult[e][gi] = t.index_of(compose(t.elems[e], gens[gi]));
    return t;
  }
};

std::vector<Permutation> small_generating_set(const PermGroup& g) {
  const unsigned long long target = g.order();
  std::vector<Permutation> picked;
  unsigned long long have = 1;
  for (const Permutation& cand : g.generators()) {
    if (have == target) break;
    std::vector<Permutation> trial = picked;
    trial.push_back(cand);
    PermGroup t(g.degree(), trial);
    if (t.order() > have) {
      picked = std::move(trial);
      have = PermGroup(g.degree(), picked).order();
    }
  }
  return picked;
}

}  // namespace

std::optional<Permutation> are_conjugate_subgroups(const PermGroup* ambient, const PermGroup& h1,
                                                   const PermGroup& h2, long long node_budget) {
  if (h1.degree() != h2.degree()) throw std::invalid_argument("subgroup degree mismatch");
  const int m = h1.degree();
  if (ambient && ambient->degree() != m) throw std::invalid_argument("ambient degree mismatch");

  if (h1.order() != h2.order()) return std::nullopt;
  const unsigned long long order = h1.order();
  if (order > 100000) throw capacity_error("subgroup too large for conjugacy search");

  std::vector<Permutation> e1 = h1.elements(order);
  std::vector<Permutation> e2 = h2.elements(order);

  if (e1 == e2) return Permutation::identity(m);

  // Invariant screen: cycle-type census of all elements.
  auto census = [](const std::vector<Permutation>& es) {
    std::vector<std::vector<int>> c;
    c.reserve(es.size());
    for (const Permutation& p : es) c.push_back(cycle_type(p));
    std::sort(c.begin(), c.end());
    return c;
  };
  if (census(e1) != census(e2)) return std::nullopt;

  // Invariant screen: orbit length multisets.
  auto orbit_sizes = [m](const std::vector<Permutation>& gens) {
    std::vector<int> assigned(m, 0), sizes;
    for (int x = 0; x < m; ++x) {
      if (assigned[x]) continue;
      OrbitData o = orbit_with_transversal(m, gens, x);
      for (int y : o.points) assigned[y] = 1;
      sizes.push_back(static_cast<int>(o.points.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (orbit_sizes(h1.generators()) != orbit_sizes(h2.generators())) return std::nullopt;

  const std::vector<Permutation> gens1 = small_generating_set(h1);
  ElementTable t1 = ElementTable::build(gens1, m, order + 1);

  std::unordered_map<std::uint64_t, int> in_h2;
  for (std::size_t i = 0; i < e2.size(); ++i) in_h2.emplace(e2[i].hash(), 1);
  auto h2_has = [&](const Permutation& p) {
    auto it = in_h2.find(p.hash());
    if (it == in_h2.end()) return false;
    return std::binary_search(e2.begin(), e2.end(), p);
  };

  // Candidate images per generator, bucketed by cycle type.
  std::vector<std::vector<Permutation>> cands(gens1.size());
  for (std::size_t gi = 0; gi < gens1.size(); ++gi) {
    const std::vector<int> ct = cycle_type(gens1[gi]);
    for (const Permutation& y : e2)
      if (cycle_type(y) == ct) cands[gi].push_back(y);
  }

  long long nodes = 0;
  auto charge = [&](long long k = 1) {
    nodes += k;
    if (nodes > node_budget) throw capacity_error("conjugacy search node budget exceeded");
  };

  // Orbits of the natural H1 action, used for every candidate isomorphism.
  std::vector<OrbitData> orbits1;
  {
    std::vector<int> assigned(m, 0);
    for (int x = 0; x < m; ++x) {
      if (assigned[x]) continue;
      OrbitData o = orbit_with_transversal(m, gens1, x);
      for (int y : o.points) assigned[y] = 1;
      orbits1.push_back(std::move(o));
    }
  }

  // Point stabilizers in H1 as sorted element-index sets.
  const int n_elems = static_cast<int>(t1.elems.size());
  auto stab_of_point_natural = [&](int pt) {
    std::vector<int> s;
    for (int e = 0; e < n_elems; ++e)
      if (t1.elems[e][pt] == pt) s.push_back(e);
    return s;
  };

  std::vector<Permutation> img(t1.elems.size());

  std::optional<Permutation> result;

  // With the candidate isomorphism phi fixed (as img over H1), try to build
  // a point bijection g with x^g = phi(x) for all x, enumerating orbit
  // matchings and alignment choices until one lands inside the ambient
  // group.
  auto try_build_conjugator = [&]() -> bool {
    // Stab of q under the phi-twisted action, as H1 element indices.
    auto stab_of_point_twisted = [&](int q) {
      std::vector<int> s;
      for (int e = 0; e < n_elems; ++e)
        if (img[e][q] == q) s.push_back(e);
      return s;
    };
    // Conjugating c*S*c^-1 inside H1 element indices.
    std::vector<int> inv_of(n_elems, -1);
    for (int e = 0; e < n_elems; ++e) {
      const Permutation ip = t1.elems[e].inverse();
      inv_of[e] = t1.index_of(ip);
    }
    auto mul_elems = [&](int a, int b) { return t1.index_of(compose(t1.elems[a], t1.elems[b])); };

    // Orbits of the twisted action.
    std::vector<Permutation> tw_gens;
    for (int gi : t1.gen_idx) tw_gens.push_back(img[gi]);
    std::vector<OrbitData> orbits2;
    {
      std::vector<int> assigned(m, 0);
      for (int x = 0; x < m; ++x) {
        if (assigned[x]) continue;
        OrbitData o = orbit_with_transversal(m, tw_gens, x);
        for (int y : o.points) assigned[y] = 1;
        orbits2.push_back(std::move(o));
      }
    }
    if (orbits2.size() != orbits1.size()) return false;

    std::vector<std::vector<int>> stab1(orbits1.size()), stab2(orbits2.size());
    for (std::size_t a = 0; a < orbits1.size(); ++a) stab1[a] = stab_of_point_natural(orbits1[a].points[0]);
    for (std::size_t b = 0; b < orbits2.size(); ++b) stab2[b] = stab_of_point_twisted(orbits2[b].points[0]);

    // For orbit pair (a,b): elements c of H1 with c stab1[a] c^-1 ==
    // stab2[b], deduplicated by the point map they induce (distinct c can
    // align the orbits identically).
    auto aligners = [&](std::size_t a, std::size_t b) {
      std::vector<int> out;
      if (orbits1[a].points.size() != orbits2[b].points.size()) return out;
      if (stab1[a].size() != stab2[b].size()) return out;
      std::vector<std::vector<int>> seen_maps;
      for (int c = 0; c < n_elems; ++c) {
        charge();
        bool ok = true;
        for (int s : stab1[a]) {
          const int conj = mul_elems(mul_elems(c, s), inv_of[c]);
          if (!std::binary_search(stab2[b].begin(), stab2[b].end(), conj)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        std::vector<int> theta(orbits1[a].points.size());
        for (std::size_t t = 0; t < theta.size(); ++t) {
          const int u = t1.index_of(orbits1[a].transversal[t]);
          theta[t] = img[mul_elems(c, u)][orbits2[b].points[0]];
        }
        if (std::find(seen_maps.begin(), seen_maps.end(), theta) == seen_maps.end()) {
          seen_maps.push_back(std::move(theta));
          out.push_back(c);
        }
      }
      return out;
    };

    std::vector<int> match(orbits1.size(), -1);
    std::vector<char> used(orbits2.size(), 0);
    std::vector<std::vector<std::vector<int>>> align_cache(
        orbits1.size(), std::vector<std::vector<int>>(orbits2.size()));
    std::vector<std::vector<char>> align_known(orbits1.size(), std::vector<char>(orbits2.size(), 0));

    std::vector<int> gmap(m, -1);

    std::function<bool(std::size_t)> place = [&](std::size_t a) -> bool {
      if (a == orbits1.size()) {
        Permutation g = Permutation::from_images(gmap);
        bool good = true;
        for (std::size_t gi = 0; gi < gens1.size(); ++gi)
          if (conjugate(gens1[gi], g) != img[t1.gen_idx[gi]]) {
            good = false;
            break;
          }
        if (!good) return false;
        if (ambient && !ambient->contains(g)) return false;
        result = std::move(g);
        return true;
      }
      for (std::size_t b = 0; b < orbits2.size(); ++b) {
        if (used[b]) continue;
        if (!align_known[a][b]) {
          align_cache[a][b] = aligners(a, b);
          align_known[a][b] = 1;
        }
        for (int c : align_cache[a][b]) {
          charge();
          // theta: base1^u  ->  base2^{phi(c*u)}
          bool ok = true;
          for (std::size_t t = 0; t < orbits1[a].points.size(); ++t) {
            const int u = t1.index_of(orbits1[a].transversal[t]);
            const int cu = mul_elems(c, u);
            const int target = img[cu][orbits2[b].points[0]];
            gmap[orbits1[a].points[t]] = target;
          }
          (void)ok;
          used[b] = 1;
          if (place(a + 1)) return true;
          used[b] = 0;
          for (int pt : orbits1[a].points) gmap[pt] = -1;
        }
      }
      return false;
    };
    return place(0);
  };

  // Orders of the prefix subgroups of gens1, for pruning.
  std::vector<unsigned long long> prefix_order(gens1.size());
  for (std::size_t i = 0; i < gens1.size(); ++i) {
    std::vector<Permutation> pre(gens1.begin(), gens1.begin() + i + 1);
    prefix_order[i] = PermGroup(m, pre).order();
  }

  // Backtrack over generator images.
  std::vector<int> choice(gens1.size(), 0);
  std::function<bool(std::size_t)> pick = [&](std::size_t gi) -> bool {
    if (gi >= 1 && gi < gens1.size()) {
      std::vector<Permutation> pre;
      for (std::size_t i = 0; i < gi; ++i) pre.push_back(cands[i][choice[i]]);
      if (PermGroup(m, pre).order() != prefix_order[gi - 1]) return false;
    }
    if (gi == gens1.size()) {
      // Check the generator map extends to an isomorphism via BFS words.
      img[0] = Permutation::identity(m);
      for (std::size_t e = 1; e < t1.elems.size(); ++e) {
        const auto [parent, gen] = t1.bfs[e];
        img[e] = compose(img[parent], cands[gen][choice[gen]]);
      }
      for (std::size_t e = 0; e < t1.elems.size(); ++e) {
        charge();
        for (std::size_t g = 0; g < gens1.size(); ++g)
          if (img[t1.mult[e][g]] != compose(img[e], cands[g][choice[g]])) return false;
      }
      // Injectivity into H2 (same size, so bijective).
      std::vector<Permutation> sorted_img(img);
      std::sort(sorted_img.begin(), sorted_img.end());
      for (std::size_t e = 0; e + 1 < sorted_img.size(); ++e)
        if (sorted_img[e] == sorted_img[e + 1]) return false;
      for (const Permutation& p : sorted_img)
        if (!h2_has(p)) return false;
      return try_build_conjugator();
    }
    for (std::size_t c = 0; c < cands[gi].size(); ++c) {
      charge();
      choice[gi] = static_cast<int>(c);
      if (pick(gi + 1)) return true;
    }
    return false;
  };

  if (pick(0)) return result;
  return std::nullopt;
}

}  // namespace saut
