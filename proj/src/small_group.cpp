#include "saut/small_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "saut/common.hpp"

namespace saut {

SmallGroup SmallGroup::from_generators(std::string name, int degree, std::vector<Permutation> gens,
                                       std::size_t cap) {
  SmallGroup g;
  g.name_ = std::move(name);
  g.degree_ = degree;
  g.gens_ = std::move(gens);
  for (const Permutation& p : g.gens_)
    if (p.degree() != degree) throw std::invalid_argument("generator degree mismatch");

  // Closure, then sort so element indices are machine-independent.
  std::map<Permutation, int> seen;
  std::deque<Permutation> queue;
  auto add = [&](const Permutation& p) {
    if (seen.emplace(p, 1).second) queue.push_back(p);
  };
  add(Permutation::identity(degree));
  for (const Permutation& p : g.gens_) add(p);
  while (!queue.empty()) {
    Permutation x = queue.front();
    queue.pop_front();
    for (const Permutation& s : g.gens_) add(compose(x, s));
    if (seen.size() > cap)
      throw capacity_error("group " + g.name_ + " exceeds the materialization cap of " +
                           std::to_string(cap) + " elements");
  }
  g.elems_.reserve(seen.size());
  for (const auto& [p, _] : seen) g.elems_.push_back(p);  // map iteration is sorted

  const int n = static_cast<int>(g.elems_.size());
  for (int i = 0; i < n; ++i) g.buckets_[g.elems_[i].hash()].push_back(i);

  for (const Permutation& p : g.gens_) g.gen_idx_.push_back(g.index_of(p));

  g.mult_.assign(static_cast<std::size_t>(n) * n, -1);
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = g.index_of(compose(g.elems_[a], g.elems_[b]));
      g.mult_[static_cast<std::size_t>(a) * n + b] = c;
      if (c == 0) g.inv_[a] = b;
    }
  }

  // BFS factorization over the fixed generators.
  g.bfs_.assign(n, {-2, -2});
  g.bfs_[0] = {-1, -1};
  std::deque<int> bq{0};
  while (!bq.empty()) {
    const int e = bq.front();
    bq.pop_front();
    for (std::size_t gi = 0; gi < g.gen_idx_.size(); ++gi) {
      const int t = g.mult(e, g.gen_idx_[gi]);
      if (g.bfs_[t].first == -2) {
        g.bfs_[t] = {e, static_cast<int>(gi)};
        bq.push_back(t);
      }
    }
  }

  g.elem_order_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a, ord = 1;
    while (x != 0) {
      x = g.mult(x, a);
      ++ord;
    }
    g.elem_order_[a] = ord;
  }

  // Conjugacy classes of elements.
  g.class_of_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (g.class_of_[a] >= 0) continue;
    const int cid = static_cast<int>(g.class_reps_.size());
    g.class_reps_.push_back(a);
    std::deque<int> cq{a};
    g.class_of_[a] = cid;
    while (!cq.empty()) {
      const int x = cq.front();
      cq.pop_front();
      for (int gi : g.gen_idx_) {
        const int y = g.conjugate_elem(x, gi);
        if (g.class_of_[y] < 0) {
          g.class_of_[y] = cid;
          cq.push_back(y);
        }
      }
    }
  }
  return g;
}

int SmallGroup::index_of(const Permutation& p) const {
  auto it = buckets_.find(p.hash());
  if (it == buckets_.end()) return -1;
  for (int i : it->second)
    if (elems_[i] == p) return i;
  return -1;
}

Permutation SmallGroup::evaluate(int e, const std::vector<Permutation>& gen_images) const {
  if (e == 0) return Permutation::identity(gen_images.empty() ? 0 : gen_images.front().degree());
  const auto [parent, gi] = bfs_[e];
  return compose(evaluate(parent, gen_images), gen_images[gi]);
}

std::vector<Permutation> SmallGroup::evaluate_all(const std::vector<Permutation>& gen_images) const {
  const int m = gen_images.empty() ? 0 : gen_images.front().degree();
  std::vector<Permutation> img(order());
  img[0] = Permutation::identity(m);
  // BFS order guarantees parents are filled first only if we walk in BFS
  // discovery order; recompute that order here.
  std::deque<int> bq{0};
  std::vector<char> done(order(), 0);
  done[0] = 1;
  while (!bq.empty()) {
    const int e = bq.front();
    bq.pop_front();
    for (std::size_t gi = 0; gi < gen_idx_.size(); ++gi) {
      const int t = mult(e, gen_idx_[gi]);
      if (!done[t]) {
        done[t] = 1;
        img[t] = compose(img[e], gen_images[gi]);
        bq.push_back(t);
      }
    }
  }
  return img;
}

SmallGroup SmallGroup::d_n_prime(int n) {
  if (n < 3) throw std::invalid_argument("D_n' needs rank >= 3");
  std::vector<Permutation> gens;
  auto eps_pair = [n](int i, int j) {
    FreeAut a = compose_aut(FreeAut::make_generator(GenKind::epsilon, i, 0, n),
                            FreeAut::make_generator(GenKind::epsilon, j, 0, n));
    return signed_perm_rep(a);
  };
  gens.push_back(eps_pair(1, 2));
  gens.push_back(eps_pair(2, 3));
  for (int k = 1; k + 2 <= n; ++k) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    labels[k - 1] = k + 1;
    labels[k] = k + 2;
    labels[k + 1] = k;
    gens.push_back(signed_perm_rep(FreeAut::from_label_permutation(labels)));
  }
  return from_generators("D" + std::to_string(n) + "'", 2 * n, std::move(gens));
}

SmallGroup SmallGroup::alternating(int k) {
  if (k < 3) throw std::invalid_argument("alternating group needs at least 3 points");
  std::vector<Permutation> gens;
  for (int s = 0; s + 2 < k; ++s) {
    std::vector<int> im(k);
    std::iota(im.begin(), im.end(), 0);
    im[s] = s + 1;
    im[s + 1] = s + 2;
    im[s + 2] = s;
    gens.push_back(Permutation::from_images(im));
  }
  return from_generators("A" + std::to_string(k), k, std::move(gens));
}

namespace {

// Closure of the given element indices under multiplication.
std::vector<int> closure_of(const SmallGroup& g, std::vector<int> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> out{0};
  in[0] = 1;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int s : gens) {
      const int t = g.mult(out[head], s);
      if (!in[t]) {
        in[t] = 1;
        out.push_back(t);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct ClassRecord {
  std::vector<int> rep;
  std::vector<int> canonical;
  std::vector<int> normalizer;  // of rep
  long long class_size = 0;
};

// Registers the conjugacy class of `sub`; returns its id, creating the
// record and indexing every conjugate when new.
struct Registry {
  const SmallGroup* g;
  std::map<std::vector<int>, int> set_to_class;
  std::vector<ClassRecord> classes;

  int find(const std::vector<int>& sub) const {
    auto it = set_to_class.find(sub);
    return it == set_to_class.end() ? -1 : it->second;
  }

  int add(const std::vector<int>& sub) {
    const int existing = find(sub);
    if (existing >= 0) return existing;
    const int cid = static_cast<int>(classes.size());
    ClassRecord rec;
    rec.rep = sub;
    rec.canonical = sub;
    std::set<std::vector<int>> conjugates;
    std::vector<int> buf(sub.size());
    for (int e = 0; e < static_cast<int>(g->order()); ++e) {
      for (std::size_t i = 0; i < sub.size(); ++i) buf[i] = g->conjugate_elem(sub[i], e);
      std::vector<int> c(buf);
      std::sort(c.begin(), c.end());
      if (c == sub) rec.normalizer.push_back(e);
      if (c < rec.canonical) rec.canonical = c;
      conjugates.insert(std::move(c));
    }
    rec.class_size = static_cast<long long>(conjugates.size());
    for (const auto& c : conjugates) set_to_class.emplace(c, cid);
    classes.push_back(std::move(rec));
    return cid;
  }
};

// Perfect subgroups generated by two elements, one of them a conjugacy
// class representative.  Together with the trivial group these seed the
// cyclic extension; adequate at the orders handled here.
std::vector<std::vector<int>> perfect_seed_subgroups(const SmallGroup& g) {
  std::vector<std::vector<int>> seeds;
  std::set<std::vector<int>> tested;
  for (int x : g.conjugacy_class_reps()) {
    if (x == 0) continue;
    for (int y = 1; y < static_cast<int>(g.order()); ++y) {
      std::vector<int> k = closure_of(g, {x, y});
      if (k.size() < 60) continue;  // no nontrivial perfect group is smaller
      if (!tested.insert(k).second) continue;
      // Derived subgroup: closure of all commutators.
      std::vector<int> comms;
      for (int a : k)
        for (int b : k) {
          const int c = g.mult(g.mult(g.mult(g.inv(b), g.inv(a)), b), a);
          comms.push_back(c);
        }
      std::vector<int> derived = closure_of(g, std::move(comms));
      if (derived == k) seeds.push_back(std::move(k));
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

}  // namespace

std::vector<SubgroupClass> subgroup_classes(const SmallGroup& g) {
  if (g.order() > SmallGroup::kMaxOrder) throw capacity_error("group too large for subgroup enumeration");
  const int n = static_cast<int>(g.order());

  Registry reg{&g, {}, {}};
  reg.add(std::vector<int>{0});
  for (const auto& seed : perfect_seed_subgroups(g)) reg.add(seed);

  // Cyclic extension: grow every class by prime-order coset representatives
  // of its normalizer.  Processing order does not matter for completeness;
  // new classes are appended and eventually processed.
  for (std::size_t cid = 0; cid < reg.classes.size(); ++cid) {
    const std::vector<int> rep = reg.classes[cid].rep;          // copy: reg grows
    const std::vector<int> norm = reg.classes[cid].normalizer;  // copy
    std::vector<char> in_rep(n, 0);
    for (int e : rep) in_rep[e] = 1;
    for (int e : norm) {
      if (in_rep[e]) continue;
      // Order of the coset e*rep in N/rep.
      int q = 1, x = e;
      while (!in_rep[x]) {
        x = g.mult(x, e);
        ++q;
      }
      bool prime = q >= 2;
      for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
          prime = false;
          break;
        }
      if (!prime) continue;
      if (rep.size() * q > g.order()) continue;
      std::vector<int> ext;
      ext.reserve(rep.size() * q);
      int pw = 0;  // identity
      for (int t = 0; t < q; ++t) {
        for (int h : rep) ext.push_back(g.mult(h, pw));
        pw = g.mult(pw, e);
      }
      std::sort(ext.begin(), ext.end());
      reg.add(ext);
    }
  }

  std::vector<SubgroupClass> out;
  out.reserve(reg.classes.size());
  for (const ClassRecord& rec : reg.classes) {
    SubgroupClass sc;
    sc.rep = rec.rep;
    sc.canonical = rec.canonical;
    sc.order = static_cast<long long>(rec.rep.size());
    sc.index = static_cast<long long>(g.order()) / sc.order;
    sc.class_size = rec.class_size;
    sc.normalizer_order = static_cast<long long>(rec.normalizer.size());
    out.push_back(std::move(sc));
  }
  std::sort(out.begin(), out.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.canonical < b.canonical;
  });
  return out;
}

BruteForceSubgroups brute_force_subgroups(const SmallGroup& g, std::size_t max_subgroups) {
  // All cyclic subgroups first.
  std::set<std::vector<int>> subs;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> work;  // (set, generating indices)
  for (int e = 0; e < static_cast<int>(g.order()); ++e) {
    std::vector<int> c = closure_of(g, {e});
    if (subs.insert(c).second) work.emplace_back(std::move(c), std::vector<int>{e});
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> cyclics = work;
  // Join closure.
  for (std::size_t head = 0; head < work.size(); ++head) {
    for (const auto& [cset, cgens] : cyclics) {
      const auto& [sset, sgens] = work[head];
      if (std::includes(sset.begin(), sset.end(), cset.begin(), cset.end())) continue;
      std::vector<int> jg = sgens;
      jg.insert(jg.end(), cgens.begin(), cgens.end());
      std::vector<int> j = closure_of(g, jg);
      if (subs.insert(j).second) {
        work.emplace_back(std::move(j), std::move(jg));
        if (work.size() > max_subgroups) throw capacity_error("too many subgroups in join closure");
      }
    }
  }

  BruteForceSubgroups result;
  result.total = static_cast<long long>(subs.size());
  std::set<std::vector<int>> remaining = subs;
  while (!remaining.empty()) {
    std::vector<int> rep = *remaining.begin();
    SubgroupClass sc;
    sc.rep = rep;
    sc.canonical = rep;
    sc.order = static_cast<long long>(rep.size());
    sc.index = static_cast<long long>(g.order()) / sc.order;
    std::set<std::vector<int>> conjugates;
    std::vector<int> buf(rep.size());
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      for (std::size_t i = 0; i < rep.size(); ++i) buf[i] = g.conjugate_elem(rep[i], e);
      std::vector<int> c(buf);
      std::sort(c.begin(), c.end());
      if (c == rep) ++sc.normalizer_order;
      if (c < sc.canonical) sc.canonical = c;
      conjugates.insert(std::move(c));
    }
    sc.class_size = static_cast<long long>(conjugates.size());
    for (const auto& c : conjugates) remaining.erase(c);
    result.classes.push_back(std::move(sc));
  }
  std::sort(result.classes.begin(), result.classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.canonical < b.canonical;
  });
  return result;
}

std::vector<Permutation> coset_action(const SmallGroup& g, const std::vector<int>& subgroup) {
  // Validate closure.
  std::vector<char> in_h(g.order(), 0);
  for (int e : subgroup) in_h[e] = 1;
  if (subgroup.empty() || !in_h[0]) throw std::invalid_argument("subgroup must contain the identity");
  for (int a : subgroup)
    for (int b : subgroup)
      if (!in_h[g.mult(a, b)]) throw std::invalid_argument("subgroup not closed under product");

  const int index = static_cast<int>(g.order() / subgroup.size());
  // Canonical coset key: smallest element index in the coset.
  std::vector<int> coset_key_of(g.order(), -1);
  auto key_of = [&](int z) {
    int best = g.order();
    for (int h : subgroup) best = std::min(best, g.mult(h, z));
    return best;
  };
  std::vector<int> reps;  // BFS order; rep = canonical key element
  std::unordered_map<int, int> point_of;
  reps.push_back(0);
  point_of.emplace(0, 0);
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
      const int z = g.mult(reps[head], g.generator_index(static_cast<int>(gi)));
      const int k = key_of(z);
      if (!point_of.count(k)) {
        point_of.emplace(k, static_cast<int>(reps.size()));
        reps.push_back(k);
      }
    }
  }
  if (static_cast<int>(reps.size()) != index) throw std::logic_error("coset enumeration mismatch");

  std::vector<Permutation> images;
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    std::vector<int> im(index);
    for (int p = 0; p < index; ++p)
      im[p] = point_of.at(key_of(g.mult(reps[p], g.generator_index(static_cast<int>(gi)))));
    images.push_back(Permutation::from_images(std::move(im)));
  }
  return images;
}

std::vector<int> coset_action_core(const SmallGroup& g, const std::vector<int>& subgroup) {
  const std::vector<Permutation> action = coset_action(g, subgroup);
  std::vector<Permutation> all = g.evaluate_all(action);
  std::vector<int> core;
  for (int e = 0; e < static_cast<int>(g.order()); ++e)
    if (all[e].is_identity()) core.push_back(e);
  return core;
}

}  // namespace saut
