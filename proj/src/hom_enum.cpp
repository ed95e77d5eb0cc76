#include "saut/hom_enum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "saut/common.hpp"

namespace saut {

namespace {

std::vector<Permutation> build_images(const SmallGroup& g,
                                      const std::vector<std::vector<Permutation>>& actions,
                                      const std::vector<long long>& indices,
                                      const std::vector<int>& multiset, int m) {
  const std::size_t ngens = g.generators().size();
  std::vector<std::vector<int>> im(ngens);
  for (std::size_t gi = 0; gi < ngens; ++gi) {
    im[gi].resize(m);
    std::iota(im[gi].begin(), im[gi].end(), 0);
  }
  int offset = 0;
  for (int cls : multiset) {
    const int deg = static_cast<int>(indices[cls]);
    for (std::size_t gi = 0; gi < ngens; ++gi)
      for (int p = 0; p < deg; ++p) im[gi][offset + p] = offset + actions[cls][gi][p];
    offset += deg;
  }
  std::vector<Permutation> out;
  out.reserve(ngens);
  for (std::size_t gi = 0; gi < ngens; ++gi) out.push_back(Permutation::from_images(std::move(im[gi])));
  return out;
}

bool all_even(const std::vector<Permutation>& ps) {
  for (const Permutation& p : ps)
    if (parity(p) == Parity::odd) return false;
  return true;
}

}  // namespace

std::vector<HomClass> enumerate_hom_classes(const SmallGroup& g,
                                            const std::vector<SubgroupClass>& classes, int m,
                                            long long class_bound) {
  if (m < 1) throw std::invalid_argument("degree must be positive");

  // Proper subgroup classes usable as transitive constituents.
  std::vector<int> usable;
  std::vector<std::vector<Permutation>> actions(classes.size());
  std::vector<long long> indices(classes.size(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    indices[c] = classes[c].index;
    if (classes[c].index >= 2 && classes[c].index <= m) {
      usable.push_back(static_cast<int>(c));
      actions[c] = coset_action(g, classes[c].rep);
    }
  }

  std::vector<HomClass> out;
  std::vector<int> current;
  std::function<void(std::size_t, int)> walk = [&](std::size_t from, int remaining) {
    if (static_cast<long long>(out.size()) >= class_bound)
      throw capacity_error("homomorphism class bound exceeded");
    HomClass h;
    h.source = g.name();
    h.degree = m;
    h.gen_images = build_images(g, actions, indices, current, m);
    for (int cls : current) {
      if (!h.constituents.empty() && h.constituents.back().first == cls)
        ++h.constituents.back().second;
      else
        h.constituents.emplace_back(cls, 1);
    }
    h.alternating = all_even(h.gen_images);
    h.injective = PermGroup(m, h.gen_images).order() == g.order();
    out.push_back(std::move(h));

    for (std::size_t u = from; u < usable.size(); ++u) {
      const int cls = usable[u];
      if (indices[cls] > remaining) continue;
      current.push_back(cls);
      walk(u, remaining - static_cast<int>(indices[cls]));
      current.pop_back();
    }
  };
  walk(0, m);
  return out;
}

std::vector<Permutation> canonical_hom_tuple(const std::vector<Permutation>& images, int m) {
  PermGroup sm = symmetric_group(m);
  unsigned long long fact = 1;
  for (int k = 2; k <= m; ++k) fact *= k;
  if (fact > 50000) throw capacity_error("degree too large for canonical form scan");
  std::vector<Permutation> best;
  ElementIndexer idx(sm);
  for (unsigned long long i = 0; i < idx.size(); ++i) {
    const Permutation conj = idx.element(i);
    std::vector<Permutation> tuple;
    tuple.reserve(images.size());
    for (const Permutation& p : images) tuple.push_back(conjugate(p, conj));
    if (best.empty() || tuple < best) best = std::move(tuple);
  }
  return best;
}

std::vector<HomClass> brute_force_homs(const SmallGroup& g, int m) {
  if (m > 7) throw capacity_error("brute force hom search limited to degree 7");
  PermGroup sm = symmetric_group(m);
  const std::vector<Permutation> all = sm.elements(5040);

  const std::size_t ngens = g.generators().size();
  std::vector<std::vector<Permutation>> cands(ngens);
  for (std::size_t gi = 0; gi < ngens; ++gi) {
    const int ord = g.element_order_of(g.generator_index(static_cast<int>(gi)));
    for (const Permutation& p : all)
      if (ord % element_order(p) == 0) cands[gi].push_back(p);
  }

  std::vector<HomClass> out;
  std::map<std::vector<Permutation>, int> seen_canonical;

  std::vector<Permutation> choice(ngens);
  std::function<void(std::size_t)> pick = [&](std::size_t gi) {
    if (gi == ngens) {
      // The generator map extends to a homomorphism iff the BFS-defined
      // images are consistent with the multiplication table.
      std::vector<Permutation> img = g.evaluate_all(choice);
      for (int e = 0; e < static_cast<int>(g.order()); ++e)
        for (std::size_t s = 0; s < ngens; ++s)
          if (img[g.mult(e, g.generator_index(static_cast<int>(s)))] != compose(img[e], choice[s]))
            return;
      std::vector<Permutation> canon = canonical_hom_tuple(choice, m);
      if (seen_canonical.emplace(canon, 1).second) {
        HomClass h;
        h.source = g.name();
        h.degree = m;
        h.gen_images = canon;
        h.alternating = all_even(canon);
        h.injective = PermGroup(m, canon).order() == g.order();
        out.push_back(std::move(h));
      }
      return;
    }
    for (const Permutation& c : cands[gi]) {
      choice[gi] = c;
      pick(gi + 1);
    }
  };
  pick(0);

  std::sort(out.begin(), out.end(),
            [](const HomClass& a, const HomClass& b) { return a.gen_images < b.gen_images; });
  return out;
}

bool is_injective(const HomClass& h, const SmallGroup& g) {
  return PermGroup(h.degree, h.gen_images).order() == g.order();
}

std::vector<Permutation> restriction_images(const HomClass& h, const std::vector<int>& positions) {
  std::vector<Permutation> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(h.gen_images.at(p));
  return out;
}

std::vector<HomClass> compatibility_filter(const std::vector<HomClass>& alphas,
                                           const std::vector<int>& alpha_positions,
                                           const std::vector<HomClass>& betas,
                                           const std::vector<int>& beta_positions, int m,
                                           long long node_budget, CompatibilityStats* stats) {
  std::vector<PermGroup> beta_groups;
  beta_groups.reserve(betas.size());
  for (const HomClass& b : betas) beta_groups.emplace_back(m, restriction_images(b, beta_positions));

  // Distinct restricted subgroups only: many classes restrict identically.
  std::map<std::vector<Permutation>, bool> decided;

  std::vector<HomClass> kept;
  CompatibilityStats local;
  for (const HomClass& a : alphas) {
    PermGroup x(m, restriction_images(a, alpha_positions));
    const std::vector<Permutation> key = x.elements(100000);
    auto it = decided.find(key);
    bool ok;
    if (it != decided.end()) {
      ok = it->second;
    } else {
      ok = false;
      for (const PermGroup& y : beta_groups) {
        ++local.conjugacy_tests;
        if (are_conjugate_subgroups(nullptr, x, y, node_budget).has_value()) {
          ok = true;
          break;
        }
      }
      decided.emplace(key, ok);
    }
    if (ok) {
      kept.push_back(a);
      ++local.kept;
    } else {
      ++local.removed;
    }
  }
  if (stats) *stats = local;
  return kept;
}

}  // namespace saut
