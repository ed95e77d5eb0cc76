#pragma once

#include <cstdio>
#include <functional>
#include <string>

namespace saut {

// Walks every instance of the four transvection relation families over all
// valid index tuples (i,j,k distinct, l distinct from i and k) and all
// independent sign choices, calling `emit(family, label, ok)` per instance.
// Emit returns false to stop the walk early.
//
// Provider requirements:
//   using Elem = ...;
//   Elem rho(int i, int j, int sign);   // sign in {+1,-1}
//   Elem lam(int i, int j, int sign);
//   Elem id();
//   Elem mul(const Elem&, const Elem&); // left-to-right: a then b
//   bool eq(const Elem&, const Elem&);
//
// Displayed relation words multiply right-to-left as functions, so a word
// x y z applies z first; commutators [a,b] = a b a^-1 b^-1 apply b^-1 first.
template <class Provider>
void walk_gersten_relations(int n, Provider& pr,
                            const std::function<bool(const char*, const std::string&, bool)>& emit) {
  using E = typename Provider::Elem;
  auto commutes = [&](const E& x, const E& y) { return pr.eq(pr.mul(x, y), pr.mul(y, x)); };
  // [a,b] with precomputed inverses: apply b^-1, then a^-1, then b, then a.
  auto comm = [&](const E& a, const E& ai, const E& b, const E& bi) {
    return pr.mul(pr.mul(pr.mul(bi, ai), b), a);
  };
  char buf[96];

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        {
          E c = comm(pr.rho(i, j, -1), pr.rho(i, j, +1), pr.rho(j, k, -1), pr.rho(j, k, +1));
          std::snprintf(buf, sizeof buf, "r2 rho (i,j,k)=(%d,%d,%d)", i, j, k);
          if (!emit("r2", buf, pr.eq(c, pr.rho(i, k, -1)))) return;
          c = comm(pr.lam(i, j, -1), pr.lam(i, j, +1), pr.lam(j, k, -1), pr.lam(j, k, +1));
          std::snprintf(buf, sizeof buf, "r2 lambda (i,j,k)=(%d,%d,%d)", i, j, k);
          if (!emit("r2", buf, pr.eq(c, pr.lam(i, k, -1)))) return;
        }
        for (int l = 1; l <= n; ++l) {
          if (l == i || l == k) continue;
          for (int s1 = -1; s1 <= 1; s1 += 2) {
            for (int s2 = -1; s2 <= 1; s2 += 2) {
              std::snprintf(buf, sizeof buf, "r1 rho-rho (%d,%d)^%d (%d,%d)^%d", i, j, s1, k, l, s2);
              if (!emit("r1", buf, commutes(pr.rho(i, j, s1), pr.rho(k, l, s2)))) return;
              std::snprintf(buf, sizeof buf, "r1 lam-lam (%d,%d)^%d (%d,%d)^%d", i, j, s1, k, l, s2);
              if (!emit("r1", buf, commutes(pr.lam(i, j, s1), pr.lam(k, l, s2)))) return;
              std::snprintf(buf, sizeof buf, "r1 rho-lam (%d,%d)^%d (%d,%d)^%d", i, j, s1, k, l, s2);
              if (!emit("r1", buf, commutes(pr.rho(i, j, s1), pr.lam(k, l, s2)))) return;
              std::snprintf(buf, sizeof buf, "r3 (%d,%d)^%d (%d,%d)^%d", i, j, s1, i, l, s2);
              if (!emit("r3", buf, commutes(pr.rho(i, j, s1), pr.lam(i, l, s2)))) return;
            }
          }
        }
      }
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      // (lam_ij lam_ji^-1 rho_ij)^4 = 1: rho applies first.
      E w = pr.mul(pr.mul(pr.rho(i, j, +1), pr.lam(j, i, -1)), pr.lam(i, j, +1));
      E w2 = pr.mul(w, w);
      std::snprintf(buf, sizeof buf, "r4 lam-lam-rho (i,j)=(%d,%d)", i, j);
      if (!emit("r4", buf, pr.eq(pr.mul(w2, w2), pr.id()))) return;
      // (rho_ij rho_ji^-1 lam_ij)^4 = 1: lam applies first.
      w = pr.mul(pr.mul(pr.lam(i, j, +1), pr.rho(j, i, -1)), pr.rho(i, j, +1));
      w2 = pr.mul(w, w);
      std::snprintf(buf, sizeof buf, "r4 rho-rho-lam (i,j)=(%d,%d)", i, j);
      if (!emit("r4", buf, pr.eq(pr.mul(w2, w2), pr.id()))) return;
    }
  }
}

}  // namespace saut
