#pragma once

#include <initializer_list>
#include <numeric>
#include <vector>

#include "saut/perm.hpp"

// Builds a permutation from disjoint cycles; only a test convenience.
inline saut::Permutation cyc(int m, std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<int> im(m);
  std::iota(im.begin(), im.end(), 0);
  for (const auto& c : cycles) {
    std::vector<int> v(c);
    for (std::size_t i = 0; i < v.size(); ++i) im[v[i]] = v[(i + 1) % v.size()];
  }
  return saut::Permutation::from_images(im);
}
