// Times the candidate scan kernel, serial reference versus the OpenMP
// sharded version, and checks they agree.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "saut/gersten_search.hpp"
#include "saut/hom_enum.hpp"
#include "saut/small_group.hpp"

using namespace saut;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DegreeSearchInput make_input(const SmallGroup& d, const std::vector<SubgroupClass>& classes, int rank,
                             int m) {
  DegreeSearchInput input;
  input.rank = rank;
  input.degree = m;
  input.d_group = &d;
  std::vector<HomClass> alphas = enumerate_hom_classes(d, classes, m);
  std::erase_if(alphas, [](const HomClass& h) { return !h.alternating; });
  input.alphas = std::move(alphas);
  input.classes_enumerated = static_cast<long long>(input.alphas.size());
  return input;
}

void run_case(const char* label, const DegreeSearchInput& input, int repeats) {
  Certificate serial_cert;
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) serial_cert = search_degree_serial(input, 1ULL << 40);
  const double serial_s = seconds_since(t0) / repeats;

  SearchDegreeConfig cfg;
  cfg.tau_budget = 1ULL << 40;
  Certificate parallel_cert;
  t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) parallel_cert = search_degree(input, cfg);
  const double parallel_s = seconds_since(t0) / repeats;

  const bool same_kind = serial_cert.kind == parallel_cert.kind;
  bool same_result = same_kind;
  if (same_kind && serial_cert.kind == Certificate::Kind::nontrivial)
    same_result = serial_cert.alpha_index == parallel_cert.alpha_index &&
                  serial_cert.tau_index == parallel_cert.tau_index;
  if (same_kind && serial_cert.kind == Certificate::Kind::exhausted)
    same_result = serial_cert.candidates_tested == parallel_cert.candidates_tested;

  std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   agree %s\n", label,
              serial_s, parallel_s, serial_s / parallel_s, same_result ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  {
    const SmallGroup d3 = SmallGroup::d_n_prime(3);
    const auto classes = subgroup_classes(d3);
    run_case("rank 3, degree 7", make_input(d3, classes, 3, 7), 3);
  }
  {
    const SmallGroup d4 = SmallGroup::d_n_prime(4);
    const auto classes = subgroup_classes(d4);
    run_case("rank 4, degree 8", make_input(d4, classes, 4, 8), 3);
    run_case("rank 4, degree 9", make_input(d4, classes, 4, 9), 1);
  }
  return 0;
}
