#include "saut/gersten_search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "saut/common.hpp"
#include "saut/free_aut.hpp"
#include "saut/gersten_relations.hpp"

namespace saut {

TransvectionImages::TransvectionImages(int n, int m) : rank(n), degree(m) {
  rho_flat.assign(static_cast<std::size_t>(n) * n, Permutation::identity(m));
  lam_flat.assign(static_cast<std::size_t>(n) * n, Permutation::identity(m));
}

bool TransvectionImages::all_trivial() const {
  for (int i = 1; i <= rank; ++i)
    for (int j = 1; j <= rank; ++j) {
      if (i == j) continue;
      if (!rho(i, j).is_identity() || !lam(i, j).is_identity()) return false;
    }
  return true;
}

namespace {

struct ImageProvider {
  using Elem = Permutation;
  const TransvectionImages* t;
  Elem rho(int i, int j, int s) const { return s > 0 ? t->rho(i, j) : t->rho(i, j).inverse(); }
  Elem lam(int i, int j, int s) const { return s > 0 ? t->lam(i, j) : t->lam(i, j).inverse(); }
  Elem id() const { return Permutation::identity(t->degree); }
  Elem mul(const Elem& a, const Elem& b) const { return compose(a, b); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

}  // namespace

RelationAudit verify_certificate_images(const TransvectionImages& t) {
  ImageProvider pr{&t};
  RelationAudit audit;
  walk_gersten_relations<ImageProvider>(t.rank, pr,
                                        [&](const char*, const std::string& label, bool ok) {
                                          ++audit.instances;
                                          if (!ok) audit.failures.push_back(label);
                                          return true;
                                        });
  return audit;
}

bool audit_images_pass(const TransvectionImages& t) {
  ImageProvider pr{&t};
  bool pass = true;
  walk_gersten_relations<ImageProvider>(t.rank, pr, [&](const char*, const std::string&, bool ok) {
    if (!ok) pass = false;
    return pass;
  });
  return pass;
}

bool check_r2(const TransvectionImages& t) {
  return commutator(t.rho(1, 2).inverse(), t.rho(2, 3).inverse()) == t.rho(1, 3).inverse();
}

ImageClass classify(const TransvectionImages& t) {
  return t.all_trivial() ? ImageClass::trivial : ImageClass::nontrivial;
}

namespace {

int label_perm_parity(const std::vector<int>& labels) {
  int inversions = 0;
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      if (labels[a] > labels[b]) ++inversions;
  return inversions % 2;
}

// Lexicographically least even label permutation with sigma(1)=i and
// sigma(2)=j, or empty when none exists (rank 3 reverse pairs).
std::vector<int> even_pair_mover(int n, int i, int j) {
  std::vector<int> labels{i, j};
  for (int t = 1; t <= n; ++t)
    if (t != i && t != j) labels.push_back(t);
  if (label_perm_parity(labels) == 0) return labels;
  if (n >= 4) {
    std::swap(labels[n - 1], labels[n - 2]);
    return labels;
  }
  return {};
}

}  // namespace

TransvectionBuilder::TransvectionBuilder(const SmallGroup& d,
                                         const std::vector<Permutation>& alpha_images, int n, int m)
    : n_(n), m_(m) {
  if (n < 3) throw std::invalid_argument("rank must be at least 3");
  if (alpha_images.size() != d.generators().size())
    throw std::invalid_argument("alpha image count mismatch");

  auto alpha_of = [&](const FreeAut& aut) {
    const int idx = d.index_of(signed_perm_rep(aut));
    if (idx < 0) throw std::logic_error("element not found in the source group");
    return d.evaluate(idx, alpha_images);
  };

  pair_.assign(static_cast<std::size_t>(n) * n, PairRecipe{});
  eps_conj_.assign(static_cast<std::size_t>(n) * n, Permutation::identity(m));
  std::vector<std::pair<int, int>> via_pairs;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      PairRecipe& r = pair_[(i - 1) * n + (j - 1)];
      const std::vector<int> mover = even_pair_mover(n, i, j);
      if (!mover.empty()) {
        r.direct = true;
        r.conj = alpha_of(FreeAut::from_label_permutation(mover));
        build_order_.emplace_back(i, j);
      } else {
        r.direct = false;
        r.via = 6 - i - j;  // rank 3 only: the remaining index
        via_pairs.emplace_back(i, j);
      }
      const FreeAut ee = compose_aut(FreeAut::make_generator(GenKind::epsilon, i, 0, n),
                                     FreeAut::make_generator(GenKind::epsilon, j, 0, n));
      eps_conj_[(i - 1) * n + (j - 1)] = alpha_of(ee);
    }
  }
  build_order_.insert(build_order_.end(), via_pairs.begin(), via_pairs.end());

  for (int k = 3; k + 2 <= n; ++k) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    labels[k - 1] = k + 1;
    labels[k] = k + 2;
    labels[k + 1] = k;
    s_images_.push_back(alpha_of(FreeAut::from_label_permutation(labels)));
  }
  for (int k = 3; k + 1 <= n; ++k) {
    const FreeAut ee = compose_aut(FreeAut::make_generator(GenKind::epsilon, k, 0, n),
                                   FreeAut::make_generator(GenKind::epsilon, k + 1, 0, n));
    s_images_.push_back(alpha_of(ee));
  }
}

TransvectionImages TransvectionBuilder::build(const Permutation& tau) const {
  if (tau.degree() != m_) throw std::invalid_argument("candidate degree mismatch");
  if (parity(tau) == Parity::odd) throw std::invalid_argument("candidate must be even");
  for (const Permutation& s : s_images_)
    if (compose(tau, s) != compose(s, tau))
      throw std::invalid_argument("candidate must centralize the stabilizer images");

  TransvectionImages t(n_, m_);
  for (const auto& [i, j] : build_order_) {
    const PairRecipe& r = pair_[(i - 1) * n_ + (j - 1)];
    if (r.direct) {
      t.rho(i, j) = conjugate(tau, r.conj);
    } else {
      // rho_ik from the commutator relation with the intermediate index.
      const int k = j, v = r.via;
      t.rho(i, k) = commutator(t.rho(i, v).inverse(), t.rho(v, k).inverse()).inverse();
    }
  }
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) {
      if (i == j) continue;
      t.lam(i, j) = conjugate(t.rho(i, j), eps_conj_[(i - 1) * n_ + (j - 1)]);
    }
  return t;
}

bool TransvectionBuilder::passes_r2(const Permutation& tau) const {
  if (parity(tau) == Parity::odd) throw std::invalid_argument("candidate must be even");
  for (const Permutation& s : s_images_)
    if (compose(tau, s) != compose(s, tau))
      throw std::invalid_argument("candidate must centralize the stabilizer images");
  if (n_ == 3) return check_r2(build(tau));
  const auto& r12 = pair_[(1 - 1) * n_ + (2 - 1)];
  const auto& r23 = pair_[(2 - 1) * n_ + (3 - 1)];
  const auto& r13 = pair_[(1 - 1) * n_ + (3 - 1)];
  const Permutation rho12 = conjugate(tau, r12.conj);
  const Permutation rho23 = conjugate(tau, r23.conj);
  const Permutation rho13 = conjugate(tau, r13.conj);
  return commutator(rho12.inverse(), rho23.inverse()) == rho13.inverse();
}

std::string Certificate::to_json() const {
  nlohmann::json j;
  j["format"] = "saut-certificate-v1";
  j["points"] = "0-based";
  j["kind"] = kind == Kind::nontrivial ? "nontrivial" : "exhausted";
  j["rank"] = rank;
  j["degree"] = degree;
  j["classes_enumerated"] = classes_enumerated;
  j["classes_filtered"] = classes_filtered;
  j["alphas_searched"] = alphas_searched;
  j["candidates_tested"] = candidates_tested;
  j["r2_passes"] = r2_passes;
  j["full_audit_passes"] = full_audit_passes;
  j["filter_justifications"] = filter_justifications;
  if (kind == Kind::nontrivial) {
    j["alpha_index"] = alpha_index;
    j["tau_index"] = tau_index;
    j["audit_instances"] = audit_instances;
    nlohmann::json rho = nlohmann::json::object();
    nlohmann::json lam = nlohmann::json::object();
    for (int i = 1; i <= rank; ++i)
      for (int jj = 1; jj <= rank; ++jj) {
        if (i == jj) continue;
        const std::string key = std::to_string(i) + "," + std::to_string(jj);
        rho[key] = images.rho(i, jj).images();
        lam[key] = images.lam(i, jj).images();
      }
    j["rho"] = std::move(rho);
    j["lambda"] = std::move(lam);
  }
  return j.dump(2) + "\n";
}

Certificate Certificate::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate parse error: ") + e.what());
  }
  Certificate c;
  try {
    if (j.at("format") != "saut-certificate-v1") throw std::invalid_argument("unknown certificate format");
    c.kind = j.at("kind") == "nontrivial" ? Kind::nontrivial : Kind::exhausted;
    c.rank = j.at("rank").get<int>();
    c.degree = j.at("degree").get<int>();
    c.classes_enumerated = j.at("classes_enumerated").get<long long>();
    c.classes_filtered = j.at("classes_filtered").get<long long>();
    c.alphas_searched = j.at("alphas_searched").get<long long>();
    c.candidates_tested = j.at("candidates_tested").get<unsigned long long>();
    c.r2_passes = j.at("r2_passes").get<unsigned long long>();
    c.full_audit_passes = j.at("full_audit_passes").get<unsigned long long>();
    c.filter_justifications = j.at("filter_justifications").get<std::vector<std::string>>();
    if (c.kind == Kind::nontrivial) {
      c.alpha_index = j.at("alpha_index").get<int>();
      c.tau_index = j.at("tau_index").get<unsigned long long>();
      c.audit_instances = j.value("audit_instances", 0LL);
      c.images = TransvectionImages(c.rank, c.degree);
      for (int i = 1; i <= c.rank; ++i)
        for (int jj = 1; jj <= c.rank; ++jj) {
          if (i == jj) continue;
          const std::string key = std::to_string(i) + "," + std::to_string(jj);
          c.images.rho(i, jj) = Permutation::from_images(j.at("rho").at(key).get<std::vector<int>>());
          c.images.lam(i, jj) = Permutation::from_images(j.at("lambda").at(key).get<std::vector<int>>());
        }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate field error: ") + e.what());
  }
  return c;
}

VerifyResult verify_certificate(const Certificate& c) {
  VerifyResult r;
  if (c.kind == Certificate::Kind::nontrivial) {
    for (int i = 1; i <= c.rank; ++i)
      for (int j = 1; j <= c.rank; ++j) {
        if (i == j) continue;
        if (c.images.rho(i, j).degree() != c.degree || c.images.lam(i, j).degree() != c.degree) {
          r.detail = "image degree mismatch";
          return r;
        }
        if (parity(c.images.rho(i, j)) == Parity::odd || parity(c.images.lam(i, j)) == Parity::odd) {
          r.detail = "odd image";
          return r;
        }
      }
    r.audit = verify_certificate_images(c.images);
    r.pass = r.audit.pass();
    if (!r.pass)
      r.detail = "relation failure: " + r.audit.failures.front();
    else
      r.detail = classify(c.images) == ImageClass::trivial ? "pass (trivial images)" : "pass (nontrivial)";
  } else {
    r.pass = c.classes_enumerated >= 1 &&
             (c.candidates_tested >= 1 || !c.filter_justifications.empty());
    r.detail = r.pass ? "exhaustion record structurally sound" : "exhaustion record missing work counts";
  }
  return r;
}

std::string ShardResult::to_line() const {
  std::ostringstream os;
  os << "shard " << id << " alpha " << alpha << " tau " << tau_lo << " " << tau_hi << " tested "
     << tested << " r2 " << r2_passes << " audit " << audit_passes << " hit " << hit_tau;
  return os.str();
}

ShardResult ShardResult::from_line(const std::string& line) {
  std::istringstream is(line);
  std::string w1, w2, w3, w4, w5, w6, w7;
  ShardResult r;
  is >> w1 >> r.id >> w2 >> r.alpha >> w3 >> r.tau_lo >> r.tau_hi >> w4 >> r.tested >> w5 >>
      r.r2_passes >> w6 >> r.audit_passes >> w7 >> r.hit_tau;
  if (!is || w1 != "shard" || w2 != "alpha" || w3 != "tau" || w4 != "tested" || w5 != "r2" ||
      w6 != "audit" || w7 != "hit")
    throw checkpoint_error("malformed shard record: " + line);
  return r;
}

ShardResult scan_shard(const TransvectionBuilder& builder, const ElementIndexer& centralizer,
                       const ShardSpec& spec, bool extra_inner_screen) {
  ShardResult r;
  r.id = spec.id;
  r.alpha = spec.alpha;
  r.tau_lo = spec.tau_lo;
  r.tau_hi = spec.tau_hi;
  const Permutation id_perm = Permutation::identity(builder.degree());
  for (unsigned long long idx = spec.tau_lo; idx < spec.tau_hi; ++idx) {
    const Permutation tau = centralizer.element(idx);
    ++r.tested;
    if (!builder.passes_r2(tau)) continue;
    ++r.r2_passes;
    const TransvectionImages t = builder.build(tau);
    if (classify(t) == ImageClass::trivial) continue;
    if (extra_inner_screen) {
      // One fourth-family instance, necessary like the tested relation.
      const Permutation w =
          compose(compose(t.rho(1, 2), t.lam(2, 1).inverse()), t.lam(1, 2));
      const Permutation w2 = compose(w, w);
      if (compose(w2, w2) != id_perm) continue;
    }
    if (audit_images_pass(t)) {
      ++r.audit_passes;
      r.hit_tau = static_cast<long long>(idx);
      break;
    }
  }
  return r;
}

Certificate search_degree_serial(const DegreeSearchInput& input, unsigned long long tau_budget) {
  Certificate cert;
  cert.rank = input.rank;
  cert.degree = input.degree;
  cert.classes_enumerated = input.classes_enumerated;
  cert.classes_filtered = input.classes_filtered;
  cert.alphas_searched = static_cast<long long>(input.alphas.size());
  cert.filter_justifications = input.filter_justifications;

  for (std::size_t a = 0; a < input.alphas.size(); ++a) {
    TransvectionBuilder builder(*input.d_group, input.alphas[a].gen_images, input.rank, input.degree);
    PermGroup cent = centralizer_in_alternating(input.degree, builder.stabilizer_images());
    ElementIndexer idx(cent);
    if (idx.size() > tau_budget)
      throw capacity_error("candidate budget exceeded for class " + std::to_string(a));
    for (unsigned long long i = 0; i < idx.size(); ++i) {
      const TransvectionImages t = builder.build(idx.element(i));
      ++cert.candidates_tested;
      if (!check_r2(t)) continue;
      ++cert.r2_passes;
      if (classify(t) == ImageClass::trivial) continue;
      if (!audit_images_pass(t)) continue;
      ++cert.full_audit_passes;
      if (cert.kind == Certificate::Kind::exhausted) {
        cert.kind = Certificate::Kind::nontrivial;
        cert.alpha_index = static_cast<int>(a);
        cert.tau_index = i;
        cert.images = t;
        cert.audit_instances = verify_certificate_images(t).instances;
        return cert;
      }
    }
  }
  return cert;
}

Certificate search_degree(const DegreeSearchInput& input, const SearchDegreeConfig& cfg,
                          const std::vector<ShardResult>* precomputed,
                          const std::function<bool(const ShardResult&)>& on_shard) {
  struct AlphaCtx {
    std::unique_ptr<TransvectionBuilder> builder;
    PermGroup centralizer;
    std::unique_ptr<ElementIndexer> indexer;
  };
  std::vector<AlphaCtx> ctx(input.alphas.size());
  for (std::size_t a = 0; a < input.alphas.size(); ++a) {
    ctx[a].builder = std::make_unique<TransvectionBuilder>(*input.d_group, input.alphas[a].gen_images,
                                                           input.rank, input.degree);
    ctx[a].centralizer = centralizer_in_alternating(input.degree, ctx[a].builder->stabilizer_images());
    ctx[a].centralizer.build_chain();
    ctx[a].indexer = std::make_unique<ElementIndexer>(ctx[a].centralizer);
    if (ctx[a].indexer->size() > cfg.tau_budget)
      throw capacity_error("candidate budget exceeded for class " + std::to_string(a) + ": " +
                           std::to_string(ctx[a].indexer->size()) + " candidates");
  }

  std::vector<ShardSpec> shards;
  for (std::size_t a = 0; a < input.alphas.size(); ++a) {
    const unsigned long long n = ctx[a].indexer->size();
    for (unsigned long long lo = 0; lo < n; lo += cfg.shard_size) {
      ShardSpec s;
      s.id = static_cast<int>(shards.size());
      s.alpha = static_cast<int>(a);
      s.tau_lo = lo;
      s.tau_hi = std::min(n, lo + cfg.shard_size);
      shards.push_back(s);
    }
  }

  std::vector<ShardResult> results(shards.size());
  std::vector<char> done(shards.size(), 0);
  if (precomputed) {
    for (const ShardResult& r : *precomputed) {
      if (r.id < 0 || r.id >= static_cast<int>(shards.size())) throw checkpoint_error("shard id out of range");
      const ShardSpec& s = shards[r.id];
      if (r.alpha != s.alpha || r.tau_lo != s.tau_lo || r.tau_hi != s.tau_hi)
        throw checkpoint_error("shard record does not match the shard plan");
      results[r.id] = r;
      done[r.id] = 1;
    }
  }

  // Shard ids follow (class, candidate-range) order, so the smallest shard
  // id with a hit holds the globally first hit.  Workers skip shards past
  // the best hit seen so far; everything at or before the winner always
  // completes, which keeps the outcome and the counted work independent of
  // scheduling.
  std::atomic<long long> best_hit{std::numeric_limits<long long>::max()};
  for (std::size_t i = 0; i < shards.size(); ++i)
    if (done[i] && results[i].hit_tau >= 0)
      best_hit = std::min(best_hit.load(), static_cast<long long>(i));

  std::vector<int> pending;
  for (std::size_t i = 0; i < shards.size(); ++i)
    if (!done[i]) pending.push_back(static_cast<int>(i));

  // Exceptions must not cross the parallel region; workers record the first
  // error and honor stop requests from the shard callback.
  std::atomic<bool> stop{false};
  std::atomic<bool> failed{false};
  std::string worker_error;

#ifdef _OPENMP
  const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(cfg.parallel ? nthreads : 1)
#endif
  for (std::size_t pi = 0; pi < pending.size(); ++pi) {
    if (stop || failed) continue;
    const int sid = pending[pi];
    if (static_cast<long long>(sid) > best_hit.load()) continue;
    try {
      const ShardResult r = scan_shard(*ctx[shards[sid].alpha].builder,
                                       *ctx[shards[sid].alpha].indexer, shards[sid],
                                       cfg.extra_inner_screen);
#ifdef _OPENMP
#pragma omp critical(saut_shard_merge)
#endif
      {
        results[sid] = r;
        done[sid] = 1;
        if (r.hit_tau >= 0) best_hit = std::min(best_hit.load(), static_cast<long long>(sid));
        if (on_shard && !on_shard(r)) stop = true;
      }
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(saut_shard_merge)
#endif
      {
        if (!failed) {
          worker_error = e.what();
          failed = true;
        }
      }
    }
  }
  if (failed) throw std::logic_error("shard scan failed: " + worker_error);
  if (stop) throw search_interrupted();

  long long winner = -1;
  for (std::size_t i = 0; i < shards.size(); ++i)
    if (done[i] && results[i].hit_tau >= 0) {
      winner = static_cast<long long>(i);
      break;
    }
  const long long needed = winner >= 0 ? winner : static_cast<long long>(shards.size()) - 1;
  for (long long i = 0; i <= needed; ++i)
    if (!done[i]) throw std::logic_error("shard plan incomplete after scan");

  Certificate cert;
  cert.rank = input.rank;
  cert.degree = input.degree;
  cert.classes_enumerated = input.classes_enumerated;
  cert.classes_filtered = input.classes_filtered;
  cert.alphas_searched = static_cast<long long>(input.alphas.size());
  cert.filter_justifications = input.filter_justifications;

  for (long long i = 0; i <= needed; ++i) {
    const ShardResult& r = results[i];
    cert.candidates_tested += r.tested;
    cert.r2_passes += r.r2_passes;
    cert.full_audit_passes += r.audit_passes;
  }
  if (winner >= 0) {
    const ShardResult& r = results[winner];
    cert.kind = Certificate::Kind::nontrivial;
    cert.alpha_index = r.alpha;
    cert.tau_index = static_cast<unsigned long long>(r.hit_tau);
    const Permutation tau = ctx[r.alpha].indexer->element(cert.tau_index);
    cert.images = ctx[r.alpha].builder->build(tau);
    const RelationAudit audit = verify_certificate_images(cert.images);
    if (!audit.pass()) throw std::logic_error("recorded hit fails the relation audit");
    cert.audit_instances = audit.instances;
  }
  return cert;
}

}  // namespace saut
