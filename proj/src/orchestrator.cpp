#include "saut/orchestrator.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "saut/checkpoint.hpp"
#include "saut/common.hpp"
#include "saut/hom_enum.hpp"
#include "saut/small_group.hpp"

namespace saut {

void SearchConfig::validate() const {
  if (rank < 3) throw std::invalid_argument("rank must be at least 3");
  if (degree_lo < 1) throw std::invalid_argument("degree range must start at 1 or above");
  if (degree_hi < degree_lo) throw std::invalid_argument("empty degree range");
  if (tau_budget == 0 || node_budget <= 0 || class_bound <= 0 || shard_size == 0)
    throw std::invalid_argument("budgets must be positive");
  if (threads < 0) throw std::invalid_argument("thread count must be nonnegative");
}

std::string injectivity_mode_name(InjectivityMode m) {
  switch (m) {
    case InjectivityMode::automatic: return "auto";
    case InjectivityMode::on: return "on";
    case InjectivityMode::off: return "off";
  }
  return "auto";
}

InjectivityMode parse_injectivity_mode(const std::string& s) {
  if (s == "auto") return InjectivityMode::automatic;
  if (s == "on") return InjectivityMode::on;
  if (s == "off") return InjectivityMode::off;
  throw std::invalid_argument("injectivity mode must be auto, on or off");
}

namespace {

struct AbortRun {};

std::string header_text(const SearchConfig& cfg) {
  std::ostringstream os;
  os << "saut-checkpoint v1\n"
     << "points 0-based\n"
     << "composition left-to-right\n"
     << "rank " << cfg.rank << "\n"
     << "degrees " << cfg.degree_lo << ".." << cfg.degree_hi << "\n"
     << "injectivity " << injectivity_mode_name(cfg.injectivity) << "\n"
     << "compat " << (cfg.compat_filter ? "on" : "off") << "\n"
     << "early-stop " << (cfg.early_stop ? "on" : "off") << "\n"
     << "tau-budget " << cfg.tau_budget << "\n"
     << "node-budget " << cfg.node_budget << "\n"
     << "class-bound " << cfg.class_bound << "\n"
     << "shard-size " << cfg.shard_size << "\n"
     << "extra-screen " << (cfg.extra_inner_screen ? "on" : "off") << "\n"
     << "generators sign-pairs-then-consecutive-3-cycles\n";
  return os.str();
}

SearchConfig config_from_header(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "saut-checkpoint v1")
    throw checkpoint_error("checkpoint header version mismatch");
  SearchConfig cfg;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "rank") ls >> cfg.rank;
    else if (key == "degrees") {
      std::string range;
      ls >> range;
      const auto dots = range.find("..");
      if (dots == std::string::npos) throw checkpoint_error("malformed degree range in header");
      cfg.degree_lo = std::stoi(range.substr(0, dots));
      cfg.degree_hi = std::stoi(range.substr(dots + 2));
    } else if (key == "injectivity") {
      std::string v;
      ls >> v;
      cfg.injectivity = parse_injectivity_mode(v);
    } else if (key == "compat") {
      std::string v;
      ls >> v;
      cfg.compat_filter = (v == "on");
    } else if (key == "early-stop") {
      std::string v;
      ls >> v;
      cfg.early_stop = (v == "on");
    } else if (key == "tau-budget") ls >> cfg.tau_budget;
    else if (key == "node-budget") ls >> cfg.node_budget;
    else if (key == "class-bound") ls >> cfg.class_bound;
    else if (key == "shard-size") ls >> cfg.shard_size;
    else if (key == "extra-screen") {
      std::string v;
      ls >> v;
      cfg.extra_inner_screen = (v == "on");
    }
  }
  return cfg;
}

std::string encode_hom_class(int idx, const HomClass& h) {
  std::ostringstream os;
  os << "alpha " << idx << " flags alt=" << (h.alternating ? 1 : 0) << " inj=" << (h.injective ? 1 : 0)
     << " constituents ";
  if (h.constituents.empty()) {
    os << "-";
  } else {
    for (std::size_t i = 0; i < h.constituents.size(); ++i) {
      if (i) os << ',';
      os << h.constituents[i].first << ':' << h.constituents[i].second;
    }
  }
  os << " images ";
  for (std::size_t i = 0; i < h.gen_images.size(); ++i) {
    if (i) os << ';';
    os << h.gen_images[i].to_string();
  }
  return os.str();
}

HomClass decode_hom_class(const std::string& line, const std::string& source, int degree) {
  std::istringstream is(line);
  std::string w;
  int idx;
  HomClass h;
  h.source = source;
  h.degree = degree;
  std::string flags_alt, flags_inj, constituents, images;
  is >> w >> idx;
  if (w != "alpha") throw checkpoint_error("malformed class record: " + line);
  is >> w;  // flags
  is >> flags_alt >> flags_inj;
  is >> w;  // constituents
  is >> constituents;
  is >> w;  // images
  is >> images;
  if (!is) throw checkpoint_error("malformed class record: " + line);
  h.alternating = flags_alt == "alt=1";
  h.injective = flags_inj == "inj=1";
  if (constituents != "-") {
    std::istringstream cs(constituents);
    std::string item;
    while (std::getline(cs, item, ',')) {
      const auto colon = item.find(':');
      h.constituents.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
  }
  std::istringstream ms(images);
  std::string pstr;
  while (std::getline(ms, pstr, ';')) h.gen_images.push_back(Permutation::parse(pstr));
  return h;
}

struct DegreeP2 {
  long long enumerated = 0;
  long long filtered = 0;
  std::vector<std::string> justifications;
  std::vector<HomClass> alphas;
};

std::vector<std::string> encode_p2(int m, const DegreeP2& p2) {
  std::vector<std::string> lines;
  lines.push_back("m " + std::to_string(m));
  lines.push_back("enumerated " + std::to_string(p2.enumerated));
  lines.push_back("filtered " + std::to_string(p2.filtered));
  for (const std::string& j : p2.justifications) lines.push_back("just " + j);
  for (std::size_t i = 0; i < p2.alphas.size(); ++i)
    lines.push_back(encode_hom_class(static_cast<int>(i), p2.alphas[i]));
  return lines;
}

DegreeP2 decode_p2(const std::vector<std::string>& lines, int m, const std::string& source) {
  DegreeP2 p2;
  if (lines.empty() || lines[0] != "m " + std::to_string(m))
    throw checkpoint_error("class record file does not match the degree");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (l.rfind("enumerated ", 0) == 0)
      p2.enumerated = std::stoll(l.substr(11));
    else if (l.rfind("filtered ", 0) == 0)
      p2.filtered = std::stoll(l.substr(9));
    else if (l.rfind("just ", 0) == 0)
      p2.justifications.push_back(l.substr(5));
    else if (l.rfind("alpha ", 0) == 0)
      p2.alphas.push_back(decode_hom_class(l, source, m));
    else
      throw checkpoint_error("unknown class record line: " + l);
  }
  return p2;
}

std::string outcome_name(DegreeOutcome o) {
  switch (o) {
    case DegreeOutcome::exhausted: return "exhausted";
    case DegreeOutcome::nontrivial: return "nontrivial";
    case DegreeOutcome::capacity: return "capacity";
  }
  return "?";
}

}  // namespace

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "search-report v1\n";
  os << "rank " << rank << "\n";
  os << "degrees " << degree_lo << ".." << degree_hi << "\n";
  os << "injectivity " << injectivity_mode_name(injectivity) << "\n";
  os << "compat " << (compat_filter ? "on" : "off") << "\n";
  os << "early-stop " << (early_stop ? "on" : "off") << "\n";
  for (const DegreeReport& d : degrees) {
    os << "m=" << d.degree << " " << outcome_name(d.outcome);
    if (d.outcome == DegreeOutcome::capacity) {
      os << " detail=\"" << d.capacity_detail << "\"";
    } else {
      const Certificate& c = d.certificate;
      os << " classes=" << c.classes_enumerated << " filtered=" << c.classes_filtered
         << " alphas=" << c.alphas_searched << " tested=" << c.candidates_tested
         << " r2=" << c.r2_passes << " audits=" << c.full_audit_passes;
      if (d.outcome == DegreeOutcome::nontrivial)
        os << " alpha=" << c.alpha_index << " tau=" << c.tau_index;
    }
    os << "\n";
  }
  os << "exhausted-through " << (exhausted_through >= 0 ? std::to_string(exhausted_through) : "none")
     << "\n";
  os << "minimal-degree " << (minimal_degree >= 0 ? std::to_string(minimal_degree) : "none") << "\n";
  if (minimal_degree >= 0) os << "x_" << rank << " " << minimal_degree << "\n";
  return os.str();
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["format"] = "saut-report-v1";
  j["rank"] = rank;
  j["degree_lo"] = degree_lo;
  j["degree_hi"] = degree_hi;
  j["injectivity"] = injectivity_mode_name(injectivity);
  j["compat"] = compat_filter;
  j["early_stop"] = early_stop;
  nlohmann::json ds = nlohmann::json::array();
  for (const DegreeReport& d : degrees) {
    nlohmann::json e;
    e["degree"] = d.degree;
    e["outcome"] = outcome_name(d.outcome);
    if (d.outcome == DegreeOutcome::capacity) {
      e["detail"] = d.capacity_detail;
    } else {
      const Certificate& c = d.certificate;
      e["classes_enumerated"] = c.classes_enumerated;
      e["classes_filtered"] = c.classes_filtered;
      e["alphas_searched"] = c.alphas_searched;
      e["candidates_tested"] = c.candidates_tested;
      e["r2_passes"] = c.r2_passes;
      e["full_audit_passes"] = c.full_audit_passes;
      if (d.outcome == DegreeOutcome::nontrivial) {
        e["alpha_index"] = c.alpha_index;
        e["tau_index"] = c.tau_index;
      }
    }
    ds.push_back(std::move(e));
  }
  j["degrees"] = std::move(ds);
  if (exhausted_through >= 0) j["exhausted_through"] = exhausted_through;
  if (minimal_degree >= 0) {
    j["minimal_degree"] = minimal_degree;
    j["x"][std::to_string(rank)] = minimal_degree;
  }
  return j.dump(2) + "\n";
}

RunReport run_search(const SearchConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  const bool ckpt = !cfg.checkpoint_dir.empty();
  const std::string dir = cfg.checkpoint_dir;
  if (ckpt) {
    ensure_directory(dir);
    const std::string hpath = dir + "/header.txt";
    const std::string want = header_text(cfg);
    if (file_exists(hpath)) {
      if (read_file(hpath) != want)
        throw std::invalid_argument("checkpoint directory belongs to a different configuration");
    } else {
      atomic_write_file(hpath, want);
    }
  }

  auto event = [&](const std::string& label) {
    if (hooks.on_event && !hooks.on_event(label)) throw AbortRun{};
  };

  // Phase one: the finite source groups and their subgroup classes.
  const SmallGroup d = SmallGroup::d_n_prime(cfg.rank);
  const SmallGroup a = SmallGroup::alternating(cfg.rank + 1);
  const std::vector<SubgroupClass> d_classes = subgroup_classes(d);
  const std::vector<SubgroupClass> a_classes = subgroup_classes(a);
  std::vector<int> alpha_positions, beta_positions;
  for (int i = 0; i < cfg.rank - 2; ++i) {
    alpha_positions.push_back(2 + i);
    beta_positions.push_back(i);
  }

  RunReport report;
  report.rank = cfg.rank;
  report.degree_lo = cfg.degree_lo;
  report.degree_hi = cfg.degree_hi;
  report.injectivity = cfg.injectivity;
  report.compat_filter = cfg.compat_filter;
  report.early_stop = cfg.early_stop;

  try {
    for (int m = cfg.degree_lo; m <= cfg.degree_hi; ++m) {
      DegreeReport dr;
      dr.degree = m;

      // A completed degree is read back instead of recomputed.
      const std::string certpath = dir + "/cert_m" + std::to_string(m) + ".json";
      if (ckpt && file_exists(certpath)) {
        dr.certificate = Certificate::from_json(read_file(certpath));
        if (dr.certificate.rank != cfg.rank || dr.certificate.degree != m)
          throw checkpoint_error(certpath + ": certificate does not match the run");
        dr.outcome = dr.certificate.kind == Certificate::Kind::nontrivial ? DegreeOutcome::nontrivial
                                                                          : DegreeOutcome::exhausted;
        if (dr.outcome == DegreeOutcome::exhausted && report.minimal_degree >= 0)
          throw std::logic_error("exhaustion above a degree with a nontrivial action");
        if (dr.outcome == DegreeOutcome::nontrivial && report.minimal_degree < 0)
          report.minimal_degree = m;
        report.degrees.push_back(std::move(dr));
        if (report.minimal_degree >= 0 && cfg.early_stop) break;
        continue;
      }

      bool degree_interrupted = false;
      try {
        const std::string p2path = dir + "/p2_m" + std::to_string(m) + ".rec";
        DegreeP2 p2;
        bool loaded = false;
        if (ckpt && file_exists(p2path)) {
          p2 = decode_p2(read_record_file(p2path), m, d.name());
          loaded = true;
        }
        if (!loaded) {
          // The injectivity filter is justified only at rank 5 below degree
          // 31; a configuration may force it elsewhere, and the certificate
          // then carries an explicit unjustified-override note.
          const bool injectivity_justified = cfg.rank == 5 && m < 31;
          const bool injectivity_active =
              cfg.injectivity == InjectivityMode::on ||
              (cfg.injectivity == InjectivityMode::automatic && injectivity_justified);

          std::vector<HomClass> alphas = enumerate_hom_classes(d, d_classes, m, cfg.class_bound);
          p2.enumerated = static_cast<long long>(alphas.size());
          std::erase_if(alphas, [](const HomClass& h) { return !h.alternating; });
          if (injectivity_active) {
            p2.justifications.push_back(
                injectivity_justified
                    ? "noninjective restrictions only extend through the rank-" +
                          std::to_string(cfg.rank) + " projective quotient, which needs degree 31"
                    : "injectivity filter forced on by configuration, outside its justified domain");
            std::erase_if(alphas, [](const HomClass& h) { return !h.injective; });
          }
          if (cfg.compat_filter && !alphas.empty()) {
            std::vector<HomClass> betas = enumerate_hom_classes(a, a_classes, m, cfg.class_bound);
            std::erase_if(betas, [](const HomClass& h) { return !h.alternating; });
            if (injectivity_active) std::erase_if(betas, [](const HomClass& h) { return !h.injective; });
            CompatibilityStats stats;
            alphas = compatibility_filter(alphas, alpha_positions, betas, beta_positions, m,
                                          cfg.node_budget, &stats);
            p2.justifications.push_back("restriction compatibility against " +
                                        std::to_string(betas.size()) + " classes of the rank-" +
                                        std::to_string(cfg.rank + 1) + " alternating source");
          }
          p2.filtered = p2.enumerated - static_cast<long long>(alphas.size());
          p2.alphas = std::move(alphas);
          if (ckpt) {
            write_record_file(p2path, encode_p2(m, p2));
            event("p2 m=" + std::to_string(m) + " classes=" + std::to_string(p2.enumerated) +
                  " kept=" + std::to_string(p2.alphas.size()));
          }
        }

        const std::string ledpath = dir + "/p3_m" + std::to_string(m) + ".led";
        std::vector<ShardResult> pre;
        if (ckpt && file_exists(ledpath))
          for (const std::string& payload : read_ledger(ledpath))
            pre.push_back(ShardResult::from_line(payload));

        DegreeSearchInput input;
        input.rank = cfg.rank;
        input.degree = m;
        input.d_group = &d;
        input.alphas = p2.alphas;
        input.classes_enumerated = p2.enumerated;
        input.classes_filtered = p2.filtered;
        input.filter_justifications = p2.justifications;

        SearchDegreeConfig scfg;
        scfg.tau_budget = cfg.tau_budget;
        scfg.shard_size = cfg.shard_size;
        scfg.threads = cfg.threads;
        scfg.parallel = cfg.parallel;
        scfg.extra_inner_screen = cfg.extra_inner_screen;

        Certificate cert = search_degree(
            input, scfg, pre.empty() ? nullptr : &pre, [&](const ShardResult& r) {
              if (ckpt) append_ledger_line(ledpath, r.to_line());
              if (hooks.on_event &&
                  !hooks.on_event("shard m=" + std::to_string(m) + " id=" + std::to_string(r.id) +
                                  " alpha=" + std::to_string(r.alpha) +
                                  " tested=" + std::to_string(r.tested) +
                                  " r2=" + std::to_string(r.r2_passes)))
                return false;
              return true;
            });
        dr.certificate = std::move(cert);
        dr.outcome = dr.certificate.kind == Certificate::Kind::nontrivial ? DegreeOutcome::nontrivial
                                                                          : DegreeOutcome::exhausted;
      } catch (const search_interrupted&) {
        degree_interrupted = true;
      } catch (const capacity_error& e) {
        dr.outcome = DegreeOutcome::capacity;
        dr.capacity_detail = e.what();
      }
      if (degree_interrupted) throw AbortRun{};

      if (dr.outcome != DegreeOutcome::capacity && ckpt) {
        atomic_write_file(dir + "/cert_m" + std::to_string(m) + ".json", dr.certificate.to_json());
        event("cert m=" + std::to_string(m));
      }

      if (dr.outcome == DegreeOutcome::exhausted && report.minimal_degree >= 0)
        throw std::logic_error("exhaustion above a degree with a nontrivial action");
      if (dr.outcome == DegreeOutcome::nontrivial && report.minimal_degree < 0)
        report.minimal_degree = m;

      report.degrees.push_back(std::move(dr));
      if (report.minimal_degree >= 0 && cfg.early_stop) break;
    }
  } catch (const AbortRun&) {
    report.aborted = true;
    return report;
  }

  int through = -1;
  for (const DegreeReport& dr : report.degrees) {
    if (dr.outcome != DegreeOutcome::exhausted) break;
    through = dr.degree;
  }
  report.exhausted_through = through;

  if (ckpt) {
    atomic_write_file(dir + "/report.txt", report.to_text());
    atomic_write_file(dir + "/report.json", report.to_json());
    try {
      event("report");
    } catch (const AbortRun&) {
      report.aborted = true;
    }
  }
  return report;
}

RunReport resume(const std::string& checkpoint_dir, int threads, bool parallel,
                 const RunHooks& hooks) {
  const std::string hpath = checkpoint_dir + "/header.txt";
  if (!file_exists(hpath)) throw checkpoint_error("no checkpoint header in " + checkpoint_dir);
  SearchConfig cfg = config_from_header(read_file(hpath));
  cfg.checkpoint_dir = checkpoint_dir;
  cfg.threads = threads;
  cfg.parallel = parallel;
  return run_search(cfg, hooks);
}

VerifyResult verify_certificate_file(const std::string& path) {
  const Certificate c = Certificate::from_json(read_file(path));
  return verify_certificate(c);
}

}  // namespace saut
