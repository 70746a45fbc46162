#include "ordmetrics/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ordmetrics/cultures.hpp"
#include "ordmetrics/embedding.hpp"
#include "ordmetrics/indices.hpp"
#include "ordmetrics/parallel.hpp"
#include "ordmetrics/rng.hpp"

namespace fs = std::filesystem;

namespace ordmetrics {

KKMethod parse_solver(const std::string& name) {
  if (name == "greedy") return KKMethod::greedy;
  if (name == "local_search") return KKMethod::local_search;
  if (name == "combined") return KKMethod::combined;
  if (name == "best_of") return KKMethod::best_of;
  throw ValidationError("unknown solver '" + name + "' (greedy|local_search|combined|best_of)");
}

IsoMode parse_mode(const std::string& name) {
  if (name == "exact") return IsoMode::exact;
  if (name == "heuristic") return IsoMode::heuristic;
  throw ValidationError("unknown mode '" + name + "' (exact|heuristic)");
}

void write_effective_config(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  nlohmann::json j;
  j["command"] = cfg.command;
  j["inputs"] = cfg.inputs;
  j["out"] = cfg.out_dir;
  j["solver"] = cfg.solver;
  j["mode"] = cfg.mode;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["budget"] = cfg.budget;
  std::ofstream out(fs::path(cfg.out_dir) / "effective_config.json");
  if (!out) throw ValidationError("cannot write to output directory " + cfg.out_dir);
  out << j.dump(2) << "\n";
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::path p = fs::path(cfg.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw ValidationError("cannot write " + p.string());
  return out;
}

struct NamedElection {
  std::string id;
  std::string tag;
  Election election;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, std::string> read_tag_index(const fs::path& dir) {
  std::map<std::string, std::string> tags;
  std::ifstream in(dir / "dataset_index.csv");
  if (!in) return tags;
  std::string line;
  if (!std::getline(in, line)) return tags;
  auto header = split_csv_line(line);
  int id_col = -1, tag_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "id") id_col = static_cast<int>(i);
    if (header[i] == "tag") tag_col = static_cast<int>(i);
  }
  if (id_col < 0 || tag_col < 0) return tags;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) > std::max(id_col, tag_col))
      tags[cells[id_col]] = cells[tag_col];
  }
  return tags;
}

std::vector<NamedElection> read_election_dir(const std::string& dir) {
  fs::path p(dir);
  if (!fs::is_directory(p)) throw ValidationError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(p))
    if (entry.is_regular_file() && entry.path().extension() == ".elc")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  auto tags = read_tag_index(p);
  std::vector<NamedElection> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    NamedElection ne;
    ne.id = f.stem().string();
    auto it = tags.find(ne.id);
    if (it != tags.end()) ne.tag = it->second;
    ne.election = read_election_file(f.string());
    out.push_back(std::move(ne));
  }
  return out;
}

std::string ranking_text(const Ranking& r) {
  std::string s;
  for (int i = 0; i < r.size(); ++i) {
    if (i) s += '>';
    s += std::to_string(r.order[i]);
  }
  return s;
}

}  // namespace

void cmd_generate(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("generate takes one manifest path");
  write_effective_config(cfg);
  auto entries = load_manifest(cfg.inputs[0]);
  auto specs = resolve_specs(entries);
  std::vector<Election> elections(specs.size());
  parallel_for(0, static_cast<int>(specs.size()), cfg.threads,
               [&](int i) { elections[i] = sample(specs[static_cast<size_t>(i)]); });
  for (size_t i = 0; i < specs.size(); ++i)
    write_election_file(elections[i], (fs::path(cfg.out_dir) / (specs[i].id + ".elc")).string());
  auto index = open_out(cfg, "dataset_index.csv");
  index << "id,tag,kind,m,n\n";
  for (const auto& s : specs)
    index << s.id << "," << s.tag << "," << s.kind << "," << s.m << "," << s.n << "\n";
}

void cmd_indices(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("indices takes one election directory");
  write_effective_config(cfg);
  KKMethod solver = parse_solver(cfg.solver);
  auto dataset = read_election_dir(cfg.inputs[0]);
  std::vector<IndexReport> reports(dataset.size());
  parallel_for(0, static_cast<int>(dataset.size()), cfg.threads, [&](int i) {
    reports[static_cast<size_t>(i)] = index_report(dataset[static_cast<size_t>(i)].election,
                                                   solver, Rng::mix(cfg.seed, i));
  });
  auto csv = open_out(cfg, "indices.csv");
  csv << "id,tag,agreement,diversity,polarization\n";
  fs::create_directories(fs::path(cfg.out_dir) / "kappa");
  for (size_t i = 0; i < dataset.size(); ++i) {
    csv << dataset[i].id << "," << dataset[i].tag << "," << fmt_double(reports[i].agreement)
        << "," << fmt_double(reports[i].diversity) << ","
        << fmt_double(reports[i].polarization) << "\n";
    std::ofstream side(fs::path(cfg.out_dir) / "kappa" / (dataset[i].id + ".csv"));
    if (!side) throw ValidationError("cannot write kappa sidecar for " + dataset[i].id);
    side << "k,kappa\n";
    for (size_t k = 0; k < reports[i].kappa_profile.size(); ++k)
      side << (k + 1) << "," << reports[i].kappa_profile[k] << "\n";
  }
}

void cmd_kkemeny(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("kkemeny takes one election directory");
  write_effective_config(cfg);
  KKMethod solver = parse_solver(cfg.solver);
  auto dataset = read_election_dir(cfg.inputs[0]);
  std::vector<std::vector<long long>> profiles(dataset.size());
  parallel_for(0, static_cast<int>(dataset.size()), cfg.threads, [&](int i) {
    profiles[static_cast<size_t>(i)] = k_kemeny_profile(dataset[static_cast<size_t>(i)].election,
                                                        solver, Rng::mix(cfg.seed, i));
  });
  auto csv = open_out(cfg, "kkemeny.csv");
  csv << "id,k,kappa\n";
  for (size_t i = 0; i < dataset.size(); ++i)
    for (size_t k = 0; k < profiles[i].size(); ++k)
      csv << dataset[i].id << "," << (k + 1) << "," << profiles[i][k] << "\n";
}

void cmd_compare_kkemeny(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("compare-kkemeny takes one election directory");
  write_effective_config(cfg);
  auto dataset = read_election_dir(cfg.inputs[0]);
  struct Rows {
    std::vector<long long> greedy, ls, combined;
  };
  std::vector<Rows> rows(dataset.size());
  parallel_for(0, static_cast<int>(dataset.size()), cfg.threads, [&](int i) {
    const Election& e = dataset[static_cast<size_t>(i)].election;
    uint64_t s = Rng::mix(cfg.seed, i);
    rows[static_cast<size_t>(i)].greedy = k_kemeny_profile(e, KKMethod::greedy, s);
    rows[static_cast<size_t>(i)].ls = k_kemeny_profile(e, KKMethod::local_search, s);
    rows[static_cast<size_t>(i)].combined = k_kemeny_profile(e, KKMethod::combined, s);
  });
  auto csv = open_out(cfg, "compare_kkemeny.csv");
  csv << "id,k,greedy,local_search,combined\n";
  for (size_t i = 0; i < dataset.size(); ++i)
    for (size_t k = 0; k < rows[i].greedy.size(); ++k)
      csv << dataset[i].id << "," << (k + 1) << "," << rows[i].greedy[k] << "," << rows[i].ls[k]
          << "," << rows[i].combined[k] << "\n";
  // pairwise method gaps over all (election, k) rows
  auto summary = open_out(cfg, "compare_summary.csv");
  summary << "method_a,method_b,max,mean,min\n";
  const char* names[3] = {"greedy", "local_search", "combined"};
  auto column = [&](size_t i, int which) -> const std::vector<long long>& {
    return which == 0 ? rows[i].greedy : which == 1 ? rows[i].ls : rows[i].combined;
  };
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      long long mx = 0, mn = 0;
      double mean = 0.0;
      long long count = 0;
      bool first = true;
      for (size_t i = 0; i < dataset.size(); ++i)
        for (size_t k = 0; k < rows[i].greedy.size(); ++k) {
          long long diff = column(i, a)[k] - column(i, b)[k];
          if (first) {
            mx = mn = diff;
            first = false;
          }
          mx = std::max(mx, diff);
          mn = std::min(mn, diff);
          mean += static_cast<double>(diff);
          ++count;
        }
      if (count > 0) mean /= static_cast<double>(count);
      summary << names[a] << "," << names[b] << "," << mx << "," << fmt_double(mean) << "," << mn
              << "\n";
    }
  }
}

void cmd_distance(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) throw ValidationError("distance takes two election files");
  write_effective_config(cfg);
  Election a = read_election_file(cfg.inputs[0]);
  Election b = read_election_file(cfg.inputs[1]);
  auto res = isomorphic_swap_distance(a, b, parse_mode(cfg.mode), cfg.seed);
  nlohmann::json j;
  j["distance"] = res.distance;
  j["exact"] = res.exact;
  j["candidate_map"] = res.candidate_map;
  j["voter_map"] = res.voter_map;
  auto out = open_out(cfg, "distance.json");
  out << j.dump(2) << "\n";
  std::printf("%lld\n", res.distance);
}

void cmd_map(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("map takes one election directory");
  write_effective_config(cfg);
  auto dataset = read_election_dir(cfg.inputs[0]);
  std::vector<Election> elections;
  elections.reserve(dataset.size());
  for (auto& ne : dataset) elections.push_back(ne.election);
  auto result = map_of_elections(elections, parse_mode(cfg.mode), cfg.seed, cfg.threads);
  auto csv = open_out(cfg, "map.csv");
  csv << "id,tag,x,y\n";
  for (size_t i = 0; i < dataset.size(); ++i)
    csv << dataset[i].id << "," << dataset[i].tag << ","
        << fmt_double(result.embedding.points[i][0]) << ","
        << fmt_double(result.embedding.points[i][1]) << "\n";
  auto dcsv = open_out(cfg, "distances.csv");
  dcsv << "id";
  for (const auto& ne : dataset) dcsv << "," << ne.id;
  dcsv << "\n";
  for (size_t i = 0; i < dataset.size(); ++i) {
    dcsv << dataset[i].id;
    for (size_t j = 0; j < dataset.size(); ++j) dcsv << "," << result.distances[i][j];
    dcsv << "\n";
  }
}

void cmd_prefmap(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError("prefmap takes one election file");
  write_effective_config(cfg);
  Election e = read_election_file(cfg.inputs[0]);
  auto result = map_of_preferences(e, cfg.seed);
  auto csv = open_out(cfg, "prefmap.csv");
  csv << "id,tag,x,y,multiplicity\n";
  for (size_t i = 0; i < result.points.size(); ++i)
    csv << i << "," << ranking_text(result.distinct[i]) << "," << fmt_double(result.points[i].x)
        << "," << fmt_double(result.points[i].y) << "," << result.points[i].multiplicity << "\n";
}

void cmd_correlate(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2)
    throw ValidationError("correlate takes an indices csv and an election directory");
  write_effective_config(cfg);
  std::ifstream in(cfg.inputs[0]);
  if (!in) throw ValidationError("cannot open " + cfg.inputs[0]);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(cfg.inputs[0] + " is empty");
  auto header = split_csv_line(line);
  std::map<std::string, int> col;
  for (size_t i = 0; i < header.size(); ++i) col[header[i]] = static_cast<int>(i);
  for (const char* need : {"id", "agreement", "diversity", "polarization"})
    if (!col.count(need))
      throw ValidationError(cfg.inputs[0] + " lacks column '" + std::string(need) + "'");
  std::map<std::string, std::array<double, 3>> by_id;  // agreement, diversity, polarization
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    by_id[cells[static_cast<size_t>(col["id"])]] = {
        std::stod(cells[static_cast<size_t>(col["agreement"])]),
        std::stod(cells[static_cast<size_t>(col["diversity"])]),
        std::stod(cells[static_cast<size_t>(col["polarization"])])};
  }
  auto dataset = read_election_dir(cfg.inputs[1]);
  if (dataset.empty()) throw ValidationError("no election files in " + cfg.inputs[1]);
  for (const auto& ne : dataset)
    if (!by_id.count(ne.id)) throw ValidationError("no indices row for election " + ne.id);

  const int m = dataset[0].election.num_candidates;
  const int n = dataset[0].election.num_voters();
  Election id_e = identity_election(m, n);
  Election an_e = antagonism_election(m, n);
  Election un_e = un_star_election(m, n, Rng::mix(cfg.seed, 0x554E));
  IsoMode mode = parse_mode(cfg.mode);

  const int count = static_cast<int>(dataset.size());
  std::vector<std::array<double, 3>> dists(dataset.size());  // d_ID, d_AN, d_UN*
  parallel_for(0, 3 * count, cfg.threads, [&](int task) {
    int i = task / 3, which = task % 3;
    const Election& anchor = which == 0 ? id_e : which == 1 ? an_e : un_e;
    auto res = isomorphic_swap_distance(dataset[static_cast<size_t>(i)].election, anchor, mode,
                                        Rng::mix(cfg.seed, task));
    dists[static_cast<size_t>(i)][static_cast<size_t>(which)] =
        static_cast<double>(res.distance);
  });

  std::vector<double> agreement, diversity, polarization, d_id, d_an, d_un;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const auto& idx = by_id[dataset[i].id];
    agreement.push_back(idx[0]);
    diversity.push_back(idx[1]);
    polarization.push_back(idx[2]);
    d_id.push_back(dists[i][0]);
    d_an.push_back(dists[i][1]);
    d_un.push_back(dists[i][2]);
  }
  auto csv = open_out(cfg, "correlations.csv");
  csv << "index,compass,pearson\n";
  csv << "agreement,ID," << fmt_double(pearson(agreement, d_id)) << "\n";
  csv << "diversity,UN*," << fmt_double(pearson(diversity, d_un)) << "\n";
  csv << "polarization,AN," << fmt_double(pearson(polarization, d_an)) << "\n";
}

void run_command(const RunConfig& cfg) {
  if (cfg.command == "generate") return cmd_generate(cfg);
  if (cfg.command == "indices") return cmd_indices(cfg);
  if (cfg.command == "kkemeny") return cmd_kkemeny(cfg);
  if (cfg.command == "compare-kkemeny") return cmd_compare_kkemeny(cfg);
  if (cfg.command == "distance") return cmd_distance(cfg);
  if (cfg.command == "map") return cmd_map(cfg);
  if (cfg.command == "prefmap") return cmd_prefmap(cfg);
  if (cfg.command == "correlate") return cmd_correlate(cfg);
  throw ValidationError("unknown command '" + cfg.command + "'");
}

}  // namespace ordmetrics
