#include "ordmetrics/core.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ordmetrics/rng.hpp"

namespace ordmetrics {

std::vector<int> Ranking::positions() const {
  std::vector<int> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
  return pos;
}

Ranking identity_ranking(int m) {
  Ranking r;
  r.order.resize(static_cast<size_t>(m));
  std::iota(r.order.begin(), r.order.end(), 0);
  return r;
}

Ranking reversed(const Ranking& r) {
  Ranking out = r;
  std::reverse(out.order.begin(), out.order.end());
  return out;
}

void validate_ranking(const Ranking& r, int num_candidates) {
  if (r.size() != num_candidates)
    throw ValidationError("ranking has " + std::to_string(r.size()) + " entries, expected " +
                          std::to_string(num_candidates));
  std::vector<char> seen(static_cast<size_t>(num_candidates), 0);
  for (int c : r.order) {
    if (c < 0 || c >= num_candidates)
      throw ValidationError("candidate id " + std::to_string(c) + " out of range");
    if (seen[static_cast<size_t>(c)]) throw ValidationError("candidate id " + std::to_string(c) + " repeated");
    seen[static_cast<size_t>(c)] = 1;
  }
}

void validate_election(const Election& e) {
  if (e.num_candidates <= 0) throw ValidationError("election needs at least one candidate");
  if (!e.labels.empty() && static_cast<int>(e.labels.size()) != e.num_candidates)
    throw ValidationError("label count does not match candidate count");
  for (size_t i = 0; i < e.votes.size(); ++i) {
    try {
      validate_ranking(e.votes[i], e.num_candidates);
    } catch (const ValidationError& err) {
      throw ValidationError("vote " + std::to_string(i) + ": " + err.what());
    }
  }
}

void validate_position_matrix(const PositionMatrix& x) {
  int m = x.num_candidates;
  if (m <= 0 || static_cast<int>(x.counts.size()) != m)
    throw ValidationError("position matrix must be square");
  for (const auto& row : x.counts)
    if (static_cast<int>(row.size()) != m) throw ValidationError("position matrix must be square");
  for (int p = 0; p < m; ++p) {
    long long rs = 0;
    for (int c = 0; c < m; ++c) {
      if (x.counts[p][c] < 0) throw ValidationError("position matrix entries must be nonnegative");
      rs += x.counts[p][c];
    }
    if (rs != x.num_voters) throw ValidationError("position matrix row " + std::to_string(p) +
                                                  " does not sum to the voter count");
  }
  for (int c = 0; c < m; ++c) {
    long long cs = 0;
    for (int p = 0; p < m; ++p) cs += x.counts[p][c];
    if (cs != x.num_voters) throw ValidationError("position matrix column " + std::to_string(c) +
                                                  " does not sum to the voter count");
  }
}

PositionMatrix position_matrix(const Election& e) {
  PositionMatrix x;
  x.num_candidates = e.num_candidates;
  x.num_voters = e.num_voters();
  x.counts.assign(static_cast<size_t>(e.num_candidates),
                  std::vector<long long>(static_cast<size_t>(e.num_candidates), 0));
  for (const auto& v : e.votes)
    for (int p = 0; p < e.num_candidates; ++p) x.counts[static_cast<size_t>(p)][static_cast<size_t>(v.order[static_cast<size_t>(p)])]++;
  return x;
}

PairwisePreference pairwise_preference(const Election& e) {
  PairwisePreference p;
  p.num_candidates = e.num_candidates;
  p.num_voters = e.num_voters();
  p.wins.assign(static_cast<size_t>(e.num_candidates),
                std::vector<long long>(static_cast<size_t>(e.num_candidates), 0));
  for (const auto& v : e.votes)
    for (int i = 0; i < e.num_candidates; ++i)
      for (int j = i + 1; j < e.num_candidates; ++j)
        p.wins[static_cast<size_t>(v.order[static_cast<size_t>(i)])][static_cast<size_t>(v.order[static_cast<size_t>(j)])]++;
  return p;
}

std::vector<long long> borda_scores(const Election& e) {
  std::vector<long long> score(static_cast<size_t>(e.num_candidates), 0);
  for (const auto& v : e.votes)
    for (int p = 0; p < e.num_candidates; ++p)
      score[static_cast<size_t>(v.order[static_cast<size_t>(p)])] += e.num_candidates - 1 - p;
  return score;
}

Election borda_top(const Election& e, int top_m) {
  if (top_m <= 0 || top_m > e.num_candidates)
    throw ValidationError("borda_top: requested candidate count out of range");
  auto score = borda_scores(e);
  std::vector<int> ids(static_cast<size_t>(e.num_candidates));
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (score[static_cast<size_t>(a)] != score[static_cast<size_t>(b)]) return score[static_cast<size_t>(a)] > score[static_cast<size_t>(b)];
    return a < b;
  });
  std::vector<int> new_id(static_cast<size_t>(e.num_candidates), -1);
  for (int r = 0; r < top_m; ++r) new_id[static_cast<size_t>(ids[static_cast<size_t>(r)])] = r;

  Election out;
  out.num_candidates = top_m;
  if (!e.labels.empty()) {
    out.labels.resize(static_cast<size_t>(top_m));
    for (int r = 0; r < top_m; ++r) out.labels[static_cast<size_t>(r)] = e.labels[static_cast<size_t>(ids[static_cast<size_t>(r)])];
  }
  out.votes.reserve(e.votes.size());
  for (const auto& v : e.votes) {
    Ranking nv;
    nv.order.reserve(static_cast<size_t>(top_m));
    for (int c : v.order)
      if (new_id[static_cast<size_t>(c)] >= 0) nv.order.push_back(new_id[static_cast<size_t>(c)]);
    out.votes.push_back(std::move(nv));
  }
  return out;
}

Election complete_partial_votes(int num_candidates,
                                const std::vector<std::vector<int>>& partial_votes,
                                uint64_t seed) {
  Rng rng(seed);
  Election e;
  e.num_candidates = num_candidates;
  e.votes.reserve(partial_votes.size());
  for (size_t i = 0; i < partial_votes.size(); ++i) {
    std::vector<char> seen(static_cast<size_t>(num_candidates), 0);
    for (int c : partial_votes[i]) {
      if (c < 0 || c >= num_candidates)
        throw ValidationError("partial vote " + std::to_string(i) + ": candidate id " +
                              std::to_string(c) + " out of range");
      if (seen[static_cast<size_t>(c)])
        throw ValidationError("partial vote " + std::to_string(i) + ": candidate id " +
                              std::to_string(c) + " repeated");
      seen[static_cast<size_t>(c)] = 1;
    }
    std::vector<int> rest;
    for (int c = 0; c < num_candidates; ++c)
      if (!seen[static_cast<size_t>(c)]) rest.push_back(c);
    rng.shuffle(rest);
    Ranking v;
    v.order = partial_votes[i];
    v.order.insert(v.order.end(), rest.begin(), rest.end());
    e.votes.push_back(std::move(v));
  }
  return e;
}

namespace {

const char* kMagic = "# ordmetrics-election v1";

}  // namespace

Election read_election(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty election file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMagic) throw ValidationError("bad magic line: expected '" + std::string(kMagic) + "'");
  if (!std::getline(in, line)) throw ValidationError("missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int m = -1;
  long long n = -1;
  {
    std::istringstream hs(line);
    std::string mtok, ntok;
    hs >> mtok >> ntok;
    if (mtok.rfind("m=", 0) != 0 || ntok.rfind("n=", 0) != 0)
      throw ValidationError("header line must be 'm=<int> n=<int>'");
    try {
      m = std::stoi(mtok.substr(2));
      n = std::stoll(ntok.substr(2));
    } catch (const std::exception&) {
      throw ValidationError("header line must be 'm=<int> n=<int>'");
    }
  }
  if (m <= 0 || n < 0) throw ValidationError("header declares invalid m or n");

  Election e;
  e.num_candidates = m;
  long long declared_total = 0;
  size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream cs(line);
      std::string hash, word;
      cs >> hash >> word;
      if (word == "label") {
        int idx;
        if (!(cs >> idx) || idx < 0 || idx >= m)
          throw ValidationError("line " + std::to_string(lineno) + ": bad label index");
        std::string text;
        std::getline(cs, text);
        if (!text.empty() && text.front() == ' ') text.erase(text.begin());
        if (e.labels.empty()) e.labels.assign(static_cast<size_t>(m), "");
        e.labels[static_cast<size_t>(idx)] = text;
      }
      continue;  // other comment lines are ignored
    }
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ValidationError("line " + std::to_string(lineno) + ": expected '<count>: <ranking>'");
    long long count = 0;
    try {
      count = std::stoll(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ValidationError("line " + std::to_string(lineno) + ": bad vote count");
    }
    if (count <= 0) throw ValidationError("line " + std::to_string(lineno) + ": vote count must be positive");
    Ranking r;
    r.order.reserve(static_cast<size_t>(m));
    {
      std::string rest = line.substr(colon + 1);
      std::istringstream vs(rest);
      std::string tok;
      while (std::getline(vs, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        if (a == std::string::npos)
          throw ValidationError("line " + std::to_string(lineno) + ": empty candidate token");
        size_t b = tok.find_last_not_of(" \t");
        try {
          r.order.push_back(std::stoi(tok.substr(a, b - a + 1)));
        } catch (const std::exception&) {
          throw ValidationError("line " + std::to_string(lineno) + ": bad candidate token '" + tok + "'");
        }
      }
    }
    try {
      validate_ranking(r, m);
    } catch (const ValidationError& err) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + err.what());
    }
    declared_total += count;
    if (declared_total > n)
      throw ValidationError("vote counts exceed declared n=" + std::to_string(n));
    for (long long i = 0; i < count; ++i) e.votes.push_back(r);
  }
  if (declared_total != n)
    throw ValidationError("vote counts sum to " + std::to_string(declared_total) +
                          ", declared n=" + std::to_string(n));
  return e;
}

Election read_election_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open election file: " + path);
  try {
    return read_election(in);
  } catch (const ValidationError& err) {
    throw ValidationError(path + ": " + err.what());
  }
}

void write_election(const Election& e, std::ostream& out) {
  validate_election(e);
  out << kMagic << "\n";
  out << "m=" << e.num_candidates << " n=" << e.num_voters() << "\n";
  for (size_t i = 0; i < e.labels.size(); ++i)
    if (!e.labels[i].empty()) out << "# label " << i << " " << e.labels[i] << "\n";
  auto d = collapse_votes(e);
  for (size_t i = 0; i < d.rankings.size(); ++i) {
    out << d.weights[i] << ": ";
    const auto& o = d.rankings[i].order;
    for (size_t j = 0; j < o.size(); ++j) {
      if (j) out << ",";
      out << o[j];
    }
    out << "\n";
  }
}

void write_election_file(const Election& e, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
  if (!out) throw ValidationError("cannot write election file: " + path);
  write_election(e, out);
}

DistinctVotes collapse_votes(const Election& e) {
  DistinctVotes d;
  d.voter_to_distinct.reserve(e.votes.size());
  std::map<std::vector<int>, int> index;
  for (const auto& v : e.votes) {
    auto it = index.find(v.order);
    if (it == index.end()) {
      it = index.emplace(v.order, static_cast<int>(d.rankings.size())).first;
      d.rankings.push_back(v);
      d.weights.push_back(0);
    }
    d.weights[static_cast<size_t>(it->second)]++;
    d.voter_to_distinct.push_back(it->second);
  }
  return d;
}

bool same_vote_multiset(const Election& a, const Election& b) {
  if (a.num_candidates != b.num_candidates || a.votes.size() != b.votes.size()) return false;
  std::vector<std::vector<int>> va, vb;
  va.reserve(a.votes.size());
  vb.reserve(b.votes.size());
  for (const auto& v : a.votes) va.push_back(v.order);
  for (const auto& v : b.votes) vb.push_back(v.order);
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  return va == vb;
}

}  // namespace ordmetrics
