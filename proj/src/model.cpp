#include "qbdecay/model.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qbdecay {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const char* family_key(Face f) {
  switch (f) {
    case Face::Origin:
      return "empty";
    case Face::Axis1:
      return "b1";
    case Face::Axis2:
      return "b2";
    case Face::Interior:
      return "b12";
  }
  return "";
}

constexpr Face kFaces[] = {Face::Origin, Face::Axis1, Face::Axis2, Face::Interior};

// A step (i1, i2) is admissible from face f when it cannot leave the
// quarter plane from a point deep inside that face.
bool step_allowed(Face f, int i1, int i2) {
  switch (f) {
    case Face::Origin:
      return i1 >= 0 && i2 >= 0;
    case Face::Axis1:
      return i2 >= 0;
    case Face::Axis2:
      return i1 >= 0;
    case Face::Interior:
      return true;
  }
  return false;
}

}  // namespace

BlockFamily::BlockFamily(int s0) {
  for (auto& b : blocks_) b = Matrix::Zero(s0, s0);
}

int BlockFamily::slot(int i1, int i2) {
  if (i1 < -1 || i1 > 1 || i2 < -1 || i2 > 1)
    throw std::out_of_range("block increment outside {-1,0,1}^2");
  return (i1 + 1) * 3 + (i2 + 1);
}

const Matrix& BlockFamily::at(int i1, int i2) const { return blocks_[slot(i1, i2)]; }
Matrix& BlockFamily::at(int i1, int i2) { return blocks_[slot(i1, i2)]; }

Matrix BlockFamily::sum() const {
  Matrix s = blocks_[0];
  for (std::size_t k = 1; k < blocks_.size(); ++k) s += blocks_[k];
  return s;
}

bool BlockFamily::all_zero(int i1, int i2) const {
  const Matrix& b = at(i1, i2);
  return b.size() == 0 || (b.array() == 0.0).all();
}

BlockModel::BlockModel(int s0) : s0_(s0) {
  if (s0 < 1) throw ParseError("phase count s0 must be at least 1");
  for (auto& f : families_) f = BlockFamily(s0);
}

const BlockFamily& BlockModel::family(Face f) const { return families_[static_cast<int>(f)]; }
BlockFamily& BlockModel::family(Face f) { return families_[static_cast<int>(f)]; }

const BlockFamily& BlockModel::family_at(int x1, int x2) const {
  if (x1 < 0 || x2 < 0) throw std::out_of_range("lattice point outside the quarter plane");
  if (x1 == 0 && x2 == 0) return origin();
  if (x2 == 0) return axis1();
  if (x1 == 0) return axis2();
  return interior();
}

bool BlockModel::operator==(const BlockModel& o) const {
  if (s0_ != o.s0_) return false;
  for (Face f : kFaces)
    for (int i1 = -1; i1 <= 1; ++i1)
      for (int i2 = -1; i2 <= 1; ++i2)
        if (family(f).at(i1, i2) != o.family(f).at(i1, i2)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::pair<int, int> parse_step_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) throw ParseError("bad block key '" + key + "'");
  auto part = [&](const std::string& s) {
    if (s != "-1" && s != "0" && s != "1")
      throw ParseError("block key component '" + s + "' not in {-1,0,1}");
    return std::stoi(s);
  };
  return {part(key.substr(0, comma)), part(key.substr(comma + 1))};
}

Matrix parse_block(const json& arr, int s0, const std::string& where) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != s0)
    throw ParseError(where + ": expected " + std::to_string(s0) + " rows");
  Matrix m(s0, s0);
  for (int r = 0; r < s0; ++r) {
    const json& row = arr[r];
    if (!row.is_array() || static_cast<int>(row.size()) != s0)
      throw ParseError(where + ": expected " + std::to_string(s0) + " columns");
    for (int c = 0; c < s0; ++c) {
      const json& v = row[c];
      if (!v.is_number()) throw ParseError(where + ": non-numeric entry");
      double x = v.get<double>();
      if (!std::isfinite(x)) throw ParseError(where + ": non-finite entry");
      if (x < 0.0) throw ParseError(where + ": negative entry");
      m(r, c) = x;
    }
  }
  return m;
}

}  // namespace

BlockModel load_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model file must contain a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "s0" && key != "blocks") throw ParseError("unknown key '" + key + "'");
  if (!doc.contains("s0") || !doc["s0"].is_number_integer())
    throw ParseError("missing integer field 's0'");
  int s0 = doc["s0"].get<int>();
  if (s0 < 1) throw ParseError("s0 must be at least 1");

  BlockModel m(s0);
  if (doc.contains("blocks")) {
    const json& blocks = doc["blocks"];
    if (!blocks.is_object()) throw ParseError("'blocks' must be an object");
    for (const auto& [fam_key, fam_val] : blocks.items()) {
      Face face;
      if (fam_key == "empty")
        face = Face::Origin;
      else if (fam_key == "b1")
        face = Face::Axis1;
      else if (fam_key == "b2")
        face = Face::Axis2;
      else if (fam_key == "b12")
        face = Face::Interior;
      else
        throw ParseError("unknown block family '" + fam_key + "'");
      if (!fam_val.is_object()) throw ParseError("family '" + fam_key + "' must be an object");
      for (const auto& [step_key, block_val] : fam_val.items()) {
        auto [i1, i2] = parse_step_key(step_key);
        m.family(face).at(i1, i2) =
            parse_block(block_val, s0, fam_key + "[" + step_key + "]");
      }
    }
  }
  return m;
}

BlockModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model_json(buf.str());
}

std::string save_model(const BlockModel& m) {
  ordered_json doc;
  doc["s0"] = m.s0();
  ordered_json blocks = ordered_json::object();
  for (Face f : kFaces) {
    ordered_json fam = ordered_json::object();
    for (int i1 = -1; i1 <= 1; ++i1) {
      for (int i2 = -1; i2 <= 1; ++i2) {
        if (m.family(f).all_zero(i1, i2)) continue;
        const Matrix& b = m.family(f).at(i1, i2);
        ordered_json rows = ordered_json::array();
        for (int r = 0; r < m.s0(); ++r) {
          ordered_json row = ordered_json::array();
          for (int c = 0; c < m.s0(); ++c) row.push_back(b(r, c));
          rows.push_back(row);
        }
        fam[std::to_string(i1) + "," + std::to_string(i2)] = rows;
      }
    }
    if (!fam.empty()) blocks[family_key(f)] = fam;
  }
  doc["blocks"] = blocks;
  return doc.dump(2) + "\n";
}

void save_model(const BlockModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file '" + path + "'");
  out << save_model(m);
}

std::string model_hash(const BlockModel& m) {
  std::string s = save_model(m);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Directed-graph helpers on node set {0..n-1} given adjacency lists.
std::vector<int> bfs_depths(const std::vector<std::vector<int>>& adj, const std::vector<int>& roots) {
  std::vector<int> depth(adj.size(), -1);
  std::queue<int> q;
  for (int r : roots) {
    if (depth[r] < 0) {
      depth[r] = 0;
      q.push(r);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
    }
  }
  return depth;
}

std::vector<std::vector<int>> reverse_adj(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> r(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (int v : adj[u]) r[v].push_back(static_cast<int>(u));
  return r;
}

// Period of a strongly connected digraph: gcd over edges of
// depth(u) + 1 - depth(v) for any BFS depth labelling.
int graph_period(const std::vector<std::vector<int>>& adj, int root) {
  std::vector<int> depth = bfs_depths(adj, {root});
  int g = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (depth[u] < 0) continue;
    for (int v : adj[u]) {
      if (depth[v] < 0) continue;
      g = std::gcd(g, std::abs(depth[u] + 1 - depth[v]));
    }
  }
  return g == 0 ? 0 : g;
}

}  // namespace

ValidationReport validate_model(const BlockModel& m) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string msg) {
    report.push_back({std::move(code), std::move(msg)});
  };

  if (m.s0() < 1) {
    flag("shape", "phase count s0 must be at least 1");
    return report;
  }

  bool any_mass = false;
  for (Face f : kFaces) {
    for (int i1 = -1; i1 <= 1; ++i1) {
      for (int i2 = -1; i2 <= 1; ++i2) {
        const Matrix& b = m.family(f).at(i1, i2);
        if (b.rows() != m.s0() || b.cols() != m.s0()) {
          flag("shape", std::string(family_key(f)) + " block has wrong dimensions");
          return report;
        }
        if (!(b.array() >= 0.0).all() || !b.allFinite())
          flag("negative_entry", std::string(family_key(f)) + " block (" + std::to_string(i1) +
                                     "," + std::to_string(i2) + ") has negative or non-finite entries");
        if (!step_allowed(f, i1, i2) && !m.family(f).all_zero(i1, i2))
          flag("forbidden_block", std::string(family_key(f)) + " block (" + std::to_string(i1) +
                                      "," + std::to_string(i2) +
                                      ") must be zero: the step leaves the quarter plane");
        if (!m.family(f).all_zero(i1, i2)) any_mass = true;
      }
    }
  }
  if (!any_mass) {
    flag("empty_model", "all blocks are zero");
    return report;
  }

  // Aggregated interior matrix: irreducible and aperiodic over phases.
  {
    Matrix agg = m.interior().sum();
    std::vector<std::vector<int>> adj(m.s0());
    for (int r = 0; r < m.s0(); ++r)
      for (int c = 0; c < m.s0(); ++c)
        if (agg(r, c) > 0.0) adj[r].push_back(c);
    auto fwd = bfs_depths(adj, {0});
    auto bwd = bfs_depths(reverse_adj(adj), {0});
    bool strongly_connected = true;
    for (int v = 0; v < m.s0(); ++v)
      if (fwd[v] < 0 || bwd[v] < 0) strongly_connected = false;
    if (!strongly_connected) {
      flag("aggregate_reducible", "summed interior family is not irreducible over phases");
    } else {
      int p = graph_period(adj, 0);
      if (p != 1)
        flag("aggregate_periodic",
             "summed interior family has period " + std::to_string(p) + " over phases");
    }
  }

  // Finite irreducibility and aperiodicity proxy: the reachability graph of
  // a 12x12 truncation (origin included) must be strongly connected through
  // level (1,1) and must have period one. Spatial periodicity that the
  // phase aggregate cannot see is caught here.
  {
    const int L = 12;
    const int side = L + 1;
    const int s0 = m.s0();
    auto sid = [&](int x1, int x2, int j) { return (x1 * side + x2) * s0 + j; };
    std::vector<std::vector<int>> adj(side * side * s0);
    for (int x1 = 0; x1 <= L; ++x1) {
      for (int x2 = 0; x2 <= L; ++x2) {
        const BlockFamily& fam = m.family_at(x1, x2);
        for (int i1 = -1; i1 <= 1; ++i1) {
          for (int i2 = -1; i2 <= 1; ++i2) {
            int y1 = x1 + i1, y2 = x2 + i2;
            if (y1 < 0 || y2 < 0 || y1 > L || y2 > L) continue;
            const Matrix& b = fam.at(i1, i2);
            for (int r = 0; r < s0; ++r)
              for (int c = 0; c < s0; ++c)
                if (b(r, c) > 0.0) adj[sid(x1, x2, r)].push_back(sid(y1, y2, c));
          }
        }
      }
    }
    std::vector<int> roots;
    for (int j = 0; j < s0; ++j) roots.push_back(sid(1, 1, j));
    auto fwd = bfs_depths(adj, roots);
    auto bwd = bfs_depths(reverse_adj(adj), roots);
    bool ok = true;
    for (std::size_t v = 0; v < adj.size() && ok; ++v)
      if (fwd[v] < 0 || bwd[v] < 0) ok = false;
    if (!ok) {
      flag("truncation_not_strongly_connected",
           "12x12 truncation is not strongly connected through level (1,1)");
    } else {
      int p = graph_period(adj, sid(1, 1, 0));
      if (p != 1)
        flag("truncation_periodic",
             "12x12 truncation has period " + std::to_string(p));
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Time reversal

ReversedModel::ReversedModel(BlockModel derived, BlockModel original)
    : derived_(std::move(derived)), original_(std::move(original)) {}

Matrix ReversedModel::descent(Axis axis, int i) const {
  // From a point one step above a face, the reversed operator descends onto
  // the face with the transpose of an original ascent block off that face.
  if (axis == Axis::Two) return original_.axis1().at(-i, 1).transpose();
  return original_.axis2().at(1, -i).transpose();
}

Matrix ReversedModel::block_at(int x1, int x2, int d1, int d2) const {
  if (x1 < 0 || x2 < 0 || x1 + d1 < 0 || x2 + d2 < 0)
    throw std::out_of_range("reversed block outside the quarter plane");
  const BlockModel& a = original_;
  if (x1 >= 1 && x2 >= 1) {
    const bool drop1 = (x1 == 1 && d1 == -1);
    const bool drop2 = (x2 == 1 && d2 == -1);
    if (drop1 && drop2) return a.origin().at(1, 1).transpose();
    if (drop2) return descent(Axis::Two, d1);
    if (drop1) return descent(Axis::One, d2);
    return derived_.interior().at(d1, d2);
  }
  if (x2 == 0 && x1 >= 1) {
    if (x1 == 1 && d1 == -1) {
      if (d2 == 0) return a.origin().at(1, 0).transpose();
      return a.axis2().at(1, -1).transpose();  // lands on (0, 1)
    }
    return derived_.axis1().at(d1, d2);
  }
  if (x1 == 0 && x2 >= 1) {
    if (x2 == 1 && d2 == -1) {
      if (d1 == 0) return a.origin().at(0, 1).transpose();
      return a.axis1().at(-1, 1).transpose();  // lands on (1, 0)
    }
    return derived_.axis2().at(d1, d2);
  }
  return derived_.origin().at(d1, d2);
}

ReversedModel reverse_model(const BlockModel& m) {
  BlockModel d(m.s0());
  // Interior family: exact transpose with reflected steps.
  for (int i1 = -1; i1 <= 1; ++i1)
    for (int i2 = -1; i2 <= 1; ++i2)
      d.interior().at(i1, i2) = m.interior().at(-i1, -i2).transpose();
  // Axis families, valid from points at distance >= 2 along the face.
  for (int i = -1; i <= 1; ++i) {
    d.axis1().at(i, 0) = m.axis1().at(-i, 0).transpose();
    d.axis1().at(i, 1) = m.interior().at(-i, -1).transpose();
    d.axis2().at(0, i) = m.axis2().at(0, -i).transpose();
    d.axis2().at(1, i) = m.interior().at(-1, -i).transpose();
  }
  // Origin row.
  d.origin().at(0, 0) = m.origin().at(0, 0).transpose();
  d.origin().at(1, 0) = m.axis1().at(-1, 0).transpose();
  d.origin().at(0, 1) = m.axis2().at(0, -1).transpose();
  d.origin().at(1, 1) = m.interior().at(-1, -1).transpose();
  return ReversedModel(std::move(d), m);
}

}  // namespace qbdecay
