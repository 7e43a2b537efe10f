#include "sfmap/io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sfmap {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("unknown field '" + it.key() + "' in " + where);
}

std::vector<int> int_list(const json& arr) {
  std::vector<int> out;
  for (const auto& v : arr) out.push_back(v.get<int>());
  return out;
}

std::vector<double> double_list(const json& arr) {
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(v.get<double>());
  return out;
}

SimpleComponent parse_component(const json& c) {
  if (!c.is_object()) throw std::invalid_argument("component must be an object");
  std::string kind = c.at("kind").get<std::string>();
  if (kind == "edge_cut") {
    reject_unknown(c, {"kind", "u", "v", "weight"}, "edge_cut");
    return SimpleComponent::edge_cut(c.at("u").get<int>(), c.at("v").get<int>(),
                                     c.at("weight").get<double>());
  }
  if (kind == "graph_cut") {
    reject_unknown(c, {"kind", "edges"}, "graph_cut");
    std::vector<Edge> edges;
    for (const auto& e : c.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw std::invalid_argument("graph_cut edge must be [u, v, weight]");
      edges.push_back(Edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return SimpleComponent::graph_cut(std::move(edges));
  }
  if (kind == "concave_cardinality") {
    reject_unknown(c, {"kind", "values", "support"}, "concave_cardinality");
    return SimpleComponent::concave_cardinality(double_list(c.at("values")),
                                                int_list(c.at("support")));
  }
  if (kind == "modular") {
    reject_unknown(c, {"kind", "weights", "support"}, "modular");
    return SimpleComponent::modular(double_list(c.at("weights")), int_list(c.at("support")));
  }
  if (kind == "table") {
    reject_unknown(c, {"kind", "support", "values"}, "table");
    return SimpleComponent::table(int_list(c.at("support")), double_list(c.at("values")));
  }
  throw std::invalid_argument("unknown component kind '" + kind + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DecomposableProblem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem file parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("problem file must be a JSON object");
  reject_unknown(doc, {"ground_set", "components"}, "problem file");
  int n = 0;
  std::vector<SimpleComponent> comps;
  try {
    n = doc.at("ground_set").get<int>();
    for (const auto& c : doc.at("components")) comps.push_back(parse_component(c));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("problem file: ") + e.what());
  }
  DecomposableProblem p(GroundSet(n), std::move(comps));
  for (size_t i = 0; i < p.components.size(); ++i) {
    const SimpleComponent& c = p.components[i];
    if (c.kind() == ComponentKind::Table && c.support_size() <= kExhaustivePairLimit) {
      SubmodularCheck chk = check_submodular(c);
      if (!chk.ok)
        throw submodularity_error("component " + std::to_string(i) +
                                  " is not submodular (violating pair masks " +
                                  std::to_string(chk.set_a) + ", " + std::to_string(chk.set_b) +
                                  ")");
    }
  }
  return p;
}

std::string serialize_problem(const DecomposableProblem& p) {
  json doc;
  doc["ground_set"] = p.n();
  doc["components"] = json::array();
  for (const SimpleComponent& c : p.components) {
    json jc;
    switch (c.kind()) {
      case ComponentKind::EdgeCut:
        jc = {{"kind", "edge_cut"},
              {"u", c.edges()[0].u},
              {"v", c.edges()[0].v},
              {"weight", c.edges()[0].weight}};
        break;
      case ComponentKind::GraphCut: {
        json edges = json::array();
        for (const Edge& e : c.edges()) edges.push_back({e.u, e.v, e.weight});
        jc = {{"kind", "graph_cut"}, {"edges", edges}};
        break;
      }
      case ComponentKind::ConcaveCardinality:
        jc = {{"kind", "concave_cardinality"},
              {"values", c.cardinality_values()},
              {"support", c.support()}};
        break;
      case ComponentKind::Modular:
        jc = {{"kind", "modular"}, {"weights", c.weights()}, {"support", c.support()}};
        break;
      case ComponentKind::Table:
        jc = {{"kind", "table"}, {"support", c.support()}, {"values", c.table_values()}};
        break;
    }
    doc["components"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

FacePartitionSpec parse_face_spec(const std::string& text, int n) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("face spec parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("face spec must be a JSON object");
  reject_unknown(doc, {"components"}, "face spec");
  FacePartitionSpec spec;
  spec.n = n;
  try {
    for (const auto& comp : doc.at("components")) {
      std::vector<std::vector<int>> blocks;
      for (const auto& block : comp) blocks.push_back(int_list(block));
      spec.parts.push_back(std::move(blocks));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("face spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string trace_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out << "k,dist_ab,primal_obj,cont_gap,best_discrete,discrete_gap,ratio\n";
  for (const TraceRow& row : trace.rows)
    out << row.k << ',' << fmt(row.dist_ab) << ',' << fmt(row.primal_obj) << ','
        << fmt(row.cont_gap) << ',' << fmt(row.best_discrete) << ',' << fmt(row.discrete_gap)
        << ',' << fmt(row.ratio) << '\n';
  return out.str();
}

std::string ratio_csv(const RatioSeries& series) {
  std::ostringstream out;
  out << "k,dist_to_E,ratio,predicted_cf2\n";
  for (const RatioRow& row : series.rows)
    out << row.k << ',' << fmt(row.dist_to_e) << ',' << fmt(row.ratio) << ','
        << fmt(series.predicted) << '\n';
  return out.str();
}

std::string format_spectral_report(const SpectralReport& rep) {
  std::ostringstream out;
  out << "cF2 " << fmt(rep.cf2) << '\n'
      << "lambda2 " << fmt(rep.lambda2) << '\n'
      << "cheeger " << fmt(rep.cheeger) << '\n'
      << "bound_thm7 " << fmt(rep.bound_thm7) << '\n'
      << "residual_eq11 " << fmt(rep.residual_eq11) << '\n'
      << "connected_components " << rep.connected_components << '\n'
      << "effective_ground_size " << rep.effective_ground_size << '\n';
  return out.str();
}

}  // namespace sfmap
