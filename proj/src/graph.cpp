#include "gig/graph.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace gig {

const std::string kInheritanceMarker = "&";
const std::string kGapAtom = "Gap";
const std::string kLexemeAtom = "Lex";

TypeLabel make_label(const std::string& comma_atoms) {
  TypeLabel label;
  std::string atom;
  std::stringstream ss(comma_atoms);
  while (std::getline(ss, atom, ',')) {
    if (!atom.empty()) label.push_back(atom);
  }
  std::sort(label.begin(), label.end());
  label.erase(std::unique(label.begin(), label.end()), label.end());
  return label;
}

std::string label_to_string(const TypeLabel& label) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += ",";
    out += label[i];
  }
  return out;
}

bool label_has_atom(const TypeLabel& label, const std::string& atom) {
  return std::binary_search(label.begin(), label.end(), atom);
}

NodeId ParseGraph::add_node(TypeLabel label, NodeKind kind, std::string spelling,
                            bool head) {
  Node n;
  n.id = next_id_++;
  n.label = std::move(label);
  n.kind = kind;
  n.spelling = std::move(spelling);
  n.head = head;
  NodeId id = n.id;
  nodes_.emplace(id, std::move(n));
  return id;
}

void ParseGraph::restore_node(const Node& n) {
  if (nodes_.count(n.id)) throw GigError("restore_node: id already present");
  if (n.id >= next_id_) throw GigError("restore_node: id was never allocated");
  nodes_.emplace(n.id, n);
}

void ParseGraph::remove_node(NodeId id) {
  if (!nodes_.erase(id)) throw GigError("remove_node: unknown node id");
  // next_id_ keeps advancing; removed ids are never reallocated.
}

const Node& ParseGraph::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GigError("unknown node id " + std::to_string(id));
  return it->second;
}

Node& ParseGraph::node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GigError("unknown node id " + std::to_string(id));
  return it->second;
}

std::vector<NodeId> ParseGraph::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) ids.push_back(id);
  return ids;
}

void ParseGraph::add_functional_edge(NodeId head, NodeId complement,
                                     const std::string& fn) {
  functional_.push_back({head, complement, fn});
}

void ParseGraph::remove_functional_edge(NodeId head, NodeId complement,
                                        const std::string& fn) {
  auto it = std::find(functional_.begin(), functional_.end(),
                      FunctionalEdge{head, complement, fn});
  if (it == functional_.end()) throw GigError("remove_functional_edge: no such edge");
  functional_.erase(it);
}

void ParseGraph::add_parent_edge(NodeId parent, NodeId child) {
  parents_.push_back({parent, child});
}

void ParseGraph::remove_parent_edge(NodeId parent, NodeId child) {
  auto it = std::find(parents_.begin(), parents_.end(), ParentEdge{parent, child});
  if (it == parents_.end()) throw GigError("remove_parent_edge: no such edge");
  parents_.erase(it);
}

std::vector<FunctionalEdge> ParseGraph::functional_from(NodeId head) const {
  std::vector<FunctionalEdge> out;
  for (const auto& e : functional_)
    if (e.head == head) out.push_back(e);
  return out;
}

std::optional<NodeId> ParseGraph::parent_target(NodeId from) const {
  for (const auto& e : parents_)
    if (e.parent == from) return e.child;
  return std::nullopt;
}

std::optional<ParseGraph::Incoming> ParseGraph::incoming(NodeId id) const {
  for (const auto& e : parents_)
    if (e.child == id) return Incoming{true, e.parent, ""};
  for (const auto& e : functional_)
    if (e.complement == id) return Incoming{false, e.head, e.function};
  return std::nullopt;
}

std::size_t ParseGraph::incoming_count(NodeId id) const {
  std::size_t n = 0;
  for (const auto& e : parents_)
    if (e.child == id) ++n;
  for (const auto& e : functional_)
    if (e.complement == id) ++n;
  return n;
}

void ParseGraph::set_phrase_order(NodeId head, std::vector<NodeId> members) {
  phrase_order_[head] = std::move(members);
}

const std::vector<NodeId>* ParseGraph::phrase_order(NodeId head) const {
  auto it = phrase_order_.find(head);
  return it == phrase_order_.end() ? nullptr : &it->second;
}

void ParseGraph::clear_phrase_order(NodeId head) { phrase_order_.erase(head); }

void ParseGraph::add_coref(NodeId a, NodeId b, const std::string& kind) {
  corefs_.push_back({a, b, kind});
}

void ParseGraph::remove_last_corefs(std::size_t n) {
  if (n > corefs_.size()) throw GigError("remove_last_corefs: underflow");
  corefs_.resize(corefs_.size() - n);
}

void ParseGraph::reserve_ids(NodeId at_least) {
  if (at_least > next_id_) next_id_ = at_least;
}

namespace {

template <typename T>
std::vector<T> sorted_copy(const std::vector<T>& v) {
  std::vector<T> out = v;
  std::sort(out.begin(), out.end(), [](const T& x, const T& y) {
    if constexpr (std::is_same_v<T, FunctionalEdge>) {
      return std::tie(x.head, x.complement, x.function) <
             std::tie(y.head, y.complement, y.function);
    } else {
      return std::tie(x.parent, x.child) < std::tie(y.parent, y.child);
    }
  });
  return out;
}

std::vector<CorefLink> normalized_corefs(const std::vector<CorefLink>& v) {
  std::vector<CorefLink> out = v;
  for (auto& l : out)
    if (l.b < l.a) std::swap(l.a, l.b);
  std::sort(out.begin(), out.end(), [](const CorefLink& x, const CorefLink& y) {
    return std::tie(x.a, x.b, x.kind) < std::tie(y.a, y.b, y.kind);
  });
  return out;
}

}  // namespace

bool ParseGraph::operator==(const ParseGraph& other) const {
  return nodes_ == other.nodes_ && root_ == other.root_ &&
         sorted_copy(functional_) == sorted_copy(other.functional_) &&
         sorted_copy(parents_) == sorted_copy(other.parents_) &&
         phrase_order_ == other.phrase_order_ &&
         normalized_corefs(corefs_) == normalized_corefs(other.corefs_);
}

int SummaryTree::frontier_index(NodeId id) const {
  for (std::size_t i = 0; i < frontier.size(); ++i)
    if (frontier[i] == id) return static_cast<int>(i);
  return -1;
}

namespace {

void build_tree(const ParseGraph& g, SummaryTree& t, NodeId u, int d) {
  t.depth[u] = d;
  auto pc = g.parent_target(u);
  if (!pc) {
    t.frontier.push_back(u);
    return;
  }
  std::vector<NodeId> kids;
  const std::vector<NodeId>* order = g.phrase_order(*pc);
  if (order) {
    kids = *order;
  } else {
    kids = {*pc};
  }
  t.children[u] = kids;
  for (NodeId k : kids) {
    t.parent[k] = u;
    build_tree(g, t, k, d + 1);
  }
}

}  // namespace

SummaryTree summary_tree(const ParseGraph& g) {
  if (g.root() == kNoNode || !g.has_node(g.root()))
    throw GigError("summary_tree: graph has no root");
  SummaryTree t;
  t.root = g.root();
  build_tree(g, t, t.root, 0);
  if (t.depth.size() != g.node_count())
    throw GigError("summary_tree: graph is not connected from its root");
  return t;
}

bool is_complete(const ParseGraph& g, NodeId at) {
  if (at == kNoNode) at = g.root();
  if (at == kNoNode || !g.has_node(at)) throw GigError("is_complete: unknown node");
  // Walk the summary subtree below `at`; every terminal must be a lexeme
  // or a gap.
  std::vector<NodeId> stack = {at};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    auto pc = g.parent_target(u);
    if (!pc) {
      const Node& n = g.node(u);
      if (n.kind == NodeKind::Internal) return false;
      continue;
    }
    const std::vector<NodeId>* order = g.phrase_order(*pc);
    if (order) {
      for (NodeId k : *order) stack.push_back(k);
    } else {
      stack.push_back(*pc);
    }
  }
  return true;
}

bool is_dangling(const ParseGraph& g, const SummaryTree& t, NodeId id) {
  return t.is_leaf(id) && g.node(id).kind == NodeKind::Internal;
}

std::vector<NodeId> linear_successor_frontier(const ParseGraph& g, NodeId node) {
  SummaryTree t = summary_tree(g);
  int idx = t.frontier_index(node);
  if (idx < 0) throw GigError("linear_successor_frontier: node not in frontier");
  if (idx + 1 >= static_cast<int>(t.frontier.size())) return {};
  return {t.frontier[idx + 1]};
}

namespace {

std::set<NodeId> close_over(const ParseGraph& g, NodeId node,
                            const std::string* kind) {
  if (!g.has_node(node)) throw GigError("coref_class: unknown node id");
  std::set<NodeId> cls = {node};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : g.corefs()) {
      if (kind && l.kind != *kind) continue;
      bool ha = cls.count(l.a), hb = cls.count(l.b);
      if (ha && !hb) { cls.insert(l.b); grew = true; }
      if (hb && !ha) { cls.insert(l.a); grew = true; }
    }
  }
  return cls;
}

}  // namespace

std::set<NodeId> coref_class(const ParseGraph& g, NodeId node) {
  return close_over(g, node, nullptr);
}

std::set<NodeId> coref_class(const ParseGraph& g, NodeId node, const std::string& kind) {
  return close_over(g, node, &kind);
}

std::vector<Violation> check_invariants(const ParseGraph& g) {
  return check_invariants(g, {});
}

std::vector<Violation> check_invariants(const ParseGraph& g,
                                        const std::vector<Coreferentiality>& kinds) {
  std::vector<Violation> out;
  auto add = [&out](std::string code, std::string msg, std::vector<NodeId> nodes = {}) {
    out.push_back({std::move(code), std::move(msg), std::move(nodes)});
  };

  // Invariant 1: within one phrase, no two functional edges share a name.
  for (const auto& e : g.functional_edges()) {
    int same = 0;
    for (const auto& f : g.functional_edges())
      if (f.head == e.head && f.function == e.function) ++same;
    if (same > 1) {
      add("invariant-1", "head " + std::to_string(e.head) +
                             " carries duplicate functional edges named '" +
                             e.function + "'",
          {e.head});
    }
  }

  // Invariant 2: every node except the root has exactly one incoming edge.
  for (NodeId id : g.node_ids()) {
    std::size_t inc = g.incoming_count(id);
    if (id == g.root()) {
      if (inc != 0)
        add("invariant-2", "root node " + std::to_string(id) + " has an incoming edge",
            {id});
    } else if (inc != 1) {
      add("invariant-2", "node " + std::to_string(id) + " has " +
                             std::to_string(inc) + " incoming edges",
          {id});
    }
  }

  // Invariant 3: no node has more than one outgoing parent-of edge.
  for (NodeId id : g.node_ids()) {
    int n = 0;
    for (const auto& e : g.parent_edges())
      if (e.parent == id) ++n;
    if (n > 1)
      add("invariant-3", "node " + std::to_string(id) + " has " + std::to_string(n) +
                             " outgoing parent-of edges",
          {id});
  }

  // Principle 1: lexical nodes occur only as destinations of parent-of
  // edges and have no outgoing edges.
  for (NodeId id : g.node_ids()) {
    const Node& n = g.node(id);
    if (n.kind != NodeKind::Lexical) continue;
    if (n.spelling.empty())
      add("lexical-spelling", "lexical node " + std::to_string(id) + " has no spelling", {id});
    auto inc = g.incoming(id);
    if (!inc || !inc->parent_edge)
      add("principle-1", "lexical node " + std::to_string(id) +
                             " is not the destination of a parent-of edge",
          {id});
    if (g.parent_target(id) || !g.functional_from(id).empty())
      add("principle-1", "lexical node " + std::to_string(id) + " has outgoing edges",
          {id});
  }
  for (NodeId id : g.node_ids()) {
    const Node& n = g.node(id);
    if (n.kind != NodeKind::Lexical && !n.spelling.empty())
      add("lexical-spelling", "non-lexical node " + std::to_string(id) + " has a spelling",
          {id});
    if (n.label.empty())
      add("label-empty", "node " + std::to_string(id) + " has an empty label", {id});
  }

  // Head structure: only designated heads carry functional edges, a head's
  // incoming edge (if any) is a parent-of edge, and the phrase order lists
  // exactly the head plus its complements once each.
  for (NodeId id : g.node_ids()) {
    auto funcs = g.functional_from(id);
    if (!funcs.empty()) {
      if (!g.node(id).head)
        add("head-structure", "node " + std::to_string(id) +
                                  " has functional edges but is not a head",
            {id});
      auto inc = g.incoming(id);
      if (inc && !inc->parent_edge)
        add("head-structure", "head " + std::to_string(id) +
                                  " is itself a complement of another head",
            {id});
      const std::vector<NodeId>* order = g.phrase_order(id);
      if (!order) {
        add("phrase-order", "head " + std::to_string(id) + " has no phrase order", {id});
      } else {
        std::set<NodeId> expect = {id};
        for (const auto& e : funcs) expect.insert(e.complement);
        std::set<NodeId> got(order->begin(), order->end());
        if (expect != got || order->size() != expect.size())
          add("phrase-order", "phrase order of head " + std::to_string(id) +
                                  " does not list the head and each complement exactly once",
              {id});
      }
    } else if (g.phrase_order(id)) {
      const std::vector<NodeId>* order = g.phrase_order(id);
      if (order->size() != 1 || (*order)[0] != id)
        add("phrase-order", "node " + std::to_string(id) +
                                " has a phrase order but no complements",
            {id});
    }
  }

  // Rooted, connected, acyclic.
  if (g.root() != kNoNode) {
    if (!g.has_node(g.root())) {
      add("root", "root id is not a node");
    } else {
      std::set<NodeId> seen;
      std::vector<NodeId> stack = {g.root()};
      bool cycle = false;
      seen.insert(g.root());
      // Edges all point away from the root; a repeat visit means a cycle
      // or a second incoming edge, both already reported above.
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        std::vector<NodeId> next;
        if (auto pc = g.parent_target(u)) next.push_back(*pc);
        for (const auto& e : g.functional_from(u)) next.push_back(e.complement);
        for (NodeId v : next) {
          if (!seen.insert(v).second) {
            cycle = true;
            continue;
          }
          stack.push_back(v);
        }
      }
      if (cycle) add("connectivity", "graph has a cycle through its edges");
      if (seen.size() != g.node_count())
        add("connectivity", "graph is not connected: " +
                                std::to_string(g.node_count() - seen.size()) +
                                " node(s) unreachable from the root");
    }
  }

  // Coreference links relate nodes that carry the kind's required atom.
  for (const auto& l : g.corefs()) {
    if (!g.has_node(l.a) || !g.has_node(l.b)) {
      add("coref-endpoint", "coref link references a missing node", {l.a, l.b});
      continue;
    }
    for (const auto& k : kinds) {
      if (k.name != l.kind) continue;
      if (!label_has_atom(g.node(l.a).label, k.atom) ||
          !label_has_atom(g.node(l.b).label, k.atom))
        add("coref-label", "link of kind '" + l.kind + "' relates nodes without atom '" +
                               k.atom + "'",
            {l.a, l.b});
    }
  }

  // The inheritance marker never survives into a realized graph.
  for (NodeId id : g.node_ids())
    if (label_has_atom(g.node(id).label, kInheritanceMarker))
      add("inheritance-marker", "node " + std::to_string(id) +
                                    " still carries the inheritance marker",
          {id});

  return out;
}

std::string to_dot(const ParseGraph& g) {
  std::ostringstream os;
  os << "digraph parse {\n";
  os << "  node [fontsize=11];\n";
  for (NodeId id : g.node_ids()) {
    const Node& n = g.node(id);
    os << "  n" << id << " [";
    if (n.kind == NodeKind::Lexical) {
      os << "shape=plaintext, label=\"" << n.spelling << "\"";
    } else if (n.kind == NodeKind::Gap) {
      os << "shape=box, label=\"" << label_to_string(n.label) << "\"";
    } else {
      os << "shape=ellipse, label=\"" << label_to_string(n.label) << "\"";
    }
    os << "];\n";
  }
  for (const auto& e : g.parent_edges())
    os << "  n" << e.parent << " -> n" << e.child << ";\n";
  for (const auto& e : g.functional_edges())
    os << "  n" << e.head << " -> n" << e.complement << " [label=\"" << e.function
       << "\"];\n";
  for (const auto& l : g.corefs())
    os << "  n" << l.a << " -> n" << l.b
       << " [dir=none, style=dashed, constraint=false, label=\"" << l.kind << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_json_string(const ParseGraph& g, int indent) {
  using nlohmann::json;
  json j;
  j["nodes"] = json::array();
  for (NodeId id : g.node_ids()) {
    const Node& n = g.node(id);
    json jn;
    jn["id"] = n.id;
    jn["label"] = n.label;
    jn["kind"] = n.kind == NodeKind::Lexical ? "lexical"
                 : n.kind == NodeKind::Gap   ? "gap"
                                             : "internal";
    if (n.kind == NodeKind::Lexical) jn["spelling"] = n.spelling;
    jn["head"] = n.head;
    j["nodes"].push_back(jn);
  }
  j["functionalEdges"] = json::array();
  for (const auto& e : g.functional_edges())
    j["functionalEdges"].push_back(
        {{"head", e.head}, {"complement", e.complement}, {"function", e.function}});
  j["parentEdges"] = json::array();
  for (const auto& e : g.parent_edges())
    j["parentEdges"].push_back({{"parent", e.parent}, {"child", e.child}});
  j["phraseOrder"] = json::object();
  for (NodeId id : g.node_ids())
    if (const auto* order = g.phrase_order(id))
      j["phraseOrder"][std::to_string(id)] = *order;
  j["corefLinks"] = json::array();
  for (const auto& l : g.corefs())
    j["corefLinks"].push_back({{"a", l.a}, {"b", l.b}, {"kind", l.kind}});
  if (g.root() != kNoNode) j["root"] = g.root();
  return indent < 0 ? j.dump() : j.dump(indent);
}

}  // namespace gig
