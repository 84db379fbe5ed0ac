#ifndef GIG_GRAPH_HPP
#define GIG_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gig {

/// Opaque node identifier. Ids are allocated monotonically per graph and
/// never reused after deletion, so an undone derivation restores the exact
/// ids it started from.
using NodeId = std::uint32_t;
constexpr NodeId kNoNode = 0;

/// A type label is a set of symbolic atoms, kept sorted and unique.
/// The inheritance marker "&" may only appear on addendum anchors in rule
/// templates and never survives into a realized context graph.
using TypeLabel = std::vector<std::string>;

extern const std::string kInheritanceMarker;  // "&"
extern const std::string kGapAtom;            // "Gap"
extern const std::string kLexemeAtom;         // label given to lexical nodes

TypeLabel make_label(const std::string& comma_atoms);
std::string label_to_string(const TypeLabel& label);
bool label_has_atom(const TypeLabel& label, const std::string& atom);

enum class NodeKind { Internal, Lexical, Gap };

struct Node {
  NodeId id = kNoNode;
  TypeLabel label;
  NodeKind kind = NodeKind::Internal;
  std::string spelling;  // lexical nodes only
  bool head = false;     // designated phrase head

  bool operator==(const Node&) const = default;
};

struct FunctionalEdge {
  NodeId head = kNoNode;
  NodeId complement = kNoNode;
  std::string function;

  bool operator==(const FunctionalEdge&) const = default;
};

struct ParentEdge {
  NodeId parent = kNoNode;
  NodeId child = kNoNode;

  bool operator==(const ParentEdge&) const = default;
};

/// Undirected coreference link; `kind` names the coreferentiality it
/// belongs to. Inferred (reflexive/transitive) links are never stored.
struct CorefLink {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  std::string kind;

  bool operator==(const CorefLink&) const = default;
};

/// A declared coreferentiality: an equivalence relation restricted to nodes
/// whose label carries `atom`.
struct Coreferentiality {
  std::string name;
  std::string atom;

  bool operator==(const Coreferentiality&) const = default;
};

struct Violation {
  std::string code;     // e.g. "invariant-1", "principle-6"
  std::string message;  // human-readable, names offending nodes/edges
  std::vector<NodeId> nodes;
};

class GigError : public std::runtime_error {
 public:
  explicit GigError(const std::string& what) : std::runtime_error(what) {}
};

/// The central structure: phrase graphs related by parent-of edges, plus
/// per-phrase member order and coreference links. Also used as the shape of
/// rule templates (context patterns and addenda), which may be forests.
class ParseGraph {
 public:
  struct Incoming {
    bool parent_edge = false;
    NodeId from = kNoNode;
    std::string function;  // empty for parent edges
  };

  NodeId add_node(TypeLabel label, NodeKind kind, std::string spelling = "",
                  bool head = false);
  /// Re-insert a previously removed node with its original id (undo path).
  void restore_node(const Node& n);
  void remove_node(NodeId id);

  bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
  const Node& node(NodeId id) const;
  Node& node(NodeId id);
  std::size_t node_count() const { return nodes_.size(); }
  std::vector<NodeId> node_ids() const;  // ascending

  void add_functional_edge(NodeId head, NodeId complement, const std::string& fn);
  void remove_functional_edge(NodeId head, NodeId complement, const std::string& fn);
  void add_parent_edge(NodeId parent, NodeId child);
  void remove_parent_edge(NodeId parent, NodeId child);

  const std::vector<FunctionalEdge>& functional_edges() const { return functional_; }
  const std::vector<ParentEdge>& parent_edges() const { return parents_; }
  std::vector<FunctionalEdge> functional_from(NodeId head) const;
  std::optional<NodeId> parent_target(NodeId from) const;  // the p-child, if any
  std::optional<Incoming> incoming(NodeId id) const;       // first incoming edge
  std::size_t incoming_count(NodeId id) const;

  void set_root(NodeId id) { root_ = id; }
  NodeId root() const { return root_; }

  /// Phrase member order for a head: the head plus each complement, each
  /// exactly once, left to right.
  void set_phrase_order(NodeId head, std::vector<NodeId> members);
  const std::vector<NodeId>* phrase_order(NodeId head) const;
  void clear_phrase_order(NodeId head);

  void add_coref(NodeId a, NodeId b, const std::string& kind);
  void remove_last_corefs(std::size_t n);
  const std::vector<CorefLink>& corefs() const { return corefs_; }
  std::vector<CorefLink>& corefs() { return corefs_; }

  NodeId peek_next_id() const { return next_id_; }
  /// Make sure the allocator will not hand out ids below `at_least`.
  /// Used by replay to burn the same ids the recorded run did.
  void reserve_ids(NodeId at_least);

  /// Exact structural equality: same ids, labels, kinds, spellings, head
  /// flags, edges, phrase orders, coref links and root. Edge and link order
  /// inside their containers is not significant. The id allocator position
  /// is not compared.
  bool operator==(const ParseGraph& other) const;

 private:
  std::map<NodeId, Node> nodes_;
  std::vector<FunctionalEdge> functional_;
  std::vector<ParentEdge> parents_;
  std::map<NodeId, std::vector<NodeId>> phrase_order_;
  std::vector<CorefLink> corefs_;
  NodeId root_ = kNoNode;
  NodeId next_id_ = 1;
};

/// Tree counterpart of a parse graph: phrase members become siblings.
/// Frontier, ancestor and dangling terminology all live here.
struct SummaryTree {
  NodeId root = kNoNode;
  std::map<NodeId, NodeId> parent;                 // child -> parent
  std::map<NodeId, std::vector<NodeId>> children;  // ordered left-to-right
  std::vector<NodeId> frontier;                    // terminal nodes, left-to-right
  std::map<NodeId, int> depth;

  bool is_leaf(NodeId id) const { return children.count(id) == 0 || children.at(id).empty(); }
  int frontier_index(NodeId id) const;  // -1 when not a frontier node
};

std::vector<Violation> check_invariants(const ParseGraph& g);
std::vector<Violation> check_invariants(const ParseGraph& g,
                                        const std::vector<Coreferentiality>& kinds);

/// Throws GigError if the graph is unrooted or disconnected.
SummaryTree summary_tree(const ParseGraph& g);

/// True iff every path from `at` (default: root) ends at a lexical node.
/// Gap nodes stand for phonologically empty lexemes and count as lexical.
bool is_complete(const ParseGraph& g, NodeId at = kNoNode);

/// A node is dangling when it sits at a terminal position of the summary
/// tree but is neither lexical nor a gap: an unfulfilled prediction.
bool is_dangling(const ParseGraph& g, const SummaryTree& t, NodeId id);

/// Frontier successor under strict ordering: the singleton immediate
/// successor of `node` in the frontier, or empty at the right edge.
/// Throws GigError when `node` is not a frontier node.
std::vector<NodeId> linear_successor_frontier(const ParseGraph& g, NodeId node);

/// Equivalence class of `node` under the reflexive-symmetric-transitive
/// closure of the stored links (optionally restricted to one kind).
std::set<NodeId> coref_class(const ParseGraph& g, NodeId node);
std::set<NodeId> coref_class(const ParseGraph& g, NodeId node, const std::string& kind);

std::string to_dot(const ParseGraph& g);
std::string to_json_string(const ParseGraph& g, int indent = -1);

}  // namespace gig

#endif  // GIG_GRAPH_HPP
